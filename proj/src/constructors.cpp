#include "qopt/states.hpp"

#include <cmath>

namespace qopt {

namespace {

StateArray finish_ket(std::vector<int> cutoffs, VectorXcd amp, double norm_total,
                      double tol, const char* what) {
  double kept = amp.squaredNorm();
  double leak = std::max(0.0, norm_total - kept) / norm_total;
  if (leak > tol)
    throw TruncationError(std::string(what) + ": truncation leakage " +
                              std::to_string(leak) + " exceeds tolerance",
                          leak);
  amp /= std::sqrt(kept);
  return StateArray::ket(std::move(cutoffs), std::move(amp));
}

}  // namespace

StateArray make_fock(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw DimensionError("Fock level exceeds cutoff");
  VectorXcd amp = VectorXcd::Zero(cutoff + 1);
  amp[n] = 1;
  return StateArray::ket({cutoff}, std::move(amp));
}

StateArray make_coherent(Complex alpha, int cutoff, double tol) {
  VectorXcd amp(cutoff + 1);
  // c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)
  amp[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) amp[n] = amp[n - 1] * alpha / std::sqrt(double(n));
  return finish_ket({cutoff}, std::move(amp), 1.0, tol, "make_coherent");
}

StateArray make_squeezed_vacuum(double r, int cutoff, double tol) {
  VectorXcd amp = VectorXcd::Zero(cutoff + 1);
  // (1/sqrt(cosh r)) sum_k sqrt((2k)!)/k! (-tanh(r)/2)^k |2k>
  double c = 1.0 / std::sqrt(std::cosh(r));
  double t = -std::tanh(r) / 2.0;
  double term = c;
  amp[0] = term;
  for (int k = 1; 2 * k <= cutoff; ++k) {
    // ratio of sqrt((2k)!)/k! between successive k
    term *= t * std::sqrt(double(2 * k) * double(2 * k - 1)) / double(k);
    amp[2 * k] = term;
  }
  return finish_ket({cutoff}, std::move(amp), 1.0, tol, "make_squeezed_vacuum");
}

StateArray make_thermal(double nbar, int cutoff, double tol) {
  if (nbar < 0) throw DimensionError("thermal occupation must be nonnegative");
  VectorXd p(cutoff + 1);
  double ratio = nbar / (nbar + 1.0);
  p[0] = 1.0 / (nbar + 1.0);
  for (int n = 1; n <= cutoff; ++n) p[n] = p[n - 1] * ratio;
  double kept = p.sum();
  double leak = 1.0 - kept;
  if (leak > tol)
    throw TruncationError("make_thermal: truncation leakage exceeds tolerance", leak);
  MatrixXcd rho = MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) rho(n, n) = p[n] / kept;
  return StateArray::density({cutoff}, std::move(rho));
}

StateArray make_cat(Complex alpha, double theta, int cutoff, double tol) {
  VectorXcd plus(cutoff + 1), minus(cutoff + 1);
  plus[0] = minus[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) {
    plus[n] = plus[n - 1] * alpha / std::sqrt(double(n));
    minus[n] = minus[n - 1] * (-alpha) / std::sqrt(double(n));
  }
  Complex ph = std::exp(Complex(0, theta));
  VectorXcd amp = plus + ph * minus;
  double norm_total = 2.0 * (1.0 + std::cos(theta) * std::exp(-2.0 * std::norm(alpha)));
  return finish_ket({cutoff}, std::move(amp), norm_total, tol, "make_cat");
}

StateArray make_epr(double r, int cutoff, double tol) {
  const int d = cutoff + 1;
  VectorXcd amp = VectorXcd::Zero(Eigen::Index(d) * d);
  double c = 1.0 / std::cosh(r);
  double t = std::tanh(r);
  double term = c;
  for (int k = 0; k <= cutoff; ++k) {
    amp[Eigen::Index(k) * d + k] = term;
    term *= t;
  }
  return finish_ket({cutoff, cutoff}, std::move(amp), 1.0, tol, "make_epr");
}

VectorXd fock_wavefunctions(int dim, double x) {
  VectorXd psi(dim);
  psi[0] = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (dim > 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int n = 2; n < dim; ++n)
    psi[n] = std::sqrt(2.0 / n) * x * psi[n - 1] -
             std::sqrt(double(n - 1) / n) * psi[n - 2];
  return psi;
}

VectorXcd quadrature_eigenket(int dim, double theta, double x) {
  VectorXd psi = fock_wavefunctions(dim, x);
  VectorXcd v(dim);
  for (int n = 0; n < dim; ++n) v[n] = std::exp(Complex(0, n * theta)) * psi[n];
  return v;
}

}  // namespace qopt
