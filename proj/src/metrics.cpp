#include "qopt/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qopt {

namespace {

MatrixXcd matrix_sqrt_psd(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(((m + m.adjoint()) / 2.0).eval());
  VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Complex overlap(const StateArray& ket_a, const StateArray& ket_b) {
  return ket_a.amplitudes().dot(ket_b.amplitudes());
}

double fidelity(const StateArray& a, const StateArray& b) {
  if (a.cutoffs() != b.cutoffs())
    throw DimensionError("fidelity requires matching cutoffs");
  if (a.is_ket() && b.is_ket()) return std::norm(overlap(a, b));
  if (a.is_ket())
    return (a.amplitudes().adjoint() * b.density_matrix() * a.amplitudes())(0, 0)
               .real() / b.trace();
  if (b.is_ket())
    return (b.amplitudes().adjoint() * a.density_matrix() * b.amplitudes())(0, 0)
               .real() / a.trace();
  MatrixXcd ra = a.density_matrix() / a.trace();
  MatrixXcd rb = b.density_matrix() / b.trace();
  MatrixXcd sa = matrix_sqrt_psd(ra);
  MatrixXcd inner = matrix_sqrt_psd(sa * rb * sa);
  double f = inner.trace().real();
  return f * f;
}

double log_negativity(const StateArray& state, const std::vector<int>& modes_a) {
  MatrixXcd rho = state.to_density();
  rho /= rho.trace().real();
  // Build the partial transpose by exchanging row/column sub-indices on A.
  std::vector<Eigen::Index> strides(state.modes());
  Eigen::Index acc = 1;
  for (int m = state.modes() - 1; m >= 0; --m) {
    strides[m] = acc;
    acc *= state.dim(m);
  }
  std::vector<bool> in_a(state.modes(), false);
  for (int m : modes_a) in_a.at(m) = true;

  const Eigen::Index d = rho.rows();
  MatrixXcd pt(d, d);
  std::vector<int> ni(state.modes()), nj(state.modes());
  for (Eigen::Index i = 0; i < d; ++i) {
    for (int m = 0; m < state.modes(); ++m)
      ni[m] = int((i / strides[m]) % state.dim(m));
    for (Eigen::Index j = 0; j < d; ++j) {
      for (int m = 0; m < state.modes(); ++m)
        nj[m] = int((j / strides[m]) % state.dim(m));
      Eigen::Index ii = 0, jj = 0;
      for (int m = 0; m < state.modes(); ++m) {
        int a = in_a[m] ? nj[m] : ni[m];
        int b = in_a[m] ? ni[m] : nj[m];
        ii += a * strides[m];
        jj += b * strides[m];
      }
      pt(ii, jj) = rho(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(((pt + pt.adjoint()) / 2.0).eval(),
                                              Eigen::EigenvaluesOnly);
  double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::log2(std::max(trace_norm, 1.0));
}

double entanglement_entropy(const StateArray& state,
                            const std::vector<int>& modes_a) {
  std::vector<int> traced;
  std::vector<bool> in_a(state.modes(), false);
  for (int m : modes_a) in_a.at(m) = true;
  for (int m = 0; m < state.modes(); ++m)
    if (!in_a[m]) traced.push_back(m);
  StateArray red = traced.empty() ? state.as_density()
                                  : partial_trace(state, traced);
  MatrixXcd rho = red.density_matrix();
  rho /= rho.trace().real();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(((rho + rho.adjoint()) / 2.0).eval(),
                                              Eigen::EigenvaluesOnly);
  double s = 0;
  for (double p : es.eigenvalues())
    if (p > 1e-15) s -= p * std::log2(p);
  return s;
}

double mean_photon(const StateArray& state, int mode) {
  StateArray red = state.modes() == 1 ? state.as_density()
                                      : [&] {
                                          std::vector<int> traced;
                                          for (int m = 0; m < state.modes(); ++m)
                                            if (m != mode) traced.push_back(m);
                                          return partial_trace(state, traced);
                                        }();
  MatrixXcd rho = red.density_matrix();
  double tr = rho.trace().real();
  double n = 0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) n += k * rho(k, k).real();
  return n / tr;
}

double photon_variance(const StateArray& state, int mode) {
  StateArray red = state.modes() == 1 ? state.as_density()
                                      : [&] {
                                          std::vector<int> traced;
                                          for (int m = 0; m < state.modes(); ++m)
                                            if (m != mode) traced.push_back(m);
                                          return partial_trace(state, traced);
                                        }();
  MatrixXcd rho = red.density_matrix();
  double tr = rho.trace().real();
  double n1 = 0, n2 = 0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    double p = rho(k, k).real() / tr;
    n1 += k * p;
    n2 += double(k) * k * p;
  }
  return n2 - n1 * n1;
}

double fano_factor(const StateArray& state, int mode, double floor) {
  double n = mean_photon(state, mode);
  if (n < floor)
    throw ModelError("Fano factor is undefined for (near-)vacuum states");
  return photon_variance(state, mode) / n;
}

double quadrature_mean(const StateArray& state, int mode, double theta) {
  const MatrixXcd x = quadrature_op(state.dim(mode), theta);
  MatrixXcd rho = state.modes() == 1 ? state.to_density()
                                     : [&] {
                                         std::vector<int> traced;
                                         for (int m = 0; m < state.modes(); ++m)
                                           if (m != mode) traced.push_back(m);
                                         return partial_trace(state, traced)
                                             .density_matrix();
                                       }();
  rho /= rho.trace().real();
  return (x * rho).trace().real();
}

double quadrature_variance(const StateArray& state, int mode, double theta) {
  const MatrixXcd x = quadrature_op(state.dim(mode), theta);
  MatrixXcd rho = state.modes() == 1 ? state.to_density()
                                     : [&] {
                                         std::vector<int> traced;
                                         for (int m = 0; m < state.modes(); ++m)
                                           if (m != mode) traced.push_back(m);
                                         return partial_trace(state, traced)
                                             .density_matrix();
                                       }();
  rho /= rho.trace().real();
  double m1 = (x * rho).trace().real();
  double m2 = (x * x * rho).trace().real();
  return m2 - m1 * m1;
}

double squeezing_db(const StateArray& state, int mode, double theta) {
  return -10.0 * std::log10(quadrature_variance(state, mode, theta) / 0.5);
}

}  // namespace qopt
