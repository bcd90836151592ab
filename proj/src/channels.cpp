#include "qopt/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qopt {

void check_leakage(const StateArray& state, double tol, const char* where) {
  double tr = state.trace();
  if (tr <= 0) throw NumericalError("state trace vanished");
  for (int m = 0; m < state.modes(); ++m) {
    double leak = state.leakage(m) / tr;
    if (leak > tol)
      throw TruncationError(std::string(where) + ": top Fock level of mode " +
                                std::to_string(m) + " holds population " +
                                std::to_string(leak) +
                                "; raise the cutoff or loosen QOPT_LEAKAGE_TOL",
                            leak);
  }
}

BeamSplitterSpec BeamSplitterSpec::from_transmission(int a, int b, double T,
                                                     double phi) {
  if (T < 0 || T > 1) throw DimensionError("transmission must lie in [0,1]");
  return {a, b, std::acos(std::sqrt(T)), phi};
}

MatrixXcd beam_splitter_matrix(int dim, double tau, double phi) {
  const Eigen::Index d2 = Eigen::Index(dim) * dim;
  MatrixXcd u = MatrixXcd::Zero(d2, d2);
  Complex eip = std::exp(Complex(0, phi));
  for (int total = 0; total <= 2 * (dim - 1); ++total) {
    int kmin = std::max(0, total - (dim - 1));
    int kmax = std::min(total, dim - 1);
    int nb = kmax - kmin + 1;
    MatrixXcd g = MatrixXcd::Zero(nb, nb);
    for (int k = kmin + 1; k <= kmax; ++k) {
      // <k-1, total-k+1| a_i a_j^dag |k, total-k>
      double amp = std::sqrt(double(k) * double(total - k + 1));
      g(k - 1 - kmin, k - kmin) += tau * std::conj(eip) * amp;
      g(k - kmin, k - 1 - kmin) -= tau * eip * amp;
    }
    MatrixXcd ub = exp_antihermitian(g);
    for (int k = kmin; k <= kmax; ++k)
      for (int l = kmin; l <= kmax; ++l)
        u(Eigen::Index(k) * dim + (total - k), Eigen::Index(l) * dim + (total - l)) =
            ub(k - kmin, l - kmin);
  }
  return u;
}

StateArray beam_splitter(const StateArray& state, const BeamSplitterSpec& spec,
                         double leakage_tol) {
  if (state.dim(spec.mode_a) != state.dim(spec.mode_b))
    throw DimensionError("beam splitter requires equal cutoffs on both modes");
  MatrixXcd u = beam_splitter_matrix(state.dim(spec.mode_a), spec.tau, spec.phi);
  StateArray out = apply_mode_operator(state, {spec.mode_a, spec.mode_b}, u);
  check_leakage(out, leakage_tol, "beam_splitter");
  return out;
}

StateArray single_mode_squeeze(const StateArray& state, int mode, double r,
                               double phi, double leakage_tol) {
  const int d = state.dim(mode);
  MatrixXcd a = annihilation_op(d);
  MatrixXcd adad = a.adjoint() * a.adjoint();
  Complex eip = std::exp(Complex(0, phi));
  // positive r squeezes x_{phi/2}
  MatrixXcd g = 0.5 * r * (std::conj(eip) * a * a - eip * adad);
  StateArray out = apply_mode_operator(state, {mode}, exp_antihermitian(g));
  check_leakage(out, leakage_tol, "single_mode_squeeze");
  return out;
}

StateArray two_mode_squeeze(const StateArray& state, int mode_a, int mode_b,
                            double r, double leakage_tol) {
  const int da = state.dim(mode_a), db = state.dim(mode_b);
  MatrixXcd ai = kron(annihilation_op(da), MatrixXcd::Identity(db, db));
  MatrixXcd aj = kron(MatrixXcd::Identity(da, da), annihilation_op(db));
  MatrixXcd g = r * (ai.adjoint() * aj.adjoint() - ai * aj);
  StateArray out = apply_mode_operator(state, {mode_a, mode_b}, exp_antihermitian(g));
  check_leakage(out, leakage_tol, "two_mode_squeeze");
  return out;
}

StateArray displace(const StateArray& state, int mode, Complex beta,
                    double leakage_tol) {
  const int d = state.dim(mode);
  MatrixXcd a = annihilation_op(d);
  MatrixXcd g = beta * a.adjoint() - std::conj(beta) * a;
  StateArray out = apply_mode_operator(state, {mode}, exp_antihermitian(g));
  check_leakage(out, leakage_tol, "displace");
  return out;
}

StateArray phase_rotate(const StateArray& state, int mode, double theta) {
  const int d = state.dim(mode);
  MatrixXcd u = MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) u(n, n) = std::exp(Complex(0, n * theta));
  return apply_mode_operator(state, {mode}, u);
}

std::vector<MatrixXcd> loss_kraus(int dim, double eta) {
  if (eta < 0 || eta > 1) throw DimensionError("loss eta must lie in [0,1]");
  std::vector<MatrixXcd> ks;
  ks.reserve(dim);
  for (int k = 0; k < dim; ++k) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = k; n < dim; ++n) {
      // A_k |n> = sqrt(C(n,k) eta^{n-k} (1-eta)^k) |n-k>
      double logc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                    std::lgamma(n - k + 1.0);
      double log_eta = (n == k) ? 0.0 : (n - k) * std::log(eta);
      double log_keep = (k == 0) ? 0.0 : k * std::log(1.0 - eta);
      a(n - k, n) = std::exp(0.5 * (logc + log_eta + log_keep));
    }
    ks.push_back(std::move(a));
  }
  return ks;
}

StateArray loss(const StateArray& state, const LossSpec& spec) {
  if (spec.eta == 1.0) return state;
  return apply_kraus(state, spec.mode, loss_kraus(state.dim(spec.mode), spec.eta));
}

StateArray teleport_cv(const StateArray& state, int mode, double resource_r,
                       int nodes_per_axis) {
  // Gauss-Hermite nodes/weights by Golub-Welsch.
  const int n = nodes_per_axis;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double off = std::sqrt(k / 2.0);
    j(k - 1, k) = off;
    j(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  VectorXd nodes = es.eigenvalues();
  VectorXd weights(n);
  for (int k = 0; k < n; ++k) {
    double w0 = es.eigenvectors()(0, k);
    weights[k] = w0 * w0;  // relative to integral against e^{-t^2}/sqrt(pi)
  }

  // Additive noise of variance v = e^{-2r} on each quadrature corresponds to
  // displacements beta with Re/Im ~ N(0, v/2), i.e. Re beta = sqrt(v) t.
  double sigma = std::exp(-resource_r);
  const int d = state.dim(mode);
  MatrixXcd a = annihilation_op(d);
  MatrixXcd acc = MatrixXcd::Zero(state.total_dim(), state.total_dim());
  StateArray rho = state.as_density();
  for (int ix = 0; ix < n; ++ix) {
    for (int ip = 0; ip < n; ++ip) {
      Complex beta(sigma * nodes[ix], sigma * nodes[ip]);
      MatrixXcd dmat = exp_antihermitian(
          (beta * a.adjoint() - std::conj(beta) * a).eval());
      StateArray shifted = apply_mode_operator(rho, {mode}, dmat);
      acc += weights[ix] * weights[ip] * shifted.density_matrix();
    }
  }
  return StateArray::density(state.cutoffs(), std::move(acc));
}

}  // namespace qopt
