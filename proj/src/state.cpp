#include "qopt/state.hpp"

#include <Eigen/Eigenvalues>
#include <cstdlib>
#include <numeric>

namespace qopt {

double default_leakage_tol() {
  static const double tol = [] {
    if (const char* env = std::getenv("QOPT_LEAKAGE_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0) return v;
    }
    return 1e-6;
  }();
  return tol;
}

namespace {

Eigen::Index product_dim(const std::vector<int>& cutoffs) {
  Eigen::Index d = 1;
  for (int c : cutoffs) {
    if (c < 1) throw DimensionError("mode cutoff must be at least 1");
    d *= c + 1;
  }
  return d;
}

std::vector<Eigen::Index> strides_of(const std::vector<int>& cutoffs) {
  std::vector<Eigen::Index> s(cutoffs.size());
  Eigen::Index acc = 1;
  for (int m = static_cast<int>(cutoffs.size()) - 1; m >= 0; --m) {
    s[m] = acc;
    acc *= cutoffs[m] + 1;
  }
  return s;
}

// Gather/scatter tables for an operator acting on a subset of modes.
struct ModeSlicing {
  std::vector<Eigen::Index> sel_offsets;   // offsets spanned by the selected modes
  std::vector<Eigen::Index> rest_offsets;  // offsets spanned by the others
};

ModeSlicing slice_modes(const std::vector<int>& cutoffs,
                        const std::vector<int>& modes) {
  auto strides = strides_of(cutoffs);
  std::vector<bool> selected(cutoffs.size(), false);
  for (int m : modes) {
    if (m < 0 || m >= static_cast<int>(cutoffs.size()))
      throw DimensionError("mode index out of range");
    if (selected[m]) throw DimensionError("repeated mode index");
    selected[m] = true;
  }

  ModeSlicing out;
  out.sel_offsets = {0};
  for (int m : modes) {
    std::vector<Eigen::Index> next;
    next.reserve(out.sel_offsets.size() * (cutoffs[m] + 1));
    for (Eigen::Index base : out.sel_offsets)
      for (int n = 0; n <= cutoffs[m]; ++n) next.push_back(base + n * strides[m]);
    out.sel_offsets = std::move(next);
  }

  out.rest_offsets = {0};
  for (int m = 0; m < static_cast<int>(cutoffs.size()); ++m) {
    if (selected[m]) continue;
    std::vector<Eigen::Index> next;
    next.reserve(out.rest_offsets.size() * (cutoffs[m] + 1));
    for (Eigen::Index base : out.rest_offsets)
      for (int n = 0; n <= cutoffs[m]; ++n) next.push_back(base + n * strides[m]);
    out.rest_offsets = std::move(next);
  }
  return out;
}

VectorXcd apply_op_ket(const VectorXcd& psi, const ModeSlicing& sl,
                       const MatrixXcd& op) {
  const Eigen::Index ds = static_cast<Eigen::Index>(sl.sel_offsets.size());
  if (op.rows() != ds || op.cols() != ds)
    throw DimensionError("operator dimension does not match selected modes");
  VectorXcd out(psi.size());
  VectorXcd v(ds);
  for (Eigen::Index r : sl.rest_offsets) {
    for (Eigen::Index s = 0; s < ds; ++s) v[s] = psi[r + sl.sel_offsets[s]];
    VectorXcd w = op * v;
    for (Eigen::Index s = 0; s < ds; ++s) out[r + sl.sel_offsets[s]] = w[s];
  }
  return out;
}

MatrixXcd apply_op_left(const MatrixXcd& rho, const ModeSlicing& sl,
                        const MatrixXcd& op) {
  MatrixXcd out(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    out.col(c) = apply_op_ket(rho.col(c), sl, op);
  return out;
}

}  // namespace

StateArray StateArray::ket(std::vector<int> cutoffs, VectorXcd amplitudes) {
  StateArray s;
  s.cutoffs_ = std::move(cutoffs);
  if (amplitudes.size() != product_dim(s.cutoffs_))
    throw DimensionError("amplitude vector length does not match cutoffs");
  s.kind_ = StorageKind::Ket;
  s.ket_ = std::move(amplitudes);
  return s;
}

StateArray StateArray::density(std::vector<int> cutoffs, MatrixXcd rho) {
  StateArray s;
  s.cutoffs_ = std::move(cutoffs);
  Eigen::Index d = product_dim(s.cutoffs_);
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionError("density matrix shape does not match cutoffs");
  s.kind_ = StorageKind::Density;
  s.rho_ = std::move(rho);
  return s;
}

Eigen::Index StateArray::total_dim() const { return product_dim(cutoffs_); }

const VectorXcd& StateArray::amplitudes() const {
  if (!is_ket()) throw ModelError("state is not pure");
  return ket_;
}

const MatrixXcd& StateArray::density_matrix() const {
  if (is_ket()) throw ModelError("state is stored as a ket; use to_density()");
  return rho_;
}

MatrixXcd StateArray::to_density() const {
  if (is_ket()) return ket_ * ket_.adjoint();
  return rho_;
}

StateArray StateArray::as_density() const {
  if (!is_ket()) return *this;
  return StateArray::density(cutoffs_, ket_ * ket_.adjoint());
}

double StateArray::trace() const {
  if (is_ket()) return ket_.squaredNorm();
  return rho_.trace().real();
}

double StateArray::purity() const {
  if (is_ket()) return 1.0;
  double tr = rho_.trace().real();
  return (rho_ * rho_).trace().real() / (tr * tr);
}

double StateArray::hermiticity_error() const {
  if (is_ket()) return 0.0;
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double StateArray::min_eigenvalue() const {
  if (is_ket()) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
      ((rho_ + rho_.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double StateArray::leakage(int mode) const {
  const int top = cutoff(mode);
  auto strides = strides_of(cutoffs_);
  double pop = 0;
  if (is_ket()) {
    for (Eigen::Index i = 0; i < ket_.size(); ++i)
      if ((i / strides[mode]) % (top + 1) == top) pop += std::norm(ket_[i]);
  } else {
    for (Eigen::Index i = 0; i < rho_.rows(); ++i)
      if ((i / strides[mode]) % (top + 1) == top) pop += rho_(i, i).real();
  }
  return pop;
}

double StateArray::leakage() const {
  double worst = 0;
  for (int m = 0; m < modes(); ++m) worst = std::max(worst, leakage(m));
  return worst;
}

void StateArray::renormalize() {
  double tr = trace();
  if (tr <= 0) throw NumericalError("cannot renormalize a zero-trace state");
  if (is_ket())
    ket_ /= std::sqrt(tr);
  else
    rho_ /= tr;
}

Eigen::Index StateArray::flat_index(const std::vector<int>& occupation) const {
  if (occupation.size() != cutoffs_.size())
    throw DimensionError("occupation list length does not match mode count");
  auto strides = strides_of(cutoffs_);
  Eigen::Index idx = 0;
  for (size_t m = 0; m < occupation.size(); ++m) {
    if (occupation[m] < 0 || occupation[m] > cutoffs_[m])
      throw DimensionError("occupation exceeds cutoff");
    idx += occupation[m] * strides[m];
  }
  return idx;
}

Complex StateArray::amplitude(const std::vector<int>& occupation) const {
  Eigen::Index i = flat_index(occupation);
  if (is_ket()) return ket_[i];
  throw ModelError("amplitude() requires a pure state");
}

MatrixXcd annihilation_op(int dim) {
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

MatrixXcd creation_op(int dim) { return annihilation_op(dim).adjoint(); }

MatrixXcd number_op(int dim) {
  MatrixXcd n = MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = k;
  return n;
}

MatrixXcd quadrature_op(int dim, double theta) {
  MatrixXcd a = annihilation_op(dim);
  Complex ph = std::exp(Complex(0, theta));
  return (a * std::conj(ph) + a.adjoint() * ph) / std::sqrt(2.0);
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd exp_antihermitian(const MatrixXcd& g) {
  MatrixXcd h = Complex(0, 1) * g;
  double skew = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw NumericalError("generator is not anti-Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(((h + h.adjoint()) / 2.0).eval());
  VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::exp(Complex(0, -es.eigenvalues()[k]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StateArray apply_mode_operator(const StateArray& state,
                               const std::vector<int>& modes,
                               const MatrixXcd& op) {
  auto sl = slice_modes(state.cutoffs(), modes);
  if (state.is_ket())
    return StateArray::ket(state.cutoffs(),
                           apply_op_ket(state.amplitudes(), sl, op));
  MatrixXcd t = apply_op_left(state.density_matrix(), sl, op);
  // op rho op^dag = (op (op rho)^dag)^dag
  MatrixXcd out = apply_op_left(t.adjoint(), sl, op).adjoint();
  return StateArray::density(state.cutoffs(), std::move(out));
}

StateArray apply_kraus(const StateArray& state, int mode,
                       const std::vector<MatrixXcd>& kraus) {
  StateArray rho = state.as_density();
  MatrixXcd acc = MatrixXcd::Zero(rho.total_dim(), rho.total_dim());
  for (const auto& k : kraus)
    acc += apply_mode_operator(rho, {mode}, k).density_matrix();
  return StateArray::density(state.cutoffs(), std::move(acc));
}

StateArray contract_bra(const StateArray& state, int mode, const VectorXcd& bra) {
  const int d = state.dim(mode);
  if (bra.size() != d) throw DimensionError("bra length does not match mode");
  if (state.modes() == 1) {
    if (state.is_ket()) {
      VectorXcd amp(1);
      amp[0] = bra.dot(state.amplitudes());  // dot conjugates its argument
      // Degenerate zero-mode case: report as 1-mode vacuum-like scalar.
      return StateArray::ket({1}, (VectorXcd(2) << amp[0], 0).finished());
    }
    Complex val = (bra.adjoint() * state.density_matrix() * bra)(0, 0);
    MatrixXcd r(2, 2);
    r.setZero();
    r(0, 0) = val;
    return StateArray::density({1}, r);
  }

  std::vector<int> rest_cutoffs;
  for (int m = 0; m < state.modes(); ++m)
    if (m != mode) rest_cutoffs.push_back(state.cutoff(m));

  auto sl = slice_modes(state.cutoffs(), {mode});
  const Eigen::Index rest_count = static_cast<Eigen::Index>(sl.rest_offsets.size());

  auto contract_ket = [&](const VectorXcd& psi) {
    VectorXcd out(rest_count);
    for (Eigen::Index r = 0; r < rest_count; ++r) {
      Complex acc = 0;
      for (int n = 0; n < d; ++n)
        acc += std::conj(bra[n]) * psi[sl.rest_offsets[r] + sl.sel_offsets[n]];
      out[r] = acc;
    }
    return out;
  };

  if (state.is_ket())
    return StateArray::ket(rest_cutoffs, contract_ket(state.amplitudes()));

  const MatrixXcd& rho = state.density_matrix();
  MatrixXcd half(rest_count, rho.cols());
  for (Eigen::Index c = 0; c < rho.cols(); ++c)
    half.col(c) = contract_ket(rho.col(c));
  MatrixXcd out(rest_count, rest_count);
  for (Eigen::Index r = 0; r < rest_count; ++r)
    out.row(r) = contract_ket(half.row(r).adjoint()).conjugate().transpose();
  return StateArray::density(rest_cutoffs, std::move(out));
}

StateArray tensor(const StateArray& a, const StateArray& b) {
  std::vector<int> cutoffs = a.cutoffs();
  cutoffs.insert(cutoffs.end(), b.cutoffs().begin(), b.cutoffs().end());
  if (a.is_ket() && b.is_ket()) {
    VectorXcd out(a.total_dim() * b.total_dim());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.total_dim(); ++i)
      for (Eigen::Index j = 0; j < b.total_dim(); ++j)
        out[k++] = a.amplitudes()[i] * b.amplitudes()[j];
    return StateArray::ket(cutoffs, std::move(out));
  }
  return StateArray::density(cutoffs, kron(a.to_density(), b.to_density()));
}

StateArray partial_trace(const StateArray& state, const std::vector<int>& traced) {
  std::vector<bool> drop(state.modes(), false);
  for (int m : traced) {
    if (m < 0 || m >= state.modes()) throw DimensionError("mode index out of range");
    drop[m] = true;
  }
  std::vector<int> kept_cutoffs;
  std::vector<int> kept_modes;
  for (int m = 0; m < state.modes(); ++m)
    if (!drop[m]) {
      kept_cutoffs.push_back(state.cutoff(m));
      kept_modes.push_back(m);
    }
  if (kept_cutoffs.empty()) throw DimensionError("cannot trace out every mode");

  auto sl = slice_modes(state.cutoffs(), kept_modes);
  const Eigen::Index dk = static_cast<Eigen::Index>(sl.sel_offsets.size());
  MatrixXcd rho = state.to_density();
  MatrixXcd out = MatrixXcd::Zero(dk, dk);
  for (Eigen::Index r : sl.rest_offsets)
    for (Eigen::Index i = 0; i < dk; ++i)
      for (Eigen::Index j = 0; j < dk; ++j)
        out(i, j) += rho(r + sl.sel_offsets[i], r + sl.sel_offsets[j]);
  return StateArray::density(kept_cutoffs, std::move(out));
}

}  // namespace qopt
