#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qopt {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Error taxonomy. `code` is a stable machine-readable identifier that the CLI
// maps onto its JSON error envelope.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double leakage)
      : Error("truncation", what), leakage_(leakage) {}
  double leakage() const { return leakage_; }

 private:
  double leakage_;
};

class ImprobableEventError : public Error {
 public:
  ImprobableEventError(const std::string& what, double probability)
      : Error("improbable_event", what), probability_(probability) {}
  double probability() const { return probability_; }

 private:
  double probability_;
};

class ModelError : public Error {
 public:
  explicit ModelError(const std::string& what) : Error("model", what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

// Default tolerance for the per-mode top-level population guard, overridable
// through the QOPT_LEAKAGE_TOL environment variable.
double default_leakage_tol();

// Probability floor below which conditioning is refused.
inline constexpr double kProbabilityFloor = 1e-12;

enum class StorageKind { Ket, Density };

// A state of one or more bosonic modes in a truncated Fock basis.
// Mode m keeps levels 0..cutoff(m); indices are row-major with mode 0
// slowest. Pure states store amplitudes, mixed states a density matrix.
class StateArray {
 public:
  StateArray() = default;

  static StateArray ket(std::vector<int> cutoffs, VectorXcd amplitudes);
  static StateArray density(std::vector<int> cutoffs, MatrixXcd rho);

  int modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(mode); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  int dim(int mode) const { return cutoffs_.at(mode) + 1; }
  Eigen::Index total_dim() const;

  bool is_ket() const { return kind_ == StorageKind::Ket; }
  StorageKind kind() const { return kind_; }

  const VectorXcd& amplitudes() const;
  const MatrixXcd& density_matrix() const;
  MatrixXcd to_density() const;
  StateArray as_density() const;

  // Diagnostics. None of these mutate or clip the state.
  double trace() const;
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Population of the top Fock level of one mode (or the max over modes).
  double leakage(int mode) const;
  double leakage() const;

  void renormalize();

  Complex amplitude(const std::vector<int>& occupation) const;
  Eigen::Index flat_index(const std::vector<int>& occupation) const;

 private:
  std::vector<int> cutoffs_;
  StorageKind kind_ = StorageKind::Ket;
  VectorXcd ket_;
  MatrixXcd rho_;
};

// Ladder and quadrature operators on a single truncated mode of dimension d.
MatrixXcd annihilation_op(int dim);
MatrixXcd creation_op(int dim);
MatrixXcd number_op(int dim);
// x_theta = (a e^{-i theta} + a^dag e^{i theta}) / sqrt(2); vacuum variance 1/2.
MatrixXcd quadrature_op(int dim, double theta);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

// exp(G) for anti-Hermitian G, via the eigendecomposition of iG.
MatrixXcd exp_antihermitian(const MatrixXcd& g);

// Applies `op` to the listed modes (1 or 2, in the given order; for two modes
// the operator basis is |n_first, n_second> with the first mode slowest).
// Kets stay kets; densities transform as op rho op^dag. No renormalization.
StateArray apply_mode_operator(const StateArray& state,
                               const std::vector<int>& modes,
                               const MatrixXcd& op);

// Kraus-sum channel on a single mode; always returns a density.
StateArray apply_kraus(const StateArray& state, int mode,
                       const std::vector<MatrixXcd>& kraus);

// Contracts a bra vector against one mode, dropping it from the state.
// For kets the result is the (unnormalized) conditional ket.
StateArray contract_bra(const StateArray& state, int mode, const VectorXcd& bra);

StateArray tensor(const StateArray& a, const StateArray& b);

// Traces out the listed modes.
StateArray partial_trace(const StateArray& state, const std::vector<int>& traced);

}  // namespace qopt
