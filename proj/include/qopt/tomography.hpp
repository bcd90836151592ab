#pragma once

#include <functional>

#include "qopt/conditional.hpp"
#include "qopt/homodyne.hpp"
#include "qopt/phase_space.hpp"
#include "qopt/state.hpp"

namespace qopt {

struct ReconstructionConfig {
  int cutoff = 10;
  double eta = 1.0;       // detection efficiency compensated inside the POVM
  int max_iters = 2000;
  double ll_tol = 1e-8;   // relative log-likelihood gain stopping rule
  double bin_width = 0.1;
  double x_max = 6.0;
};

struct MaxLikResult {
  StateArray rho;
  std::vector<double> log_likelihood;  // per-sample average, one per iteration
  int iterations = 0;
  bool converged = false;
};

// Iterative R rho R maximum-likelihood reconstruction from binned homodyne
// data. Detection loss is compensated by pulling the POVM elements through
// the Bernoulli channel. Stops on relative log-likelihood gain < ll_tol.
MaxLikResult maxlik_reconstruct(const QuadratureDataset& data,
                                const ReconstructionConfig& config);

// Filtered back-projection with the regularized kernel
// K(z) = (cos(kc z) + kc z sin(kc z) - 1)/z^2 (frequency cutoff kc):
// W(x,p) ~ (1/(2 pi N)) sum_j K(x cos t_j + p sin t_j - x_j).
// Assumes the phase schedule samples [0, pi) uniformly.
WignerGrid radon_reconstruct(const QuadratureDataset& data,
                             const GridSpec& grid = {}, double kc = 5.0);

// Two-parameter attenuated-single-photon model
//   W(x,p) = e^{-R^2/s2} / (pi s2) [1 - delta + delta R^2 / s2]
// fitted from the pooled second and fourth quadrature moments
//   mu2 = s2 (1 + delta)/2,  mu4 = 3 s2^2 (1 + 2 delta)/4,
// with the error on W(0,0) = (1-delta)/(pi s2) propagated from the sample
// covariances cov(mu_k, mu_l) = (mu_{k+l} - mu_k mu_l)/N.
struct Fock1Estimate {
  double sigma2 = 0;
  double delta = 0;
  double w00 = 0;
  double w00_stderr = 0;
};
Fock1Estimate estimate_fock1(const QuadratureDataset& data);

// Seeded nonparametric bootstrap of a scalar estimator.
std::vector<double> bootstrap(const QuadratureDataset& data,
                              const std::function<double(const QuadratureDataset&)>& fn,
                              int replicates, std::uint64_t seed);

// Coherent-state process tomography. The process tensor satisfies
// E(rho)_{k,l} = sum_{m,n} E[k,l][m,n] rho_{m,n}; entries come from a
// least-squares polynomial fit in (alpha, conj alpha) of
// e^{|alpha|^2} <k| E(|alpha><alpha|) |l>, probed on a polar grid.
struct ProcessTensor {
  int cutoff = 0;
  MatrixXcd mat;  // row (k,l), column (m,n), both row-major in (first,second)
  Complex at(int k, int l, int m, int n) const {
    int d = cutoff + 1;
    return mat(Eigen::Index(k) * d + l, Eigen::Index(m) * d + n);
  }
  // Applies the tensor to a single-mode density matrix.
  MatrixXcd apply(const MatrixXcd& rho) const;
};

struct ProbeSpec {
  std::vector<double> radii = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2};
  int n_phases = 12;
  int degree = -1;        // max total degree of the fit; -1 -> 2 * cutoff
  int probe_cutoff = -1;  // working cutoff for probe states; -1 -> cutoff + 12
};

// The process is a black box mapping a probe state to a heralded outcome;
// deterministic channels should report weight 1.
using ProcessFn = std::function<HeraldedOutcome(const StateArray&)>;

ProcessTensor csqpt(const ProcessFn& process, int cutoff,
                    const ProbeSpec& probes = {});

}  // namespace qopt
