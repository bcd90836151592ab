#pragma once

#include "qopt/state.hpp"

namespace qopt {

// B = exp[tau (a_i a_j^dag e^{-i phi} - a_i^dag a_j e^{i phi})].
// Transmission T = cos^2(tau) for the i -> i path.
struct BeamSplitterSpec {
  int mode_a = 0;
  int mode_b = 1;
  double tau = M_PI / 4;
  double phi = 0.0;

  static BeamSplitterSpec from_transmission(int a, int b, double T, double phi = 0.0);
  static BeamSplitterSpec balanced(int a, int b) { return {a, b, M_PI / 4, 0.0}; }
  double transmission() const { return std::cos(tau) * std::cos(tau); }
  double reflectivity() const { return std::sin(tau) * std::sin(tau); }
};

struct LossSpec {
  int mode = 0;
  double eta = 1.0;  // transmitted fraction
};

// The beam-splitter unitary on the joint space of two equal-cutoff modes,
// built block-by-block over total photon number (the generator conserves it).
MatrixXcd beam_splitter_matrix(int dim, double tau, double phi);

StateArray beam_splitter(const StateArray& state, const BeamSplitterSpec& spec,
                         double leakage_tol = default_leakage_tol());

// exp[(r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2)]; positive r squeezes x.
StateArray single_mode_squeeze(const StateArray& state, int mode, double r,
                               double phi = 0.0,
                               double leakage_tol = default_leakage_tol());

// exp[r (a_i^dag a_j^dag - a_i a_j)].
StateArray two_mode_squeeze(const StateArray& state, int mode_a, int mode_b,
                            double r, double leakage_tol = default_leakage_tol());

StateArray displace(const StateArray& state, int mode, Complex beta,
                    double leakage_tol = default_leakage_tol());

// exp[i theta n]; rotates x_0 into x_theta.
StateArray phase_rotate(const StateArray& state, int mode, double theta);

// Bernoulli (pure-loss) channel; Kraus rank cutoff+1. Returns a density
// unless eta == 1. Never renormalizes.
StateArray loss(const StateArray& state, const LossSpec& spec);

std::vector<MatrixXcd> loss_kraus(int dim, double eta);

// Continuous-variable teleportation with a finitely squeezed resource,
// modeled as additive Gaussian noise of variance e^{-2r} per quadrature.
// The Gaussian displacement average is evaluated on a deterministic
// Gauss-Hermite grid (nodes_per_axis^2 displacements).
StateArray teleport_cv(const StateArray& state, int mode, double resource_r,
                       int nodes_per_axis = 21);

void check_leakage(const StateArray& state, double tol, const char* where);

}  // namespace qopt
