#pragma once

#include "qopt/state.hpp"

namespace qopt {

// Uhlmann fidelity. When either argument is pure this reduces to
// <psi|rho|psi>; both-mixed inputs go through the sqrt(rho) route.
double fidelity(const StateArray& a, const StateArray& b);

Complex overlap(const StateArray& ket_a, const StateArray& ket_b);

// log2 of the trace norm of the partial transpose over the listed modes.
double log_negativity(const StateArray& state, const std::vector<int>& modes_a);

// Von Neumann entropy (base 2) of the reduction onto the listed modes.
// For a pure global state this is the entanglement entropy of the bipartition.
double entanglement_entropy(const StateArray& state, const std::vector<int>& modes_a);

double mean_photon(const StateArray& state, int mode);
double photon_variance(const StateArray& state, int mode);

// Fano factor Var(n)/<n>. The vacuum has no meaningful Fano factor; a mean
// photon number below `floor` raises ModelError rather than returning 0/0.
double fano_factor(const StateArray& state, int mode, double floor = 1e-12);

// <x_theta> and Var(x_theta) on one mode.
double quadrature_mean(const StateArray& state, int mode, double theta);
double quadrature_variance(const StateArray& state, int mode, double theta);

// Squeezing of the theta quadrature in dB relative to vacuum (positive =
// below shot noise): -10 log10(Var/0.5).
double squeezing_db(const StateArray& state, int mode, double theta);

}  // namespace qopt
