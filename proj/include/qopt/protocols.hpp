#pragma once

#include <map>
#include <string>

#include "qopt/conditional.hpp"
#include "qopt/state.hpp"

namespace qopt {

struct ProtocolReport {
  HeraldedOutcome outcome;
  std::map<std::string, double> metrics;
  std::map<std::string, double> params;
};

// Fidelity of a single-mode state with a cat (|a> + e^{i theta}|-a>)/norm,
// maximized over the amplitude (and optionally one squeezing parameter)
// by golden-section search.
struct CatFit {
  double alpha = 0;
  double squeeze_r = 0;
  double fidelity = 0;
};
CatFit best_fit_cat(const StateArray& state, double theta, bool fit_squeeze,
                    double alpha_max = 4.0);

// Photon subtraction from squeezed vacuum ("kitten" preparation).
// tap_reflectivity == 0 runs the ideal operator; otherwise the tap circuit.
ProtocolReport kitten_via_subtraction(double r, double tap_reflectivity,
                                      const DetectorModel& detector,
                                      int n_subtractions, int cutoff = 20);

// |n> on a 50:50 beam splitter, p ~ 0 heralding on the reflected arm.
ProtocolReport cat_from_fock(int n, double epsilon, int cutoff = 30);

// Two single photons, Hong-Ou-Mandel interference, x ~ 0 heralding.
ProtocolReport etesse_superposition(double epsilon, int cutoff = 20);

// Cat breeding on a symmetric beam splitter with quadrature heralding.
// breed_cats measures x ~ 0 (amplitude growth), gkp_breed measures p ~ 0.
ProtocolReport breed_cats(const StateArray& cat_a, const StateArray& cat_b,
                          double epsilon);
ProtocolReport gkp_breed(const StateArray& cat_a, const StateArray& cat_b,
                         double epsilon);

// Single-stage quantum-scissors NLA with gain g (resource split 1/sqrt(1+g^2)).
ProtocolReport nla_scissors(const StateArray& rho_in, double g);

// NLA as g^n (order < 0, exact diagonal) or 1 + (g-1) n (order == 1).
ProtocolReport nla_gn(const StateArray& rho_in, double g, int order);

// Single-photon catalysis NLA: tap of reflectivity R, displaced herald,
// equivalent to the operator sqrt(R) a + alpha on the input.
ProtocolReport nla_catalysis(const StateArray& rho_in, double reflectivity,
                             double alpha_aux);

enum class SubtractionModes { One, Both, Delocalized };

ProtocolReport distill_by_subtraction(double r, double eta_a, double eta_b,
                                      double tap_reflectivity,
                                      SubtractionModes modes, int cutoff = 12);

// Entanglement restoration of a loss-degraded weak EPR state by an NLA on
// the lossy arm (first-order two-level model; optionally the scissors
// circuit).
ProtocolReport distill_by_nla(double r, double t_amplitude, double nla_r,
                              bool circuit = false, int cutoff = 6);

// Three-mode hybrid entanglement: weak coherent H mode, tap of a squeezed
// vacuum into the V mode, remote cat preparation by polarization projection.
ProtocolReport hybrid_dv_cv(double r, double tap_reflectivity, double alpha,
                            int cutoff = 14);

// Displaced photon subtraction as a cat-qubit phase gate.
ProtocolReport cat_phase_gate(const StateArray& qubit, double alpha, double beta);

// Emulated pi self-phase modulation on the {|0>,|1>,|2>} subspace.
ProtocolReport kerr_pi_emulation(const StateArray& input);

}  // namespace qopt
