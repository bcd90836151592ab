#pragma once

#include "qopt/state.hpp"

namespace qopt {

struct DetectorModel {
  enum class Kind { PNR, OnOff };
  Kind kind = Kind::PNR;
  double efficiency = 1.0;
  double dark = 0.0;   // dark-count probability per detection window
  double purity = 1.0; // herald purity xi; (1-xi) admixes the unheralded state

  bool ideal() const {
    return efficiency == 1.0 && dark == 0.0 && purity == 1.0;
  }
};

// All conditional operations report the heralded (normalized) state together
// with a weight. For measurement-backed operations the weight is the true
// herald probability (a probability density for zero-width homodyne);
// for pure-operator recipes it is the unnormalized map weight Tr[O rho O+].
struct HeraldedOutcome {
  StateArray state;
  double weight = 0.0;
};

// Photon-number measurement on one mode; the mode is consumed. For OnOff
// detectors outcome 0 means "no click" and any n >= 1 means "click".
HeraldedOutcome project_fock(const StateArray& state, int mode, int outcome,
                             const DetectorModel& detector = {},
                             double floor = kProbabilityFloor);

// Ideal operator recipes a rho a+ / a+ rho a.
HeraldedOutcome subtract_photon(const StateArray& state, int mode,
                                double floor = kProbabilityFloor);
HeraldedOutcome add_photon(const StateArray& state, int mode,
                           double floor = kProbabilityFloor);

// Circuit-level subtraction: tap beam splitter of reflectivity R into a
// vacuum ancilla, then detect one photon (PNR) or a click (OnOff) there.
HeraldedOutcome subtract_photon_physical(const StateArray& state, int mode,
                                         double reflectivity,
                                         const DetectorModel& detector = {},
                                         double floor = kProbabilityFloor);

// Circuit-level addition: weak parametric amplifier (two-mode squeezer with a
// vacuum idler), heralded by one photon in the idler.
HeraldedOutcome add_photon_physical(const StateArray& state, int mode,
                                    double gain_r,
                                    const DetectorModel& detector = {},
                                    double floor = kProbabilityFloor);

// r a_i + t e^{i phi} a_j acting coherently on two modes.
HeraldedOutcome delocalized_subtract(const StateArray& state, int mode_i,
                                     int mode_j, double r_coef, double t_coef,
                                     double phi, double floor = kProbabilityFloor);

enum class LadderKind { Subtract, Add };

// x a + y 1 (or x a+ + y 1) on one mode.
HeraldedOutcome operator_superpose(const StateArray& state, int mode,
                                   Complex x, Complex y, LadderKind kind,
                                   double floor = kProbabilityFloor);

// Arbitrary (not necessarily unitary) operator on selected modes, heralded.
HeraldedOutcome apply_heralded_operator(const StateArray& state,
                                        const std::vector<int>& modes,
                                        const MatrixXcd& op,
                                        double floor = kProbabilityFloor);

// Quadrature measurement of x_theta on one mode, conditioning on outcome y.
// epsilon == 0 projects onto the exact eigenvector (weight is a probability
// density, purity is preserved); epsilon > 0 integrates the POVM over
// [y-eps, y+eps] with an 11-node Gauss-Legendre rule (weight is the window
// probability, result is generally mixed). The mode is consumed.
HeraldedOutcome homodyne_project(const StateArray& state, int mode, double theta,
                                 double y, double epsilon = 0.0,
                                 double floor = kProbabilityFloor,
                                 int gl_nodes = 11);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, VectorXd& nodes, VectorXd& weights);

}  // namespace qopt
