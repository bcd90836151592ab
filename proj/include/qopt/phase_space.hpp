#pragma once

#include <functional>

#include "qopt/state.hpp"

namespace qopt {

// All public Wigner values use the xp normalization:
// integral of W over dx dp is 1, vacuum W(0,0) = 1/pi, x = (a + a+)/sqrt(2).

struct GridSpec {
  double xmin = -6, xmax = 6;
  double pmin = -6, pmax = 6;
  int nx = 201, np = 201;
};

struct WignerGrid {
  VectorXd xs, ps;
  MatrixXd w;  // w(i, j) = W(xs[i], ps[j])
};

double wigner_point(const StateArray& state, double x, double p);
// Two-mode W(x1, p1, x2, p2).
double wigner_point2(const StateArray& state, double x1, double p1, double x2,
                     double p2);

WignerGrid wigner(const StateArray& state, const GridSpec& grid = {});

struct NegativityMetrics {
  double min_value = 0;       // most negative grid value
  double min_x = 0, min_p = 0;
  double negative_volume = 0; // integral of |W| over W < 0
};
NegativityMetrics negativity_metrics(const WignerGrid& grid);

// pr_theta(x) = <x_theta| rho |x_theta> on one mode.
double marginal_density(const StateArray& state, int mode, double theta, double x);
VectorXd marginal(const StateArray& state, int mode, double theta,
                  const VectorXd& xs);

// Closed-form Wigner functions used as oracles.
std::function<double(double, double)> analytic_wigner_fock(int n);
std::function<double(double, double)> analytic_wigner_coherent(Complex alpha);
std::function<double(double, double)> analytic_wigner_squeezed(double r);
// Real-amplitude cat (|a> + e^{i theta} |-a>)/sqrt(2c).
std::function<double(double, double)> analytic_wigner_cat(double alpha, double theta);
// Two-mode squeezed vacuum W(x1,p1,x2,p2).
std::function<double(double, double, double, double)> analytic_wigner_epr(double r);

// Rotationally assembled radial moments <R^{2n}>, R^2 = x^2 + p^2, from
// directional quadrature moments <x_theta^{2n}> taken at theta = m pi / (2n).
struct MomentSet {
  std::vector<double> radial;  // radial[n] = <R^{2n}>, n = 0..order
  int order() const { return static_cast<int>(radial.size()) - 1; }
};

MomentSet radial_moments(const StateArray& state, int mode, int order);
// Sample-based variant; assumes the phase schedule covers [0, pi) densely
// enough that pooled samples represent every required direction (true for
// phase-symmetric states and for uniform schedules).
MomentSet radial_moments_from_samples(const std::vector<double>& thetas,
                                      const std::vector<double>& xs, int order);

// Expectation of F = p(R^2)^2 where p has the given coefficients in R^2
// (coeffs[k] multiplies R^{2k}). Negative values witness Wigner negativity.
double moment_witness(const MomentSet& moments, const std::vector<double>& coeffs);

// Unbalanced-homodyne point estimate of W at the displaced origin from
// photon-number statistics p_n, with detection efficiency eta:
// W_alpha = (2/pi) sum_n ((eta-2)/eta)^n p_n   (alpha normalization).
// Convert with W_xp(sqrt2 Re b, sqrt2 Im b) = W_alpha / 2.
double wigner_from_counts(const std::vector<double>& pn, double eta);

}  // namespace qopt
