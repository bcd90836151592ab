#include "qopt/phase_space.hpp"

#include <cmath>

#include "qopt/states.hpp"

namespace qopt {

namespace {

// Wigner transform of |m><n| at (x, p): for m >= n
//   K_mn = (1/pi) (-1)^n sqrt(n!/m!) (sqrt2 (x - i p))^{m-n}
//          e^{-x^2-p^2} L_n^{m-n}(2(x^2+p^2)),
// and K_nm = conj(K_mn).
MatrixXcd fock_wigner_kernel(int dim, double x, double p) {
  const double r2 = x * x + p * p;
  const double u = 2.0 * r2;
  const Complex z = std::sqrt(2.0) * Complex(x, -p);

  // laguerre(n, d) = L_n^{(d)}(u)
  MatrixXd laguerre(dim, dim);
  for (int d = 0; d < dim; ++d) {
    laguerre(0, d) = 1.0;
    if (dim > 1) laguerre(1, d) = 1.0 + d - u;
    for (int n = 2; n < dim; ++n) {
      laguerre(n, d) = ((2.0 * n - 1.0 + d - u) * laguerre(n - 1, d) -
                        (n - 1.0 + d) * laguerre(n - 2, d)) /
                       n;
    }
  }

  std::vector<Complex> zpow(dim);
  zpow[0] = 1.0;
  for (int k = 1; k < dim; ++k) zpow[k] = zpow[k - 1] * z;

  std::vector<double> lg(dim + 1);
  for (int k = 0; k <= dim; ++k) lg[k] = std::lgamma(k + 1.0);

  const double envelope = std::exp(-r2) / M_PI;
  MatrixXcd kern(dim, dim);
  for (int n = 0; n < dim; ++n) {
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (int m = n; m < dim; ++m) {
      int d = m - n;
      double mag = sign * std::exp(0.5 * (lg[n] - lg[m])) * envelope *
                   laguerre(n, d);
      Complex val = mag * zpow[d];
      kern(m, n) = val;
      kern(n, m) = std::conj(val);
    }
  }
  return kern;
}

MatrixXcd reduced_density(const StateArray& state, int mode) {
  if (state.modes() == 1) {
    MatrixXcd rho = state.to_density();
    rho /= rho.trace().real();
    return rho;
  }
  std::vector<int> traced;
  for (int m = 0; m < state.modes(); ++m)
    if (m != mode) traced.push_back(m);
  MatrixXcd rho = partial_trace(state, traced).density_matrix();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

double wigner_point(const StateArray& state, double x, double p) {
  if (state.modes() != 1)
    throw DimensionError("wigner_point expects a single-mode state");
  MatrixXcd rho = reduced_density(state, 0);
  MatrixXcd kern = fock_wigner_kernel(int(rho.rows()), x, p);
  return (rho.array() * kern.array()).sum().real();
}

double wigner_point2(const StateArray& state, double x1, double p1, double x2,
                     double p2) {
  if (state.modes() != 2)
    throw DimensionError("wigner_point2 expects a two-mode state");
  MatrixXcd rho = state.to_density();
  rho /= rho.trace().real();
  const int d1 = state.dim(0), d2 = state.dim(1);
  MatrixXcd k1 = fock_wigner_kernel(d1, x1, p1);
  MatrixXcd k2 = fock_wigner_kernel(d2, x2, p2);
  Complex acc = 0;
  for (int m1 = 0; m1 < d1; ++m1)
    for (int n1 = 0; n1 < d1; ++n1)
      for (int m2 = 0; m2 < d2; ++m2)
        for (int n2 = 0; n2 < d2; ++n2)
          acc += rho(Eigen::Index(m1) * d2 + m2, Eigen::Index(n1) * d2 + n2) *
                 k1(m1, n1) * k2(m2, n2);
  return acc.real();
}

WignerGrid wigner(const StateArray& state, const GridSpec& grid) {
  if (state.modes() != 1)
    throw DimensionError("wigner expects a single-mode state");
  MatrixXcd rho = reduced_density(state, 0);
  WignerGrid out;
  out.xs = VectorXd::LinSpaced(grid.nx, grid.xmin, grid.xmax);
  out.ps = VectorXd::LinSpaced(grid.np, grid.pmin, grid.pmax);
  out.w.resize(grid.nx, grid.np);
  const int d = int(rho.rows());
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.np; ++j) {
      MatrixXcd kern = fock_wigner_kernel(d, out.xs[i], out.ps[j]);
      out.w(i, j) = (rho.array() * kern.array()).sum().real();
    }
  return out;
}

NegativityMetrics negativity_metrics(const WignerGrid& grid) {
  NegativityMetrics m;
  m.min_value = grid.w(0, 0);
  m.min_x = grid.xs[0];
  m.min_p = grid.ps[0];
  double dx = grid.xs.size() > 1 ? grid.xs[1] - grid.xs[0] : 1.0;
  double dp = grid.ps.size() > 1 ? grid.ps[1] - grid.ps[0] : 1.0;
  for (int i = 0; i < grid.xs.size(); ++i)
    for (int j = 0; j < grid.ps.size(); ++j) {
      double v = grid.w(i, j);
      if (v < m.min_value) {
        m.min_value = v;
        m.min_x = grid.xs[i];
        m.min_p = grid.ps[j];
      }
      if (v < 0) m.negative_volume += -v * dx * dp;
    }
  return m;
}

double marginal_density(const StateArray& state, int mode, double theta,
                        double x) {
  MatrixXcd rho = reduced_density(state, mode);
  VectorXcd v = quadrature_eigenket(int(rho.rows()), theta, x);
  return (v.adjoint() * rho * v)(0, 0).real();
}

VectorXd marginal(const StateArray& state, int mode, double theta,
                  const VectorXd& xs) {
  MatrixXcd rho = reduced_density(state, mode);
  VectorXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    VectorXcd v = quadrature_eigenket(int(rho.rows()), theta, xs[i]);
    out[i] = (v.adjoint() * rho * v)(0, 0).real();
  }
  return out;
}

std::function<double(double, double)> analytic_wigner_fock(int n) {
  return [n](double x, double p) {
    double u = 2.0 * (x * x + p * p);
    double l0 = 1.0, l1 = 1.0 - u, l = (n == 0) ? l0 : l1;
    for (int k = 2; k <= n; ++k) {
      double next = ((2.0 * k - 1.0 - u) * l1 - (k - 1.0) * l0) / k;
      l0 = l1;
      l1 = next;
      l = next;
    }
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / M_PI * std::exp(-(x * x + p * p)) * l;
  };
}

std::function<double(double, double)> analytic_wigner_coherent(Complex alpha) {
  double x0 = std::sqrt(2.0) * alpha.real();
  double p0 = std::sqrt(2.0) * alpha.imag();
  return [x0, p0](double x, double p) {
    return std::exp(-(x - x0) * (x - x0) - (p - p0) * (p - p0)) / M_PI;
  };
}

std::function<double(double, double)> analytic_wigner_squeezed(double r) {
  double e2r = std::exp(2.0 * r);
  return [e2r](double x, double p) {
    return std::exp(-e2r * x * x - p * p / e2r) / M_PI;
  };
}

std::function<double(double, double)> analytic_wigner_cat(double alpha,
                                                          double theta) {
  double c = 1.0 + std::cos(theta) * std::exp(-2.0 * alpha * alpha);
  double x0 = std::sqrt(2.0) * alpha;
  return [c, x0, alpha, theta](double x, double p) {
    double g_minus = std::exp(-(x - x0) * (x - x0) - p * p);
    double g_plus = std::exp(-(x + x0) * (x + x0) - p * p);
    double cross = 2.0 * std::exp(-x * x - p * p) *
                   std::cos(2.0 * std::sqrt(2.0) * alpha * p + theta);
    return (g_minus + g_plus + cross) / (2.0 * M_PI * c);
  };
}

std::function<double(double, double, double, double)> analytic_wigner_epr(
    double r) {
  double e2r = std::exp(2.0 * r);
  return [e2r](double x1, double p1, double x2, double p2) {
    double us = 0.5 * ((x1 - x2) * (x1 - x2) + (p1 + p2) * (p1 + p2));
    double ua = 0.5 * ((x1 + x2) * (x1 + x2) + (p1 - p2) * (p1 - p2));
    return std::exp(-e2r * us - ua / e2r) / (M_PI * M_PI);
  };
}

MomentSet radial_moments(const StateArray& state, int mode, int order) {
  MatrixXcd rho = reduced_density(state, mode);
  const int d = int(rho.rows());
  MomentSet out;
  out.radial.assign(order + 1, 1.0);
  for (int n = 1; n <= order; ++n) {
    double acc = 0;
    for (int m = 1; m <= 2 * n; ++m) {
      double theta = m * M_PI / (2.0 * n);
      MatrixXcd x = quadrature_op(d, theta);
      MatrixXcd xp = MatrixXcd::Identity(d, d);
      for (int k = 0; k < 2 * n; ++k) xp = xp * x;
      acc += (xp * rho).trace().real();
    }
    double binom = std::exp(std::lgamma(2.0 * n + 1.0) -
                            2.0 * std::lgamma(n + 1.0));
    out.radial[n] = std::pow(2.0, 2 * n) / (2.0 * n) / binom * acc;
  }
  return out;
}

MomentSet radial_moments_from_samples(const std::vector<double>& thetas,
                                      const std::vector<double>& xs, int order) {
  (void)thetas;  // pooled estimate; the schedule must cover [0, pi) uniformly
  if (xs.empty()) throw DimensionError("no samples");
  MomentSet out;
  out.radial.assign(order + 1, 1.0);
  for (int n = 1; n <= order; ++n) {
    double acc = 0;
    for (double x : xs) acc += std::pow(x, 2 * n);
    acc /= double(xs.size());
    double binom = std::exp(std::lgamma(2.0 * n + 1.0) -
                            2.0 * std::lgamma(n + 1.0));
    out.radial[n] = std::pow(2.0, 2 * n) / binom * acc;
  }
  return out;
}

double moment_witness(const MomentSet& moments,
                      const std::vector<double>& coeffs) {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (moments.order() < 2 * deg)
    throw DimensionError("moment set order too low for the witness polynomial");
  double acc = 0;
  for (int k = 0; k <= deg; ++k)
    for (int l = 0; l <= deg; ++l)
      acc += coeffs[k] * coeffs[l] * moments.radial[k + l];
  return acc;
}

double wigner_from_counts(const std::vector<double>& pn, double eta) {
  if (eta <= 0.5)
    throw ModelError("unbalanced-homodyne series diverges for eta <= 1/2");
  double ratio = (eta - 2.0) / eta;
  double acc = 0, pw = 1.0;
  for (double p : pn) {
    acc += pw * p;
    pw *= ratio;
  }
  return 2.0 / M_PI * acc;
}

}  // namespace qopt
