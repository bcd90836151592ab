#include "qopt/protocols.hpp"

#include <cmath>

#include "qopt/channels.hpp"
#include "qopt/metrics.hpp"
#include "qopt/phase_space.hpp"
#include "qopt/states.hpp"

namespace qopt {

namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters = 80) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-10; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return (fc > fd) ? c : d;
}

StateArray cat_target(double alpha, double theta, double squeeze_r, int cutoff) {
  StateArray cat = make_cat(alpha, theta, cutoff, 1.0);
  if (squeeze_r != 0.0) cat = single_mode_squeeze(cat, 0, squeeze_r, 0.0, 1.0);
  return cat;
}

Complex mean_annihilation(const StateArray& state, int mode) {
  MatrixXcd rho = state.modes() == 1 ? state.to_density()
                                     : [&] {
                                         std::vector<int> traced;
                                         for (int m = 0; m < state.modes(); ++m)
                                           if (m != mode) traced.push_back(m);
                                         return partial_trace(state, traced)
                                             .to_density();
                                       }();
  rho /= rho.trace().real();
  return (annihilation_op(int(rho.rows())) * rho).trace();
}

}  // namespace

CatFit best_fit_cat(const StateArray& state, double theta, bool fit_squeeze,
                    double alpha_max) {
  const int cutoff = state.cutoff(0);
  CatFit fit;
  auto fid_at = [&](double alpha, double r) {
    return fidelity(state, cat_target(alpha, theta, r, cutoff));
  };
  double r = 0.0;
  for (int round = 0; round < (fit_squeeze ? 4 : 1); ++round) {
    fit.alpha = golden_max([&](double a) { return fid_at(a, r); }, 1e-3, alpha_max);
    if (fit_squeeze)
      r = golden_max([&](double s) { return fid_at(fit.alpha, s); }, -1.0, 1.0);
  }
  fit.squeeze_r = r;
  fit.fidelity = fid_at(fit.alpha, r);
  return fit;
}

ProtocolReport kitten_via_subtraction(double r, double tap_reflectivity,
                                      const DetectorModel& detector,
                                      int n_subtractions, int cutoff) {
  StateArray state = make_squeezed_vacuum(r, cutoff);
  double weight = 1.0;
  HeraldedOutcome step{state, 1.0};
  for (int k = 0; k < n_subtractions; ++k) {
    step = tap_reflectivity == 0.0
               ? subtract_photon(step.state, 0)
               : subtract_photon_physical(step.state, 0, tap_reflectivity,
                                          detector);
    weight *= step.weight;
  }
  double theta = (n_subtractions % 2 == 1) ? M_PI : 0.0;
  CatFit fit = best_fit_cat(step.state, theta, false, 3.0);

  ProtocolReport rep;
  rep.outcome = {step.state, weight};
  rep.params = {{"r", r},
                {"tap_reflectivity", tap_reflectivity},
                {"n_subtractions", double(n_subtractions)},
                {"cutoff", double(cutoff)}};
  rep.metrics = {{"fit_alpha", fit.alpha},
                 {"fit_fidelity", fit.fidelity},
                 {"rule_alpha", std::sqrt(3.0 * r)},
                 {"rule_fidelity",
                  fidelity(step.state, cat_target(std::sqrt(3.0 * r), theta,
                                                  0.0, cutoff))},
                 {"weight", weight}};
  return rep;
}

ProtocolReport cat_from_fock(int n, double epsilon, int cutoff) {
  StateArray joint = tensor(make_fock(n, cutoff), make_fock(0, cutoff));
  joint = beam_splitter(joint, BeamSplitterSpec::balanced(0, 1));
  HeraldedOutcome out = homodyne_project(joint, 1, M_PI / 2, 0.0, epsilon);

  double r3db = 0.5 * std::log(2.0);  // variance halved along x
  double theta = (n % 2 == 1) ? M_PI : 0.0;
  StateArray target = cat_target(std::sqrt(double(n)), theta, r3db, cutoff);

  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"n", double(n)}, {"epsilon", epsilon}, {"cutoff", double(cutoff)}};
  rep.metrics = {{"fidelity_squeezed_cat", fidelity(out.state, target)},
                 {"weight", out.weight}};
  return rep;
}

ProtocolReport etesse_superposition(double epsilon, int cutoff) {
  StateArray joint = tensor(make_fock(1, cutoff), make_fock(1, cutoff));
  joint = beam_splitter(joint, BeamSplitterSpec::balanced(0, 1));
  HeraldedOutcome out = homodyne_project(joint, 1, 0.0, 0.0, epsilon);

  VectorXcd t = VectorXcd::Zero(cutoff + 1);
  t[0] = 1.0 / std::sqrt(3.0);
  t[2] = std::sqrt(2.0 / 3.0);
  StateArray target = StateArray::ket({cutoff}, std::move(t));

  // Paper benchmark: even cat alpha = 1.63 squeezed by the factor s = 1.52
  // in x-quadrature standard deviation, i.e. r = ln(s).
  StateArray cat = cat_target(1.63, 0.0, std::log(1.52), cutoff);

  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"epsilon", epsilon}, {"cutoff", double(cutoff)}};
  rep.metrics = {{"fidelity_target", fidelity(out.state, target)},
                 {"fidelity_squeezed_cat", fidelity(out.state, cat)},
                 {"weight", out.weight}};
  return rep;
}

namespace {

ProtocolReport breed_impl(const StateArray& cat_a, const StateArray& cat_b,
                          double epsilon, double herald_theta) {
  StateArray joint = tensor(cat_a, cat_b);
  joint = beam_splitter(joint, BeamSplitterSpec::balanced(0, 1));
  HeraldedOutcome out = homodyne_project(joint, 1, herald_theta, 0.0, epsilon);

  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"epsilon", epsilon}, {"herald_theta", herald_theta}};
  CatFit fit = best_fit_cat(out.state, 0.0, false, 5.0);
  rep.metrics = {{"herald_probability", out.weight},
                 {"fit_alpha", fit.alpha},
                 {"fit_fidelity", fit.fidelity}};

  // Peak count of the x marginal (distinguishes bred cats from GKP-like
  // three-peaked states).
  VectorXd xs = VectorXd::LinSpaced(801, -8.0, 8.0);
  VectorXd pr = marginal(out.state, 0, 0.0, xs);
  double top = pr.maxCoeff();
  int peaks = 0;
  for (int i = 1; i + 1 < xs.size(); ++i)
    if (pr[i] > pr[i - 1] && pr[i] > pr[i + 1] && pr[i] > 1e-3 * top) ++peaks;
  rep.metrics["x_marginal_peaks"] = peaks;
  return rep;
}

}  // namespace

ProtocolReport breed_cats(const StateArray& cat_a, const StateArray& cat_b,
                          double epsilon) {
  return breed_impl(cat_a, cat_b, epsilon, 0.0);
}

ProtocolReport gkp_breed(const StateArray& cat_a, const StateArray& cat_b,
                         double epsilon) {
  return breed_impl(cat_a, cat_b, epsilon, M_PI / 2);
}

ProtocolReport nla_scissors(const StateArray& rho_in, double g) {
  if (rho_in.modes() != 1)
    throw DimensionError("nla_scissors expects a single-mode input");
  const int cutoff = rho_in.cutoff(0);

  // Resource: |1> split so that the output-port amplitude ratio is g.
  double r_amp = 1.0 / std::sqrt(1.0 + g * g);
  StateArray resource = tensor(make_fock(1, cutoff), make_fock(0, cutoff));
  double tau = std::acos(r_amp);  // cos(tau)|1,0> + sin(tau)|0,1>
  resource = beam_splitter(resource, {0, 1, tau, 0.0});

  StateArray joint = tensor(rho_in, resource);  // modes: 0 in, 1 keep, 2 out
  joint = beam_splitter(joint, BeamSplitterSpec::balanced(0, 1));
  HeraldedOutcome click = project_fock(joint, 0, 1);
  HeraldedOutcome herald = project_fock(click.state, 0, 0);  // mode 1 shifted
  double weight = click.weight * herald.weight;
  StateArray out = herald.state;

  double gain = std::abs(mean_annihilation(out, 0)) /
                std::max(std::abs(mean_annihilation(rho_in, 0)), 1e-300);
  double var_in = quadrature_variance(rho_in, 0, 0.0);
  double var_out = quadrature_variance(out, 0, 0.0);
  double neq = var_out / (gain * gain) - var_in;

  ProtocolReport rep;
  rep.outcome = {out, weight};
  rep.params = {{"g", g}};
  rep.metrics = {{"g_eff", gain}, {"n_eq", neq}, {"weight", weight}};

  if (rho_in.is_ket()) {
    VectorXcd t = VectorXcd::Zero(cutoff + 1);
    t[0] = rho_in.amplitudes()[0];
    t[1] = g * rho_in.amplitudes()[1];
    double n = t.norm();
    if (n > 0) {
      StateArray target = StateArray::ket({cutoff}, t / n);
      rep.metrics["fidelity_truncated_target"] = fidelity(out, target);
    }
  }
  return rep;
}

ProtocolReport nla_gn(const StateArray& rho_in, double g, int order) {
  if (rho_in.modes() != 1)
    throw DimensionError("nla_gn expects a single-mode input");
  const int d = rho_in.dim(0);
  MatrixXcd op = MatrixXcd::Zero(d, d);
  if (order == 1) {
    for (int n = 0; n < d; ++n) op(n, n) = 1.0 + (g - 1.0) * n;
  } else if (order < 0) {
    for (int n = 0; n < d; ++n) op(n, n) = std::pow(g, n);
  } else {
    throw DimensionError("nla_gn supports order 1 or exact (order < 0)");
  }
  HeraldedOutcome out = apply_heralded_operator(rho_in, {0}, op);

  Complex a_in = mean_annihilation(rho_in, 0);
  double gain = std::abs(mean_annihilation(out.state, 0)) /
                std::max(std::abs(a_in), 1e-300);
  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"g", g}, {"order", double(order)}};
  rep.metrics = {{"g_eff", gain}, {"weight", out.weight}};
  if (std::abs(a_in) > 1e-12) {
    StateArray target = make_coherent(g * a_in, rho_in.cutoff(0), 1.0);
    rep.metrics["fidelity_amplified_coherent"] = fidelity(out.state, target);
  }
  return rep;
}

ProtocolReport nla_catalysis(const StateArray& rho_in, double reflectivity,
                             double alpha_aux) {
  if (rho_in.modes() != 1)
    throw DimensionError("nla_catalysis expects a single-mode input");
  double t = std::sqrt(1.0 - reflectivity);

  // Displacement on the tapped arm chosen so that, on the span{|0>,|1>}
  // input, the heralded circuit operator is proportional to sqrt(R) a + alpha:
  // solve alpha beta^2 + t beta - alpha = 0.
  double beta = alpha_aux == 0.0
                    ? 0.0
                    : (-t + std::sqrt(t * t + 4.0 * alpha_aux * alpha_aux)) /
                          (2.0 * alpha_aux);

  StateArray joint = tensor(rho_in, make_fock(0, rho_in.cutoff(0)));
  joint = beam_splitter(joint,
                        BeamSplitterSpec::from_transmission(0, 1, t * t));
  joint = displace(joint, 1, beta, 1.0);
  HeraldedOutcome out = project_fock(joint, 1, 1);

  HeraldedOutcome op_level = operator_superpose(
      rho_in, 0, std::sqrt(reflectivity), alpha_aux, LadderKind::Subtract);

  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"reflectivity", reflectivity}, {"alpha_aux", alpha_aux}};
  rep.metrics = {{"weight", out.weight},
                 {"gain", 1.0 / std::sqrt(reflectivity)},
                 {"fidelity_operator_level", fidelity(out.state, op_level.state)}};
  return rep;
}

ProtocolReport distill_by_subtraction(double r, double eta_a, double eta_b,
                                      double tap_reflectivity,
                                      SubtractionModes modes, int cutoff) {
  StateArray state = make_epr(r, cutoff);
  if (eta_a < 1.0) state = loss(state, {0, eta_a});
  if (eta_b < 1.0) state = loss(state, {1, eta_b});
  double ln_before = log_negativity(state, {0});

  HeraldedOutcome out{state, 1.0};
  auto subtract_one = [&](const StateArray& s, int mode) {
    return tap_reflectivity == 0.0
               ? subtract_photon(s, mode)
               : subtract_photon_physical(s, mode, tap_reflectivity);
  };
  switch (modes) {
    case SubtractionModes::One:
      out = subtract_one(state, 0);
      break;
    case SubtractionModes::Both: {
      HeraldedOutcome first = subtract_one(state, 0);
      out = subtract_one(first.state, 1);
      out.weight *= first.weight;
      break;
    }
    case SubtractionModes::Delocalized:
      out = delocalized_subtract(state, 0, 1, 1.0 / std::sqrt(2.0),
                                 1.0 / std::sqrt(2.0), 0.0);
      break;
  }

  StateArray mixed = out.state.as_density();
  auto two_mode_var = [&](double sign) {
    const int d = mixed.dim(0);
    MatrixXcd x0 = kron(quadrature_op(d, 0.0), MatrixXcd::Identity(d, d));
    MatrixXcd x1 = kron(MatrixXcd::Identity(d, d), quadrature_op(d, 0.0));
    MatrixXcd q = (x0 + sign * x1) / std::sqrt(2.0);
    MatrixXcd rho = mixed.density_matrix();
    rho /= rho.trace().real();
    double m1 = (q * rho).trace().real();
    double m2 = (q * q * rho).trace().real();
    return m2 - m1 * m1;
  };

  ProtocolReport rep;
  rep.outcome = out;
  rep.params = {{"r", r},
                {"eta_a", eta_a},
                {"eta_b", eta_b},
                {"tap_reflectivity", tap_reflectivity},
                {"modes", double(int(modes))}};
  rep.metrics = {{"log_negativity_before", ln_before},
                 {"log_negativity_after", log_negativity(out.state, {0})},
                 {"var_x_minus", two_mode_var(-1.0)},
                 {"var_x_plus", two_mode_var(1.0)},
                 {"weight", out.weight}};
  if (out.state.is_ket()) {
    Complex c00 = out.state.amplitude({0, 0});
    Complex c11 = out.state.amplitude({1, 1});
    if (std::abs(c00) > 0)
      rep.metrics["amplitude_ratio_11_00"] = std::abs(c11 / c00);
  }
  return rep;
}

ProtocolReport distill_by_nla(double r, double t_amplitude, double nla_r,
                              bool circuit, int cutoff) {
  // Two-level model of the loss-degraded weak EPR state,
  //   rho = (|00> - r t |11>)(h.c.) + r^2 (1 - t^2) |10><10|.
  const double rt = r * t_amplitude;
  const double p10 = r * r * (1.0 - t_amplitude * t_amplitude);
  StateArray pure = StateArray::ket(
      {1, 1}, (VectorXcd(4) << 1.0, 0.0, 0.0, -rt).finished());
  MatrixXcd rho = pure.to_density();
  rho(2, 2) += p10;  // |10><10|, mode B is the faster index
  StateArray init = StateArray::density({1, 1}, rho);
  double ln_init = log_negativity(init, {0});

  StateArray final_state = init;
  double weight = 1.0;
  double sr = std::sqrt(nla_r);
  if (!circuit) {
    MatrixXcd k(2, 2);
    k.setZero();
    k(0, 0) = sr;
    k(1, 1) = 1.0;
    HeraldedOutcome out = apply_heralded_operator(init, {1}, k);
    final_state = out.state;
    weight = out.weight;
  } else {
    // Scissors NLA of gain 1/sqrt(R) on mode B, embedded at a larger cutoff.
    const int d = cutoff + 1;
    MatrixXcd big = MatrixXcd::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
    MatrixXcd small = init.density_matrix();
    auto up = [&](int a, int b) { return Eigen::Index(a) * d + b; };
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int e = 0; e < 2; ++e)
            big(up(a, b), up(c, e)) = small(a * 2 + b, c * 2 + e);
    StateArray embedded = StateArray::density({cutoff, cutoff}, big);

    double g = 1.0 / sr;
    double r_amp = 1.0 / std::sqrt(1.0 + g * g);
    StateArray resource = tensor(make_fock(1, cutoff), make_fock(0, cutoff));
    resource = beam_splitter(resource, {0, 1, std::acos(r_amp), 0.0});
    StateArray joint = tensor(embedded, resource);  // modes 0,1, 2 keep, 3 out
    joint = beam_splitter(joint, BeamSplitterSpec::balanced(1, 2));
    HeraldedOutcome click = project_fock(joint, 1, 1);
    HeraldedOutcome herald = project_fock(click.state, 1, 0);
    weight = click.weight * herald.weight;
    final_state = herald.state;
  }

  ProtocolReport rep;
  rep.outcome = {final_state, weight};
  rep.params = {{"r", r},
                {"t_amplitude", t_amplitude},
                {"nla_r", nla_r},
                {"circuit", circuit ? 1.0 : 0.0}};
  rep.metrics = {{"log_negativity_initial", ln_init},
                 {"log_negativity_final", log_negativity(final_state, {0})},
                 {"weight", weight}};
  return rep;
}

ProtocolReport hybrid_dv_cv(double r, double tap_reflectivity, double alpha,
                            int cutoff) {
  const int dv_cutoff = 3;
  StateArray h = make_coherent(alpha, dv_cutoff);
  StateArray v = make_fock(0, cutoff);
  StateArray c = make_squeezed_vacuum(r, cutoff);
  StateArray joint = tensor(h, tensor(v, c));  // modes: 0 H, 1 V, 2 C
  joint = beam_splitter(
      joint, BeamSplitterSpec::from_transmission(2, 1, 1.0 - tap_reflectivity));

  // |H> projection: one photon in H, none in V.
  HeraldedOutcome h_click = project_fock(joint, 0, 1);
  HeraldedOutcome h_branch = project_fock(h_click.state, 0, 0);
  double w_h = h_click.weight * h_branch.weight;

  // |V> projection: vacuum in H, one photon in V.
  HeraldedOutcome v_empty = project_fock(joint, 0, 0);
  HeraldedOutcome v_branch = project_fock(v_empty.state, 0, 1);
  double w_v = v_empty.weight * v_branch.weight;

  CatFit even_fit = best_fit_cat(h_branch.state, 0.0, true, 3.0);
  CatFit odd_fit = best_fit_cat(v_branch.state, M_PI, true, 3.0);

  ProtocolReport rep;
  rep.outcome = {h_branch.state, w_h};
  rep.params = {{"r", r},
                {"tap_reflectivity", tap_reflectivity},
                {"alpha", alpha},
                {"cutoff", double(cutoff)}};
  rep.metrics = {{"weight_h", w_h},
                 {"weight_v", w_v},
                 {"fidelity_h_even_cat", even_fit.fidelity},
                 {"fit_alpha_h", even_fit.alpha},
                 {"fidelity_v_odd_cat", odd_fit.fidelity},
                 {"fit_alpha_v", odd_fit.alpha}};
  return rep;
}

ProtocolReport cat_phase_gate(const StateArray& qubit, double alpha, double beta) {
  if (qubit.modes() != 1 || !qubit.is_ket())
    throw DimensionError("cat_phase_gate expects a pure single-mode qubit");
  const int cutoff = qubit.cutoff(0);
  StateArray state = displace(qubit, 0, Complex(0, beta), 1.0);
  HeraldedOutcome sub = subtract_photon(state, 0);
  state = displace(sub.state, 0, Complex(0, -beta), 1.0);

  StateArray plus = make_coherent(alpha, cutoff, 1.0);
  StateArray minus = make_coherent(-alpha, cutoff, 1.0);
  Complex cp_before = overlap(plus, qubit);
  Complex cm_before = overlap(minus, qubit);
  Complex cp_after = overlap(plus, state);
  Complex cm_after = overlap(minus, state);
  double phase =
      std::arg((cm_after / cm_before) * std::conj(cp_after / cp_before));
  double expected = std::arg(Complex(-alpha, beta) / Complex(alpha, beta));

  ProtocolReport rep;
  rep.outcome = {state, sub.weight};
  rep.params = {{"alpha", alpha}, {"beta", beta}};
  rep.metrics = {{"phase", phase},
                 {"expected_phase", expected},
                 {"weight", sub.weight}};
  return rep;
}

ProtocolReport kerr_pi_emulation(const StateArray& input) {
  if (input.modes() != 1)
    throw DimensionError("kerr_pi_emulation expects a single-mode state");
  const int d = input.dim(0);
  if (d < 3) throw DimensionError("need cutoff >= 2");
  {
    StateArray probe = input.as_density();
    double high = 0;
    for (int n = 3; n < d; ++n)
      high += probe.density_matrix()(n, n).real();
    if (high / probe.trace() > 1e-10)
      throw ModelError("input has support above two photons");
  }

  const double g = -(std::sqrt(2.0) + 1.0);
  MatrixXcd circuit = MatrixXcd::Zero(d, d);
  MatrixXcd nla = MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    circuit(n, n) = 1.0 - (2.0 + std::sqrt(2.0)) * n;
    nla(n, n) = std::pow(-g, -n);
  }
  HeraldedOutcome step1 = apply_heralded_operator(input, {0}, circuit);
  HeraldedOutcome step2 = apply_heralded_operator(step1.state, {0}, nla);
  // The composite diag(1,-1,-1) differs from the target sign flip of |2> by
  // the deterministic parity rotation e^{i pi n}.
  StateArray out = phase_rotate(step2.state, 0, M_PI);

  ProtocolReport rep;
  rep.outcome = {out, step1.weight * step2.weight};
  rep.params = {};
  rep.metrics = {{"weight", step1.weight * step2.weight}};
  if (input.is_ket()) {
    VectorXcd t = input.amplitudes();
    if (t.size() > 2) t[2] = -t[2];
    StateArray target = StateArray::ket({input.cutoff(0)}, t / t.norm());
    rep.metrics["fidelity_target"] = fidelity(out, target);
  }
  return rep;
}

}  // namespace qopt
