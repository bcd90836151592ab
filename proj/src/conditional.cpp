#include "qopt/conditional.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qopt/channels.hpp"
#include "qopt/states.hpp"

namespace qopt {

namespace {

HeraldedOutcome finish(StateArray state, double weight, double floor) {
  if (!(weight > floor))
    throw ImprobableEventError(
        "conditioning weight " + std::to_string(weight) +
            " fell below the improbable-event floor",
        weight);
  state.renormalize();
  return {std::move(state), weight};
}

StateArray reduced_without(const StateArray& state, int mode) {
  StateArray red = partial_trace(state, {mode});
  red.renormalize();
  return red;
}

// Diagonal POVM weights w_j for registering `outcome` on a detector facing
// j photons.
VectorXd detector_povm(int dim, int outcome, const DetectorModel& det) {
  VectorXd w = VectorXd::Zero(dim);
  auto p_detect = [&](int j, int n) {
    // detects n of j photons with per-photon efficiency eta
    if (n > j) return 0.0;
    double eta = det.efficiency;
    double logc = std::lgamma(j + 1.0) - std::lgamma(n + 1.0) -
                  std::lgamma(j - n + 1.0);
    double le = (n == 0) ? 0.0 : n * std::log(eta);
    double ll = (j == n) ? 0.0 : (j - n) * std::log(1.0 - eta);
    return std::exp(logc + le + ll);
  };
  if (det.kind == DetectorModel::Kind::OnOff) {
    for (int j = 0; j < dim; ++j) {
      double p_noclick = (1.0 - det.dark) * p_detect(j, 0);
      w[j] = (outcome == 0) ? p_noclick : 1.0 - p_noclick;
    }
    return w;
  }
  for (int j = 0; j < dim; ++j) {
    double p = (1.0 - det.dark) * p_detect(j, outcome);
    if (outcome >= 1) p += det.dark * p_detect(j, outcome - 1);
    w[j] = p;
  }
  return w;
}

}  // namespace

void gauss_legendre(int n, VectorXd& nodes, VectorXd& weights) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double off = k / std::sqrt(4.0 * k * k - 1.0);
    j(k - 1, k) = off;
    j(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes = es.eigenvalues();
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double v0 = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v0 * v0;
  }
}

HeraldedOutcome project_fock(const StateArray& state, int mode, int outcome,
                             const DetectorModel& detector, double floor) {
  if (state.modes() < 2)
    throw DimensionError("project_fock consumes a mode; need at least two");
  if (outcome < 0 || outcome > state.cutoff(mode))
    throw DimensionError("detector outcome exceeds the mode cutoff");
  const int d = state.dim(mode);

  if (detector.ideal() && detector.kind == DetectorModel::Kind::PNR) {
    VectorXcd bra = VectorXcd::Zero(d);
    bra[outcome] = 1;
    StateArray cond = contract_bra(state, mode, bra);
    double p = cond.trace() / state.trace();
    return finish(std::move(cond), p, floor);
  }

  VectorXd w = detector_povm(d, outcome, detector);
  StateArray acc = [&] {
    MatrixXcd zero;
    StateArray first;
    bool started = false;
    for (int j = 0; j < d; ++j) {
      if (w[j] <= 0) continue;
      VectorXcd bra = VectorXcd::Zero(d);
      bra[j] = std::sqrt(w[j]);
      StateArray piece = contract_bra(state, mode, bra).as_density();
      if (!started) {
        first = std::move(piece);
        started = true;
      } else {
        first = StateArray::density(
            first.cutoffs(), first.density_matrix() + piece.density_matrix());
      }
    }
    if (!started) throw ImprobableEventError("POVM element vanishes", 0.0);
    return first;
  }();
  double p = acc.trace() / state.trace();

  if (detector.purity < 1.0) {
    StateArray bg = reduced_without(state, mode);
    MatrixXcd mixed = detector.purity * acc.density_matrix() / acc.trace() +
                      (1.0 - detector.purity) * bg.density_matrix();
    acc = StateArray::density(acc.cutoffs(), std::move(mixed));
  }
  return finish(std::move(acc), p, floor);
}

HeraldedOutcome subtract_photon(const StateArray& state, int mode, double floor) {
  StateArray out = apply_mode_operator(state, {mode},
                                       annihilation_op(state.dim(mode)));
  double w = out.trace() / state.trace();
  return finish(std::move(out), w, floor);
}

HeraldedOutcome add_photon(const StateArray& state, int mode, double floor) {
  StateArray out = apply_mode_operator(state, {mode},
                                       creation_op(state.dim(mode)));
  double w = out.trace() / state.trace();
  return finish(std::move(out), w, floor);
}

HeraldedOutcome subtract_photon_physical(const StateArray& state, int mode,
                                         double reflectivity,
                                         const DetectorModel& detector,
                                         double floor) {
  StateArray joint = tensor(state, make_fock(0, state.cutoff(mode)));
  int anc = joint.modes() - 1;
  auto bs = BeamSplitterSpec::from_transmission(mode, anc, 1.0 - reflectivity);
  joint = beam_splitter(joint, bs, 1.0);
  // Outcome 1 is "one photon" for PNR and "click" for OnOff detectors.
  return project_fock(joint, anc, 1, detector, floor);
}

HeraldedOutcome add_photon_physical(const StateArray& state, int mode,
                                    double gain_r, const DetectorModel& detector,
                                    double floor) {
  StateArray joint = tensor(state, make_fock(0, state.cutoff(mode)));
  int anc = joint.modes() - 1;
  joint = two_mode_squeeze(joint, mode, anc, gain_r, 1.0);
  return project_fock(joint, anc, 1, detector, floor);
}

HeraldedOutcome delocalized_subtract(const StateArray& state, int mode_i,
                                     int mode_j, double r_coef, double t_coef,
                                     double phi, double floor) {
  const int di = state.dim(mode_i), dj = state.dim(mode_j);
  MatrixXcd op = r_coef * kron(annihilation_op(di), MatrixXcd::Identity(dj, dj)) +
                 t_coef * std::exp(Complex(0, phi)) *
                     kron(MatrixXcd::Identity(di, di), annihilation_op(dj));
  StateArray out = apply_mode_operator(state, {mode_i, mode_j}, op);
  double w = out.trace() / state.trace();
  return finish(std::move(out), w, floor);
}

HeraldedOutcome operator_superpose(const StateArray& state, int mode, Complex x,
                                   Complex y, LadderKind kind, double floor) {
  const int d = state.dim(mode);
  MatrixXcd ladder =
      kind == LadderKind::Subtract ? annihilation_op(d) : creation_op(d);
  MatrixXcd op = x * ladder + y * MatrixXcd::Identity(d, d);
  StateArray out = apply_mode_operator(state, {mode}, op);
  double w = out.trace() / state.trace();
  return finish(std::move(out), w, floor);
}

HeraldedOutcome apply_heralded_operator(const StateArray& state,
                                        const std::vector<int>& modes,
                                        const MatrixXcd& op, double floor) {
  StateArray out = apply_mode_operator(state, modes, op);
  double w = out.trace() / state.trace();
  return finish(std::move(out), w, floor);
}

HeraldedOutcome homodyne_project(const StateArray& state, int mode, double theta,
                                 double y, double epsilon, double floor,
                                 int gl_nodes) {
  if (state.modes() < 2)
    throw DimensionError("homodyne_project consumes a mode; need at least two");
  const int d = state.dim(mode);
  if (epsilon == 0.0) {
    StateArray cond = contract_bra(state, mode, quadrature_eigenket(d, theta, y));
    double w = cond.trace() / state.trace();
    return finish(std::move(cond), w, floor);
  }
  VectorXd nodes, weights;
  gauss_legendre(gl_nodes, nodes, weights);
  bool started = false;
  StateArray acc;
  for (int k = 0; k < gl_nodes; ++k) {
    double xk = y + epsilon * nodes[k];
    double wk = epsilon * weights[k];
    VectorXcd bra = std::sqrt(wk) * quadrature_eigenket(d, theta, xk);
    StateArray piece = contract_bra(state, mode, bra).as_density();
    if (!started) {
      acc = std::move(piece);
      started = true;
    } else {
      acc = StateArray::density(acc.cutoffs(),
                                acc.density_matrix() + piece.density_matrix());
    }
  }
  double p = acc.trace() / state.trace();
  return finish(std::move(acc), p, floor);
}

}  // namespace qopt
