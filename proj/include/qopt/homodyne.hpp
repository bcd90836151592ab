#pragma once

#include <cstdint>
#include <string>

#include "qopt/state.hpp"

namespace qopt {

struct ImperfectionModel {
  double eta = 1.0;              // detection efficiency (applied as loss)
  double electronic_noise = 0.0; // std dev of additive Gaussian noise
};

struct QuadratureDataset {
  std::vector<double> theta;
  std::vector<double> x;
  // metadata carried into the JSON sidecar
  std::uint64_t seed = 0;
  ImperfectionModel model;
  std::string source;
  size_t size() const { return x.size(); }
};

std::vector<double> schedule_fixed(double theta, size_t n);
// n_phases equally spaced in [0, pi), samples_per_phase each, interleaved.
std::vector<double> schedule_scan(int n_phases, size_t samples_per_phase);
std::vector<double> schedule_random(size_t n, std::uint64_t seed);

// Draws homodyne samples from a single-mode state: applies the loss eta,
// inverse-CDF samples the rotated marginal (4096 nodes on [-8, 8], linear
// interpolation), then adds electronic noise. Sampling is chunked with
// counter-derived substreams, so results depend only on (state, schedule,
// model, seed).
QuadratureDataset sample_quadratures(const StateArray& state,
                                     const std::vector<double>& thetas,
                                     const ImperfectionModel& model,
                                     std::uint64_t seed);

}  // namespace qopt
