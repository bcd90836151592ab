#include "qopt/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qopt/channels.hpp"
#include "qopt/phase_space.hpp"

namespace qopt {

namespace {

constexpr int kCdfNodes = 4096;
constexpr double kXRange = 8.0;
constexpr size_t kChunk = 1024;

struct CdfTable {
  VectorXd xs;
  VectorXd cdf;  // normalized to 1

  double sample(double u) const {
    auto it = std::lower_bound(cdf.data(), cdf.data() + cdf.size(), u);
    Eigen::Index hi = std::clamp<Eigen::Index>(it - cdf.data(), 1, cdf.size() - 1);
    double c0 = cdf[hi - 1], c1 = cdf[hi];
    double t = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    return xs[hi - 1] + t * (xs[hi] - xs[hi - 1]);
  }
};

CdfTable build_cdf(const StateArray& state, double theta) {
  CdfTable t;
  t.xs = VectorXd::LinSpaced(kCdfNodes, -kXRange, kXRange);
  VectorXd pdf = marginal(state, 0, theta, t.xs);
  t.cdf.resize(kCdfNodes);
  t.cdf[0] = 0;
  for (int i = 1; i < kCdfNodes; ++i)
    t.cdf[i] = t.cdf[i - 1] +
               0.5 * (pdf[i] + pdf[i - 1]) * (t.xs[i] - t.xs[i - 1]);
  double total = t.cdf[kCdfNodes - 1];
  if (total <= 0) throw NumericalError("marginal integrates to zero");
  t.cdf /= total;
  return t;
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(chunk), std::uint32_t(chunk >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<double> schedule_fixed(double theta, size_t n) {
  return std::vector<double>(n, theta);
}

std::vector<double> schedule_scan(int n_phases, size_t samples_per_phase) {
  std::vector<double> out;
  out.reserve(n_phases * samples_per_phase);
  for (size_t s = 0; s < samples_per_phase; ++s)
    for (int k = 0; k < n_phases; ++k) out.push_back(k * M_PI / n_phases);
  return out;
}

std::vector<double> schedule_random(size_t n, std::uint64_t seed) {
  std::vector<double> out(n);
  for (size_t c = 0; c * kChunk < n; ++c) {
    auto rng = chunk_rng(seed ^ 0x7068617365ULL, c);
    std::uniform_real_distribution<double> dist(0.0, M_PI);
    for (size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i)
      out[i] = dist(rng);
  }
  return out;
}

QuadratureDataset sample_quadratures(const StateArray& state,
                                     const std::vector<double>& thetas,
                                     const ImperfectionModel& model,
                                     std::uint64_t seed) {
  if (state.modes() != 1)
    throw DimensionError("sample_quadratures expects a single-mode state");
  StateArray lossy = model.eta < 1.0 ? loss(state, {0, model.eta}) : state;

  std::map<double, CdfTable> tables;
  for (double th : thetas)
    if (!tables.count(th)) tables.emplace(th, build_cdf(lossy, th));

  QuadratureDataset out;
  out.theta = thetas;
  out.x.resize(thetas.size());
  out.seed = seed;
  out.model = model;

  const size_t n = thetas.size();
  for (size_t c = 0; c * kChunk < n; ++c) {
    auto rng = chunk_rng(seed, c);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (size_t i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
      double x = tables.at(thetas[i]).sample(uni(rng));
      if (model.electronic_noise > 0) x += model.electronic_noise * gauss(rng);
      out.x[i] = x;
    }
  }
  return out;
}

}  // namespace qopt
