#include "qopt/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <random>

#include "qopt/channels.hpp"
#include "qopt/states.hpp"

namespace qopt {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                    std::uint32_t(stream), std::uint32_t(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

MaxLikResult maxlik_reconstruct(const QuadratureDataset& data,
                                const ReconstructionConfig& config) {
  if (data.size() == 0) throw DimensionError("empty dataset");
  const int d = config.cutoff + 1;
  const double dx = config.bin_width;
  const int nbins = int(std::ceil(2.0 * config.x_max / dx));

  // Histogram per phase.
  struct Bin {
    double theta, x;
    double frac;
  };
  std::map<std::pair<long long, int>, long long> counts;  // (phase key, bin)
  std::map<long long, double> phase_of;
  long long kept = 0;
  for (size_t i = 0; i < data.size(); ++i) {
    double x = data.x[i];
    if (x <= -config.x_max || x >= config.x_max) continue;
    long long pk = llround(data.theta[i] * 1e12);
    phase_of[pk] = data.theta[i];
    int b = int((x + config.x_max) / dx);
    b = std::clamp(b, 0, nbins - 1);
    ++counts[{pk, b}];
    ++kept;
  }
  if (kept == 0) throw DimensionError("all samples fall outside the histogram");

  // POVM element per occupied bin (midpoint rule), pulled through the loss
  // channel when eta < 1: Pi -> sum_j A_j^dag Pi A_j.
  std::vector<MatrixXcd> povm;
  std::vector<double> freq;
  std::vector<MatrixXcd> kraus;
  if (config.eta < 1.0) kraus = loss_kraus(d, config.eta);
  for (const auto& [key, n] : counts) {
    double theta = phase_of[key.first];
    double xmid = -config.x_max + (key.second + 0.5) * dx;
    VectorXcd v = quadrature_eigenket(d, theta, xmid);
    MatrixXcd pi = dx * (v * v.adjoint());
    if (config.eta < 1.0) {
      MatrixXcd corrected = MatrixXcd::Zero(d, d);
      for (const auto& a : kraus) corrected += a.adjoint() * pi * a;
      pi = std::move(corrected);
    }
    povm.push_back(std::move(pi));
    freq.push_back(double(n) / double(kept));
  }

  MatrixXcd rho = MatrixXcd::Identity(d, d) / double(d);
  MaxLikResult result;
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < config.max_iters; ++it) {
    MatrixXcd r = MatrixXcd::Zero(d, d);
    double ll = 0;
    for (size_t b = 0; b < povm.size(); ++b) {
      double p = (povm[b] * rho).trace().real();
      p = std::max(p, 1e-300);
      ll += freq[b] * std::log(p);
      r += (freq[b] / p) * povm[b];
    }
    result.log_likelihood.push_back(ll);
    result.iterations = it + 1;

    rho = r * rho * r;
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();

    if (it > 0 && ll - prev_ll < config.ll_tol * std::abs(prev_ll)) {
      result.converged = true;
      break;
    }
    prev_ll = ll;
  }
  result.rho = StateArray::density({config.cutoff}, std::move(rho));
  return result;
}

WignerGrid radon_reconstruct(const QuadratureDataset& data, const GridSpec& grid,
                             double kc) {
  if (data.size() == 0) throw DimensionError("empty dataset");
  auto kernel = [kc](double z) {
    double a = kc * z;
    if (std::abs(a) < 1e-6) return kc * kc * (0.5 - a * a / 8.0);
    return (std::cos(a) + a * std::sin(a) - 1.0) / (z * z);
  };
  WignerGrid out;
  out.xs = VectorXd::LinSpaced(grid.nx, grid.xmin, grid.xmax);
  out.ps = VectorXd::LinSpaced(grid.np, grid.pmin, grid.pmax);
  out.w = MatrixXd::Zero(grid.nx, grid.np);
  const double norm = 1.0 / (2.0 * M_PI * double(data.size()));
  std::vector<double> cs(data.size()), sn(data.size());
  for (size_t j = 0; j < data.size(); ++j) {
    cs[j] = std::cos(data.theta[j]);
    sn[j] = std::sin(data.theta[j]);
  }
  for (int i = 0; i < grid.nx; ++i)
    for (int k = 0; k < grid.np; ++k) {
      double acc = 0;
      for (size_t j = 0; j < data.size(); ++j)
        acc += kernel(out.xs[i] * cs[j] + out.ps[k] * sn[j] - data.x[j]);
      out.w(i, k) = norm * acc;
    }
  return out;
}

namespace {

struct PooledMoments {
  double m2 = 0, m4 = 0, m6 = 0, m8 = 0;
  size_t n = 0;
};

PooledMoments pooled_moments(const QuadratureDataset& data) {
  PooledMoments m;
  m.n = data.size();
  for (double x : data.x) {
    double x2 = x * x;
    m.m2 += x2;
    m.m4 += x2 * x2;
    m.m6 += x2 * x2 * x2;
    m.m8 += x2 * x2 * x2 * x2;
  }
  m.m2 /= m.n;
  m.m4 /= m.n;
  m.m6 /= m.n;
  m.m8 /= m.n;
  return m;
}

double fock1_w00(double mu2, double mu4) {
  double a = 2.0 * mu2;
  double c = (4.0 * mu4 / 3.0) / (a * a);
  if (!(c <= 1.0))
    throw ModelError("moments are inconsistent with the attenuated "
                     "single-photon model (mu4 too large)");
  double delta = ((1.0 - c) + std::sqrt(1.0 - c)) / c;
  double s2 = a / (1.0 + delta);
  return (1.0 - delta) / (M_PI * s2);
}

}  // namespace

Fock1Estimate estimate_fock1(const QuadratureDataset& data) {
  if (data.size() < 2) throw DimensionError("dataset too small");
  PooledMoments m = pooled_moments(data);
  double a = 2.0 * m.m2;
  double c = (4.0 * m.m4 / 3.0) / (a * a);
  if (!(c <= 1.0))
    throw ModelError("moments are inconsistent with the attenuated "
                     "single-photon model (mu4 too large)");
  Fock1Estimate est;
  est.delta = ((1.0 - c) + std::sqrt(1.0 - c)) / c;
  est.sigma2 = a / (1.0 + est.delta);
  est.w00 = (1.0 - est.delta) / (M_PI * est.sigma2);

  // cov(mu_k, mu_l) = (mu_{k+l} - mu_k mu_l)/N; gradient by central difference.
  double c22 = (m.m4 - m.m2 * m.m2) / m.n;
  double c24 = (m.m6 - m.m2 * m.m4) / m.n;
  double c44 = (m.m8 - m.m4 * m.m4) / m.n;
  double h2 = std::max(1e-8, 1e-6 * m.m2);
  double h4 = std::max(1e-8, 1e-6 * m.m4);
  double d2 = (fock1_w00(m.m2 + h2, m.m4) - fock1_w00(m.m2 - h2, m.m4)) / (2 * h2);
  double d4 = (fock1_w00(m.m2, m.m4 + h4) - fock1_w00(m.m2, m.m4 - h4)) / (2 * h4);
  double var = d2 * d2 * c22 + 2.0 * d2 * d4 * c24 + d4 * d4 * c44;
  est.w00_stderr = std::sqrt(std::max(var, 0.0));
  return est;
}

std::vector<double> bootstrap(
    const QuadratureDataset& data,
    const std::function<double(const QuadratureDataset&)>& fn, int replicates,
    std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(replicates);
  const size_t n = data.size();
  for (int b = 0; b < replicates; ++b) {
    auto rng = seeded_rng(seed, b);
    std::uniform_int_distribution<size_t> pick(0, n - 1);
    QuadratureDataset re;
    re.seed = seed;
    re.model = data.model;
    re.theta.resize(n);
    re.x.resize(n);
    for (size_t i = 0; i < n; ++i) {
      size_t j = pick(rng);
      re.theta[i] = data.theta[j];
      re.x[i] = data.x[j];
    }
    out.push_back(fn(re));
  }
  return out;
}

MatrixXcd ProcessTensor::apply(const MatrixXcd& rho) const {
  const int d = cutoff + 1;
  if (rho.rows() != d || rho.cols() != d)
    throw DimensionError("density matrix does not match the tensor cutoff");
  MatrixXcd out = MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Complex acc = 0;
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) acc += at(k, l, m, n) * rho(m, n);
      out(k, l) = acc;
    }
  return out;
}

ProcessTensor csqpt(const ProcessFn& process, int cutoff,
                    const ProbeSpec& probes) {
  const int d = cutoff + 1;
  const int degree = probes.degree > 0 ? probes.degree : 2 * cutoff;
  const int pcut = probes.probe_cutoff > 0 ? probes.probe_cutoff : cutoff + 12;

  // Monomial basis alpha^m conj(alpha)^n with m + n <= degree.
  std::vector<std::pair<int, int>> monomials;
  for (int m = 0; m <= degree; ++m)
    for (int n = 0; n + m <= degree; ++n) monomials.emplace_back(m, n);

  // Probe list and responses F_kl(alpha) = e^{|a|^2} <k| E(|a><a|) |l> * weight.
  std::vector<Complex> alphas;
  for (double r : probes.radii) {
    if (r == 0.0) {
      alphas.emplace_back(0.0, 0.0);
      continue;
    }
    for (int p = 0; p < probes.n_phases; ++p) {
      double phi = 2.0 * M_PI * p / probes.n_phases;
      alphas.push_back(r * std::exp(Complex(0, phi)));
    }
  }
  if (alphas.size() < monomials.size())
    throw DimensionError("not enough probe states for the requested fit degree");

  MatrixXcd design(alphas.size(), monomials.size());
  std::vector<MatrixXcd> responses;  // d x d blocks per probe
  responses.reserve(alphas.size());
  for (size_t row = 0; row < alphas.size(); ++row) {
    Complex a = alphas[row];
    std::vector<Complex> ap(degree + 1), cp(degree + 1);
    ap[0] = cp[0] = 1.0;
    for (int k = 1; k <= degree; ++k) {
      ap[k] = ap[k - 1] * a;
      cp[k] = cp[k - 1] * std::conj(a);
    }
    for (size_t col = 0; col < monomials.size(); ++col) {
      auto [m, n] = monomials[col];
      design(row, col) = ap[m] * cp[n];
    }
    HeraldedOutcome out = process(make_coherent(a, pcut));
    MatrixXcd rho_out = out.state.to_density();
    rho_out /= rho_out.trace().real();
    responses.push_back(std::exp(std::norm(a)) * out.weight *
                        rho_out.topLeftCorner(d, d));
  }

  Eigen::ColPivHouseholderQR<MatrixXcd> qr(design);

  ProcessTensor tensor;
  tensor.cutoff = cutoff;
  tensor.mat = MatrixXcd::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  std::vector<double> lg(2 * degree + 2);
  for (size_t k = 0; k < lg.size(); ++k) lg[k] = std::lgamma(k + 1.0);

  VectorXcd rhs(alphas.size());
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      for (size_t row = 0; row < alphas.size(); ++row)
        rhs[row] = responses[row](k, l);
      VectorXcd coef = qr.solve(rhs);
      for (size_t col = 0; col < monomials.size(); ++col) {
        auto [m, n] = monomials[col];
        if (m > cutoff || n > cutoff) continue;
        // E[k,l][m,n] = sqrt(m! n!) c_{mn}
        tensor.mat(Eigen::Index(k) * d + l, Eigen::Index(m) * d + n) =
            std::exp(0.5 * (lg[m] + lg[n])) * coef[col];
      }
    }
  return tensor;
}

}  // namespace qopt
