#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include <qopt/homodyne.hpp>
#include <qopt/metrics.hpp>
#include <qopt/states.hpp>

using namespace qopt;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double var(const std::vector<double>& v) {
  double m = mean(v);
  double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / v.size();
}

}  // namespace

TEST_CASE("phase schedules") {
  auto fixed = schedule_fixed(0.3, 100);
  CHECK(fixed.size() == 100);
  CHECK(fixed[0] == 0.3);
  CHECK(fixed[99] == 0.3);

  auto scan = schedule_scan(4, 3);
  CHECK(scan.size() == 12);
  // interleaved: 0, pi/4, pi/2, 3pi/4, 0, ...
  CHECK(scan[0] == doctest::Approx(0.0));
  CHECK(scan[1] == doctest::Approx(M_PI / 4));
  CHECK(scan[4] == doctest::Approx(0.0));

  auto rnd = schedule_random(1000, 5);
  CHECK(rnd.size() == 1000);
  for (double th : rnd) {
    CHECK(th >= 0.0);
    CHECK(th < M_PI);
  }
  // reproducible
  CHECK(schedule_random(1000, 5) == rnd);
}

TEST_CASE("vacuum samples have variance one half") {
  StateArray vac = make_fock(0, 5);
  auto data = sample_quadratures(vac, schedule_fixed(0.0, 100000), {}, 11);
  CHECK(mean(data.x) == doctest::Approx(0.0).epsilon(1).scale(0.01));
  CHECK(var(data.x) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("coherent-state samples track the rotated mean") {
  Complex a(0.9, 0.4);
  StateArray c = make_coherent(a, 25);
  for (double th : {0.0, 1.1}) {
    auto data = sample_quadratures(c, schedule_fixed(th, 60000), {}, 3);
    double expect = std::sqrt(2.0) * (a * std::exp(Complex(0, -th))).real();
    CHECK(mean(data.x) == doctest::Approx(expect).epsilon(0.02));
    CHECK(var(data.x) == doctest::Approx(0.5).epsilon(0.03));
  }
}

TEST_CASE("squeezed samples show the programmed variances and loss degrades them") {
  double r = 0.5;
  StateArray sq = make_squeezed_vacuum(r, 30);
  auto lo = sample_quadratures(sq, schedule_fixed(0.0, 100000), {}, 21);
  CHECK(var(lo.x) == doctest::Approx(0.5 * std::exp(-2 * r)).epsilon(0.03));
  auto hi = sample_quadratures(sq, schedule_fixed(M_PI / 2, 100000), {}, 22);
  CHECK(var(hi.x) == doctest::Approx(0.5 * std::exp(2 * r)).epsilon(0.03));

  ImperfectionModel model{0.8, 0.0};
  auto lossy = sample_quadratures(sq, schedule_fixed(0.0, 100000), model, 23);
  double expect = 0.8 * 0.5 * std::exp(-2 * r) + 0.2 * 0.5;
  CHECK(var(lossy.x) == doctest::Approx(expect).epsilon(0.03));
}

TEST_CASE("electronic noise adds in quadrature") {
  StateArray vac = make_fock(0, 5);
  ImperfectionModel model{1.0, 0.3};
  auto data = sample_quadratures(vac, schedule_fixed(0.0, 100000), model, 31);
  CHECK(var(data.x) == doctest::Approx(0.5 + 0.09).epsilon(0.03));
}

TEST_CASE("single-photon samples reproduce |psi_1(x)|^2 statistics") {
  StateArray one = make_fock(1, 5);
  auto data = sample_quadratures(one, schedule_fixed(0.0, 200000), {}, 41);
  // <x^2> = 3/2, <x^4> = 15/4 for |1>
  double m2 = 0, m4 = 0;
  for (double x : data.x) {
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m2 /= data.size();
  m4 /= data.size();
  CHECK(m2 == doctest::Approx(1.5).epsilon(0.02));
  CHECK(m4 == doctest::Approx(3.75).epsilon(0.03));
  // the density vanishes at the origin, so nothing lands near zero
  size_t near_zero = 0;
  for (double x : data.x) {
    if (std::abs(x) < 0.01) ++near_zero;
  }
  CHECK(near_zero < data.size() / 2000);
}

TEST_CASE("determinism and seed separation") {
  StateArray sq = make_squeezed_vacuum(0.3, 25);
  auto a = sample_quadratures(sq, schedule_scan(6, 100), {}, 99);
  auto b = sample_quadratures(sq, schedule_scan(6, 100), {}, 99);
  CHECK(a.x == b.x);
  CHECK(a.theta == b.theta);
  auto c = sample_quadratures(sq, schedule_scan(6, 100), {}, 100);
  CHECK(a.x != c.x);
  CHECK(a.seed == 99);
}

TEST_CASE("multimode input is rejected") {
  StateArray joint = tensor(make_fock(0, 3), make_fock(0, 3));
  CHECK_THROWS_AS(sample_quadratures(joint, schedule_fixed(0.0, 10), {}, 1),
                  DimensionError);
}
