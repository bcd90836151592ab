#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qopt/channels.hpp>
#include <qopt/metrics.hpp>
#include <qopt/states.hpp>

using namespace qopt;

TEST_CASE("beam splitter is unitary and preserves total photon number") {
  int cutoff = 8;
  StateArray in = tensor(make_fock(3, cutoff), make_fock(2, cutoff));
  StateArray out = beam_splitter(in, {0, 1, 0.7, 0.3});
  CHECK(out.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
  // total photon number is conserved exactly
  double n_tot = mean_photon(out, 0) + mean_photon(out, 1);
  CHECK(n_tot == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("beam splitter splits a coherent state without entangling") {
  Complex a(0.8, 0.3);
  double T = 0.6;
  auto bs = BeamSplitterSpec::from_transmission(0, 1, T);
  CHECK(bs.transmission() == doctest::Approx(T).epsilon(1e-12));
  StateArray in = tensor(make_coherent(a, 16), make_fock(0, 16));
  StateArray out = beam_splitter(in, bs);
  CHECK(entanglement_entropy(out, {0}) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(mean_photon(out, 0) == doctest::Approx(T * std::norm(a)).epsilon(1e-8));
  CHECK(mean_photon(out, 1) == doctest::Approx((1 - T) * std::norm(a)).epsilon(1e-8));
  // each output arm is itself coherent
  StateArray arm0 = partial_trace(out, {1});
  CHECK(arm0.purity() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Hong-Ou-Mandel dip is exact on a balanced splitter") {
  StateArray in = tensor(make_fock(1, 4), make_fock(1, 4));
  StateArray out = beam_splitter(in, BeamSplitterSpec::balanced(0, 1));
  CHECK(std::abs(out.amplitude({1, 1})) < 1e-13);
  CHECK(std::norm(out.amplitude({2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::norm(out.amplitude({0, 2})) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("single-mode squeezing reproduces the constructor") {
  StateArray sq1 = single_mode_squeeze(make_fock(0, 30), 0, 0.5, 0.0);
  StateArray sq2 = make_squeezed_vacuum(0.5, 30);
  CHECK(fidelity(sq1, sq2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(quadrature_variance(sq1, 0, 0.0) ==
        doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-7));
}

TEST_CASE("two-mode squeezing of the double vacuum gives the EPR state") {
  StateArray vac2 = tensor(make_fock(0, 20), make_fock(0, 20));
  StateArray tm = two_mode_squeeze(vac2, 0, 1, 0.5);
  CHECK(fidelity(tm, make_epr(0.5, 20)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("displacement of the vacuum gives a coherent state") {
  Complex a(0.7, -0.2);
  StateArray d = displace(make_fock(0, 20), 0, a);
  CHECK(fidelity(d, make_coherent(a, 20)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phase rotation moves the quadrature angle") {
  StateArray s = make_squeezed_vacuum(0.4, 25);
  StateArray rot = phase_rotate(s, 0, 0.3);
  CHECK(quadrature_variance(rot, 0, 0.3) ==
        doctest::Approx(quadrature_variance(s, 0, 0.0)).epsilon(1e-10));
}

TEST_CASE("loss channel: Poissonian mean scaling and composition") {
  StateArray c = make_coherent(1.2, 25);
  StateArray l = loss(c, {0, 0.7});
  CHECK(l.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean_photon(l, 0) == doctest::Approx(0.7 * 1.44).epsilon(1e-9));
  // coherent states stay pure under loss
  CHECK(fidelity(l, make_coherent(1.2 * std::sqrt(0.7), 25)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // loss(eta1) then loss(eta2) == loss(eta1*eta2)
  StateArray f1 = loss(loss(make_fock(3, 6).as_density(), {0, 0.9}), {0, 0.8});
  StateArray f2 = loss(make_fock(3, 6).as_density(), {0, 0.72});
  CHECK((f1.density_matrix() - f2.density_matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("loss on a Fock state is binomial") {
  double eta = 0.6;
  StateArray l = loss(make_fock(2, 4), {0, eta});
  // p(n) = C(2,n) eta^n (1-eta)^{2-n}
  CHECK(l.density_matrix()(2, 2).real() == doctest::Approx(eta * eta).epsilon(1e-12));
  CHECK(l.density_matrix()(1, 1).real() ==
        doctest::Approx(2 * eta * (1 - eta)).epsilon(1e-12));
  CHECK(l.density_matrix()(0, 0).real() ==
        doctest::Approx((1 - eta) * (1 - eta)).epsilon(1e-12));
  // eta = 1 is the identity
  StateArray id = loss(make_fock(2, 4), {0, 1.0});
  CHECK(fidelity(id, make_fock(2, 4)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("channels preserve trace, hermiticity and positivity") {
  StateArray rho = make_cat(1.0, M_PI, 20).as_density();
  rho = loss(rho, {0, 0.85});
  rho = single_mode_squeeze(rho, 0, 0.2, 0.5);
  rho = phase_rotate(rho, 0, 1.1);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rho.hermiticity_error() < 1e-12);
  CHECK(rho.min_eigenvalue() > -1e-10);
}

TEST_CASE("leakage guard fires when a unitary pushes population into the cutoff") {
  StateArray near_full = make_coherent(1.8, 8, 1.0);
  CHECK_THROWS_AS(single_mode_squeeze(near_full, 0, 0.8, 0.0), TruncationError);
}

TEST_CASE("CV teleportation approaches identity as the resource squeezing grows") {
  StateArray in = make_coherent(Complex(0.5, 0.3), 12);
  StateArray out_lo = teleport_cv(in, 0, 1.0);
  StateArray out_hi = teleport_cv(in, 0, 2.5);
  double f_lo = fidelity(out_lo, in);
  double f_hi = fidelity(out_hi, in);
  CHECK(f_hi > f_lo);
  CHECK(f_hi > 0.98);
  // classical limit for coherent input is 1/(1 + e^{-2r})
  CHECK(f_lo == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-2));
}
