#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qopt/metrics.hpp>
#include <qopt/states.hpp>

using namespace qopt;

TEST_CASE("coherent state amplitudes e^{-|a|^2/2} a^n / sqrt(n!)") {
  StateArray s = make_coherent(1.0, 20);
  // c_0 = c_1 = e^{-1/2}
  CHECK(s.amplitude({0}).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(s.amplitude({1}).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(s.amplitude({4}).real() ==
        doctest::Approx(std::exp(-0.5) / std::sqrt(24.0)).epsilon(1e-12));
  CHECK(mean_photon(s, 0) == doctest::Approx(1.0).epsilon(1e-9));
  // Poissonian statistics
  CHECK(fano_factor(s, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezed vacuum amplitude ratios and quadrature variances") {
  double r = 0.5;
  StateArray s = make_squeezed_vacuum(r, 30);
  Complex ratio = s.amplitude({2}) / s.amplitude({0});
  CHECK(ratio.real() ==
        doctest::Approx(-std::tanh(r) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(s.amplitude({1})) == 0.0);
  CHECK(quadrature_variance(s, 0, 0.0) ==
        doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-10));
  CHECK(quadrature_variance(s, 0, M_PI / 2) ==
        doctest::Approx(0.5 * std::exp(2.0 * r)).epsilon(1e-7));
  // -10 log10 e^{-2r} in dB
  CHECK(squeezing_db(s, 0, 0.0) ==
        doctest::Approx(-10.0 * std::log10(std::exp(-2.0 * r))).epsilon(1e-8));
  CHECK(mean_photon(s, 0) == doctest::Approx(std::sinh(r) * std::sinh(r)).epsilon(1e-10));
}

TEST_CASE("thermal state occupation and super-Poissonian Fano factor") {
  StateArray s = make_thermal(0.5, 40);
  CHECK(mean_photon(s, 0) == doctest::Approx(0.5).epsilon(1e-10));
  // Bose-Einstein: Var = nbar(nbar+1), Fano = 1 + nbar
  CHECK(fano_factor(s, 0) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("Fano factor of the vacuum is refused") {
  StateArray v = make_fock(0, 5);
  CHECK_THROWS_AS(fano_factor(v, 0), ModelError);
}

TEST_CASE("EPR reduces to a thermal state with nbar = sinh^2 r") {
  double r = 0.7;
  StateArray epr = make_epr(r, 30);
  StateArray red = partial_trace(epr, {1});
  double nbar = std::sinh(r) * std::sinh(r);
  StateArray th = make_thermal(nbar, 30);
  CHECK(fidelity(red, th) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mean_photon(red, 0) == doctest::Approx(nbar).epsilon(1e-8));
}

TEST_CASE("EPR entanglement entropy G log G - (G-1) log(G-1), base 2") {
  // G = cosh^2 r = 2  ->  E = 2 log2(2) - 1 log2(1) = 2 bits
  double r = std::acosh(std::sqrt(2.0));
  StateArray epr = make_epr(r, 24);
  CHECK(entanglement_entropy(epr, {0}) == doctest::Approx(2.0).epsilon(1e-6));
  // generic r against the closed form
  r = 0.6;
  double g = std::cosh(r) * std::cosh(r);
  double expected = g * std::log2(g) - (g - 1.0) * std::log2(g - 1.0);
  CHECK(entanglement_entropy(make_epr(r, 24), {0}) ==
        doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("cat state normalization and parity support") {
  double a = 1.2;
  StateArray odd = make_cat(a, M_PI, 25);
  StateArray even = make_cat(a, 0.0, 25);
  CHECK(odd.trace() == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 0; n <= 25; n += 2) CHECK(std::abs(odd.amplitude({n})) < 1e-12);
  for (int n = 1; n <= 25; n += 2) CHECK(std::abs(even.amplitude({n})) < 1e-12);
  // |<a|-a>|^2 = e^{-4 a^2}
  StateArray plus = make_coherent(a, 25), minus = make_coherent(-a, 25);
  CHECK(std::norm(overlap(plus, minus)) ==
        doctest::Approx(std::exp(-4.0 * a * a)).epsilon(1e-9));
}

TEST_CASE("truncation leakage guard") {
  CHECK_THROWS_AS(make_coherent(3.0, 4), TruncationError);
  CHECK_NOTHROW(make_coherent(3.0, 40));
  CHECK_THROWS_AS(make_squeezed_vacuum(1.5, 6), TruncationError);
}

TEST_CASE("tensor and partial trace round trip") {
  StateArray a = make_coherent(0.4, 6);
  StateArray b = make_fock(1, 5);
  StateArray joint = tensor(a, b);
  CHECK(joint.modes() == 2);
  CHECK(joint.amplitude({2, 1}) ==
        a.amplitudes()[2] * b.amplitudes()[1]);
  StateArray back = partial_trace(joint, {1});
  CHECK(fidelity(back, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-mode operator application agrees with an explicit Kronecker product") {
  StateArray a = make_coherent(0.5, 6);
  StateArray b = make_squeezed_vacuum(0.2, 6);
  StateArray joint = tensor(a, b);
  MatrixXcd op = kron(annihilation_op(7), creation_op(7));
  StateArray via_modes = apply_mode_operator(joint, {0, 1}, op);
  VectorXcd direct = op * joint.amplitudes();
  CHECK((via_modes.amplitudes() - direct).norm() < 1e-14);

  // same on the swapped mode order
  MatrixXcd op_swapped = kron(creation_op(7), annihilation_op(7));
  StateArray via_swapped = apply_mode_operator(joint, {1, 0}, op);
  VectorXcd direct_swapped = op_swapped * joint.amplitudes();
  CHECK((via_swapped.amplitudes() - direct_swapped).norm() < 1e-14);
}

TEST_CASE("ladder commutator is the identity below the cutoff") {
  const int d = 12;
  MatrixXcd comm = annihilation_op(d) * creation_op(d) -
                   creation_op(d) * annihilation_op(d);
  for (int n = 0; n < d - 1; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));
  // the top level is the truncation artifact
  CHECK(comm(d - 1, d - 1).real() == doctest::Approx(1.0 - d));
}

TEST_CASE("fock wavefunctions are orthonormal under quadrature integration") {
  const int d = 8;
  const int n_grid = 2001;
  MatrixXd gram = MatrixXd::Zero(d, d);
  double dx = 16.0 / (n_grid - 1);
  for (int i = 0; i < n_grid; ++i) {
    double x = -8.0 + i * dx;
    VectorXd psi = fock_wavefunctions(d, x);
    gram += dx * psi * psi.transpose();
  }
  CHECK((gram - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("density round trip and diagnostics") {
  StateArray s = make_cat(1.0, M_PI, 12);
  StateArray rho = s.as_density();
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.hermiticity_error() < 1e-15);
  CHECK(rho.min_eigenvalue() > -1e-12);
  CHECK(fidelity(rho, s) == doctest::Approx(1.0).epsilon(1e-12));
}
