#pragma once

#include "qopt/state.hpp"

namespace qopt {

// Single-mode constructors. Truncation leakage (probability above the cutoff)
// beyond `tol` raises TruncationError; kept amplitudes are renormalized.
StateArray make_fock(int n, int cutoff);
StateArray make_coherent(Complex alpha, int cutoff, double tol = default_leakage_tol());
StateArray make_squeezed_vacuum(double r, int cutoff, double tol = default_leakage_tol());
StateArray make_thermal(double nbar, int cutoff, double tol = default_leakage_tol());
// (|alpha> + e^{i theta} |-alpha>) / sqrt(2 c),  c = 1 + cos(theta) e^{-2|alpha|^2}.
StateArray make_cat(Complex alpha, double theta, int cutoff,
                    double tol = default_leakage_tol());

// Two-mode squeezed vacuum sum_k tanh^k(r) |k,k> / cosh(r).
StateArray make_epr(double r, int cutoff, double tol = default_leakage_tol());

// Values psi_n(x) for n = 0..dim-1 of the quadrature-basis Fock wavefunctions,
// psi_n(x) = pi^{-1/4} (2^n n!)^{-1/2} H_n(x) exp(-x^2/2), evaluated with the
// stable three-term recurrence.
VectorXd fock_wavefunctions(int dim, double x);

// <n|x_theta> = e^{i n theta} psi_n(x).
VectorXcd quadrature_eigenket(int dim, double theta, double x);

}  // namespace qopt
