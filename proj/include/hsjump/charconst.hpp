#pragma once

#include "hsjump/kernel.hpp"
#include "hsjump/quadrature.hpp"

namespace hsjump {

// C(alpha, q, B) = int_0^1 (s^q - 1)(1 - s^{a-q-1}) (1-s)^{-1-a} B(1, s) ds in
// d = 1; in d >= 2 the B factor is evaluated along ((1-s) u~, 1) vs (0~, s)
// and integrated over u~ (reduced to the radial variable for the built-in
// models). Finite for q in (-1 + beta2~, alpha - beta2~), strictly increasing
// on [(alpha-1)+, alpha - beta2~), and zero exactly at q = 0 and q = alpha-1.
struct BigCResult {
    double value = 0.0;
    double abs_err = 0.0;
    bool converged = false;
};

BigCResult big_c(const KernelSpec& s, double q, QuadOpts opt = {});

// independent route: substitution s = 1 - exp(-t) (d = 1 only)
double big_c_substituted_1d(const KernelSpec& s, double q, QuadOpts opt = {});

// independent route for d >= 2: swapped integration order (s outer, u inner)
double big_c_swapped(const KernelSpec& s, double q, QuadOpts opt = {});

// closed form for B = 1, d = 1 (alpha != 1):
//   C = Gamma(-a)[Gamma(q+1)/Gamma(q+1-a) + Gamma(a-q)/Gamma(-q)] + 1/a
double big_c_closed_form_unit_1d(double alpha, double q);

struct SolvePResult {
    double p = 0.0;
    double residual = 0.0;   // |C(alpha,p,B) - kappa|
    int iterations = 0;
    bool ill_conditioned = false;  // p within 1e-3 of the right endpoint
};

// Unique p in [(alpha-1)+, alpha - beta2~) with C(alpha, p, B) = kappa, by
// bisection on the strictly increasing branch. kappa = 0 returns the left
// endpoint exactly. Throws std::range_error when kappa exceeds the probed
// supremum near the right endpoint.
SolvePResult solve_p(const KernelSpec& s, double kappa, double tol = 1e-7, QuadOpts opt = {});

// C evaluated near the right endpoint; reported, not claimed as the limit
double probe_sup_c(const KernelSpec& s, QuadOpts opt = {});

} // namespace hsjump
