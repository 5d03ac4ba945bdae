#pragma once

#include <vector>

#include "hsjump/kernel.hpp"

namespace hsjump {

// Test functions for the generator. PowerDistance is g_p(y) = y_d^p,
// TruncatedPower is h_{p,R} = y_d^p 1_{D(R,R)}, SmoothBump is a C^2 radial
// profile (1 - |y-c|^2/s^2)^3 supported on B(c, s).
struct TestFunction {
    enum class Kind { PowerDistance, TruncatedPower, SmoothBump };
    Kind kind = Kind::PowerDistance;
    double p = 0.5;
    double R = 1.0;           // box size for TruncatedPower
    HPoint center;            // SmoothBump
    double radius = 1.0;
    double amplitude = 1.0;

    static TestFunction power(double p);
    static TestFunction truncated_power(double p, double R);
    static TestFunction bump(HPoint center, double radius, double amplitude = 1.0);

    double value(const HPoint& y) const;
    double grad_d(const HPoint& y) const;  // d-th partial (lateral parts vanish
                                           // at the evaluation points we use)
};

struct PVSchedule {
    double rho = 0.5;          // geometric ratio of the epsilon sequence
    int count = 8;             // number of shells
    bool richardson = true;    // extrapolate the epsilon bias
};

struct PVResult {
    double value = 0.0;           // L^B_alpha f(x)
    double value_killed = 0.0;    // L^B f(x) = value - kappa(x) f(x)
    std::vector<double> partials; // running values down the epsilon sequence
    bool converged = false;
    double tail_ratio = 0.0;      // |last shell| / |previous shell|
};

// Principal-value evaluation of the generator by shell decomposition: the
// outer region is integrated directly; inside B(x, x_d/2) the integrand is
// gradient-compensated when alpha >= 1 (absolutely convergent when alpha < 1).
// d = 2 evaluation requires x~ = 0 (all built-in data are laterally symmetric,
// so this is the general case up to translation).
PVResult apply_pv_generator(const KernelSpec& s, const TestFunction& f, const HPoint& x,
                            const PVSchedule& sched = {}, QuadOpts opt = {});

struct TwoEstimatesResult {
    double tail_top = 0.0;     // integral over {z_d > R/2}
    double tail_side = 0.0;    // integral over {0 < z_d < R, |z~| > R/2}
    double bound = 0.0;        // Phi(r/y_d) R^{q-alpha+beta2} r^{-beta2}
    double ratio = 0.0;        // (tail_top + tail_side) / bound
};
// Tail integrals of Lemma-type two-estimates; spec model must carry a Phi.
TwoEstimatesResult check_lemma_two_estimates(const KernelSpec& s, double q, double r, double R,
                                             double yd, QuadOpts opt = {});

struct KeyIntegralResult {
    double integral = 0.0;
    int regime = 0;        // -1: k+b2 <= a, 0: middle, +1: k+b1 >= a
    double bound = 0.0;
    double ratio = 0.0;
};
// The key integral int_{D_x(R,R), |y-x| >= x_d/2} Phi(|x-y|^2/(x_d y_d))
// |x-y|^{k-d-alpha} dy with its three-regime comparator.
KeyIntegralResult check_lemma_1n(const KernelSpec& s, double k, double xd, double R,
                                 QuadOpts opt = {});

} // namespace hsjump
