#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsjump::quad {

struct Options {
    double abs_tol = 0.0;        // absolute tolerance (0 = relative only)
    double rel_tol = 1e-9;       // relative tolerance
    long max_intervals = 4000;   // subdivision budget
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;      // estimated
    bool converged = false;
    long evals = 0;

    double require(double scale_hint = 0.0) const;
};

// Raised when an integral cannot be resolved to the requested tolerance.
struct QuadratureError : std::runtime_error {
    double value;
    double achieved_error;
    QuadratureError(const std::string& what, double v, double e)
        : std::runtime_error(what), value(v), achieved_error(e) {}
};

using Fn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod 7/15 on a finite interval.
Result integrate(const Fn& f, double a, double b, const Options& opt = {});

// Same, with interior breakpoints (sorted or not; duplicates ignored).
Result integrate_pieces(const Fn& f, std::vector<double> pts, const Options& opt = {});

// Integral over (a, +inf) via the substitution t = a + s/(1-s).
Result integrate_to_inf(const Fn& f, double a, const Options& opt = {});

// Integral over (-inf, +inf) with interior breakpoints.
Result integrate_real_line(const Fn& f, std::vector<double> pts, const Options& opt = {});

// Geometric refinement points around x at scales x +- scale*2^-k. Helper for
// integrands peaked at several length scales.
void add_scale_points(std::vector<double>& pts, double x, double scale,
                      double lo, double hi, int levels = 10);

} // namespace hsjump::quad
