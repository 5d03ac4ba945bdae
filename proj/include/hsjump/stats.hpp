#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hsjump::stats {

// Welford accumulator.
struct Running {
    long n = 0;
    double mean = 0.0, m2 = 0.0;
    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / (double)n;
        m2 += d * (x - mean);
    }
    void merge(const Running& o);
    double variance() const { return n > 1 ? m2 / (double)(n - 1) : 0.0; }
    double std_error() const;
};

struct Interval {
    double lo = 0.0, hi = 1.0;
    double center() const { return 0.5 * (lo + hi); }
    double half_width() const { return 0.5 * (hi - lo); }
    bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

// Wilson score interval for a binomial proportion.
Interval wilson(long k, long n, double z = 3.0);

// Two-sample Kolmogorov-Smirnov: returns {D, p-value}.
std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b);

// Chi-square upper tail P(X > x) with k degrees of freedom.
double chi2_tail(double x, int k);

// Regularized incomplete gamma P(a, x) (lower).
double gamma_p(double a, double x);

struct LinFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least squares for y = c + a*x1 + b*x2. Returns {c, a, b}.
std::vector<double> fit2(const std::vector<double>& x1, const std::vector<double>& x2,
                         const std::vector<double>& y);

} // namespace hsjump::stats
