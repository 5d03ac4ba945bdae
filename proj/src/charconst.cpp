#include "hsjump/charconst.hpp"

#include <cmath>
#include <stdexcept>

namespace hsjump {

namespace {

quad::Options qo(const QuadOpts& o, double rel_scale = 1.0) {
    quad::Options q;
    q.rel_tol = o.rel_tol * rel_scale;
    q.max_intervals = o.max_intervals;
    return q;
}

double admissible_check(const KernelSpec& s, double q) {
    const double b2 = s.beta_tilde2();
    if (!(q > -1.0 + b2 && q < s.alpha - b2))
        throw std::domain_error("q outside the admissible interval (-1+beta2~, alpha-beta2~)");
    return b2;
}

// (s^q - 1)(1 - s^{alpha-q-1}) (1-s)^{-1-alpha}
inline double s_kernel(double s, double alpha, double q) {
    const double u = 1.0 - s;
    return (std::pow(s, q) - 1.0) * (1.0 - std::pow(s, alpha - q - 1.0)) *
           std::pow(u, -1.0 - alpha);
}

// int_0^1 s_kernel(s) B(s) ds with both endpoints mapped logarithmically:
// s = e^{-u} on (0, 1/2] and s = 1 - e^{-u} on [1/2, 1). Near s = 0 the
// integrand behaves like s^{alpha-q-1-beta2}, which no fixed graded mesh
// resolves once q approaches alpha - beta2; the log map converges
// geometrically on the whole admissible interval.
template <class BF>
double s_integral_subst(double alpha, double q, BF&& B, const quad::Options& opt) {
    const double l2 = std::log(2.0);
    auto lower = [&](double u) {
        const double s = std::exp(-u);
        return s_kernel(s, alpha, q) * B(s) * s;
    };
    auto upper = [&](double u) {
        const double e = std::exp(-u);
        const double s = 1.0 - e;
        return s_kernel(s, alpha, q) * B(s) * e;
    };
    auto lo_head = quad::integrate(lower, l2, 8.0, opt);
    auto lo_tail = quad::integrate_to_inf(lower, 8.0, opt);
    auto hi_head = quad::integrate(upper, l2, 8.0, opt);
    auto hi_tail = quad::integrate_to_inf(upper, 8.0, opt);
    return lo_head.value + lo_tail.value + hi_head.value + hi_tail.value;
}

// graded mesh route toward both endpoints; oracle for interior q only
template <class BF>
double s_integral_graded(double alpha, double q, BF&& B, const quad::Options& opt) {
    std::vector<double> pts{0.0, 1.0};
    for (int k = 1; k <= 40; ++k) {
        pts.push_back(std::ldexp(1.0, -k));
        pts.push_back(1.0 - std::ldexp(1.0, -k));
    }
    auto f = [&](double s) { return s_kernel(s, alpha, q) * B(s); };
    return quad::integrate_pieces(f, pts, opt).value;
}

} // namespace

BigCResult big_c(const KernelSpec& spec, double q, QuadOpts opt) {
    admissible_check(spec, q);
    if (q == 0.0 || q == spec.alpha - 1.0) return {0.0, 0.0, true};
    const double a = spec.alpha;
    BigCResult out;
    if (spec.d == 1) {
        auto B = [&](double s) { return b_factor_radial(spec, 1.0, s, 0.0); };
        out.value = s_integral_subst(a, q, B, qo(opt));
        out.abs_err = opt.rel_tol * std::abs(out.value);
        out.converged = true;
        return out;
    }
    // d >= 2: radial reduction over v = |u~|; the pair is x = ((1-s) v, 1),
    // y = (0~, s), so B depends on (1, s, (1-s) v) only.
    const double da = spec.d + a;
    const double sig = sphere_surface(spec.d - 1);
    auto outer = [&](double v) {
        auto B = [&](double s) { return b_factor_radial(spec, 1.0, s, (1.0 - s) * v); };
        const double inner = s_integral_subst(a, q, B, qo(opt, 0.3));
        return std::pow(v, spec.d - 2) * std::pow(v * v + 1.0, -0.5 * da) * inner;
    };
    auto head = quad::integrate_pieces(outer, {0.0, 1.0, 4.0}, qo(opt, 3.0));
    auto tail = quad::integrate_to_inf(outer, 4.0, qo(opt, 3.0));
    out.value = sig * (head.value + tail.value);
    out.abs_err = sig * (head.abs_error + tail.abs_error);
    out.converged = head.converged && tail.converged;
    return out;
}

double big_c_substituted_1d(const KernelSpec& spec, double q, QuadOpts opt) {
    admissible_check(spec, q);
    if (spec.d != 1) throw std::invalid_argument("graded route is d = 1 only");
    if (q == 0.0 || q == spec.alpha - 1.0) return 0.0;
    auto B = [&](double s) { return b_factor_radial(spec, 1.0, s, 0.0); };
    return s_integral_graded(spec.alpha, q, B, qo(opt));
}

double big_c_swapped(const KernelSpec& spec, double q, QuadOpts opt) {
    admissible_check(spec, q);
    if (spec.d < 2) throw std::invalid_argument("swapped route is d >= 2 only");
    if (q == 0.0 || q == spec.alpha - 1.0) return 0.0;
    const double a = spec.alpha;
    const double da = spec.d + a;
    const double sig = sphere_surface(spec.d - 1);
    auto lateral = [&](double s) {
        auto fv = [&](double v) {
            return std::pow(v, spec.d - 2) * std::pow(v * v + 1.0, -0.5 * da) *
                   b_factor_radial(spec, 1.0, s, (1.0 - s) * v);
        };
        auto head = quad::integrate_pieces(fv, {0.0, 1.0, 4.0}, qo(opt, 0.3));
        auto tail = quad::integrate_to_inf(fv, 4.0, qo(opt, 0.3));
        return head.value + tail.value;
    };
    const double l2 = std::log(2.0);
    auto lower = [&](double u) {
        const double s = std::exp(-u);
        return s_kernel(s, a, q) * lateral(s) * s;
    };
    auto upper = [&](double u) {
        const double e = std::exp(-u);
        return s_kernel(1.0 - e, a, q) * lateral(1.0 - e) * e;
    };
    auto l1 = quad::integrate(lower, l2, 8.0, qo(opt, 3.0));
    auto l2r = quad::integrate_to_inf(lower, 8.0, qo(opt, 3.0));
    auto u1 = quad::integrate(upper, l2, 8.0, qo(opt, 3.0));
    auto u2 = quad::integrate_to_inf(upper, 8.0, qo(opt, 3.0));
    return sig * (l1.value + l2r.value + u1.value + u2.value);
}

double big_c_closed_form_unit_1d(double alpha, double q) {
    if (alpha == 1.0) throw std::invalid_argument("closed form needs alpha != 1");
    if (q == 0.0 || q == alpha - 1.0) return 0.0;
    auto gamma_signed = [](double x) {
        const double lg = std::lgamma(x);
        // Gamma is negative exactly on (-2k-1, -2k), k = 0, 1, ...
        double sign = 1.0;
        if (x < 0.0 && ((long)(-std::floor(x))) % 2 == 1) sign = -1.0;
        return sign * std::exp(lg);
    };
    const double gma = gamma_signed(-alpha);
    const double term1 = std::exp(std::lgamma(q + 1.0)) / gamma_signed(q + 1.0 - alpha);
    const double term2 = std::exp(std::lgamma(alpha - q)) / gamma_signed(-q);
    return gma * (term1 + term2) + 1.0 / alpha;
}

double probe_sup_c(const KernelSpec& s, QuadOpts opt) {
    const double hi = s.alpha - s.beta_tilde2() - 1e-3;
    return big_c(s, hi, opt).value;
}

SolvePResult solve_p(const KernelSpec& s, double kappa, double tol, QuadOpts opt) {
    if (kappa < 0.0) throw std::domain_error("kappa must be >= 0");
    const double lo0 = std::max(s.alpha - 1.0, 0.0);
    const double hi0 = s.alpha - s.beta_tilde2() - 1e-3;
    SolvePResult out;
    if (kappa == 0.0) {  // C vanishes exactly at the left endpoint
        out.p = lo0;
        return out;
    }
    const double c_hi = big_c(s, hi0, opt).value;
    if (kappa >= c_hi)
        throw std::range_error("kappa above the attainable supremum (probed C = " +
                               std::to_string(c_hi) + " at q = " + std::to_string(hi0) + ")");
    double lo = lo0, hi = hi0;
    double mid = 0.5 * (lo + hi), cm = 0.0;
    for (int it = 0; it < 60; ++it) {
        mid = 0.5 * (lo + hi);
        cm = big_c(s, mid, opt).value;
        ++out.iterations;
        if (std::abs(cm - kappa) <= tol * (1.0 + kappa)) break;
        (cm < kappa ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    out.p = mid;
    out.residual = std::abs(cm - kappa);
    out.ill_conditioned = (hi0 - out.p) < 1e-3;
    return out;
}

} // namespace hsjump
