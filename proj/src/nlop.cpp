#include "hsjump/nlop.hpp"

#include <algorithm>
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

} // namespace

TestFunction TestFunction::power(double p) {
    TestFunction f;
    f.kind = Kind::PowerDistance;
    f.p = p;
    return f;
}

TestFunction TestFunction::truncated_power(double p, double R) {
    TestFunction f;
    f.kind = Kind::TruncatedPower;
    f.p = p;
    f.R = R;
    return f;
}

TestFunction TestFunction::bump(HPoint center, double radius, double amplitude) {
    TestFunction f;
    f.kind = Kind::SmoothBump;
    f.center = center;
    f.radius = radius;
    f.amplitude = amplitude;
    return f;
}

double TestFunction::value(const HPoint& y) const {
    switch (kind) {
        case Kind::PowerDistance:
            return std::pow(y.xd(), p);
        case Kind::TruncatedPower: {
            if (!(y.xd() < R)) return 0.0;
            if (y.d >= 2) {
                double s = 0.0;
                for (int i = 0; i + 1 < y.d; ++i) s += y.c[i] * y.c[i];
                if (!(s < R * R)) return 0.0;
            }
            return std::pow(y.xd(), p);
        }
        case Kind::SmoothBump: {
            const double r = dist(y, center);
            if (r >= radius) return 0.0;
            const double t = 1.0 - (r * r) / (radius * radius);
            return amplitude * t * t * t;
        }
    }
    return 0.0;
}

double TestFunction::grad_d(const HPoint& y) const {
    switch (kind) {
        case Kind::PowerDistance:
            return p * std::pow(y.xd(), p - 1.0);
        case Kind::TruncatedPower:
            return value(y) == 0.0 ? 0.0 : p * std::pow(y.xd(), p - 1.0);
        case Kind::SmoothBump: {
            const double r = dist(y, center);
            if (r >= radius) return 0.0;
            const double t = 1.0 - (r * r) / (radius * radius);
            return amplitude * 3.0 * t * t * (-2.0 * (y.xd() - center.xd()) / (radius * radius));
        }
    }
    return 0.0;
}

PVResult apply_pv_generator(const KernelSpec& s, const TestFunction& f, const HPoint& x,
                            const PVSchedule& sched, QuadOpts opt) {
    if (s.d > 2) throw std::invalid_argument("pv generator implemented for d in {1,2}");
    if (s.d == 2 && std::abs(x.c[0]) > 0.0)
        throw std::invalid_argument("d = 2 evaluation requires x~ = 0");
    const double a = s.alpha;
    const double xd = x.xd();
    const double r = 0.5 * xd;
    const double fx = f.value(x);
    const double gd = f.grad_d(x);
    const bool compensate = a >= 1.0;

    // ---- far field: R^d_+ \ B(x, r)
    double far = 0.0;
    if (s.d == 1) {
        auto g = [&](double y) {
            const HPoint yp = HPoint::of(1, {y});
            return (f.value(yp) - fx) * jump_kernel(s, x, yp);
        };
        std::vector<double> pts{0.0, xd - r};
        quad::add_scale_points(pts, xd - r, r, 0.0, xd - r);
        if (f.kind == TestFunction::Kind::TruncatedPower && f.R > xd + r) pts.push_back(0.0);
        auto low = quad::integrate_pieces(g, pts, qo(opt));
        std::vector<double> pts2{xd + r, 2.0 * xd, 8.0 * xd};
        if (f.kind == TestFunction::Kind::TruncatedPower && f.R > xd + r) pts2.push_back(f.R);
        if (f.kind == TestFunction::Kind::SmoothBump) {
            for (double b : {f.center.xd() - f.radius, f.center.xd() + f.radius})
                if (b > xd + r) pts2.push_back(b);
        }
        std::sort(pts2.begin(), pts2.end());
        auto up = quad::integrate_pieces(g, pts2, qo(opt));
        auto tail = quad::integrate_to_inf(g, pts2.back(), qo(opt));
        far = low.require(1.0) + up.require(1.0) + tail.require(up.value);
    } else {
        // lateral-radial reduction; each slice integrates over v = |y~| >= 0
        auto slice = [&](double yd, double vmin) {
            const double dd = yd - xd;
            auto g = [&](double v) {
                HPoint y;
                y.d = 2;
                y.c[0] = v;
                y.xd() = yd;
                return 2.0 * (f.value(y) - fx) * jump_kernel(s, x, y);
            };
            std::vector<double> pts{vmin, vmin + std::abs(dd) + xd, vmin + 4.0 * (std::abs(dd) + xd)};
            if (f.kind == TestFunction::Kind::TruncatedPower && f.R > vmin) pts.push_back(f.R);
            std::sort(pts.begin(), pts.end());
            auto head = quad::integrate_pieces(g, pts, qo(opt, 0.3));
            auto tail = quad::integrate_to_inf(g, pts.back(), qo(opt, 0.3));
            return head.value + tail.value;
        };
        auto band_below = [&](double yd) { return slice(yd, 0.0); };
        auto band_ring = [&](double yd) {
            const double dd = yd - xd;
            return slice(yd, std::sqrt(std::max(r * r - dd * dd, 0.0)));
        };
        std::vector<double> ptsb{0.0, 0.5 * (xd - r), xd - r};
        auto below = quad::integrate_pieces(band_below, ptsb, qo(opt));
        auto ring = quad::integrate_pieces(band_ring, {xd - r, xd, xd + r}, qo(opt));
        std::vector<double> ptsa{xd + r, 2.0 * xd, 8.0 * xd};
        if (f.kind == TestFunction::Kind::TruncatedPower && f.R > xd + r) ptsa.push_back(f.R);
        if (f.kind == TestFunction::Kind::SmoothBump) {
            for (double b : {f.center.xd() - f.radius, f.center.xd() + f.radius})
                if (b > xd + r) ptsa.push_back(b);
        }
        std::sort(ptsa.begin(), ptsa.end());
        auto above = quad::integrate_pieces(band_below, ptsa, qo(opt));
        auto tail = quad::integrate_to_inf(band_below, ptsa.back(), qo(opt));
        far = below.require(1.0) + ring.require(1.0) + above.require(1.0) +
              tail.require(above.value);
    }

    // ---- near field: shells inside B(x, r)
    const double bxx = b_factor(s, x, x);
    auto near_shell_1d = [&](double lo, double hi) {
        auto g = [&](double t) {  // t = y - x in (-hi,-lo) u (lo,hi), folded
            double sum = 0.0;
            for (double sgn : {-1.0, 1.0}) {
                const HPoint y = HPoint::of(1, {xd + sgn * t});
                const double j = s.stable_const * std::pow(t, -1.0 - a);
                const double B = b_factor(s, x, y);
                if (compensate)
                    sum += (f.value(y) - fx - gd * sgn * t) * j * B + gd * sgn * t * j * (B - bxx);
                else
                    sum += (f.value(y) - fx) * j * B;
            }
            return sum;
        };
        return quad::integrate(g, lo, hi, qo(opt)).value;
    };
    auto near_shell_2d = [&](double lo, double hi) {
        auto g = [&](double rho) {
            auto h = [&](double phi) {
                HPoint y;
                y.d = 2;
                y.c[0] = rho * std::sin(phi);
                y.xd() = xd + rho * std::cos(phi);
                const double j = s.stable_const * std::pow(rho, -2.0 - a);
                const double B = b_factor(s, x, y);
                const double comp_d = gd * rho * std::cos(phi);
                if (compensate)
                    return (f.value(y) - fx - comp_d) * j * B + comp_d * j * (B - bxx);
                return (f.value(y) - fx) * j * B;
            };
            auto r2 = quad::integrate_pieces(h, {0.0, M_PI / 2.0, M_PI}, qo(opt, 0.3));
            return 2.0 * rho * r2.value;
        };
        return quad::integrate(g, lo, hi, qo(opt)).value;
    };

    PVResult out;
    double near_sum = 0.0;
    double eps_hi = r;
    std::vector<double> shells;
    for (int k = 0; k < sched.count; ++k) {
        const double eps_lo = r * std::pow(sched.rho, k + 1);
        const double shell =
            s.d == 1 ? near_shell_1d(eps_lo, eps_hi) : near_shell_2d(eps_lo, eps_hi);
        near_sum += shell;
        shells.push_back(shell);
        out.partials.push_back(far + near_sum);
        eps_hi = eps_lo;
    }
    const int n = (int)shells.size();
    if (n >= 2 && shells[n - 2] != 0.0)
        out.tail_ratio = std::abs(shells[n - 1]) / std::abs(shells[n - 2]);
    double value = far + near_sum;
    if (sched.richardson && n >= 2) {
        // remaining bias ~ eps^{2-a} (compensated) or eps^{1-a} (a < 1)
        const double order = compensate ? 2.0 - a : 1.0 - a;
        const double q = std::pow(sched.rho, order);
        value += shells[n - 1] * q / (1.0 - q);
    }
    out.value = value;
    out.value_killed = value - killing(s, x) * fx;
    const double scale = std::abs(far) + std::abs(near_sum) + 1e-300;
    out.converged = n >= 3 && std::abs(shells[n - 1]) <= std::max(0.25 * std::abs(shells[n - 2]),
                                                                  1e-12 * scale);
    return out;
}

TwoEstimatesResult check_lemma_two_estimates(const KernelSpec& s, double q, double r, double R,
                                             double yd, QuadOpts opt) {
    if (s.b.kind != BModel::Kind::Product && s.b.kind != BModel::Kind::Unit)
        throw std::invalid_argument("two-estimates check needs a Phi-envelope model");
    auto phi = [&](double t) {
        return s.b.kind == BModel::Kind::Unit ? 1.0 : (*s.b.phi)(t);
    };
    const double a = s.alpha;
    const double da = s.d + a;
    const double b2 = s.beta_tilde2();
    TwoEstimatesResult out;
    if (s.d == 1) {
        auto f = [&](double z) { return phi(z / yd) * std::pow(z, q - da + 1.0); };
        auto head = quad::integrate_pieces(f, {R / 2.0, R, 4.0 * R}, qo(opt));
        auto tail = quad::integrate_to_inf(f, 4.0 * R, qo(opt));
        out.tail_top = head.require() + tail.require(head.value);
        out.tail_side = 0.0;
    } else {
        auto integrand = [&](double v, double zd) {
            const double z2 = v * v + zd * zd;
            return phi(z2 / (yd * zd)) * std::pow(zd, q) * std::pow(z2, -0.5 * da);
        };
        auto top_slice = [&](double zd) {
            auto g = [&](double v) { return 2.0 * integrand(v, zd); };
            auto head = quad::integrate_pieces(g, {0.0, zd, 4.0 * zd}, qo(opt, 0.3));
            auto tail = quad::integrate_to_inf(g, 4.0 * zd, qo(opt, 0.3));
            return head.value + tail.value;
        };
        auto htop = quad::integrate_pieces(top_slice, {R / 2.0, R, 4.0 * R}, qo(opt));
        auto ttop = quad::integrate_to_inf(top_slice, 4.0 * R, qo(opt));
        out.tail_top = htop.require() + ttop.require(htop.value);
        auto side_slice = [&](double zd) {
            auto g = [&](double v) { return 2.0 * integrand(v, zd); };
            auto head = quad::integrate_pieces(g, {R / 2.0, R, 4.0 * R}, qo(opt, 0.3));
            auto tail = quad::integrate_to_inf(g, 4.0 * R, qo(opt, 0.3));
            return head.value + tail.value;
        };
        auto hside = quad::integrate_pieces(side_slice, {0.0, 0.25 * R, R}, qo(opt));
        out.tail_side = hside.require();
    }
    out.bound = phi(r / yd) * std::pow(R, q - a + b2) * std::pow(r, -b2);
    out.ratio = (out.tail_top + out.tail_side) / out.bound;
    return out;
}

KeyIntegralResult check_lemma_1n(const KernelSpec& s, double k, double xd, double R,
                                 QuadOpts opt) {
    if (!(xd > 0.0 && xd <= R / 2.0)) throw std::invalid_argument("need 0 < x_d <= R/2");
    if (s.b.kind != BModel::Kind::Product)
        throw std::invalid_argument("key-integral check needs a Product model");
    const ScalingFunction& phi = *s.b.phi;
    const double a = s.alpha;
    const double da = s.d + a;
    const double rcut = 0.5 * xd;
    KeyIntegralResult out;

    if (s.d == 1) {
        auto f = [&](double y) {
            const double L = std::abs(y - xd);
            if (L < rcut) return 0.0;
            return phi(L * L / (xd * y)) * std::pow(L, k - da);
        };
        std::vector<double> pts{0.0, xd - rcut, xd + rcut, std::min(2.0 * xd, R), R};
        quad::add_scale_points(pts, xd - rcut, rcut, 0.0, R);
        quad::add_scale_points(pts, xd + rcut, rcut, 0.0, R);
        out.integral = quad::integrate_pieces(f, pts, qo(opt)).require();
    } else {
        auto slice = [&](double yd) {
            const double dd = yd - xd;
            const double vmin = std::sqrt(std::max(rcut * rcut - dd * dd, 0.0));
            auto g = [&](double v) {
                const double L2 = v * v + dd * dd;
                return 2.0 * phi(L2 / (xd * yd)) * std::pow(L2, 0.5 * (k - da));
            };
            std::vector<double> pts{vmin, R};
            quad::add_scale_points(pts, vmin, xd, vmin, R);
            return quad::integrate_pieces(g, pts, qo(opt, 0.3)).value;
        };
        std::vector<double> pts{0.0, R};
        quad::add_scale_points(pts, xd, xd, 0.0, R);
        out.integral = quad::integrate_pieces(slice, pts, qo(opt)).require();
    }

    const double b1 = std::min(phi.lower_index(), phi.upper_index());
    const double b2 = phi.upper_index();
    const double lr = std::log(R / xd);
    if (k + b1 >= a) {
        out.regime = 1;
        out.bound = std::pow(R, k - a) * phi(R / xd) * (1.0 + (k + b1 == a ? lr : 0.0));
    } else if (k + b2 <= a) {
        out.regime = -1;
        out.bound = std::pow(xd, k - a) * (1.0 + (k + b2 == a ? lr : 0.0));
    } else {
        out.regime = 0;
        out.bound = std::min(std::pow(R, -b1) * phi(R / xd) * std::pow(xd, k - a + b1),
                             std::pow(R, k + b2 - a) * std::pow(xd, -b2));
    }
    out.ratio = out.integral / out.bound;
    return out;
}

} // namespace hsjump
