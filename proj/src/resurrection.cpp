#include "hsjump/resurrection.hpp"

#include <algorithm>
#include <cmath>

#include "hsjump/constants.hpp"

namespace hsjump {

namespace {

quad::Options qopt(const QuadOpts& o, double rel_scale = 1.0, double abs = 0.0) {
    quad::Options q;
    q.rel_tol = o.rel_tol * rel_scale;
    q.abs_tol = abs;
    q.max_intervals = o.max_intervals;
    return q;
}

// sup over t >= 2 of Psi(t)/t^g; closed form for PowerLog, grid sup otherwise
double envelope_sup(const ScalingFunction& psi, double g) {
    if (psi.kind() == ScalingFunction::Kind::Constant) return psi(2.0);
    if (psi.kind() == ScalingFunction::Kind::PowerLog) {
        const double ex = psi.gamma() - g;  // ratio = t^ex log^delta t
        const double de = psi.delta();
        auto ratio = [&](double t) { return std::pow(t, ex) * std::pow(std::log(t), de); };
        double best = ratio(2.0);
        if (ex > 0.0 || (ex == 0.0 && de > 0.0))
            throw std::domain_error("scaling function not dominated by its upper index");
        if (ex < 0.0 && de > 0.0) best = std::max(best, ratio(std::max(2.0, std::exp(-de / ex))));
        return best;
    }
    double best = 0.0;
    for (double t = 2.0; t < 1e15; t *= 1.3)
        best = std::max(best, psi(t) / std::pow(t, g));
    return 1.5 * best;
}

} // namespace

ReturnKernelSpec::ReturnKernelSpec(int d, double alpha, ScalingFunction psi, QuadOpts quad)
    : d_(d), alpha_(alpha), psi_(std::move(psi)), quad_(quad) {
    if (d != 1 && d != 2) throw std::invalid_argument("return kernel implemented for d in {1,2}");
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must be in (0,2)");
    if (!(psi_.upper_index() < std::min(1.0, alpha)))
        throw std::domain_error("return kernel needs gamma_2 < min(1, alpha)");
    A_ = normalization_A(d_, alpha_, psi_, quad_);
    C_ = stable_jump_constant(d_, alpha_) / A_;
    env_g_ = std::max(psi_.upper_index(), 0.0);
    env_M_ = envelope_sup(psi_, env_g_);
    psi1_ = std::make_shared<Psi1Cache>(psi_, quad_.rel_tol * 1e-2);
}

double return_density(const ReturnKernelSpec& rk, const LPoint& z, const HPoint& y) {
    if (z.d != rk.d() || y.d != rk.d()) throw std::invalid_argument("dimension mismatch");
    double r2 = 0.0;
    for (int i = 0; i < rk.d(); ++i) r2 += (y.c[i] - z.c[i]) * (y.c[i] - z.c[i]);
    const double azd = -z.zd();
    const double arg = r2 / (y.xd() * azd);
    return std::pow(azd, rk.alpha()) * rk.psi()(arg) *
           std::pow(r2, -0.5 * (rk.d() + rk.alpha()));
}

double normalization_A(int d, double alpha, const ScalingFunction& psi, QuadOpts opt) {
    // A = int_{R^d_+} Psi((|u~|^2+(ud+1)^2)/ud) (|u~|^2+(ud+1)^2)^{-(d+a)/2} du
    const double da = d + alpha;
    if (d == 1) {
        auto f = [&](double u) {
            const double s = (u + 1.0) * (u + 1.0);
            return psi(s / u) * std::pow(s, -0.5 * da);
        };
        std::vector<double> pts{0.0, 0.125, 0.5, 1.0, 2.0, 8.0};
        auto head = quad::integrate_pieces(f, pts, qopt(opt));
        auto tail = quad::integrate_to_inf(f, 8.0, qopt(opt));
        return head.require() + tail.require(head.value);
    }
    auto inner = [&](double ud) {
        auto g = [&](double v) {
            const double s = v * v + (ud + 1.0) * (ud + 1.0);
            return psi(s / ud) * std::pow(s, -0.5 * da);
        };
        auto head = quad::integrate_pieces(g, {0.0, ud + 1.0, 4.0 * (ud + 1.0)}, qopt(opt, 0.3));
        auto tail = quad::integrate_to_inf(g, 4.0 * (ud + 1.0), qopt(opt, 0.3));
        return 2.0 * (head.value + tail.value);
    };
    auto head = quad::integrate_pieces(inner, {0.0, 0.125, 0.5, 1.0, 2.0, 8.0}, qopt(opt));
    auto tail = quad::integrate_to_inf(inner, 8.0, qopt(opt));
    return head.require() + tail.require(head.value);
}

double normalization_A_direct(int d, double alpha, const ScalingFunction& psi, const LPoint& z,
                              QuadOpts opt) {
    const double da = d + alpha;
    const double azd = -z.zd();
    if (d == 1) {
        auto f = [&](double y) {
            const double r2 = (y + azd) * (y + azd);
            return std::pow(azd, alpha) * psi(r2 / (y * azd)) * std::pow(r2, -0.5 * da);
        };
        std::vector<double> pts{0.0, 0.25 * azd, azd, 4.0 * azd};
        auto head = quad::integrate_pieces(f, pts, qopt(opt));
        auto tail = quad::integrate_to_inf(f, 4.0 * azd, qopt(opt));
        return head.require() + tail.require(head.value);
    }
    auto inner = [&](double yd) {
        auto g = [&](double w) {  // w = lateral offset from z~
            const double r2 = w * w + (yd + azd) * (yd + azd);
            return std::pow(azd, alpha) * psi(r2 / (yd * azd)) * std::pow(r2, -0.5 * da);
        };
        const double s = yd + azd;
        auto head = quad::integrate_pieces(g, {0.0, s, 4.0 * s}, qopt(opt, 0.3));
        auto tail = quad::integrate_to_inf(g, 4.0 * s, qopt(opt, 0.3));
        return 2.0 * (head.value + tail.value);
    };
    auto head = quad::integrate_pieces(inner, {0.0, 0.25 * azd, azd, 8.0 * azd}, qopt(opt));
    auto tail = quad::integrate_to_inf(inner, 8.0 * azd, qopt(opt));
    return head.require() + tail.require(head.value);
}

double normalization_A_truncated(int d, double alpha, const ScalingFunction& psi, double R,
                                 QuadOpts opt) {
    const double da = d + alpha;
    if (d == 1) {
        auto f = [&](double u) {
            const double s = (u + 1.0) * (u + 1.0);
            return psi(s / u) * std::pow(s, -0.5 * da);
        };
        return quad::integrate_pieces(f, {1.0 / R, 0.5, 1.0, 8.0, R}, qopt(opt)).value;
    }
    auto inner = [&](double ud) {
        auto g = [&](double v) {
            const double s = v * v + (ud + 1.0) * (ud + 1.0);
            return psi(s / ud) * std::pow(s, -0.5 * da);
        };
        return 2.0 * quad::integrate_pieces(g, {0.0, ud + 1.0, R * (ud + 1.0)}, qopt(opt, 0.3)).value;
    };
    return quad::integrate_pieces(inner, {1.0 / R, 0.5, 1.0, 8.0, R}, qopt(opt)).value;
}

double q_kernel(const ReturnKernelSpec& rk, const HPoint& x, const HPoint& y) {
    if (x.d != rk.d() || y.d != rk.d()) throw std::invalid_argument("dimension mismatch");
    const double a = rk.alpha();
    const int d = rk.d();
    const double da = d + a;
    const double L = dist(x, y);  // q(x, x) is finite; L only shapes breakpoints
    const QuadOpts& Q = rk.quad();

    if (d == 1) {
        const double xd = x.xd(), yd = y.xd();
        auto f = [&](double t) {
            const double ry = yd + t, rx = xd + t;
            return rk.psi()(ry * ry / (yd * t)) * std::pow(t, a) *
                   std::pow(rx, -da) * std::pow(ry, -da);
        };
        std::vector<double> pts{0.0};
        for (double s : {xd, yd}) {
            pts.push_back(0.125 * s);
            pts.push_back(0.5 * s);
            pts.push_back(s);
            pts.push_back(4.0 * s);
        }
        const double T = 8.0 * std::max(xd, yd);
        pts.push_back(T);
        pts.erase(std::remove_if(pts.begin(), pts.end(), [T](double v) { return v > T; }),
                  pts.end());
        pts.push_back(T);
        auto head = quad::integrate_pieces(f, pts, qopt(Q));
        auto tail = quad::integrate_to_inf(f, T, qopt(Q));
        return rk.resurrection_constant() * (head.require() + tail.require(head.value));
    }

    // d == 2: z = (w, -t); scales set by x_d, y_d and the lateral gap
    const double xd = x.xd(), yd = y.xd();
    const double xi = x.c[0], eta = y.c[0];
    auto inner = [&](double t) {
        const double hx = xd + t, hy = yd + t;
        auto g = [&](double w) {
            const double r2x = (w - xi) * (w - xi) + hx * hx;
            const double r2y = (w - eta) * (w - eta) + hy * hy;
            return rk.psi()(r2y / (yd * t)) * std::pow(r2x, -0.5 * da) *
                   std::pow(r2y, -0.5 * da);
        };
        std::vector<double> pts;
        const double lo = std::min(xi, eta) - 8.0 * std::max(hx, hy);
        const double hi = std::max(xi, eta) + 8.0 * std::max(hx, hy);
        pts.push_back(lo);
        pts.push_back(hi);
        for (double c : {xi, eta})
            for (double s : {0.0, -hx, hx, -hy, hy})
                if (c + s > lo && c + s < hi) pts.push_back(c + s);
        auto head = quad::integrate_pieces(g, pts, qopt(Q, 0.3));
        auto tailr = quad::integrate_to_inf(g, hi, qopt(Q, 0.3));
        auto refl = [&g, lo](double w) { return g(2.0 * lo - w); };
        auto taill = quad::integrate_to_inf(refl, lo, qopt(Q, 0.3));
        return std::pow(t, a) * (head.value + tailr.value + taill.value);
    };
    std::vector<double> pts{0.0};
    for (double s : {xd, yd, L}) {
        if (!(s > 0.0)) continue;
        pts.push_back(0.125 * s);
        pts.push_back(0.5 * s);
        pts.push_back(s);
        pts.push_back(4.0 * s);
    }
    const double T = 8.0 * std::max({xd, yd, L});
    pts.erase(std::remove_if(pts.begin(), pts.end(), [T](double v) { return v > T; }), pts.end());
    pts.push_back(T);
    auto head = quad::integrate_pieces(inner, pts, qopt(Q));
    auto tail = quad::integrate_to_inf(inner, T, qopt(Q));
    return rk.resurrection_constant() * (head.require() + tail.require(head.value));
}

double q_comparator(const ReturnKernelSpec& rk, const HPoint& x, const HPoint& y) {
    const double L = dist(x, y);
    const double m = std::min(x.xd(), y.xd());
    const double da = rk.d() + rk.alpha();
    if (m > L) return std::pow(m, -da);
    // the Psi_1 argument can dip below 2 only in the transition zone where the
    // envelope is constant-comparable anyway; clamp keeps it positive there
    const double arg = std::max(L * L / (x.xd() * y.xd()), 2.0);
    return std::pow(L, -da) * rk.psi1()(arg);
}

double aux_h(const ReturnKernelSpec& rk, double a, double b) {
    if (rk.d() < 2) throw std::invalid_argument("aux_h needs d >= 2");
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("aux_h needs a, b > 0");
    const double da = rk.d() + rk.alpha();
    const double ia = 1.0 / a;
    auto f = [&](double u) {
        const double p = u + 1.0, q = u + 1.0 + ia;
        return rk.psi()(q * q * b) * std::pow(p, -da) * std::pow(q, -da);
    };
    auto head =
        quad::integrate_pieces(f, {0.0, 1.0, ia, 4.0 * (1.0 + ia)}, qopt(rk.quad()));
    auto tail = quad::integrate_to_inf(f, 4.0 * (1.0 + ia), qopt(rk.quad()));
    return 2.0 * (head.require() + tail.require(head.value));
}

double aux_upsilon(const ReturnKernelSpec& rk, double a, double b, double l) {
    if (rk.d() < 2) throw std::invalid_argument("aux_upsilon needs d >= 2");
    if (!(a > 0.0 && b > 0.0 && l > 0.0)) throw std::invalid_argument("aux_upsilon domain");
    const double da = rk.d() + rk.alpha();
    const double ia = 1.0 / a, il = 1.0 / l;
    auto f = [&](double u) {
        const double p = std::abs(u) + il, q = std::abs(u - ia) + 1.0;
        return rk.psi()(q * q * b) * std::pow(p, -da) * std::pow(q, -da);
    };
    const double lo = -1.0 - il, hi = ia + 1.0 + il;
    std::vector<double> pts{lo, 0.5 * ia, hi};
    quad::add_scale_points(pts, 0.0, il, lo, hi, 8);
    quad::add_scale_points(pts, ia, 1.0, lo, hi, 8);
    auto r = quad::integrate_real_line(f, pts, qopt(rk.quad()));
    return r.require();
}

double aux_f(const ReturnKernelSpec& rk, double a, double b) { return aux_upsilon(rk, a, b, b); }
double aux_g(const ReturnKernelSpec& rk, double a, double b) { return aux_upsilon(rk, a, b, 1.0); }

double aux_xi(const ReturnKernelSpec& rk, double xd, double yd) {
    if (rk.d() < 2) throw std::invalid_argument("aux_xi needs d >= 2");
    const double da = rk.d() + rk.alpha();
    auto f = [&](double z) { return std::pow(z, -da - 1.0) * aux_h(rk, z, z / yd); };
    std::vector<double> pts{xd, std::max(2.0 * xd, 1.0), std::max(4.0 * xd, 8.0)};
    auto head = quad::integrate_pieces(f, pts, qopt(rk.quad(), 3.0));
    auto tail = quad::integrate_to_inf(f, pts.back(), qopt(rk.quad(), 3.0));
    return head.require() + tail.require(head.value);
}

double aux_xi_direct(const ReturnKernelSpec& rk, double xd, double yd) {
    if (rk.d() != 2) throw std::invalid_argument("aux_xi_direct implemented for d == 2");
    const double da = rk.d() + rk.alpha();
    auto inner = [&](double zd) {
        auto g = [&](double w) {
            const double p = w + zd, q = w + 1.0 + zd;
            return rk.psi()(q * q / (yd * zd)) * std::pow(p, -da) * std::pow(q, -da);
        };
        auto head = quad::integrate_pieces(g, {0.0, zd, 1.0 + zd, 4.0 * (1.0 + zd)},
                                           qopt(rk.quad(), 0.5));
        auto tail = quad::integrate_to_inf(g, 4.0 * (1.0 + zd), qopt(rk.quad(), 0.5));
        return 2.0 * std::pow(zd, rk.alpha()) * (head.value + tail.value);
    };
    auto head = quad::integrate_pieces(inner, {xd, 2.0 * xd, std::max(8.0 * xd, 8.0)},
                                       qopt(rk.quad(), 3.0));
    auto tail = quad::integrate_to_inf(inner, std::max(8.0 * xd, 8.0), qopt(rk.quad(), 3.0));
    return head.require() + tail.require(head.value);
}

HPoint sample_return(const ReturnKernelSpec& rk, const LPoint& z, Rng& rng, long* attempts_out) {
    if (z.d != rk.d()) throw std::invalid_argument("dimension mismatch");
    const int d = rk.d();
    const double a = rk.alpha();
    const double g = rk.envelope_power();
    const double M = rk.envelope_const();
    const double azd = -z.zd();

    long attempts = 0;
    for (;;) {
        ++attempts;
        if (attempts > 4000 && attempts % 1000 == 0) {
            // acceptance below the 1e-3 floor indicates a proposal mismatch
            throw std::runtime_error("sample_return: acceptance rate below 1e-3 floor");
        }
        // normalized landing point w (relative to z = -e_d), w_d > 1
        const double v = rng.beta(a - g, 1.0 - g);
        const double wd = 1.0 / v;
        double w1 = 0.0;
        if (d == 2) {
            const double q = rng.beta(0.5 * (d - 1), 0.5 * (1.0 + a - 2.0 * g));
            const double rho = std::sqrt(q / (1.0 - q));
            w1 = ((rng.next_u64() & 1) ? rho : -rho) * wd;
        }
        const double w2 = w1 * w1 + wd * wd;
        const double targ = w2 / (wd - 1.0);
        const double ratio = rk.psi()(targ) / (M * std::pow(targ, g));
        if (rng.uniform() < ratio) {
            if (attempts_out) *attempts_out = attempts;
            HPoint y;
            y.d = d;
            if (d == 2) y.c[0] = z.c[0] + azd * w1;
            y.xd() = azd * (wd - 1.0);
            return y;
        }
    }
}

} // namespace hsjump
