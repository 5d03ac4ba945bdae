#include "hsjump/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hsjump/rng.hpp"

namespace hsjump {

BModel BModel::product(ScalingFunction f) {
    BModel b;
    b.kind = Kind::Product;
    b.phi = std::move(f);
    return b;
}

BModel BModel::product_power(double beta, double alpha) {
    if (!(std::abs(beta) < std::min(1.0, alpha)))
        throw std::invalid_argument("product power needs |beta| < min(1, alpha)");
    BModel b;
    b.kind = Kind::ProductPower;
    b.beta = beta;
    return b;
}

BModel BModel::resurrection(std::shared_ptr<ReturnKernelSpec> rk) {
    BModel b;
    b.kind = Kind::ResurrectionInduced;
    b.rk = std::move(rk);
    return b;
}

double BModel::upper_envelope_index() const {
    switch (kind) {
        case Kind::Unit: return 0.0;
        case Kind::Product: return std::max(phi->upper_index(), 0.0);
        case Kind::ProductPower: return std::max(beta, 0.0);
        case Kind::ResurrectionInduced: return std::max(rk->psi().upper_index(), 0.0);
    }
    return 0.0;
}

std::string BModel::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Unit: os << "unit"; break;
        case Kind::Product: os << "product(" << phi->describe() << ")"; break;
        case Kind::ProductPower: os << "product_power(" << beta << ")"; break;
        case Kind::ResurrectionInduced:
            os << "resurrection(" << rk->psi().describe() << ")";
            break;
    }
    return os.str();
}

KernelSpec make_kernel_spec(int d, double alpha, double kappa, BModel b) {
    if (d < 1 || d > 3) throw std::invalid_argument("d must be in {1,2,3}");
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must be in (0,2)");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
    if (kappa == 0.0 && alpha <= 1.0)
        throw std::invalid_argument("kappa = 0 requires alpha > 1");
    if (b.kind == BModel::Kind::ResurrectionInduced &&
        (b.rk->d() != d || b.rk->alpha() != alpha))
        throw std::invalid_argument("resurrection model dimension/alpha mismatch");
    KernelSpec s;
    s.d = d;
    s.alpha = alpha;
    s.kappa = kappa;
    s.b = std::move(b);
    s.stable_const = stable_jump_constant(d, alpha);
    return s;
}

double j_kernel(const KernelSpec& s, const HPoint& x, const HPoint& y) {
    const double r = dist(x, y);
    if (!(r > 0.0)) throw std::domain_error("j_kernel: coincident points");
    return s.stable_const * std::pow(r, -(double)s.d - s.alpha);
}

double b_factor_radial(const KernelSpec& s, double xd, double yd, double lat) {
    const double L2 = lat * lat + (xd - yd) * (xd - yd);
    const double L = std::sqrt(L2);
    switch (s.b.kind) {
        case BModel::Kind::Unit:
            return 1.0;
        case BModel::Kind::Product:
            return (*s.b.phi)(L2 / (xd * yd));
        case BModel::Kind::ProductPower: {
            const double mn = std::min(xd, yd), mx = std::max(xd, yd);
            return std::pow(std::min(mn / L, 1.0), -s.b.beta) *
                   std::pow(std::min(mx / L, 1.0), -s.b.beta);
        }
        case BModel::Kind::ResurrectionInduced: {
            if (L == 0.0) return 1.0;
            HPoint x, y;
            x.d = y.d = s.d;
            x.xd() = xd;
            y.xd() = yd;
            if (s.d >= 2) y.c[0] = lat;
            const double j = s.stable_const * std::pow(L, -(double)s.d - s.alpha);
            return 1.0 + q_kernel(*s.b.rk, x, y) / j;
        }
    }
    return 1.0;
}

double b_factor(const KernelSpec& s, const HPoint& x, const HPoint& y) {
    return b_factor_radial(s, x.xd(), y.xd(), x.lat_dist(y));
}

double killing(const KernelSpec& s, const HPoint& x) {
    return s.kappa * std::pow(x.xd(), -s.alpha);
}

std::function<double(double, double)> make_b_evaluator_1d(const KernelSpec& s, bool cached) {
    if (s.d != 1) throw std::invalid_argument("make_b_evaluator_1d needs d = 1");
    if (!cached || s.b.kind != BModel::Kind::ResurrectionInduced) {
        KernelSpec sc = s;
        return [sc](double x, double y) { return b_factor_radial(sc, x, y, 0.0); };
    }
    // B is scale invariant: tabulate log(B - 1) against u = log(max/min).
    auto rk = s.b.rk;
    const double A = s.stable_const;
    const double da = 1.0 + s.alpha;
    const int n = 768;
    const double u_min = 1e-4, u_max = 42.0;
    auto logb1 = std::make_shared<std::vector<double>>(n);
    const double step = std::log(u_max / u_min) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double u = u_min * std::exp(step * i);
        const double mn = std::exp(-u);
        const HPoint x = HPoint::of(1, {1.0}), y = HPoint::of(1, {mn});
        const double j = A * std::pow(1.0 - mn, -da);
        (*logb1)[i] = std::log(q_kernel(*rk, x, y) / j);
    }
    // near-field exponent for u < u_min: B - 1 ~ c (e^u - 1)^{1+alpha}
    const double c0 = std::exp((*logb1)[0]) / std::pow(std::expm1(u_min), da);
    return [=](double x, double y) {
        const double mn = std::min(x, y), mx = std::max(x, y);
        if (mn == mx) return 1.0;
        const double u = std::log(mx / mn);
        if (u < u_min) return 1.0 + c0 * std::pow(std::expm1(u), da);
        if (u >= u_max) {
            const double sl = ((*logb1)[n - 1] - (*logb1)[n - 2]) / step;
            return 1.0 + std::exp((*logb1)[n - 1] + sl * std::log(u / u_max));
        }
        const double t = std::log(u / u_min) / step;
        const int i = std::min((int)t, n - 2);
        const double w = t - i;
        return 1.0 + std::exp((1.0 - w) * (*logb1)[i] + w * (*logb1)[i + 1]);
    };
}

AxiomReport check_axioms(const KernelSpec& s, int n_pairs, uint64_t seed,
                         const AxiomTolerances& tol, const ScalingFunction* phi_ref) {
    AxiomReport rep;
    rep.b_min = 1e300;
    double a3_lo = 1e300, a3_hi = 0.0;
    Rng rng(seed, 777);
    const ScalingFunction* phi = phi_ref;
    if (!phi && s.b.kind == BModel::Kind::Product) phi = &*s.b.phi;

    auto rand_point = [&](double scale) {
        HPoint p;
        p.d = s.d;
        for (int i = 0; i + 1 < s.d; ++i) p.c[i] = scale * (2.0 * rng.uniform() - 1.0);
        p.xd() = scale * std::exp(std::log(1e-3) * rng.uniform());  // heights over 3 decades
        return p;
    };

    for (int k = 0; k < n_pairs; ++k) {
        const double scale = std::exp(std::log(100.0) * (2.0 * rng.uniform() - 1.0));
        HPoint x = rand_point(scale), y = rand_point(scale);
        if (dist(x, y) < 1e-12 * scale) continue;
        const double bxy = b_factor(s, x, y);
        const double byx = b_factor(s, y, x);
        rep.b_min = std::min(rep.b_min, bxy);
        rep.a1_max_rel = std::max(rep.a1_max_rel, std::abs(bxy - byx) / bxy);

        for (double lam : {0.5, 2.0, 10.0}) {
            const double bs = b_factor(s, x.scaled(lam), y.scaled(lam));
            rep.a4_scale_max_rel = std::max(rep.a4_scale_max_rel, std::abs(bs - bxy) / bxy);
        }
        if (s.d >= 2) {
            HPoint xs = x, ys = y;
            const double shift = scale * (2.0 * rng.uniform() - 1.0);
            xs.c[0] += shift;
            ys.c[0] += shift;
            const double bt = b_factor(s, xs, ys);
            rep.a4_translate_max_rel =
                std::max(rep.a4_translate_max_rel, std::abs(bt - bxy) / bxy);
        }
        if (phi) {
            const double env = (*phi)(dist(x, y) * dist(x, y) / (x.xd() * y.xd()));
            a3_lo = std::min(a3_lo, bxy / env);
            a3_hi = std::max(a3_hi, bxy / env);
        }
        // (A2) interior pairs: x_d /\ y_d >= 2 |x-y|
        HPoint xi = rand_point(scale);
        HPoint yi = xi;
        const double h = 0.25 * xi.xd() * rng.uniform_pos();
        yi.xd() += (rng.uniform() < 0.5 ? -h : h) * 0.5;
        if (s.d >= 2) yi.c[0] += h * 0.5;
        const double L = dist(xi, yi);
        if (L > 0) {
            const double bxx = b_factor(s, xi, xi);
            const double bxyq = b_factor(s, xi, yi);
            const double quot =
                std::abs(bxx - bxyq) / std::pow(L / std::min(xi.xd(), yi.xd()), tol.theta);
            rep.a2_max_quotient = std::max(rep.a2_max_quotient, quot);
        }
    }
    if (phi) rep.a3_fitted_C = std::max(a3_hi, 1.0 / a3_lo);
    rep.a1_pass = rep.a1_max_rel <= tol.sym_rel;
    rep.a4_pass = rep.a4_scale_max_rel <= tol.scale_rel &&
                  rep.a4_translate_max_rel <= tol.translate_rel;
    rep.a3_pass = !phi || rep.a3_fitted_C < 1e300;
    return rep;
}

} // namespace hsjump
