#include "hsjump/green1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "hsjump/stats.hpp"

namespace hsjump {

namespace {

// int_{cell} |x - y|^{-1-a} dy for a cell on one side of x
double cell_riesz_mass(double x, double el, double er, double alpha) {
    const double dl = std::abs(x - el), dr = std::abs(x - er);
    const double lo = std::min(dl, dr), hi = std::max(dl, dr);
    return (std::pow(lo, -alpha) - std::pow(hi, -alpha)) / alpha;
}

} // namespace

GreenSystem assemble(const KernelSpec& spec, double R, int n_cells, double grading) {
    if (spec.d != 1) throw std::invalid_argument("green1d needs d = 1");
    if (n_cells < 64) throw std::invalid_argument("need n_cells >= 64");
    if (spec.kappa == 0.0 && spec.alpha <= 1.0)
        throw std::invalid_argument("kappa = 0 requires alpha > 1");
    GreenSystem sys;
    sys.domain = GreenSystem::Domain::HalfLine;
    sys.spec = spec;
    sys.R = R;
    sys.n = n_cells;
    const int n = n_cells;
    sys.edges.resize(n + 1);
    for (int i = 0; i <= n; ++i) sys.edges[i] = R * std::pow((double)i / n, grading);
    sys.x.resize(n);
    sys.w.resize(n);
    for (int i = 0; i < n; ++i) {
        sys.x[i] = 0.5 * (sys.edges[i] + sys.edges[i + 1]);
        sys.w[i] = sys.edges[i + 1] - sys.edges[i];
    }

    auto B = make_b_evaluator_1d(spec, spec.b.kind == BModel::Kind::ResurrectionInduced);
    const double a = spec.alpha;
    const double Ac = spec.stable_const;

    // exterior mass E_i = int_R^inf J(x_i, y) dy
    std::vector<double> E(n);
    {
        quad::Options qo;
        qo.rel_tol = 1e-9;
        for (int i = 0; i < n; ++i) {
            const double xi = sys.x[i];
            auto f = [&](double y) { return Ac * std::pow(y - xi, -1.0 - a) * B(xi, y); };
            auto head = quad::integrate_pieces(f, {R, 2.0 * R, 8.0 * R}, qo);
            auto tail = quad::integrate_to_inf(f, 8.0 * R, qo);
            E[i] = head.require() + tail.require(head.value);
        }
    }

    sys.A.assign((size_t)n * n, 0.0);
    // symmetric cell-averaged couplings S_ij = B(x_i,x_j) (w_i m_ij + w_j m_ji)/2
    // with m_ij the exact stable mass of cell j seen from x_i; then
    // A_ij = -S_ij / w_i keeps w_i A_ij symmetric and the M-matrix signs.
    for (int i = 0; i < n; ++i) {
        double offsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double mij =
                Ac * cell_riesz_mass(sys.x[i], sys.edges[j], sys.edges[j + 1], a);
            const double mji =
                Ac * cell_riesz_mass(sys.x[j], sys.edges[i], sys.edges[i + 1], a);
            const double S = B(sys.x[i], sys.x[j]) * 0.5 * (sys.w[i] * mij + sys.w[j] * mji);
            sys.A[(size_t)i * n + j] = -S / sys.w[i];
            offsum += S / sys.w[i];
        }
        sys.A[(size_t)i * n + i] = offsum + E[i] + killing(spec, HPoint::of(1, {sys.x[i]}));
        if (!(sys.A[(size_t)i * n + i] > 0.0))
            throw std::runtime_error("assembly lost the M-matrix sign structure");
    }
    return sys;
}

GreenSystem assemble_interval_stable(double alpha, int n_cells, double grading) {
    if (n_cells < 64 || n_cells % 2 != 0)
        throw std::invalid_argument("interval assembly needs even n_cells >= 64");
    GreenSystem sys;
    sys.domain = GreenSystem::Domain::Interval;
    sys.spec = make_kernel_spec(1, alpha, alpha > 1.0 ? 0.0 : 1.0, BModel::unit());
    sys.spec.kappa = 0.0;  // interval mode never uses the killing term
    sys.R = 1.0;
    const int n = n_cells;
    sys.n = n;
    sys.edges.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = (double)i / n;
        const double ts = std::pow(t, grading), us = std::pow(1.0 - t, grading);
        sys.edges[i] = -1.0 + 2.0 * ts / (ts + us);
    }
    sys.x.resize(n);
    sys.w.resize(n);
    for (int i = 0; i < n; ++i) {
        sys.x[i] = 0.5 * (sys.edges[i] + sys.edges[i + 1]);
        sys.w[i] = sys.edges[i + 1] - sys.edges[i];
    }
    const double a = alpha;
    const double Ac = stable_jump_constant(1, a);
    sys.A.assign((size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double xi = sys.x[i];
        double offsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double mij = Ac * cell_riesz_mass(xi, sys.edges[j], sys.edges[j + 1], a);
            const double mji = Ac * cell_riesz_mass(sys.x[j], sys.edges[i], sys.edges[i + 1], a);
            const double S = 0.5 * (sys.w[i] * mij + sys.w[j] * mji);
            sys.A[(size_t)i * n + j] = -S / sys.w[i];
            offsum += S / sys.w[i];
        }
        // exterior mass to R \ (-1,1), closed form
        const double Ei = Ac / a * (std::pow(1.0 - xi, -a) + std::pow(1.0 + xi, -a));
        sys.A[(size_t)i * n + i] = offsum + Ei;
    }
    return sys;
}

void solve(GreenSystem& sys) {
    const int n = sys.n;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = sys.a_at(i, j);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond_proxy = A.diagonal().minCoeff();
    if (!(rcond_proxy > 0.0)) throw std::runtime_error("green1d: singular assembly");
    Eigen::MatrixXd Inv = lu.solve(Eigen::MatrixXd::Identity(n, n));
    sys.G.assign((size_t)n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double g = Inv(i, j) / sys.w[j];
            if (g < -1e-9 * std::abs(Inv(i, i) / sys.w[i]))
                throw std::runtime_error("green1d: negative Green entry");
            sys.G[(size_t)i * n + j] = std::max(g, 0.0);
        }
}

std::vector<double> green_potential(const GreenSystem& sys, double gamma) {
    const int n = sys.n;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = sys.a_at(i, j);
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = std::pow(sys.x[i], gamma);
    Eigen::VectorXd v = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(g);
    return {v.data(), v.data() + n};
}

std::vector<double> exit_alive_probability(const GreenSystem& sys) {
    // P_x(Y_{tau} in [R, inf)) = sum_j G_ij w_j E_j; E_j recovered from rows
    const int n = sys.n;
    std::vector<double> E(n);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) rowsum += sys.a_at(i, j) * 1.0;
        E[i] = rowsum - killing(sys.spec, HPoint::of(1, {sys.x[i]}));
    }
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += sys.green(i, j) * sys.w[j] * E[j];
    return out;
}

std::vector<double> killed_probability(const GreenSystem& sys) {
    const int n = sys.n;
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[i] += sys.green(i, j) * sys.w[j] *
                      killing(sys.spec, HPoint::of(1, {sys.x[j]}));
    return out;
}

double green_interp(const GreenSystem& sys, double x, double y) {
    auto locate = [&](double v) {
        auto it = std::upper_bound(sys.x.begin(), sys.x.end(), v);
        int hi = (int)(it - sys.x.begin());
        hi = std::clamp(hi, 1, sys.n - 1);
        return hi;
    };
    const int i1 = locate(x), j1 = locate(y);
    const int i0 = i1 - 1, j0 = j1 - 1;
    const double tx = (std::log(x) - std::log(sys.x[i0])) /
                      (std::log(sys.x[i1]) - std::log(sys.x[i0]));
    const double ty = (std::log(y) - std::log(sys.x[j0])) /
                      (std::log(sys.x[j1]) - std::log(sys.x[j0]));
    auto g = [&](int i, int j) { return std::log(std::max(sys.green(i, j), 1e-300)); };
    const double v = (1 - tx) * ((1 - ty) * g(i0, j0) + ty * g(i0, j1)) +
                     tx * ((1 - ty) * g(i1, j0) + ty * g(i1, j1));
    return std::exp(v);
}

double green_envelope_1d(double alpha, double p, double x, double y) {
    const double L = std::abs(x - y);
    const double mn = std::min(x, y), mx = std::max(x, y);
    const double bdry = std::pow(std::min(mn / L, 1.0), p);
    if (alpha > 1.0) return bdry * std::pow(std::max({mx, L}), alpha - 1.0);
    return bdry * std::log(M_E + mx / L);
}

double interval_stable_green_exact(double alpha, double x, double y) {
    if (!(std::abs(x) < 1.0 && std::abs(y) < 1.0) || x == y)
        throw std::invalid_argument("interval green: need distinct interior points");
    const double L = std::abs(x - y);
    const double z = (1.0 - x * x) * (1.0 - y * y) / (L * L);
    const double pref =
        std::exp(-alpha * std::log(2.0) - 2.0 * std::lgamma(0.5 * alpha)) *
        std::pow(L, alpha - 1.0);
    if (alpha == 1.0) return pref * 2.0 * std::log(std::sqrt(z) + std::sqrt(1.0 + z));
    auto f = [&](double s) { return std::pow(s, 0.5 * alpha - 1.0) / std::sqrt(1.0 + s); };
    quad::Options qo;
    qo.rel_tol = 1e-10;
    std::vector<double> pts{0.0, std::min(1.0, z), z};
    for (int k = 1; k < 30; ++k) {
        const double t = std::min(1.0, z) * std::ldexp(1.0, -k);
        pts.push_back(t);
    }
    return pref * quad::integrate_pieces(f, pts, qo).require();
}

DecayReport boundary_decay_check(const GreenSystem& sys, double y_ref, double x_max) {
    std::vector<double> lx, lg;
    for (int i = 0; i < sys.n; ++i) {
        if (sys.x[i] > x_max) break;
        if (sys.x[i] < 1e-2 * x_max) continue;  // two decades
        lx.push_back(std::log(sys.x[i]));
        lg.push_back(std::log(std::max(green_interp(sys, sys.x[i], y_ref), 1e-300)));
    }
    auto fit = stats::linear_fit(lx, lg);
    return {fit.slope, fit.r2};
}

} // namespace hsjump
