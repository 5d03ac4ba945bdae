#include "hsjump/scalefn.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace hsjump {

double ScalingFunction::raw(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return const_;
        case Kind::PowerLog:
            return std::pow(t, gamma_) * std::pow(std::log(t), delta_);
        case Kind::Tabulated: {
            const double lt = std::log(t);
            if (lt <= table_.front().first)
                return std::exp(table_.front().second);
            auto it = std::lower_bound(table_.begin(), table_.end(), lt,
                                       [](const auto& p, double v) { return p.first < v; });
            if (it == table_.end()) {
                // extend the last segment's slope
                const auto& b = table_[table_.size() - 1];
                const auto& a = table_[table_.size() - 2];
                const double s = (b.second - a.second) / (b.first - a.first);
                return std::exp(b.second + s * (lt - b.first));
            }
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (lt - lo.first) / (hi.first - lo.first);
            return std::exp(lo.second + w * (hi.second - lo.second));
        }
    }
    return 1.0;
}

double ScalingFunction::operator()(double t) const {
    if (!(t >= 0.0)) throw std::domain_error("scaling function needs t >= 0");
    return raw(t < 2.0 ? 2.0 : t);
}

void ScalingFunction::fit_constants() {
    auto [a, b] = fit_scale_constants(*this, lower_, upper_);
    c1_ = a;
    c2_ = b;
}

ScalingFunction ScalingFunction::power_log(double gamma, double delta) {
    // pure power: exact indices; log factor: pad the upper (or lower) index
    double lo = gamma, hi = gamma;
    if (delta > 0) hi = gamma + 0.05;
    if (delta < 0) lo = gamma - 0.05;
    return power_log(gamma, delta, lo, hi);
}

ScalingFunction ScalingFunction::power_log(double gamma, double delta, double lower,
                                           double upper) {
    if (lower > upper) throw std::invalid_argument("lower_index > upper_index");
    ScalingFunction f;
    f.kind_ = Kind::PowerLog;
    f.gamma_ = gamma;
    f.delta_ = delta;
    f.lower_ = lower;
    f.upper_ = upper;
    f.fit_constants();
    return f;
}

ScalingFunction ScalingFunction::constant(double c) {
    if (!(c > 0)) throw std::invalid_argument("constant scaling function needs c > 0");
    ScalingFunction f;
    f.kind_ = Kind::Constant;
    f.const_ = c;
    f.c1_ = f.c2_ = 1.0;
    return f;
}

ScalingFunction ScalingFunction::tabulated(std::vector<std::pair<double, double>> samples,
                                           double lower, double upper) {
    if (samples.size() < 2) throw std::invalid_argument("tabulated needs >= 2 samples");
    std::sort(samples.begin(), samples.end());
    ScalingFunction f;
    f.kind_ = Kind::Tabulated;
    for (auto& [t, v] : samples) {
        if (!(t >= 2.0) || !(v > 0.0))
            throw std::invalid_argument("tabulated samples need t >= 2, v > 0");
        f.table_.emplace_back(std::log(t), std::log(v));
    }
    f.lower_ = lower;
    f.upper_ = upper;
    f.fit_constants();
    return f;
}

std::map<std::string, std::string> ScalingFunction::to_config() const {
    std::map<std::string, std::string> kv;
    auto num = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    switch (kind_) {
        case Kind::PowerLog: kv["kind"] = "power_log"; break;
        case Kind::Constant: kv["kind"] = "constant"; break;
        case Kind::Tabulated: kv["kind"] = "tabulated"; break;
    }
    kv["gamma"] = num(kind_ == Kind::Constant ? 0.0 : gamma_);
    kv["delta"] = num(delta_);
    if (kind_ == Kind::Constant) kv["value"] = num(const_);
    kv["lower_index"] = num(lower_);
    kv["upper_index"] = num(upper_);
    kv["c1"] = num(c1_);
    kv["c2"] = num(c2_);
    return kv;
}

ScalingFunction ScalingFunction::from_config(const std::map<std::string, std::string>& kv) {
    auto get = [&kv](const std::string& k, double dflt, bool* found = nullptr) {
        auto it = kv.find(k);
        if (found) *found = it != kv.end();
        return it == kv.end() ? dflt : std::stod(it->second);
    };
    const std::string kind = kv.count("kind") ? kv.at("kind") : "constant";
    if (kind == "constant") return constant(get("value", 1.0));
    if (kind == "power_log") {
        const double gamma = get("gamma", 0.0), delta = get("delta", 0.0);
        bool has_lo = false, has_hi = false;
        const double lo = get("lower_index", gamma, &has_lo);
        const double hi = get("upper_index", gamma, &has_hi);
        if (has_lo || has_hi) return power_log(gamma, delta, lo, hi);
        return power_log(gamma, delta);
    }
    throw std::invalid_argument("unsupported scaling function kind: " + kind);
}

std::string ScalingFunction::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Constant: os << const_; break;
        case Kind::PowerLog:
            os << "t^" << gamma_;
            if (delta_ != 0.0) os << " log^" << delta_ << " t";
            break;
        case Kind::Tabulated: os << "table[" << table_.size() << "]"; break;
    }
    return os.str();
}

Psi1Cache::Psi1Cache(ScalingFunction base, double tol) : base_(std::move(base)), tol_(tol) {}

double Psi1Cache::operator()(double u) const {
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second;
    }
    const double v = psi1(base_, u, tol_);
    std::unique_lock lock(mutex_);
    memo_.emplace(u, v);
    return v;
}

double psi1(const ScalingFunction& f, double u, double tol) {
    if (!(u >= 1.0)) throw std::domain_error("psi1 needs u >= 1");
    if (u == 1.0) return 0.0;
    quad::Options opt;
    opt.rel_tol = tol;
    auto integrand = [&f](double v) { return f(v) / v; };
    std::vector<double> pts{1.0, std::min(2.0, u), u};
    // log-spaced interior points keep the adaptive pass cheap for huge u
    for (double p = 4.0; p < u; p *= 4.0) pts.push_back(p);
    auto r = quad::integrate_pieces(integrand, pts, opt);
    return r.require();
}

ScalingReport check_weak_scaling(const ScalingFunction& f,
                                 const std::vector<std::pair<double, double>>& grid) {
    ScalingReport rep;
    rep.worst_lower = 1e300;
    rep.worst_upper = 0.0;
    for (auto [r, R] : grid) {
        if (!(r >= 2.0 && R > r)) throw std::invalid_argument("grid pairs need 2 <= r < R");
        const double ratio = f(R) / f(r);
        rep.worst_lower = std::min(rep.worst_lower, ratio / (f.c1() * std::pow(R / r, f.lower_index())));
        rep.worst_upper = std::max(rep.worst_upper, ratio / (f.c2() * std::pow(R / r, f.upper_index())));
    }
    rep.pass = rep.worst_lower >= 1.0 - 1e-12 && rep.worst_upper <= 1.0 + 1e-12;
    return rep;
}

std::pair<double, double> fit_scale_constants(const ScalingFunction& f, double lower,
                                              double upper, int depth) {
    double c1 = 1e300, c2 = 0.0;
    // quarter-dyadic grid on [2, 2^depth]
    std::vector<double> ts;
    for (double t = 2.0; t <= std::ldexp(2.0, depth); t *= std::sqrt(std::sqrt(2.0)))
        ts.push_back(t);
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j) {
            const double ratio = f(ts[j]) / f(ts[i]);
            const double q = ts[j] / ts[i];
            c1 = std::min(c1, ratio / std::pow(q, lower));
            c2 = std::max(c2, ratio / std::pow(q, upper));
        }
    return {c1, c2};
}

double matuszewska_upper(const ScalingFunction& f, int depth) {
    if (depth < 4) throw std::invalid_argument("matuszewska_upper needs depth >= 4");
    double best = -1e300;
    for (int i = 1; i <= depth; ++i)
        for (int j = i + (depth + 1) / 2; j <= depth; ++j) {
            const double r = std::ldexp(1.0, i), R = std::ldexp(1.0, j);
            best = std::max(best, std::log(f(R) / f(r)) / std::log(R / r));
        }
    return best;
}

} // namespace hsjump
