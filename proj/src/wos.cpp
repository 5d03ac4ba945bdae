#include "hsjump/wos.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace hsjump {

bool SimRegion::contains(const HPoint& x) const {
    if (!(x.xd() > 0.0)) return false;
    if (kind == Kind::Box) return box.contains(x);
    return dist(x, center) < radius;
}

double SimRegion::interior_gap(const HPoint& x) const {
    if (kind == Kind::Box) return box.interior_gap(x);
    return radius - dist(x, center);
}

SimRegion SimRegion::scaled(double t) const {
    SimRegion r = *this;
    r.box = box.scaled(t);
    r.center = center.xd() > 0 ? center.scaled(t) : center;
    r.radius *= t;
    return r;
}

SimConfig make_sim_config(KernelSpec spec, uint64_t seed) {
    if (spec.b.kind != BModel::Kind::Unit && spec.b.kind != BModel::Kind::ResurrectionInduced)
        throw std::invalid_argument("simulator needs Unit or ResurrectionInduced B");
    SimConfig cfg;
    cfg.spec = std::move(spec);
    cfg.seed = seed;
    if (cfg.spec.kappa > 0.0) cfg.killing = KillingMode::ExpectedTimeApprox;
    return cfg;
}

HPoint ball_exit_sample(const HPoint& x, double rho, double alpha, Rng& rng) {
    const double v = rng.beta(1.0 - 0.5 * alpha, 0.5 * alpha);
    const double s = rho / std::sqrt(1.0 - v);
    double dir[3];
    rng.unit_sphere(x.d, dir);
    HPoint y = x;
    for (int i = 0; i < x.d; ++i) y.c[i] += s * dir[i];
    return y;
}

PathOutcome run_until_exit(const SimConfig& cfg, const HPoint& start, const SimRegion& region,
                           Rng& rng) {
    if (!region.contains(start)) throw std::invalid_argument("start must lie in the region");
    const double alpha = cfg.spec.alpha;
    const double mean_exit_unit = stable_mean_exit_unit_ball(cfg.spec.d, alpha);
    const bool resurrect = cfg.spec.b.kind == BModel::Kind::ResurrectionInduced;
    const double abs_cut = cfg.eps_abs * region.height_scale();

    PathOutcome out;
    HPoint x = start;
    for (long step = 0; step < cfg.max_steps; ++step) {
        out.steps = step;
        out.last_point = x;
        if (x.xd() < abs_cut) {
            out.terminal = PathOutcome::Terminal::BoundaryAbsorbed;
            return out;
        }
        const double rho = std::min(cfg.delta_wos * x.xd(), region.interior_gap(x));
        const double et = mean_exit_unit * std::pow(rho, alpha);
        out.time_proxy += et;
        if (cfg.killing == KillingMode::ExpectedTimeApprox && cfg.spec.kappa > 0.0) {
            const double rate = cfg.spec.kappa * std::pow(x.xd(), -alpha);
            if (rng.uniform() >= std::exp(-rate * et)) {
                out.terminal = PathOutcome::Terminal::Killed;
                return out;
            }
        }
        HPoint v = ball_exit_sample(x, rho, alpha, rng);
        if (v.xd() <= 0.0) {
            if (!resurrect) {
                // half-space exit kills the path under the Unit model
                out.terminal = PathOutcome::Terminal::Killed;
                out.last_point = x;
                return out;
            }
            LPoint z;
            z.d = v.d;
            z.c = v.c;
            v = sample_return(*cfg.spec.b.rk, z, rng);
            ++out.resurrections;
        }
        if (!region.contains(v)) {
            out.terminal = PathOutcome::Terminal::ExitedAlive;
            out.exit_point = v;
            out.last_point = v;
            return out;
        }
        x = v;
    }
    out.terminal = PathOutcome::Terminal::StepBudgetExhausted;
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HSJUMP_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 4;
}

void for_each_path(long n_paths, uint64_t seed, int threads,
                   const std::function<void(long, Rng&, int)>& body, int n_chunk_states) {
    const int T = std::min<long>(std::max(1, threads), std::max<long>(1, n_paths));
    (void)n_chunk_states;
    std::vector<std::thread> pool;
    const long chunk = (n_paths + T - 1) / T;
    for (int t = 0; t < T; ++t) {
        const long lo = t * chunk, hi = std::min(n_paths, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, t]() {
            for (long i = lo; i < hi; ++i) {
                Rng rng(seed, (uint64_t)i);
                body(i, rng, t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

namespace {

struct Tally {
    long hits = 0, absorbed = 0, killed = 0, budget = 0;
    stats::Running payoff;
};

template <class Classify>
HitEstimate run_hits(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                     long n_paths, uint64_t salt, Classify&& classify) {
    const int T = resolve_threads(cfg.threads);
    std::vector<Tally> tallies(T);
    for_each_path(n_paths, cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL), T,
                  [&](long i, Rng& rng, int t) {
                      PathOutcome o = run_until_exit(cfg, start, region, rng);
                      switch (o.terminal) {
                          case PathOutcome::Terminal::ExitedAlive:
                              if (classify(o.exit_point)) ++tallies[t].hits;
                              break;
                          case PathOutcome::Terminal::BoundaryAbsorbed: ++tallies[t].absorbed; break;
                          case PathOutcome::Terminal::Killed: ++tallies[t].killed; break;
                          case PathOutcome::Terminal::StepBudgetExhausted: ++tallies[t].budget; break;
                      }
                  },
                  T);
    HitEstimate est;
    est.n = n_paths;
    for (const auto& t : tallies) {
        est.hits += t.hits;
        est.absorbed += t.absorbed;
        est.killed += t.killed;
        est.budget += t.budget;
    }
    est.ci = stats::wilson(est.hits, est.n);
    return est;
}

} // namespace

HitEstimate hit_probability(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                            const std::function<bool(const HPoint&)>& window, long n_paths,
                            uint64_t salt) {
    return run_hits(cfg, region, start, n_paths, salt, window);
}

ExitProbability exit_probability(const SimConfig& cfg, const HPoint& x, double r, long n_paths,
                                 uint64_t salt) {
    const SimRegion region = SimRegion::of_box(box_U(cfg.spec.d, r));
    const BoxRegion target = box_D(cfg.spec.d, r, r);
    ExitProbability out;
    out.in_box = run_hits(cfg, region, x, n_paths, salt,
                          [&](const HPoint& y) { return target.contains(y); });
    out.out_box = out.in_box;
    const long alive = n_paths - out.in_box.absorbed - out.in_box.killed - out.in_box.budget;
    out.out_box.hits = alive - out.in_box.hits;
    out.out_box.ci = stats::wilson(out.out_box.hits, n_paths);
    return out;
}

PayoffEstimate exit_payoff(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                           const std::function<double(const HPoint&)>& payoff, long n_paths,
                           uint64_t salt) {
    const int T = resolve_threads(cfg.threads);
    std::vector<stats::Running> acc(T);
    for_each_path(n_paths, cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL), T,
                  [&](long, Rng& rng, int t) {
                      PathOutcome o = run_until_exit(cfg, start, region, rng);
                      acc[t].add(o.terminal == PathOutcome::Terminal::ExitedAlive
                                     ? payoff(o.exit_point)
                                     : 0.0);
                  },
                  T);
    PayoffEstimate est;
    for (const auto& a : acc) est.stat.merge(a);
    est.n = n_paths;
    return est;
}

PayoffEstimate mean_exit_time_proxy(const SimConfig& cfg, const SimRegion& region,
                                    const HPoint& start, long n_paths, uint64_t salt) {
    const int T = resolve_threads(cfg.threads);
    std::vector<stats::Running> acc(T);
    for_each_path(n_paths, cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL), T,
                  [&](long, Rng& rng, int t) {
                      PathOutcome o = run_until_exit(cfg, start, region, rng);
                      acc[t].add(o.time_proxy);
                  },
                  T);
    PayoffEstimate est;
    for (const auto& a : acc) est.stat.merge(a);
    est.n = n_paths;
    return est;
}

HitEstimate absorbed_fraction(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                              long n_paths, uint64_t salt) {
    HitEstimate est = run_hits(cfg, region, start, n_paths, salt,
                               [](const HPoint&) { return false; });
    est.hits = est.absorbed;
    est.ci = stats::wilson(est.hits, est.n);
    return est;
}

} // namespace hsjump
