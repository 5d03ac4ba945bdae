#pragma once

#include <functional>
#include <vector>

#include "hsjump/kernel.hpp"
#include "hsjump/rng.hpp"
#include "hsjump/stats.hpp"

namespace hsjump {

// Region the path is run in: a box D_w(a,b), or a ball clipped to the
// half-space.
struct SimRegion {
    enum class Kind { Box, Ball };
    Kind kind = Kind::Box;
    BoxRegion box;
    HPoint center;      // Ball
    double radius = 1;

    static SimRegion of_box(BoxRegion b) { return {Kind::Box, b, {}, 0.0}; }
    static SimRegion of_ball(HPoint c, double r) { return {Kind::Ball, {}, c, r}; }

    bool contains(const HPoint& x) const;
    double interior_gap(const HPoint& x) const;  // distance to the complement
                                                  // (bottom boundary excluded)
    double height_scale() const { return kind == Kind::Box ? box.b : radius; }
    SimRegion scaled(double t) const;
};

enum class KillingMode { None, ExpectedTimeApprox };

struct SimConfig {
    KernelSpec spec;              // Unit or ResurrectionInduced B
    double eps_abs = 1.0 / 256.0; // boundary absorption cutoff (fraction of
                                  // the region height)
    double delta_wos = 0.5;       // WoS ball radius = delta * x_d
    long max_steps = 200000;
    uint64_t seed = 1;
    KillingMode killing = KillingMode::None;
    int threads = 0;              // 0: HSJUMP_THREADS env or 4
};

SimConfig make_sim_config(KernelSpec spec, uint64_t seed);

struct PathOutcome {
    enum class Terminal { ExitedAlive, BoundaryAbsorbed, Killed, StepBudgetExhausted };
    Terminal terminal = Terminal::StepBudgetExhausted;
    HPoint exit_point;        // valid for ExitedAlive
    HPoint last_point;        // position at termination
    long steps = 0;
    long resurrections = 0;
    double time_proxy = 0.0;  // sum of per-ball expected sojourn times
};

// Exact ball-exit sample of the isotropic stable process started at the
// center: radius rho/sqrt(1-V), V ~ Beta(1-a/2, a/2), direction uniform.
HPoint ball_exit_sample(const HPoint& x, double rho, double alpha, Rng& rng);

PathOutcome run_until_exit(const SimConfig& cfg, const HPoint& start, const SimRegion& region,
                           Rng& rng);

int resolve_threads(int requested);

// Deterministic parallel path loop: per-path Rng streams keyed by
// (seed, path index), per-chunk accumulators merged in chunk order.
void for_each_path(long n_paths, uint64_t seed, int threads,
                   const std::function<void(long, Rng&, int)>& body, int n_chunk_states);

struct HitEstimate {
    long n = 0;
    long hits = 0;
    long absorbed = 0;
    long killed = 0;
    long budget = 0;
    stats::Interval ci;   // Wilson, z = 3
    double p_hat() const { return n ? (double)hits / (double)n : 0.0; }
};

// P_start(Y_{tau_region} in window), boundary/killed paths counted as misses
HitEstimate hit_probability(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                            const std::function<bool(const HPoint&)>& window, long n_paths,
                            uint64_t stream_salt = 0);

struct ExitProbability {
    HitEstimate in_box;       // exit lands in D(r, r)
    HitEstimate out_box;      // exits alive outside D(r, r)
};
// exit from U(r) started at x; classification against D(r, r)
ExitProbability exit_probability(const SimConfig& cfg, const HPoint& x, double r, long n_paths,
                                 uint64_t stream_salt = 0);

struct PayoffEstimate {
    stats::Running stat;
    long n = 0;
};
// E_start[g(Y_{tau_region})] with g = 0 off ExitedAlive paths
PayoffEstimate exit_payoff(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                           const std::function<double(const HPoint&)>& payoff, long n_paths,
                           uint64_t stream_salt = 0);

// mean accumulated expected-sojourn time until exiting the region
PayoffEstimate mean_exit_time_proxy(const SimConfig& cfg, const SimRegion& region,
                                    const HPoint& start, long n_paths, uint64_t stream_salt = 0);

// fraction of paths that end by boundary absorption (never leaving the region)
HitEstimate absorbed_fraction(const SimConfig& cfg, const SimRegion& region, const HPoint& start,
                              long n_paths, uint64_t stream_salt = 0);

} // namespace hsjump
