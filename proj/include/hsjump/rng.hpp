#pragma once

#include <array>
#include <cstdint>

namespace hsjump {

// xoshiro256++ seeded from (seed, stream) through splitmix64. Each Monte Carlo
// path gets its own stream so runs are reproducible and order-independent
// under parallel execution. All samplers are self-contained: results do not
// depend on the standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0);

    uint64_t next_u64();
    double uniform();      // [0, 1)
    double uniform_pos();  // (0, 1)
    double normal();
    double exponential();
    double gamma(double shape);           // Marsaglia-Tsang, any shape > 0
    double beta(double a, double b);
    double pareto(double alpha);          // density a t^{-a-1} on (1, inf)
    void unit_sphere(int d, double* out); // uniform direction, d <= 3

  private:
    std::array<uint64_t, 4> s_;
    double cached_normal_ = 0.0;
    bool have_cached_ = false;
};

uint64_t splitmix64(uint64_t& state);

} // namespace hsjump
