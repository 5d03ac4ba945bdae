#include "hsjump/rng.hpp"

#include <cmath>

namespace hsjump {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed, uint64_t stream) {
    uint64_t st = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& w : s_) w = splitmix64(st);
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

uint64_t Rng::next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform_pos() {
    double u;
    do { u = uniform(); } while (u == 0.0);
    return u;
}

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_normal_;
    }
    // polar method
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * m;
    have_cached_ = true;
    return u * m;
}

double Rng::exponential() { return -std::log(uniform_pos()); }

double Rng::gamma(double shape) {
    if (shape < 1.0) {
        const double u = uniform_pos();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_pos();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
}

double Rng::pareto(double alpha) { return std::pow(uniform_pos(), -1.0 / alpha); }

void Rng::unit_sphere(int d, double* out) {
    if (d == 1) {
        out[0] = (next_u64() & 1) ? 1.0 : -1.0;
        return;
    }
    if (d == 2) {
        const double phi = 2.0 * M_PI * uniform();
        out[0] = std::cos(phi);
        out[1] = std::sin(phi);
        return;
    }
    // Marsaglia rejection on the disc
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = 2.0 * std::sqrt(1.0 - s);
    out[0] = u * m;
    out[1] = v * m;
    out[2] = 1.0 - 2.0 * s;
}

} // namespace hsjump
