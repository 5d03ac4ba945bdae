#pragma once

#include <cmath>

namespace hsjump {

// A(d,a) = 2^a pi^{-d/2} Gamma((d+a)/2) / |Gamma(-a/2)|, the isotropic stable
// jump-kernel constant; evaluated through log-gamma to avoid overflow.
inline double stable_jump_constant(int d, double alpha) {
    return std::exp(alpha * std::log(2.0) - 0.5 * d * std::log(M_PI) +
                    std::lgamma(0.5 * (d + alpha)) - std::lgamma(-0.5 * alpha));
}

// E_0[tau_{B(0,1)}] for the isotropic alpha-stable process started at the
// center of the unit ball: Gamma(d/2) / (2^a Gamma(1+a/2) Gamma((d+a)/2)).
inline double stable_mean_exit_unit_ball(int d, double alpha) {
    return std::exp(std::lgamma(0.5 * d) - alpha * std::log(2.0) -
                    std::lgamma(1.0 + 0.5 * alpha) - std::lgamma(0.5 * (d + alpha)));
}

// surface measure of the unit sphere S^{m-1} in R^m
inline double sphere_surface(int m) {
    if (m <= 0) return 0.0;
    return 2.0 * std::exp(0.5 * m * std::log(M_PI) - std::lgamma(0.5 * m));
}

} // namespace hsjump
