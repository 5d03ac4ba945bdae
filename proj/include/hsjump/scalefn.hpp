#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "hsjump/quadrature.hpp"

namespace hsjump {

// Positive function on [0,inf), flat below 2, whose ratios obey
//   C1 (R/r)^lower <= f(R)/f(r) <= C2 (R/r)^upper   for 2 <= r < R.
// Plays both roles Phi (jump-kernel envelope) and Psi (return kernel).
class ScalingFunction {
  public:
    enum class Kind { PowerLog, Constant, Tabulated };

    static ScalingFunction power_log(double gamma, double delta);
    // declare custom indices (must satisfy lower <= gamma_effective <= upper);
    // scale constants are fitted numerically on a dyadic grid.
    static ScalingFunction power_log(double gamma, double delta, double lower, double upper);
    static ScalingFunction constant(double c);
    // samples (t, value) with t >= 2, interpolated linearly in log-log scale
    static ScalingFunction tabulated(std::vector<std::pair<double, double>> samples,
                                     double lower, double upper);

    double operator()(double t) const;  // total: flat extension below 2

    Kind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }
    double lower_index() const { return lower_; }
    double upper_index() const { return upper_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

    std::map<std::string, std::string> to_config() const;
    static ScalingFunction from_config(const std::map<std::string, std::string>& kv);

    std::string describe() const;

  private:
    ScalingFunction() = default;
    double raw(double t) const;  // value for t >= 2
    void fit_constants();

    Kind kind_ = Kind::Constant;
    double gamma_ = 0.0, delta_ = 0.0;  // PowerLog parameters
    double const_ = 1.0;
    std::vector<std::pair<double, double>> table_;  // (log t, log v)
    double lower_ = 0.0, upper_ = 0.0;
    double c1_ = 1.0, c2_ = 1.0;
};

// Psi_1(u) = int_1^u Psi(v)/v dv. Monotone; cached for repeated arguments.
class Psi1Cache {
  public:
    Psi1Cache(ScalingFunction base, double tol = 1e-10);
    double operator()(double u) const;  // u >= 1
    const ScalingFunction& base() const { return base_; }

  private:
    ScalingFunction base_;
    double tol_;
    mutable std::map<double, double> memo_;
    mutable std::shared_mutex mutex_;
};

double psi1(const ScalingFunction& f, double u, double tol = 1e-10);

struct ScalingReport {
    double worst_lower = 0.0;  // min of ratio/(C1 (R/r)^lower); pass needs >= 1
    double worst_upper = 0.0;  // max of ratio/(C2 (R/r)^upper); pass needs <= 1
    bool pass = false;
};
ScalingReport check_weak_scaling(const ScalingFunction& f,
                                 const std::vector<std::pair<double, double>>& grid);

// Fit (C1, C2) for given indices over a dyadic grid up to 2^depth.
std::pair<double, double> fit_scale_constants(const ScalingFunction& f, double lower,
                                              double upper, int depth = 24);

// Grid estimate of the upper Matuszewska index: sup of log-ratios over dyadic
// pairs separated by at least half the depth. Upper-bounds the true index only
// asymptotically.
double matuszewska_upper(const ScalingFunction& f, int depth);

} // namespace hsjump
