#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "hsjump/constants.hpp"
#include "hsjump/geometry.hpp"
#include "hsjump/resurrection.hpp"
#include "hsjump/scalefn.hpp"

namespace hsjump {

// Boundary factor models for J(x,y) = j(x,y) B(x,y).
struct BModel {
    enum class Kind { Unit, Product, ProductPower, ResurrectionInduced };
    Kind kind = Kind::Unit;
    std::optional<ScalingFunction> phi;            // Product
    double beta = 0.0;                             // ProductPower exponent
    std::shared_ptr<ReturnKernelSpec> rk;          // ResurrectionInduced

    static BModel unit() { return {}; }
    static BModel product(ScalingFunction f);
    static BModel product_power(double beta, double alpha);
    static BModel resurrection(std::shared_ptr<ReturnKernelSpec> rk);

    // declared upper scaling index of the Phi-envelope in (A3)
    double upper_envelope_index() const;
    std::string describe() const;
};

struct KernelSpec {
    int d = 1;
    double alpha = 1.5;
    double kappa = 0.0;
    BModel b;
    double stable_const = 0.0;       // A(d, alpha)
    std::optional<double> p;         // decay exponent p_kappa, derived

    double beta_tilde2() const { return b.upper_envelope_index(); }
};

// validates cross-field constraints (alpha range, kappa = 0 forces alpha > 1)
KernelSpec make_kernel_spec(int d, double alpha, double kappa, BModel b);

double j_kernel(const KernelSpec& s, const HPoint& x, const HPoint& y);
double b_factor(const KernelSpec& s, const HPoint& x, const HPoint& y);
inline double jump_kernel(const KernelSpec& s, const HPoint& x, const HPoint& y) {
    return j_kernel(s, x, y) * b_factor(s, x, y);
}
double killing(const KernelSpec& s, const HPoint& x);

// B as a function of (x_d, y_d, lateral distance); lateral ignored for d = 1
double b_factor_radial(const KernelSpec& s, double xd, double yd, double lat);

// d = 1 evaluator with an optional log-ratio interpolation table; the
// resurrection-induced B is scale invariant, so B(x,y) = b(log(max/min)).
// Cached mode is what the Green solver uses for its n^2 assembly.
std::function<double(double, double)> make_b_evaluator_1d(const KernelSpec& s, bool cached);

struct AxiomTolerances {
    double sym_rel = 1e-9;           // (A1)
    double scale_rel = 1e-9;         // (A4), scale part
    double translate_rel = 1e-12;    // (A4), lateral part (d >= 2)
    double theta = 1.0;              // (A2) Holder exponent probe
};

struct AxiomReport {
    double a1_max_rel = 0.0;
    double a2_max_quotient = 0.0;    // sup |B(x,x)-B(x,y)| / (|x-y|/(xd/\yd))^theta
    double a3_fitted_C = 0.0;        // min C with 1/C <= B/Phi <= C on the sample
    double a4_scale_max_rel = 0.0;
    double a4_translate_max_rel = 0.0;
    double b_min = 0.0;
    bool a1_pass = false, a3_pass = false, a4_pass = false;
};

// Monte Carlo axioms check on random interior pairs. The (A3) envelope is the
// model's own Phi when it has one; a reference Phi can be supplied otherwise.
AxiomReport check_axioms(const KernelSpec& s, int n_pairs, uint64_t seed,
                         const AxiomTolerances& tol = {},
                         const ScalingFunction* phi_ref = nullptr);

} // namespace hsjump
