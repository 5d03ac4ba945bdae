#pragma once

#include <memory>
#include <stdexcept>

#include "hsjump/geometry.hpp"
#include "hsjump/quadrature.hpp"
#include "hsjump/rng.hpp"
#include "hsjump/scalefn.hpp"

namespace hsjump {

// Point of the lower half-space (z_d < 0).
struct LPoint {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int d = 1;
    double zd() const { return c[d - 1]; }
    static LPoint of(int d, std::initializer_list<double> coords) {
        LPoint p;
        p.d = d;
        int i = 0;
        for (double v : coords) p.c[i++] = v;
        if (i != d) throw std::invalid_argument("coordinate count != d");
        if (!(p.zd() < 0.0)) throw std::domain_error("lower half-space point needs z_d < 0");
        return p;
    }
};

struct QuadOpts {
    double rel_tol = 1e-7;
    long max_intervals = 4000;
};

// Return kernel ptilde(z,y) = |z_d|^a Psi(|y-z|^2/(y_d |z_d|)) |y-z|^{-d-a},
// its normalization A, and the induced resurrection kernel
//   q(x,y) = (A(d,a)/A) \int_{lower half-space} Psi(...) |z_d|^a
//            |x-z|^{-d-a} |y-z|^{-d-a} dz.
// Requires gamma_2 < min(1, alpha); d in {1, 2}.
class ReturnKernelSpec {
  public:
    ReturnKernelSpec(int d, double alpha, ScalingFunction psi, QuadOpts quad = {});

    int d() const { return d_; }
    double alpha() const { return alpha_; }
    const ScalingFunction& psi() const { return psi_; }
    const QuadOpts& quad() const { return quad_; }
    double normalization() const { return A_; }          // A
    double resurrection_constant() const { return C_; }  // A(d,alpha)/A
    const Psi1Cache& psi1() const { return *psi1_; }

    // rejection-envelope parameters (power gamma2+ dominating Psi)
    double envelope_power() const { return env_g_; }
    double envelope_const() const { return env_M_; }

  private:
    int d_;
    double alpha_;
    ScalingFunction psi_;
    QuadOpts quad_;
    double A_, C_;
    double env_g_, env_M_;
    std::shared_ptr<Psi1Cache> psi1_;
};

// unnormalized return density ptilde(z, y)
double return_density(const ReturnKernelSpec& rk, const LPoint& z, const HPoint& y);

// A by the substituted integral (z-independent form)
double normalization_A(int d, double alpha, const ScalingFunction& psi, QuadOpts opt = {});
// A by direct integration of ptilde(z, .) for a given z; equals the above
double normalization_A_direct(int d, double alpha, const ScalingFunction& psi, const LPoint& z,
                              QuadOpts opt = {});
// truncated probe on u in (1/R, R); grows without bound iff the model is
// invalid (gamma_2 >= 1 /\ alpha)
double normalization_A_truncated(int d, double alpha, const ScalingFunction& psi, double R,
                                 QuadOpts opt = {});

double q_kernel(const ReturnKernelSpec& rk, const HPoint& x, const HPoint& y);

// two-sided model envelope: (xd/\yd)^{-d-a} in the deep-interior regime,
// |x-y|^{-d-a} Psi_1(|x-y|^2/(xd yd)) otherwise; constants are absorbed by
// the comparability tests
double q_comparator(const ReturnKernelSpec& rk, const HPoint& x, const HPoint& y);

// auxiliary lateral integrals (d >= 2)
double aux_h(const ReturnKernelSpec& rk, double a, double b);
double aux_upsilon(const ReturnKernelSpec& rk, double a, double b, double l);
double aux_f(const ReturnKernelSpec& rk, double a, double b);
double aux_g(const ReturnKernelSpec& rk, double a, double b);
// Xi(x,y), via the radial reduction to an integral of h
double aux_xi(const ReturnKernelSpec& rk, double xd, double yd);
// direct two-dimensional form of Xi, kept as a cross-check
double aux_xi_direct(const ReturnKernelSpec& rk, double xd, double yd);

// Exact sample from the normalized return law p(z, .) by rejection from the
// power-law envelope. Throws if the acceptance rate falls below 1e-3.
HPoint sample_return(const ReturnKernelSpec& rk, const LPoint& z, Rng& rng,
                     long* attempts_out = nullptr);

} // namespace hsjump
