#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsjump/kernel.hpp"

using namespace hsjump;

TEST_CASE("stable constant in d=1 at alpha=1") {
    // A(1,1) = 2 pi^{-1/2} Gamma(1) / |Gamma(-1/2)| = 1/pi
    CHECK(stable_jump_constant(1, 1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
    auto s = make_kernel_spec(1, 1.0, 0.5, BModel::unit());
    const auto x = HPoint::of(1, {1.0}), y = HPoint::of(1, {3.0});
    CHECK(j_kernel(s, x, y) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("j homogeneity is exact") {
    auto s = make_kernel_spec(2, 1.3, 0.7, BModel::unit());
    const auto x = HPoint::of(2, {0.2, 1.0}), y = HPoint::of(2, {-0.4, 2.5});
    const double lam = 3.0;
    CHECK(j_kernel(s, x.scaled(lam), y.scaled(lam)) * std::pow(lam, 2.0 + 1.3) ==
          doctest::Approx(j_kernel(s, x, y)).epsilon(1e-12));
    CHECK_THROWS_AS(j_kernel(s, x, x), std::domain_error);
}

TEST_CASE("product B in the flat region") {
    auto s = make_kernel_spec(2, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.25, 0.0)));
    const auto x = HPoint::of(2, {0.0, 1.0}), y = HPoint::of(2, {0.0, 3.0});
    // argument 4/3 < 2 lands on the flat extension
    CHECK(b_factor(s, x, y) == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
    auto u = make_kernel_spec(2, 1.5, 0.0, BModel::unit());
    CHECK(b_factor(u, x, y) == 1.0);
}

TEST_CASE("killing function") {
    auto s0 = make_kernel_spec(1, 1.5, 0.0, BModel::unit());
    CHECK(killing(s0, HPoint::of(1, {0.123})) == 0.0);
    auto s1 = make_kernel_spec(1, 1.5, 1.0, BModel::unit());
    CHECK(killing(s1, HPoint::of(1, {4.0})) == doctest::Approx(0.125).epsilon(1e-14));
    const auto x = HPoint::of(1, {0.7});
    CHECK(killing(s1, x.scaled(2.0)) == doctest::Approx(std::pow(2.0, -1.5) * killing(s1, x)));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_kernel_spec(1, 0.9, 0.0, BModel::unit()), std::invalid_argument);
    CHECK_THROWS_AS(make_kernel_spec(1, 2.0, 1.0, BModel::unit()), std::invalid_argument);
    CHECK_THROWS_AS(BModel::product_power(0.9, 0.8), std::invalid_argument);
}

TEST_CASE("product power envelope equivalence (A3)") {
    // blow-up exponent beta pairs with Phi = t^beta; fitted C stays small
    const double beta = 0.3;
    auto s = make_kernel_spec(2, 1.5, 0.0, BModel::product_power(beta, 1.5));
    auto phi = ScalingFunction::power_log(beta, 0.0);
    double lo = 1e300, hi = 0.0;
    for (double xd : {0.01, 0.1, 1.0})
        for (double yd : {0.02, 0.5, 2.0})
            for (double lat : {0.05, 0.4, 1.5, 8.0}) {
                const auto x = HPoint::of(2, {0.0, xd});
                const auto y = HPoint::of(2, {lat, yd});
                const double L2 = dist(x, y) * dist(x, y);
                const double r = b_factor(s, x, y) / phi(L2 / (xd * yd));
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
    const double C = std::max(hi, 1.0 / lo);
    CHECK(C <= 2.0);
}

TEST_CASE("axioms for closed-form models hold to machine precision") {
    auto s = make_kernel_spec(2, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.25, 0.0)));
    auto rep = check_axioms(s, 200, 42);
    CHECK(rep.a1_max_rel <= 1e-12);
    CHECK(rep.a4_scale_max_rel <= 1e-12);
    CHECK(rep.a4_translate_max_rel <= 1e-12);
    CHECK(rep.a3_fitted_C < 1.5);  // the model IS its own envelope up to the kink
    CHECK(rep.b_min >= 1.0);

    auto pp = make_kernel_spec(2, 1.2, 0.3, BModel::product_power(-0.3, 1.2));
    auto rep2 = check_axioms(pp, 200, 43);
    CHECK(rep2.a1_pass);
    CHECK(rep2.a4_pass);
}

TEST_CASE("resurrection-induced B satisfies the axioms within quadrature error") {
    auto rk = std::make_shared<ReturnKernelSpec>(1, 1.5,
                                                 ScalingFunction::power_log(0.75, 0.0));
    auto s = make_kernel_spec(1, 1.5, 0.0, BModel::resurrection(rk));
    AxiomTolerances tol;
    tol.sym_rel = 3e-6;
    tol.scale_rel = 3e-6;
    auto rep = check_axioms(s, 40, 7, tol);
    CHECK(rep.a1_pass);
    CHECK(rep.a4_pass);
    CHECK(rep.b_min >= 1.0);  // B = 1 + q/j > 1
    CHECK(rep.a2_max_quotient < 1e3);  // empirical Holder quotient is finite
}

TEST_CASE("resurrection-induced blow-up matches the log form for Psi = 1") {
    auto rk = std::make_shared<ReturnKernelSpec>(1, 1.5, ScalingFunction::constant(1.0));
    auto s = make_kernel_spec(1, 1.5, 0.0, BModel::resurrection(rk));
    double lo = 1e300, hi = 0.0;
    for (double h : {0.3, 0.1, 0.03, 0.01, 0.001}) {
        const auto x = HPoint::of(1, {h}), y = HPoint::of(1, {h + 1.0});
        const double ratio = (b_factor(s, x, y) - 1.0) / std::log(M_E + 1.0 / h);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 8.0);  // measured ~6.3 across the transition zone
}

TEST_CASE("deep-interior blow-up rate of B - 1") {
    // B(x,y) - 1 =~ (|x-y| / (x_d /\ y_d))^{d+a} when x_d /\ y_d > |x-y|
    auto rk = std::make_shared<ReturnKernelSpec>(1, 1.5, ScalingFunction::constant(1.0));
    auto s = make_kernel_spec(1, 1.5, 0.0, BModel::resurrection(rk));
    double lo = 1e300, hi = 0.0;
    for (double L : {0.5, 0.1, 0.02}) {
        const auto x = HPoint::of(1, {1.0}), y = HPoint::of(1, {1.0 + L});
        const double r = (b_factor(s, x, y) - 1.0) / std::pow(L, 2.5);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo < 3.0);
}

TEST_CASE("cached 1d evaluator agrees with direct quadrature") {
    auto rk = std::make_shared<ReturnKernelSpec>(1, 1.5, ScalingFunction::constant(1.0));
    auto s = make_kernel_spec(1, 1.5, 0.0, BModel::resurrection(rk));
    auto cached = make_b_evaluator_1d(s, true);
    auto direct = make_b_evaluator_1d(s, false);
    for (auto [x, y] : {std::pair{1.0, 1.0000322}, {0.7, 0.2}, {3.0, 0.004}, {0.5, 11.0}})
        CHECK(cached(x, y) == doctest::Approx(direct(x, y)).epsilon(2e-4));
}

TEST_CASE("upper envelope index per model") {
    CHECK(BModel::unit().upper_envelope_index() == 0.0);
    CHECK(BModel::product(ScalingFunction::power_log(0.2, 0.0)).upper_envelope_index() ==
          doctest::Approx(0.2));
    CHECK(BModel::product_power(0.3, 1.5).upper_envelope_index() == doctest::Approx(0.3));
    CHECK(BModel::product_power(-0.3, 1.5).upper_envelope_index() == 0.0);
}
