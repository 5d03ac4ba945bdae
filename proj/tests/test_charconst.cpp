#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hsjump/charconst.hpp"
#include "hsjump/constants.hpp"

using namespace hsjump;

namespace {
KernelSpec unit_spec(int d, double alpha) {
    return make_kernel_spec(d, alpha, alpha > 1.0 ? 0.0 : 0.1, BModel::unit());
}
}

TEST_CASE("zero identities at q = 0 and q = alpha - 1") {
    for (double a : {0.6, 1.0, 1.5}) {
        for (bool product : {false, true}) {
            auto b = product ? BModel::product(ScalingFunction::power_log(0.2, 0.0))
                             : BModel::unit();
            auto s = make_kernel_spec(1, a, a > 1.0 ? 0.0 : 0.1, b);
            CHECK(std::abs(big_c(s, 0.0).value) <= 1e-8);
            CHECK(std::abs(big_c(s, a - 1.0).value) <= 1e-8);
        }
    }
}

TEST_CASE("closed-form oracle for the unit model, d = 1") {
    for (double a : {0.6, 1.5}) {
        auto s = unit_spec(1, a);
        for (double q : {-0.2, 0.3, 0.9, 1.2}) {
            if (!(q > -1.0 && q < a)) continue;
            const double expected = big_c_closed_form_unit_1d(a, q);
            const auto got = big_c(s, q);
            CHECK(got.converged);
            CHECK(got.value == doctest::Approx(expected).epsilon(1e-8));
            // independent substitution route
            CHECK(big_c_substituted_1d(s, q) == doctest::Approx(expected).epsilon(1e-7));
        }
    }
}

TEST_CASE("graded-mesh and substitution routes agree for a product model") {
    auto s = make_kernel_spec(1, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.2, 0.0)));
    for (double q : {0.7, 1.0, 1.2}) {
        const double v1 = big_c(s, q).value;
        const double v2 = big_c_substituted_1d(s, q);
        CHECK(v2 == doctest::Approx(v1).epsilon(1e-6));
    }
    CHECK(big_c(s, 1.0).value > 0.0);  // sign in ((alpha-1)+, alpha-beta2)
}

TEST_CASE("d = 2 unit model factorizes into K_d times the 1-d integral") {
    const double a = 1.3;
    auto s1 = unit_spec(1, a);
    auto s2 = unit_spec(2, a);
    const double kd = std::sqrt(M_PI) * std::exp(std::lgamma(0.5 * (a + 1.0)) -
                                                 std::lgamma(0.5 * (2.0 + a)));
    for (double q : {0.5, 0.8}) {
        const double c1 = big_c(s1, q).value;
        const double c2 = big_c(s2, q).value;
        CHECK(c2 == doctest::Approx(kd * c1).epsilon(1e-6));
        // swapped-order route as an independent check
        CHECK(big_c_swapped(s2, q) == doctest::Approx(c2).epsilon(1e-6));
    }
}

TEST_CASE("sign table on the admissible interval") {
    auto s = unit_spec(1, 1.5);
    CHECK(big_c(s, -0.5).value > 0.0);   // (beta2 - 1, (alpha-1) /\ 0)
    CHECK(big_c(s, 0.25).value < 0.0);   // (0, alpha - 1)
    CHECK(big_c(s, 1.0).value > 0.0);    // ((alpha-1)+, alpha - beta2)
    auto t = unit_spec(1, 0.6);
    CHECK(big_c(t, -0.7).value > 0.0);
    CHECK(big_c(t, -0.2).value < 0.0);   // (alpha - 1, 0)
    CHECK(big_c(t, 0.3).value > 0.0);
}

TEST_CASE("strict monotonicity on the solve branch") {
    auto s = make_kernel_spec(2, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.2, 0.0)));
    QuadOpts opt;
    opt.rel_tol = 1e-6;
    double prev = -1e300;
    for (int k = 0; k <= 10; ++k) {
        const double q = 0.5 + (1.3 - 1e-3 - 0.5) * k / 10.0;
        const double c = big_c(s, q, opt).value;
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("blow-up of C at the right endpoint for a power envelope") {
    // Phi(r) = r^{0.2}: C(alpha, q, B) -> inf as q -> alpha - 0.2
    auto s = make_kernel_spec(1, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.2, 0.0)));
    // geometric schedule down to the 1e-3 conditioning boundary; closer
    // approaches are flagged ill-conditioned (mass escapes to s -> 0)
    double prev = 0.0;
    bool growing = true;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        const double c = big_c(s, 1.3 - eps).value;
        growing = growing && c > 3.0 * prev;
        prev = c;
    }
    CHECK(growing);
    CHECK(prev > 100.0);
}

TEST_CASE("solve_p round trips") {
    struct Case {
        double alpha, p_target;
    } cases[] = {{1.0, 0.3}, {1.2, 0.5}, {1.5, 0.9}};
    for (auto [a, pstar] : cases) {
        auto s = make_kernel_spec(1, a, a > 1.0 ? 0.0 : 0.1, BModel::unit());
        const double kappa = big_c(s, pstar).value;
        CHECK(kappa > 0.0);
        auto sol = solve_p(s, kappa, 1e-9);
        CHECK(std::abs(sol.p - pstar) < 1e-6);
        CHECK(!sol.ill_conditioned);
    }
}

TEST_CASE("kappa = 0 hits the left endpoint exactly") {
    auto s = make_kernel_spec(1, 1.5, 0.0, BModel::unit());
    CHECK(solve_p(s, 0.0).p == doctest::Approx(0.5));
    auto t = make_kernel_spec(1, 0.8, 0.1, BModel::unit());
    CHECK(solve_p(t, 0.0).p == 0.0);
}

TEST_CASE("kappa above the probed supremum is rejected") {
    auto s = make_kernel_spec(1, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.2, 0.0)));
    const double sup = probe_sup_c(s);
    CHECK(sup > 0.0);
    CHECK_THROWS_AS(solve_p(s, 2.0 * sup), std::range_error);
}

TEST_CASE("inadmissible q raises a domain error") {
    auto s = make_kernel_spec(1, 1.5, 0.0,
                              BModel::product(ScalingFunction::power_log(0.2, 0.0)));
    CHECK_THROWS_AS(big_c(s, 1.4), std::domain_error);  // beyond alpha - beta2
    CHECK_THROWS_AS(big_c(s, -0.9), std::domain_error);
}
