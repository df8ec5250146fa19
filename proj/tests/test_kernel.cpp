#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "kpp/errors.hpp"
#include "kpp/kernel.hpp"
#include "kpp/quadrature.hpp"

using namespace kpp;

namespace {

// quadrature oracle for exponential moments: integrates k e^{lambda x} (and
// x k e^{lambda x}); the range is widened until the weighted integrand itself
// is negligible, since e^{lambda x} can push mass far beyond the kernel's own
// effective support
double mgf_by_quadrature(const Kernel& k, double lambda, bool with_x = false) {
    auto [lo, hi] = k.support_bound(1e-30);
    for (int i = 0; i < 100000 && k.density(hi) * std::exp(lambda * hi) > 1e-19; ++i)
        hi += 0.5;
    for (int i = 0; i < 100000 && k.density(lo) * std::exp(lambda * lo) > 1e-19; ++i)
        lo -= 0.5;
    return integrate_segmented(
        [&](double x) {
            const double v = k.density(x) * std::exp(lambda * x);
            return with_x ? v * x : v;
        },
        lo, hi, k.integration_breakpoints());
}

Kernel hat_kernel() {  // symmetric triangle on [-1,1]
    return Kernel::tabulated({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
}

}  // namespace

TEST_CASE("density closed forms") {
    const Kernel u = Kernel::uniform(-1.0, 1.0);
    CHECK(u.density(0.0) == 0.5);
    CHECK(u.density(2.0) == 0.0);

    const Kernel n = Kernel::normal(0.0, 1.0);
    // oracle: the normalization integral is 1
    const double mass = integrate([&](double x) { return n.density(x); }, -12.0, 12.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(n.density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("mgf closed forms against quadrature") {
    const Kernel n = Kernel::normal(0.0, 1.0);
    CHECK(n.mgf(0.0) == 1.0);
    CHECK(n.mgf(1.0) == doctest::Approx(std::exp(0.5)).epsilon(1e-13));
    CHECK(n.mgf(1.0) == doctest::Approx(mgf_by_quadrature(n, 1.0)).epsilon(1e-10));

    const Kernel u = Kernel::uniform(-1.0, 1.0);
    CHECK(u.mgf(0.0) == 1.0);
    CHECK(u.mgf(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));
    CHECK(u.mgf(1.0) == doctest::Approx(mgf_by_quadrature(u, 1.0)).epsilon(1e-10));

    const Kernel a = Kernel::asymmetric_exponential(2.0, 2.0);
    CHECK(a.mgf(0.0) == 1.0);
    CHECK(a.mgf(1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));

    // grids, all families including tabulated
    const Kernel kernels[] = {n, u, Kernel::asymmetric_exponential(1.0, 2.0), hat_kernel()};
    for (const Kernel& k : kernels) {
        const auto ab = k.exp_abscissas();
        for (double lam : {-1.5, -0.7, -0.1, 0.3, 0.9, 1.7}) {
            if (!(lam > ab.lo && lam < ab.hi)) continue;
            CHECK(k.mgf(lam) == doctest::Approx(mgf_by_quadrature(k, lam)).epsilon(1e-10));
            CHECK(k.mgf_prime(lam) ==
                  doctest::Approx(mgf_by_quadrature(k, lam, true)).epsilon(1e-9));
        }
    }
}

TEST_CASE("mgf domain errors") {
    const Kernel a = Kernel::asymmetric_exponential(1.0, 2.0);
    CHECK_THROWS_AS(a.mgf(2.0), DomainError);
    CHECK_THROWS_AS(a.mgf(-1.0), DomainError);
    CHECK_THROWS_AS(a.mgf_prime(3.0), DomainError);
    CHECK_NOTHROW(a.mgf(1.999));
}

TEST_CASE("mgf_prime moments") {
    const Kernel u = Kernel::uniform(-1.0, 1.0);
    CHECK(u.mgf_prime(0.0) == 0.0);  // odd integrand, exact in the cell formula
    CHECK(u.mgf_prime(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    const Kernel n = Kernel::normal(2.0, 1.0);
    CHECK(n.mgf_prime(0.0) == 2.0);

    CHECK(hat_kernel().mgf_prime(0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("exp_abscissas per family") {
    const auto inf = std::numeric_limits<double>::infinity();
    CHECK(Kernel::uniform(-1.0, 1.0).exp_abscissas().lo == -inf);
    CHECK(Kernel::uniform(-1.0, 1.0).exp_abscissas().hi == inf);
    const auto ab = Kernel::asymmetric_exponential(1.0, 2.0).exp_abscissas();
    CHECK(ab.lo == -1.0);
    CHECK(ab.hi == 2.0);
    CHECK(Kernel::normal(0.0, 1.0).exp_abscissas().hi == inf);
    CHECK(hat_kernel().exp_abscissas().hi == inf);
}

TEST_CASE("validate_kernel") {
    CHECK(validate_kernel(Kernel::uniform(-1.0, 1.0)).empty());

    // supported only on [0.5, 1]: (K2) fails on the negative side
    const Kernel right_only = Kernel::tabulated({0.5, 0.75, 1.0}, {0.0, 4.0, 0.0});
    const auto v = validate_kernel(right_only);
    REQUIRE(!v.empty());
    CHECK(v[0].code == "K2");

    // 10% mass drift is renormalized and recorded
    const Kernel drift = Kernel::tabulated({-1.0, 0.0, 1.0}, {0.0, 0.9, 0.0});
    CHECK(validate_kernel(drift).empty());
    CHECK(drift.renormalization() == doctest::Approx(1.0 / 0.9).epsilon(1e-12));
    CHECK(integrate([&](double x) { return drift.density(x); }, -1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(Kernel::normal(0.0, 0.0), ModelError);
    CHECK_THROWS_AS(Kernel::normal(0.0, -1.0), ModelError);
    CHECK_THROWS_AS(Kernel::uniform(0.5, 1.0), ModelError);
    CHECK_THROWS_AS(Kernel::uniform(-1.0, -0.5), ModelError);
    CHECK_THROWS_AS(Kernel::asymmetric_exponential(0.0, 1.0), ModelError);
    CHECK_THROWS_AS(Kernel::tabulated({0.0}, {1.0}), ModelError);
    CHECK_THROWS_AS(Kernel::tabulated({0.0, 0.0}, {1.0, 1.0}), ModelError);
    CHECK_THROWS_AS(Kernel::tabulated({-1.0, 1.0}, {-0.1, 0.1}), ModelError);
    // mass 0.5: beyond the 20% renormalization window
    CHECK_THROWS_AS(Kernel::tabulated({-0.5, 0.0, 0.5}, {0.0, 1.0, 0.0}), ModelError);
}

TEST_CASE("reflect maps families") {
    const Kernel u = Kernel::uniform(-1.0, 2.0).reflect();
    CHECK(u.param_b() == -2.0);
    CHECK(u.param_a() == 1.0);

    const Kernel n = Kernel::normal(1.5, 0.7).reflect();
    CHECK(n.param_alpha() == -1.5);
    CHECK(n.param_sigma() == 0.7);

    const Kernel a = Kernel::asymmetric_exponential(1.0, 2.0).reflect();
    CHECK(a.param_theta_l() == 2.0);
    CHECK(a.param_theta_r() == 1.0);
}

TEST_CASE("mgf(reflect(k), lambda) == mgf(k, -lambda)") {
    const Kernel kernels[] = {
        Kernel::uniform(-1.0, 2.0), Kernel::normal(0.8, 1.3),
        Kernel::asymmetric_exponential(1.0, 2.0),
        Kernel::tabulated({-1.0, -0.2, 0.1, 0.6}, {0.0, 1.15, 0.92, 0.0})};
    for (const Kernel& k : kernels) {
        const Kernel rk = k.reflect();
        for (double lam : {-0.9, -0.3, 0.2, 0.7}) {
            const auto ab = k.exp_abscissas();
            if (!(-lam > ab.lo && -lam < ab.hi)) continue;
            CHECK(rk.mgf(lam) == doctest::Approx(k.mgf(-lam)).epsilon(1e-12));
        }
    }
}

TEST_CASE("mgf convexity and mgf_prime monotonicity") {
    const Kernel kernels[] = {Kernel::uniform(-1.0, 2.0), Kernel::normal(0.5, 1.0),
                              Kernel::asymmetric_exponential(2.0, 3.0), hat_kernel()};
    for (const Kernel& k : kernels) {
        const auto ab = k.exp_abscissas();
        double prev = -std::numeric_limits<double>::infinity();
        for (double lam = -0.9; lam <= 0.95; lam += 0.1) {
            if (!(lam > ab.lo && lam < ab.hi)) continue;
            // second divided difference of M positive
            const double h = 0.05;
            if (lam - h > ab.lo && lam + h < ab.hi) {
                const double dd = k.mgf(lam - h) - 2.0 * k.mgf(lam) + k.mgf(lam + h);
                CHECK(dd > 0.0);
            }
            const double mp = k.mgf_prime(lam);
            CHECK(mp > prev);
            prev = mp;
        }
    }
}

TEST_CASE("tabulated kernel from file") {
    const std::string path = "test_kernel_table.txt";
    {
        std::ofstream f(path);
        f << "# x density\n-1.0 0.0\n0.0 1.0\n1.0 0.0\n";
    }
    const Kernel k = Kernel::tabulated_from_file(path);
    CHECK(k.density(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.density(0.5) == doctest::Approx(0.5).epsilon(1e-12));
    std::remove(path.c_str());

    CHECK_THROWS_AS(Kernel::tabulated_from_file("does_not_exist.txt"), ModelError);
}

TEST_CASE("support_bound holds the stated mass") {
    for (const Kernel& k :
         {Kernel::normal(1.0, 2.0), Kernel::asymmetric_exponential(1.0, 3.0)}) {
        const auto [lo, hi] = k.support_bound(1e-12);
        const double inside = integrate_segmented(
            [&](double x) { return k.density(x); }, lo, hi, k.integration_breakpoints());
        CHECK(1.0 - inside <= 2e-12);
    }
}
