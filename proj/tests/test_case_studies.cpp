#include <doctest.h>

#include <cmath>

#include "kpp/case_studies.hpp"
#include "kpp/errors.hpp"
#include "kpp/speed.hpp"

using namespace kpp;

TEST_CASE("omega values") {
    CHECK(omega(1.0) == 0.0);
    CHECK(omega(0.0) == -1.0);
    CHECK(omega(2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("normal_E formula") {
    CHECK(normal_E(0.0) == 0.0);
    CHECK(normal_E(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(normal_E(-1.0) == doctest::Approx(-(1.0 - std::exp(-1.0))).epsilon(1e-14));
    for (double r : {0.3, 0.9, 1.7}) CHECK(normal_E(-r) == -normal_E(r));
}

TEST_CASE("normal_r_star and round trip") {
    CHECK(*normal_r_star(1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(*normal_r_star(0.5) == doctest::Approx(std::sqrt(std::log(2.0))).epsilon(1e-13));

    const double r = *normal_r_star(0.999999);
    CHECK(r == doctest::Approx(3.7169221888498384).epsilon(1e-9));
    CHECK(normal_E(r) == doctest::Approx(0.999999).epsilon(1e-10));

    CHECK(!normal_r_star(1.0).has_value());
    CHECK(!normal_r_star(1.5).has_value());
    CHECK_THROWS_AS(normal_r_star(0.0), DomainError);
}

TEST_CASE("uniform_z brackets, identity and monotonicity") {
    CHECK(uniform_z(1.0) == 0.0);

    const double z2 = uniform_z(2.0);
    CHECK(z2 == doctest::Approx(0.7163752666356875).epsilon(1e-11));
    CHECK(z2 > 0.5);
    CHECK(z2 < 1.0);

    CHECK(uniform_z(1000.0) > 0.99);

    // omega identity and the (6.4) bracket on a 50-point log grid
    double prev = -1e300;
    for (int i = 0; i < 50; ++i) {
        const double theta =
            std::exp(std::log(1e-2) + (std::log(1e2) - std::log(1e-2)) * i / 49.0);
        const double z = uniform_z(theta);
        CHECK(std::abs(omega(z) - omega(-theta * z)) <= 1e-12);
        if (theta > 1.0 + 1e-8) {
            CHECK(z > 1.0 - 1.0 / theta);
            CHECK(z < 1.0);
        } else if (theta < 1.0 - 1e-8) {
            CHECK(z > -1.0 / theta);
            CHECK(z < 1.0 - 1.0 / theta);
        }
        CHECK(z > prev);  // strictly increasing
        prev = z;
    }
}

TEST_CASE("uniform_z_prime matches (6.5) and finite differences") {
    const double zp2 = uniform_z_prime(2.0);
    CHECK(zp2 == doctest::Approx(0.3130082705346565).epsilon(1e-8));
    CHECK(uniform_z_prime(0.5) > 0.0);
    CHECK_THROWS_AS(uniform_z_prime(1.0), DomainError);

    for (double theta : {0.3, 0.5, 2.0, 5.0, 20.0}) {
        const double h = 1e-6 * theta;
        const double fd = (uniform_z(theta + h) - uniform_z(theta - h)) / (2.0 * h);
        CHECK(uniform_z_prime(theta) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("uniform_E values and antisymmetry") {
    CHECK(uniform_E(1.0, -1.0) == 0.0);
    CHECK(uniform_E(2.0, -1.0) == doctest::Approx(0.15856562765669957).epsilon(1e-10));
    CHECK(uniform_E(1.0, -2.0) == doctest::Approx(-0.15856562765669957).epsilon(1e-10));
    CHECK_THROWS_AS(uniform_E(-1.0, -2.0), DomainError);
}

TEST_CASE("q is increasing with q(1) = 0") {
    CHECK(uniform_q(1.0) == 0.0);
    double prev = -1.0;
    for (double theta = 1.0; theta <= 64.0; theta *= 2.0) {
        const double q = uniform_q(theta);
        CHECK(q > prev);
        CHECK(q < 1.0);
        prev = q;
    }
}

TEST_CASE("uniform_theta_star inversion") {
    const double q2 = uniform_q(2.0);
    const auto th = uniform_theta_star(q2);
    REQUIRE(th.has_value());
    CHECK(th->theta_star == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(th->r_star == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    const auto tiny = uniform_theta_star(1e-6);
    REQUIRE(tiny.has_value());
    CHECK(tiny->theta_star > 1.0);
    CHECK(tiny->theta_star < 1.001);
    CHECK(tiny->r_star > 0.0);
    CHECK(tiny->r_star < 5e-4);

    CHECK(!uniform_theta_star(1.0).has_value());
    CHECK_THROWS_AS(uniform_theta_star(-0.1), DomainError);
}

TEST_CASE("cross-module consistency with asymmetry_E") {
    // uniform family, theta in {0.25, 0.5, 1, 2, 4} with b = -1
    for (double theta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double a = theta, b = -1.0;
        const double closed = uniform_E(a, b);
        const double direct = asymmetry_E(Kernel::uniform(b, a));
        CHECK(std::abs(closed - direct) <= 1e-8);
    }
    // normal family across an r grid (sigma = 1, alpha = r sqrt(2))
    for (double r = -2.0; r <= 2.0 + 1e-12; r += 0.5) {
        const double closed = normal_E(r);
        const double direct = asymmetry_E(Kernel::normal(r * std::sqrt(2.0), 1.0));
        CHECK(std::abs(closed - direct) <= 1e-8);
    }
}

TEST_CASE("classification flips exactly at r = +-r* for the uniform family") {
    const double f0 = 0.3;
    const auto th = uniform_theta_star(f0);
    REQUIRE(th.has_value());
    // build kernels at r slightly inside/outside the threshold
    auto kernel_at_r = [](double r) {
        // r = (theta-1)/(theta+1) -> theta = (1+r)/(1-r); b = -1, a = theta
        const double theta = (1.0 + r) / (1.0 - r);
        return Kernel::uniform(-1.0, theta);
    };
    const double dr = 1e-3;
    CHECK(classify(asymmetry_E(kernel_at_r(th->r_star + dr)), f0) == SpreadingCase::I);
    CHECK(classify(asymmetry_E(kernel_at_r(th->r_star - dr)), f0) == SpreadingCase::III);
    CHECK(classify(asymmetry_E(kernel_at_r(-th->r_star - dr)), f0) == SpreadingCase::V);
    CHECK(classify(asymmetry_E(kernel_at_r(-th->r_star + dr)), f0) == SpreadingCase::III);
}

TEST_CASE("uniform_case bundles the pieces") {
    const auto res = uniform_case(2.0, -1.0, 0.3);
    CHECK(res.theta == 2.0);
    CHECK(res.z == doctest::Approx(uniform_z(2.0)).epsilon(1e-14));
    CHECK(res.E == doctest::Approx(uniform_E(2.0, -1.0)).epsilon(1e-14));
    CHECK(res.r == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    REQUIRE(res.thresholds.has_value());
    CHECK(res.thresholds->theta_star > 1.0);
}
