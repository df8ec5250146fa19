#include "kpp/case_studies.hpp"

#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/rootfind.hpp"

namespace kpp {

double normal_E(double r) {
    if (r == 0.0) return 0.0;
    const double mag = -std::expm1(-r * r);
    return r > 0.0 ? mag : -mag;
}

std::optional<double> normal_r_star(double fprime0) {
    if (!(fprime0 > 0.0)) throw DomainError("normal_r_star: f'(0) must be > 0");
    if (fprime0 >= 1.0) return std::nullopt;
    return std::sqrt(-std::log1p(-fprime0));
}

double omega(double x) { return (x - 1.0) * std::exp(x); }

double uniform_z(double theta) {
    if (!(theta > 0.0)) throw DomainError("uniform_z: theta must be > 0");
    if (std::abs(theta - 1.0) < 1e-8) return 0.0;  // bracket collapses; z(1) = 0

    auto f = [theta](double z) {
        return (z - 1.0) * std::exp(z) + (theta * z + 1.0) * std::exp(-theta * z);
    };
    double a, b;
    if (theta > 1.0) {
        a = 1.0 - 1.0 / theta;
        b = 1.0;
    } else {
        a = -1.0 / theta;
        b = 1.0 - 1.0 / theta;
    }
    return bisect(f, a, b, 1e-13);
}

double uniform_z_prime(double theta) {
    if (!(theta > 0.0)) throw DomainError("uniform_z_prime: theta must be > 0");
    if (std::abs(theta - 1.0) <= 1e-8)
        throw DomainError("uniform_z_prime: formula degenerates (0/0) at theta = 1");
    const double z = uniform_z(theta);
    return z * (z - 1.0) / ((theta + 1.0) * (1.0 - 1.0 / theta - z));
}

double uniform_q(double theta) {
    if (!(theta > 0.0)) throw DomainError("uniform_q: theta must be > 0");
    const double z = uniform_z(theta);
    return 1.0 - std::exp(z) / (1.0 + theta * z);
}

double uniform_E(double a, double b) {
    if (!(a > 0.0) || !(b < 0.0)) throw DomainError("uniform_E: requires a > 0 > b");
    const double theta = -a / b;
    const double q = uniform_q(theta);
    if (theta > 1.0) return q;
    if (theta < 1.0) return -q;
    return 0.0;
}

std::optional<UniformThresholds> uniform_theta_star(double fprime0) {
    if (!(fprime0 > 0.0)) throw DomainError("uniform_theta_star: f'(0) must be > 0");
    if (fprime0 >= 1.0) return std::nullopt;

    double hi = 2.0;
    int k = 0;
    while (uniform_q(hi) <= fprime0) {
        hi *= 2.0;
        if (++k > 2000) throw BracketError("uniform_theta_star: bracket expansion failed");
    }
    auto g = [fprime0](double th) { return uniform_q(th) - fprime0; };
    const double theta_star = bisect(g, 1.0 + 1e-9, hi, 1e-12);
    return UniformThresholds{theta_star, (theta_star - 1.0) / (theta_star + 1.0)};
}

UniformCaseResult uniform_case(double a, double b, std::optional<double> fprime0) {
    if (!(a > 0.0) || !(b < 0.0)) throw DomainError("uniform_case: requires a > 0 > b");
    UniformCaseResult r;
    r.theta = -a / b;
    r.z = uniform_z(r.theta);
    r.E = uniform_E(a, b);
    r.r = (a + b) / (a - b);
    if (fprime0) r.thresholds = uniform_theta_star(*fprime0);
    return r;
}

}  // namespace kpp
