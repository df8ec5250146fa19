#pragma once

#include <optional>

namespace kpp {

// Closed-form / semi-closed-form results for the normal and uniform kernel
// families.

// E for normal(alpha, sigma) expressed through r = alpha / sqrt(2 sigma):
// sign(r) (1 - e^{-r^2}).
double normal_E(double r);

// Threshold r* with E(r*) = f'(0); none when f'(0) >= 1 (then the straddling
// case holds for every r).
std::optional<double> normal_r_star(double fprime0);

// omega(x) = (x - 1) e^x.
double omega(double x);

// The unique z(theta) with omega(z) = omega(-theta z), z(1) = 0; increasing.
double uniform_z(double theta);

// z'(theta) = z(z-1) / ((theta+1)(1 - 1/theta - z)); excluded near theta = 1
// where the formula degenerates to 0/0.
double uniform_z_prime(double theta);

// q(theta) = 1 - e^{z(theta)} / (1 + theta z(theta)), the magnitude of E.
double uniform_q(double theta);

// E for uniform(b, a) via theta = -a/b.
double uniform_E(double a, double b);

struct UniformThresholds {
    double theta_star;
    double r_star;
};

// Solves q(theta*) = f'(0) on (1, inf); none when f'(0) >= 1.
std::optional<UniformThresholds> uniform_theta_star(double fprime0);

struct UniformCaseResult {
    double theta;
    double z;
    double E;
    double r;  // (a+b)/(a-b)
    std::optional<UniformThresholds> thresholds;
};

UniformCaseResult uniform_case(double a, double b,
                               std::optional<double> fprime0 = std::nullopt);

}  // namespace kpp
