#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kpp {

enum class KernelFamily { Normal, Uniform, AsymmetricExponential, Tabulated };

// Exponential-moment abscissas (lambda-, lambda+); endpoints may be +-infinity.
struct Abscissas {
    double lo;
    double hi;
};

struct Violation {
    std::string code;
    std::string message;
};

// A dispersal density: nonnegative, unit mass, continuous. Immutable after
// construction; all queries are pure.
//
// Families:
//   normal(alpha, sigma)      density exp(-(x-alpha)^2/(2 sigma))/sqrt(2 pi sigma)
//                             (sigma is the variance)
//   uniform(b, a)             constant 1/(a-b) on [b,a], b < 0 < a
//   asymmetric_exponential    C e^{theta_l x} (x<0), C e^{-theta_r x} (x>=0),
//                             C = theta_l theta_r / (theta_l + theta_r)
//   tabulated                 continuous piecewise-linear density on strictly
//                             increasing knots, zero outside; renormalized at
//                             construction (drift up to 20% tolerated and the
//                             correction factor recorded)
class Kernel {
public:
    static Kernel normal(double alpha, double sigma);
    static Kernel uniform(double b, double a);
    static Kernel asymmetric_exponential(double theta_l, double theta_r);
    static Kernel tabulated(std::vector<double> x, std::vector<double> density);
    static Kernel tabulated_from_file(const std::string& path);

    KernelFamily family() const { return family_; }

    double density(double x) const;

    // M(lambda) = int k(x) e^{lambda x} dx. Exact per family (closed form or
    // per-cell integration for tabulated); M(0) == 1 exactly.
    double mgf(double lambda) const;

    // d/dlambda M = int k(x) e^{lambda x} x dx; strictly increasing.
    double mgf_prime(double lambda) const;

    Abscissas exp_abscissas() const { return abscissas_; }

    // k-check: x -> k(-x).
    Kernel reflect() const;

    double first_moment() const;  // J(k)
    bool is_symmetric(double tol = 1e-12) const;

    // Interval holding all but eps of the mass.
    std::pair<double, double> support_bound(double eps) const;

    double mass_positive() const;  // mass on (0, inf)
    double mass_negative() const;  // mass on (-inf, 0)

    // Renormalization correction applied at construction (1 for parametric).
    double renormalization() const { return renorm_; }

    // Density kink locations, used to split quadratures.
    std::vector<double> integration_breakpoints() const;

    // Family parameter access (throws ModelError on family mismatch).
    double param_alpha() const;
    double param_sigma() const;
    double param_b() const;
    double param_a() const;
    double param_theta_l() const;
    double param_theta_r() const;
    const std::vector<double>& table_x() const;
    const std::vector<double>& table_density() const;

    std::string describe() const;

private:
    Kernel() = default;

    KernelFamily family_ = KernelFamily::Uniform;
    double p1_ = 0, p2_ = 0;  // (alpha,sigma) | (b,a) | (theta_l,theta_r)
    std::vector<double> tx_, td_;
    Abscissas abscissas_{0, 0};
    double renorm_ = 1.0;
};

// Hypothesis checks (K1), (K2), unit mass. Violations are returned, never
// thrown.
std::vector<Violation> validate_kernel(const Kernel& k);

}  // namespace kpp
