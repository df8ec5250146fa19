#pragma once

#include <functional>
#include <vector>

#include "kpp/kernel.hpp"  // Violation

namespace kpp {

// KPP (monostable) nonlinearity: f(0)=f(1)=0, f>0 on (0,1), f(u) <= f'(0) u.
class ReactionKPP {
public:
    static ReactionKPP logistic(double r);  // f(u) = r u (1-u)
    static ReactionKPP custom(std::function<double(double)> f, double fprime0);

    double operator()(double u) const { return eval_(u); }
    double fprime0() const { return fprime0_; }

    bool is_logistic() const { return logistic_rate_ > 0.0; }
    double logistic_rate() const;

    // Sampled bound on |f'| over [0,1]; exact r for the logistic family.
    double lipschitz_bound(int samples = 10001) const;

private:
    ReactionKPP(std::function<double(double)> f, double fp0, double rate)
        : eval_(std::move(f)), fprime0_(fp0), logistic_rate_(rate) {}

    std::function<double(double)> eval_;
    double fprime0_;
    double logistic_rate_;  // 0 marks a custom evaluator
};

// Samples hypothesis (H) on a uniform grid of (0,1). Violations returned,
// never thrown.
std::vector<Violation> validate_reaction(const ReactionKPP& f, int samples = 10000);

}  // namespace kpp
