#pragma once

#include <utility>

#include "kpp/model.hpp"
#include "kpp/rootfind.hpp"

namespace kpp {

// Sign theorem cases: (i) 0<c_l*<c_r*, (ii) 0=c_l*<c_r*, (iii) c_l*<0<c_r*,
// (iv) c_l*<c_r*=0, (v) c_l*<c_r*<0.
enum class SpreadingCase { I, II, III, IV, V };
const char* case_label(SpreadingCase c);

struct SpeedReport {
    double c_left = 0;
    double c_right = 0;
    double lambda_left = 0;
    double lambda_right = 0;
    double lambda_min = 0;    // minimizer of M, lambda(k)
    double first_moment = 0;  // J(k)
    double asymmetry = 0;     // E(k)
    SpreadingCase classification = SpreadingCase::III;
    RootResult left_root, right_root;
};

// c(lambda) = (M(lambda) - 1 + f'(0)) / lambda on (lambda-,0) u (0,lambda+).
double c_of_lambda(const Model& m, double lambda);

// Unique extremizers of c on each half-axis: (lambda_l*, lambda_r*).
std::pair<double, double> lambda_stars(const Model& m);

// One-sided solve with f'(0) supplied directly (used when eta shifts the
// reaction linearization).
RootResult lambda_star_side(const Kernel& k, double fprime0, bool right_side);

SpeedReport spreading_speeds(const Model& m, double classify_tol = 1e-9);

// E(k) = sign(J)(1 - inf M); exactly 0 when |J| <= 1e-12, exactly +-1 for
// one-sided kernels.
double asymmetry_E(const Kernel& k);

SpreadingCase classify(double E, double fprime0, double tol = 1e-9);

// Speed for initial data ~ e^{-lambda |x|}: c(lambda) below lambda*, clamped
// to c* above. Requires a symmetric kernel nonincreasing on the positive axis.
double exp_decay_speed(const Model& m, double lambda);

// Pointwise "more skewed to the right" premise: k1 >= k2 on x>0 and
// k1 <= k2 on x<0, sampled densely plus at tabulation knots.
bool skewness_premise(const Kernel& k1, const Kernel& k2);

}  // namespace kpp
