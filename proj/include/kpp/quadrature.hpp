#pragma once

#include <functional>
#include <vector>

namespace kpp {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 48;
};

// Adaptive composite Simpson with Richardson acceptance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Same, but splits at known interior breakpoints (kernel edges, profile
// kinks) so that each panel sees a smooth integrand.
double integrate_segmented(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints,
                           const QuadratureOptions& opts = {});

}  // namespace kpp
