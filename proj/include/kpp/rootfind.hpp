#pragma once

#include <functional>

namespace kpp {

struct RootResult {
    double x = 0;
    int iterations = 0;
    double bracket_width = 0;
};

// Hybrid secant/bisection on a sign-change bracket [a,b]. Shrinks the bracket
// to x_tol; a forced bisection every third step bounds the iteration count.
RootResult refine_root(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double x_tol, int max_iter = 250);

// Plain bisection to a target interval width. Used where flat functions make
// secant steps untrustworthy.
double bisect(const std::function<double(double)>& f, double a, double b,
              double width_tol);

// Walks from `start` toward `limit` (finite or +-infinity), doubling the
// distance covered each step, until f has the requested sign. Throws
// BracketError after max_steps doublings.
double expand_to_sign(const std::function<double(double)>& f, double start,
                      double limit, bool positive, int max_steps = 1000);

}  // namespace kpp
