#include "kpp/rootfind.hpp"

#include <cmath>
#include <limits>

#include "kpp/errors.hpp"

namespace kpp {

RootResult refine_root(const std::function<double(double)>& f, double a, double b,
                       double fa, double fb, double x_tol, int max_iter) {
    if (fa == 0.0) return {a, 0, 0.0};
    if (fb == 0.0) return {b, 0, 0.0};
    if ((fa < 0.0) == (fb < 0.0))
        throw BracketError("refine_root: no sign change on bracket");

    int it = 0;
    while (b - a > x_tol && it < max_iter) {
        const double w = b - a;
        double x;
        if (it % 3 == 2 || fb == fa) {
            x = a + 0.5 * w;
        } else {
            x = a - fa * w / (fb - fa);
            if (!(x > a + 0.01 * w) || !(x < b - 0.01 * w)) x = a + 0.5 * w;
        }
        const double fx = f(x);
        if (fx == 0.0) return {x, it + 1, 0.0};
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        ++it;
        if (x <= a && x >= b) break;  // bracket at ulp resolution
    }
    return {a + 0.5 * (b - a), it, b - a};
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double width_tol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw BracketError("bisect: no sign change on bracket");
    while (b - a > width_tol) {
        const double m = a + 0.5 * (b - a);
        if (m <= a || m >= b) break;  // interval at ulp resolution
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return a + 0.5 * (b - a);
}

double expand_to_sign(const std::function<double(double)>& f, double start,
                      double limit, bool positive, int max_steps) {
    double x = start;
    for (int k = 0; k < max_steps; ++k) {
        const double fx = f(x);
        if (positive ? (fx > 0.0) : (fx < 0.0)) return x;
        if (std::isinf(limit)) {
            x = 2.0 * x;
        } else {
            x = limit - (limit - x) * 0.5;
        }
    }
    throw BracketError("expand_to_sign: no sign change found after doubling cap");
}

}  // namespace kpp
