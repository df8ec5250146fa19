#include "kpp/speed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "kpp/errors.hpp"

namespace kpp {
namespace {

// Numerator of c'(lambda) * lambda^2: increasing on (0,lambda+), decreasing on
// (lambda-,0), equal to -f'(0) at 0.
double cprime_numer(const Kernel& k, double f0, double lam) {
    return lam * k.mgf_prime(lam) - (k.mgf(lam) - 1.0 + f0);
}

// Expands from `start` toward `limit` until f flips to the requested sign,
// remembering the last point of opposite sign. Non-finite values are treated
// as already past the flip and backed off by halving.
struct Bracket {
    double a, fa, b, fb;
    int steps;
};

Bracket expand_from_anchor(const std::function<double(double)>& f, double anchor,
                           double f_anchor, double start, double limit,
                           bool positive_target) {
    double a = anchor, fa = f_anchor;
    double x = start;
    for (int k = 0; k < 1000; ++k) {
        double fx = f(x);
        int back = 0;
        while (!std::isfinite(fx) && back++ < 200) {
            x = a + 0.5 * (x - a);
            fx = f(x);
        }
        if (!std::isfinite(fx))
            throw BracketError("bracket expansion: non-finite values near anchor");
        if (positive_target ? (fx > 0.0) : (fx < 0.0)) return {a, fa, x, fx, k};
        a = x;
        fa = fx;
        x = std::isinf(limit) ? 2.0 * x : limit - 0.5 * (limit - x);
    }
    throw BracketError("bracket-not-found: expansion exceeded 10^3 doublings");
}

}  // namespace

const char* case_label(SpreadingCase c) {
    switch (c) {
        case SpreadingCase::I: return "i";
        case SpreadingCase::II: return "ii";
        case SpreadingCase::III: return "iii";
        case SpreadingCase::IV: return "iv";
        case SpreadingCase::V: return "v";
    }
    return "?";
}

double c_of_lambda(const Model& m, double lambda) {
    if (lambda == 0.0) throw DomainError("c(lambda): lambda = 0 excluded");
    return (m.kernel.mgf(lambda) - 1.0 + m.reaction.fprime0()) / lambda;
}

RootResult lambda_star_side(const Kernel& k, double fprime0, bool right_side) {
    auto phi = [&k, fprime0](double lam) { return cprime_numer(k, fprime0, lam); };
    const Abscissas ab = k.exp_abscissas();
    Bracket br;
    if (right_side) {
        const double start = std::isinf(ab.hi) ? 1.0 : 0.5 * ab.hi;
        br = expand_from_anchor(phi, 0.0, -fprime0, start, ab.hi, true);
    } else {
        const double start = std::isinf(ab.lo) ? -1.0 : 0.5 * ab.lo;
        br = expand_from_anchor(phi, 0.0, -fprime0, start, ab.lo, true);
    }
    double lo = std::min(br.a, br.b), hi = std::max(br.a, br.b);
    double flo = br.a <= br.b ? br.fa : br.fb;
    double fhi = br.a <= br.b ? br.fb : br.fa;
    RootResult r = refine_root(phi, lo, hi, flo, fhi, 1e-13);
    r.iterations += br.steps;
    return r;
}

std::pair<double, double> lambda_stars(const Model& m) {
    const double f0 = m.reaction.fprime0();
    return {lambda_star_side(m.kernel, f0, false).x,
            lambda_star_side(m.kernel, f0, true).x};
}

double asymmetry_E(const Kernel& k) {
    const double J = k.first_moment();
    if (std::abs(J) <= 1e-12) return 0.0;
    if (!(k.mass_positive() > 0.0)) return -1.0;
    if (!(k.mass_negative() > 0.0)) return 1.0;

    auto mp = [&k](double lam) { return k.mgf_prime(lam); };
    const Abscissas ab = k.exp_abscissas();
    Bracket br;
    if (J > 0.0) {
        // lambda(k) < 0: walk left until M' goes negative
        const double start = std::isinf(ab.lo) ? -1.0 : 0.5 * ab.lo;
        br = expand_from_anchor(mp, 0.0, J, start, ab.lo, false);
    } else {
        const double start = std::isinf(ab.hi) ? 1.0 : 0.5 * ab.hi;
        br = expand_from_anchor(mp, 0.0, J, start, ab.hi, true);
    }
    double lo = std::min(br.a, br.b), hi = std::max(br.a, br.b);
    double flo = br.a <= br.b ? br.fa : br.fb;
    double fhi = br.a <= br.b ? br.fb : br.fa;
    const RootResult r = refine_root(mp, lo, hi, flo, fhi, 1e-13);
    const double lam_k = r.x;
    const double E = (lam_k > 0.0 ? -1.0 : 1.0) * (1.0 - k.mgf(lam_k));
    return std::clamp(E, -1.0, 1.0);
}

SpreadingCase classify(double E, double fprime0, double tol) {
    if (!(fprime0 > 0.0)) throw DomainError("classify: f'(0) must be > 0");
    if (tol < 0.0) throw DomainError("classify: tol must be >= 0");
    if (std::abs(E - fprime0) <= tol) return SpreadingCase::II;
    if (std::abs(E + fprime0) <= tol) return SpreadingCase::IV;
    if (E > fprime0) return SpreadingCase::I;
    if (E < -fprime0) return SpreadingCase::V;
    return SpreadingCase::III;
}

SpeedReport spreading_speeds(const Model& m, double classify_tol) {
    const double f0 = m.reaction.fprime0();
    SpeedReport rep;
    rep.left_root = lambda_star_side(m.kernel, f0, false);
    rep.right_root = lambda_star_side(m.kernel, f0, true);
    rep.lambda_left = rep.left_root.x;
    rep.lambda_right = rep.right_root.x;
    rep.c_left = c_of_lambda(m, rep.lambda_left);
    rep.c_right = c_of_lambda(m, rep.lambda_right);
    rep.first_moment = m.kernel.first_moment();
    rep.asymmetry = asymmetry_E(m.kernel);

    // lambda(k): 0 for symmetric kernels, else the zero of M' when it exists
    if (std::abs(rep.first_moment) <= 1e-12) {
        rep.lambda_min = 0.0;
    } else if (!(m.kernel.mass_positive() > 0.0) || !(m.kernel.mass_negative() > 0.0)) {
        rep.lambda_min = std::numeric_limits<double>::quiet_NaN();
    } else {
        auto mp = [&](double lam) { return m.kernel.mgf_prime(lam); };
        const Abscissas ab = m.kernel.exp_abscissas();
        const double J = rep.first_moment;
        Bracket br = J > 0.0
            ? expand_from_anchor(mp, 0.0, J, std::isinf(ab.lo) ? -1.0 : 0.5 * ab.lo,
                                 ab.lo, false)
            : expand_from_anchor(mp, 0.0, J, std::isinf(ab.hi) ? 1.0 : 0.5 * ab.hi,
                                 ab.hi, true);
        double lo = std::min(br.a, br.b), hi = std::max(br.a, br.b);
        double flo = br.a <= br.b ? br.fa : br.fb;
        double fhi = br.a <= br.b ? br.fb : br.fa;
        rep.lambda_min = refine_root(mp, lo, hi, flo, fhi, 1e-13).x;
    }

    rep.classification = classify(rep.asymmetry, f0, classify_tol);
    return rep;
}

double exp_decay_speed(const Model& m, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("exp_decay_speed: lambda must be > 0");
    if (!m.kernel.is_symmetric())
        throw DomainError("exp_decay_speed: kernel must be symmetric (|J| <= 1e-12)");

    const double hi = m.kernel.support_bound(1e-12).second;
    const int n = 10000;
    double prev = m.kernel.density(hi / n);
    for (int i = 2; i <= n; ++i) {
        const double d = m.kernel.density(hi * i / n);
        if (d > prev + 1e-12)
            throw DomainError("exp_decay_speed: density not nonincreasing on x > 0");
        prev = d;
    }

    const double lam_star = lambda_star_side(m.kernel, m.reaction.fprime0(), true).x;
    return c_of_lambda(m, lambda < lam_star ? lambda : lam_star);
}

bool skewness_premise(const Kernel& k1, const Kernel& k2) {
    const auto s1 = k1.support_bound(1e-12);
    const auto s2 = k2.support_bound(1e-12);
    const double lo = std::min(s1.first, s2.first);
    const double hi = std::max(s1.second, s2.second);

    std::vector<double> xs;
    const int n = 4000;
    xs.reserve(n + 32);
    for (int i = 0; i <= n; ++i) xs.push_back(lo + (hi - lo) * i / n);
    for (double x : k1.integration_breakpoints()) xs.push_back(x);
    for (double x : k2.integration_breakpoints()) xs.push_back(x);

    for (double x : xs) {
        if (x > 0.0 && k1.density(x) < k2.density(x) - 1e-12) return false;
        if (x < 0.0 && k1.density(x) > k2.density(x) + 1e-12) return false;
    }
    return true;
}

}  // namespace kpp
