#include "kpp/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "kpp/errors.hpp"

namespace kpp {
namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double s;  // Simpson estimate over [a,b]
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, const Panel& p, double tol,
             int depth, const QuadratureOptions& opts) {
    const double ml = 0.5 * (p.a + p.m);
    const double mr = 0.5 * (p.m + p.b);
    const double fml = f(ml);
    const double fmr = f(mr);
    const double sl = simpson(p.a, p.m, p.fa, fml, p.fm);
    const double sr = simpson(p.m, p.b, p.fm, fmr, p.fb);
    const double s2 = sl + sr;
    const double err = (s2 - p.s) / 15.0;
    if (std::abs(err) <= std::max(tol, opts.rel_tol * std::abs(s2)) ||
        p.m - p.a <= std::abs(p.m) * 1e-15) {
        return s2 + err;
    }
    if (depth >= opts.max_depth)
        throw QuadratureError("adaptive Simpson: depth limit reached");
    const Panel left{p.a, ml, p.m, p.fa, fml, p.fm, sl};
    const Panel right{p.m, mr, p.b, p.fm, fmr, p.fb, sr};
    return adapt(f, left, 0.5 * tol, depth + 1, opts) +
           adapt(f, right, 0.5 * tol, depth + 1, opts);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    // seed with several panels so narrow features cannot slip between the
    // first sample points
    constexpr int kSeedPanels = 16;
    double total = 0.0;
    double fa = f(a);
    for (int i = 0; i < kSeedPanels; ++i) {
        const double pa = a + (b - a) * i / kSeedPanels;
        const double pb = a + (b - a) * (i + 1) / kSeedPanels;
        const double pm = 0.5 * (pa + pb);
        Panel p{pa, pm, pb, fa, f(pm), f(pb), 0.0};
        p.s = simpson(pa, pb, p.fa, p.fm, p.fb);
        total += adapt(f, p, opts.abs_tol / kSeedPanels, 0, opts);
        fa = p.fb;
    }
    return total;
}

double integrate_segmented(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints,
                           const QuadratureOptions& opts) {
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], opts);
    return total;
}

}  // namespace kpp
