#include "kpp/reaction.hpp"

#include <cmath>
#include <string>

#include "kpp/errors.hpp"

namespace kpp {

ReactionKPP ReactionKPP::logistic(double r) {
    if (!(r > 0.0)) throw ModelError("logistic reaction: rate must be > 0");
    return ReactionKPP([r](double u) { return r * u * (1.0 - u); }, r, r);
}

ReactionKPP ReactionKPP::custom(std::function<double(double)> f, double fprime0) {
    if (!f) throw ModelError("custom reaction: empty evaluator");
    if (!(fprime0 > 0.0)) throw ModelError("custom reaction: f'(0) must be > 0");
    return ReactionKPP(std::move(f), fprime0, 0.0);
}

double ReactionKPP::logistic_rate() const {
    if (!is_logistic()) throw ModelError("logistic_rate: not a logistic reaction");
    return logistic_rate_;
}

double ReactionKPP::lipschitz_bound(int samples) const {
    if (is_logistic()) return logistic_rate_;
    const int n = samples < 3 ? 3 : samples;
    const double h = 1.0 / (n - 1);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = i * h;
        const double lo = std::max(0.0, u - 0.5 * h);
        const double hi = std::min(1.0, u + 0.5 * h);
        m = std::max(m, std::abs((eval_(hi) - eval_(lo)) / (hi - lo)));
    }
    return m;
}

std::vector<Violation> validate_reaction(const ReactionKPP& f, int samples) {
    std::vector<Violation> v;
    if (samples < 2) samples = 2;

    if (std::abs(f(0.0)) > 1e-12)
        v.push_back({"H", "f(0) != 0 (got " + std::to_string(f(0.0)) + ")"});
    if (std::abs(f(1.0)) > 1e-12)
        v.push_back({"H", "f(1) != 0 (got " + std::to_string(f(1.0)) + ")"});

    const double f0 = f.fprime0();
    bool bad_pos = false, bad_kpp = false;
    for (int i = 1; i <= samples && !(bad_pos && bad_kpp); ++i) {
        const double u = static_cast<double>(i) / (samples + 1);
        const double fu = f(u);
        if (!bad_pos && !(fu > 0.0)) {
            bad_pos = true;
            v.push_back({"H", "f(u) <= 0 at u = " + std::to_string(u)});
        }
        if (!bad_kpp && fu > f0 * u + 1e-12) {
            bad_kpp = true;
            v.push_back({"H", "KPP bound violated: f(u) > f'(0) u at u = " +
                                  std::to_string(u)});
        }
    }
    return v;
}

}  // namespace kpp
