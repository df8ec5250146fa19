#include "kpp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "kpp/errors.hpp"
#include "kpp/rootfind.hpp"

namespace kpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// E_m(lambda, h) = int_0^h s^m e^{lambda s} ds for m = 0,1,2. Series for small
// |lambda h| avoids the cancellation in the closed forms.
double exp_moment(int m, double lam, double h) {
    const double lh = lam * h;
    if (std::abs(lh) < 0.5) {
        double sum = 1.0 / (m + 1);
        double pw = 1.0;
        for (int n = 1; n <= 40; ++n) {
            pw *= lh / n;
            const double t = pw / (n + m + 1);
            sum += t;
            if (std::abs(t) <= 1e-18 * std::abs(sum)) break;
        }
        double hp = h;
        for (int i = 0; i < m; ++i) hp *= h;
        return hp * sum;
    }
    const double e = std::exp(lh);
    const double e0 = (e - 1.0) / lam;
    if (m == 0) return e0;
    const double e1 = h * e / lam - e0 / lam;
    if (m == 1) return e1;
    return h * h * e / lam - 2.0 * e1 / lam;
}

// int over one linear-density cell [x0, x0+h], density p + q s (s = x - x0),
// against e^{lambda x} and x e^{lambda x}.
double cell_mgf(double lam, double x0, double h, double p, double q) {
    return std::exp(lam * x0) * (p * exp_moment(0, lam, h) + q * exp_moment(1, lam, h));
}
double cell_mgf_prime(double lam, double x0, double h, double p, double q) {
    const double e0 = exp_moment(0, lam, h);
    const double e1 = exp_moment(1, lam, h);
    const double e2 = exp_moment(2, lam, h);
    return std::exp(lam * x0) * (x0 * (p * e0 + q * e1) + p * e1 + q * e2);
}

double erfc_tail_halfwidth(double eps) {
    // t with erfc(t/sqrt(2))/2 = eps, i.e. standard-normal tail mass eps.
    auto g = [eps](double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)) - eps; };
    return bisect(g, 0.0, 60.0, 1e-10);
}

}  // namespace

Kernel Kernel::normal(double alpha, double sigma) {
    if (!(sigma > 0.0)) throw ModelError("normal kernel: variance sigma must be > 0");
    Kernel k;
    k.family_ = KernelFamily::Normal;
    k.p1_ = alpha;
    k.p2_ = sigma;
    k.abscissas_ = {-kInf, kInf};
    return k;
}

Kernel Kernel::uniform(double b, double a) {
    if (!(b < 0.0 && 0.0 < a))
        throw ModelError("uniform kernel: requires b < 0 < a");
    Kernel k;
    k.family_ = KernelFamily::Uniform;
    k.p1_ = b;
    k.p2_ = a;
    k.abscissas_ = {-kInf, kInf};
    return k;
}

Kernel Kernel::asymmetric_exponential(double theta_l, double theta_r) {
    if (!(theta_l > 0.0) || !(theta_r > 0.0))
        throw ModelError("asymmetric-exponential kernel: rates must be > 0");
    Kernel k;
    k.family_ = KernelFamily::AsymmetricExponential;
    k.p1_ = theta_l;
    k.p2_ = theta_r;
    k.abscissas_ = {-theta_l, theta_r};
    return k;
}

Kernel Kernel::tabulated(std::vector<double> x, std::vector<double> density) {
    if (x.size() < 2 || x.size() != density.size())
        throw ModelError("tabulated kernel: need >= 2 (x, density) pairs");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw ModelError("tabulated kernel: abscissas must be strictly increasing");
    for (double d : density)
        if (!(d >= 0.0)) throw ModelError("tabulated kernel: negative density value");

    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        mass += 0.5 * (x[i + 1] - x[i]) * (density[i] + density[i + 1]);
    if (!(mass > 0.0)) throw ModelError("tabulated kernel: zero total mass");
    if (std::abs(mass - 1.0) > 0.2)
        throw ModelError("tabulated kernel: mass deviates from 1 by more than 20%");

    Kernel k;
    k.family_ = KernelFamily::Tabulated;
    k.renorm_ = 1.0 / mass;
    for (double& d : density) d *= k.renorm_;
    k.tx_ = std::move(x);
    k.td_ = std::move(density);
    k.abscissas_ = {-kInf, kInf};
    return k;
}

Kernel Kernel::tabulated_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("tabulated kernel: cannot open " + path);
    std::vector<double> xs, ds;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double x, d;
        if (ss >> x >> d) {
            xs.push_back(x);
            ds.push_back(d);
        } else {
            std::string rest;
            ss.clear();
            if (ss >> rest)
                throw ModelError("tabulated kernel: parse error at " + path + ":" +
                                 std::to_string(lineno));
        }
    }
    return tabulated(std::move(xs), std::move(ds));
}

double Kernel::density(double x) const {
    switch (family_) {
        case KernelFamily::Normal:
            return std::exp(-(x - p1_) * (x - p1_) / (2.0 * p2_)) /
                   std::sqrt(2.0 * M_PI * p2_);
        case KernelFamily::Uniform:
            return (x >= p1_ && x <= p2_) ? 1.0 / (p2_ - p1_) : 0.0;
        case KernelFamily::AsymmetricExponential: {
            const double c = p1_ * p2_ / (p1_ + p2_);
            return x < 0.0 ? c * std::exp(p1_ * x) : c * std::exp(-p2_ * x);
        }
        case KernelFamily::Tabulated: {
            if (x < tx_.front() || x > tx_.back()) return 0.0;
            const auto it = std::upper_bound(tx_.begin(), tx_.end(), x);
            const std::size_t i = std::min<std::size_t>(
                tx_.size() - 2, static_cast<std::size_t>(it - tx_.begin()) - 1);
            const double w = (x - tx_[i]) / (tx_[i + 1] - tx_[i]);
            return td_[i] + w * (td_[i + 1] - td_[i]);
        }
    }
    return 0.0;
}

double Kernel::mgf(double lambda) const {
    if (!(lambda > abscissas_.lo && lambda < abscissas_.hi))
        throw DomainError("mgf: lambda outside (lambda-, lambda+)");
    if (lambda == 0.0) return 1.0;
    switch (family_) {
        case KernelFamily::Normal:
            return std::exp(p1_ * lambda + 0.5 * p2_ * lambda * lambda);
        case KernelFamily::Uniform:
            return cell_mgf(lambda, p1_, p2_ - p1_, 1.0 / (p2_ - p1_), 0.0);
        case KernelFamily::AsymmetricExponential: {
            const double c = p1_ * p2_ / (p1_ + p2_);
            return c * (1.0 / (p1_ + lambda) + 1.0 / (p2_ - lambda));
        }
        case KernelFamily::Tabulated: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < tx_.size(); ++i) {
                const double h = tx_[i + 1] - tx_[i];
                s += cell_mgf(lambda, tx_[i], h, td_[i], (td_[i + 1] - td_[i]) / h);
            }
            return s;
        }
    }
    return 0.0;
}

double Kernel::mgf_prime(double lambda) const {
    if (!(lambda > abscissas_.lo && lambda < abscissas_.hi))
        throw DomainError("mgf_prime: lambda outside (lambda-, lambda+)");
    switch (family_) {
        case KernelFamily::Normal:
            return (p1_ + p2_ * lambda) *
                   std::exp(p1_ * lambda + 0.5 * p2_ * lambda * lambda);
        case KernelFamily::Uniform:
            return cell_mgf_prime(lambda, p1_, p2_ - p1_, 1.0 / (p2_ - p1_), 0.0);
        case KernelFamily::AsymmetricExponential: {
            const double c = p1_ * p2_ / (p1_ + p2_);
            const double l = p1_ + lambda, r = p2_ - lambda;
            return c * (1.0 / (r * r) - 1.0 / (l * l));
        }
        case KernelFamily::Tabulated: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < tx_.size(); ++i) {
                const double h = tx_[i + 1] - tx_[i];
                s += cell_mgf_prime(lambda, tx_[i], h, td_[i], (td_[i + 1] - td_[i]) / h);
            }
            return s;
        }
    }
    return 0.0;
}

Kernel Kernel::reflect() const {
    switch (family_) {
        case KernelFamily::Normal:
            return normal(-p1_, p2_);
        case KernelFamily::Uniform:
            return uniform(-p2_, -p1_);
        case KernelFamily::AsymmetricExponential:
            return asymmetric_exponential(p2_, p1_);
        case KernelFamily::Tabulated: {
            std::vector<double> xs(tx_.rbegin(), tx_.rend());
            for (double& x : xs) x = -x;
            std::vector<double> ds(td_.rbegin(), td_.rend());
            // densities are already renormalized; reuse directly
            Kernel k;
            k.family_ = KernelFamily::Tabulated;
            k.tx_ = std::move(xs);
            k.td_ = std::move(ds);
            k.abscissas_ = {-kInf, kInf};
            k.renorm_ = renorm_;
            return k;
        }
    }
    throw ModelError("reflect: unknown family");
}

double Kernel::first_moment() const {
    switch (family_) {
        case KernelFamily::Normal:
            return p1_;
        case KernelFamily::Uniform:
            return 0.5 * (p1_ + p2_);
        case KernelFamily::AsymmetricExponential: {
            const double c = p1_ * p2_ / (p1_ + p2_);
            return c * (1.0 / (p2_ * p2_) - 1.0 / (p1_ * p1_));
        }
        case KernelFamily::Tabulated:
            return mgf_prime(0.0);
    }
    return 0.0;
}

bool Kernel::is_symmetric(double tol) const {
    return std::abs(first_moment()) <= tol;
}

std::pair<double, double> Kernel::support_bound(double eps) const {
    switch (family_) {
        case KernelFamily::Normal: {
            const double t = erfc_tail_halfwidth(0.5 * eps);
            const double w = t * std::sqrt(p2_);
            return {p1_ - w, p1_ + w};
        }
        case KernelFamily::Uniform:
            return {p1_, p2_};
        case KernelFamily::AsymmetricExponential: {
            const double c = p1_ * p2_ / (p1_ + p2_);
            const double wl = std::max(0.0, std::log(2.0 * c / (p1_ * eps)) / p1_);
            const double wr = std::max(0.0, std::log(2.0 * c / (p2_ * eps)) / p2_);
            return {-wl, wr};
        }
        case KernelFamily::Tabulated:
            return {tx_.front(), tx_.back()};
    }
    return {0, 0};
}

double Kernel::mass_positive() const {
    switch (family_) {
        case KernelFamily::Normal:
            return 0.5 * std::erfc(-p1_ / std::sqrt(2.0 * p2_));
        case KernelFamily::Uniform:
            return p2_ / (p2_ - p1_);
        case KernelFamily::AsymmetricExponential:
            return p1_ / (p1_ + p2_) * 1.0;  // C/theta_r = theta_l/(theta_l+theta_r)
        case KernelFamily::Tabulated: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < tx_.size(); ++i) {
                double x0 = tx_[i], x1 = tx_[i + 1];
                if (x1 <= 0.0) continue;
                double d0 = td_[i], d1 = td_[i + 1];
                if (x0 < 0.0) {  // clip cell at zero
                    d0 = d0 + (0.0 - x0) / (x1 - x0) * (d1 - d0);
                    x0 = 0.0;
                }
                s += 0.5 * (x1 - x0) * (d0 + d1);
            }
            return s;
        }
    }
    return 0.0;
}

double Kernel::mass_negative() const {
    return reflect().mass_positive();
}

std::vector<double> Kernel::integration_breakpoints() const {
    switch (family_) {
        case KernelFamily::Normal:
            return {};
        case KernelFamily::Uniform:
            return {p1_, p2_};
        case KernelFamily::AsymmetricExponential:
            return {0.0};
        case KernelFamily::Tabulated:
            return tx_;
    }
    return {};
}

#define KPP_PARAM(name, fam, member)                                              \
    double Kernel::name() const {                                                 \
        if (family_ != KernelFamily::fam)                                         \
            throw ModelError(#name ": wrong kernel family");                      \
        return member;                                                            \
    }
KPP_PARAM(param_alpha, Normal, p1_)
KPP_PARAM(param_sigma, Normal, p2_)
KPP_PARAM(param_b, Uniform, p1_)
KPP_PARAM(param_a, Uniform, p2_)
KPP_PARAM(param_theta_l, AsymmetricExponential, p1_)
KPP_PARAM(param_theta_r, AsymmetricExponential, p2_)
#undef KPP_PARAM

const std::vector<double>& Kernel::table_x() const {
    if (family_ != KernelFamily::Tabulated) throw ModelError("table_x: wrong kernel family");
    return tx_;
}
const std::vector<double>& Kernel::table_density() const {
    if (family_ != KernelFamily::Tabulated)
        throw ModelError("table_density: wrong kernel family");
    return td_;
}

std::string Kernel::describe() const {
    std::ostringstream s;
    switch (family_) {
        case KernelFamily::Normal:
            s << "normal(alpha=" << p1_ << ", sigma=" << p2_ << ")";
            break;
        case KernelFamily::Uniform:
            s << "uniform(b=" << p1_ << ", a=" << p2_ << ")";
            break;
        case KernelFamily::AsymmetricExponential:
            s << "asymmetric-exponential(theta_l=" << p1_ << ", theta_r=" << p2_ << ")";
            break;
        case KernelFamily::Tabulated:
            s << "tabulated(" << tx_.size() << " knots on [" << tx_.front() << ", "
              << tx_.back() << "])";
            break;
    }
    return s.str();
}

std::vector<Violation> validate_kernel(const Kernel& k) {
    std::vector<Violation> v;

    if (k.family() == KernelFamily::Tabulated) {
        const auto& xs = k.table_x();
        const auto& ds = k.table_density();
        double mass = 0.0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i)
            mass += 0.5 * (xs[i + 1] - xs[i]) * (ds[i] + ds[i + 1]);
        if (std::abs(mass - 1.0) > 1e-10)
            v.push_back({"mass", "total mass differs from 1 after renormalization"});
    }

    const auto ab = k.exp_abscissas();
    if (!(ab.lo < 0.0 && 0.0 < ab.hi))
        v.push_back({"K1", "Mollison condition fails: need lambda- < 0 < lambda+"});

    if (!(k.mass_positive() > 0.0))
        v.push_back({"K2", "no positive density at any x > 0"});
    if (!(k.mass_negative() > 0.0))
        v.push_back({"K2", "no positive density at any x < 0"});

    return v;
}

}  // namespace kpp
