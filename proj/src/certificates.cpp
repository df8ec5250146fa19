#include "kpp/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "kpp/errors.hpp"
#include "kpp/quadrature.hpp"
#include "kpp/rootfind.hpp"
#include "kpp/speed.hpp"

namespace kpp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double c_side_of_eta(const Model& m, double eta, Side side) {
    const double f0 = m.reaction.fprime0() - eta;
    const double lam = lambda_star_side(m.kernel, f0, side == Side::Right).x;
    return (m.kernel.mgf(lam) - 1.0 + f0) / lam;
}

// Largest threshold with f(u) >= slope * u on [0, p], scanned on a fine grid.
double scan_p2(const ReactionKPP& f, double slope, int samples = 10000) {
    double p = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double u = static_cast<double>(i) / (samples + 1);
        if (f(u) < slope * u) break;
        p = u;
    }
    if (!(p > 0.0))
        throw CertificateError("p2 scan: f(u) >= (f'(0)-eta/2)u fails arbitrarily close to 0");
    return p;
}

}  // namespace

const char* side_label(Side s) { return s == Side::Right ? "right" : "left"; }

double LowerSolutionSpec::value(double t, double x) const {
    const double s = rho * (-x + c * t + xi);
    const double lmu = std::log(mu), lnu = std::log(nu);
    if (!(s > lmu && s < lnu)) return 0.0;
    return A * std::exp(s) - B * std::exp((1.0 + delta) * s) -
           D * std::exp((1.0 - delta) * s);
}

std::array<double, 2> LowerSolutionSpec::support(double t) const {
    const double e1 = c * t + xi - std::log(nu) / rho;
    const double e2 = c * t + xi - std::log(mu) / rho;
    return {std::min(e1, e2), std::max(e1, e2)};
}

std::vector<double> LowerSolutionSpec::kinks(double t) const {
    const auto s = support(t);
    return {s[0], s[1]};
}

double UpperSolutionSpec::value(double t, double x) const {
    const double lg = std::log(gamma0);
    const double er = lg + lambda_right * (-x + c_right * t);
    const double el = lg + lambda_left * (-x + c_left * t);
    return std::exp(std::min({0.0, er, el}));
}

std::vector<double> UpperSolutionSpec::kinks(double t) const {
    const double lg = std::log(gamma0);
    return {c_left * t + lg / lambda_left, c_right * t + lg / lambda_right};
}

double G_eta(const Model& m, double eta, double c, double lambda) {
    return c * lambda - m.kernel.mgf(lambda) + 1.0 - m.reaction.fprime0() + eta;
}

double eta_for_epsilon(const Model& m, double eps, Side side) {
    const double f0 = m.reaction.fprime0();
    const auto [lam_l, lam_r] = lambda_stars(m);
    const double cl = c_of_lambda(m, lam_l);
    const double cr = c_of_lambda(m, lam_r);
    if (!(eps > 0.0) || !(eps < 0.5 * (cr - cl)))
        throw CertificateError("eta_for_epsilon: need 0 < eps < (c_r* - c_l*)/2");

    const double target = side == Side::Right ? cr - eps : cl + eps;
    const double hi = f0 * (1.0 - 1e-12);
    // c_r*(eta) decreases in eta, c_l*(eta) increases
    auto g = [&](double eta) {
        const double cs = c_side_of_eta(m, eta, side);
        return side == Side::Right ? cs - target : target - cs;
    };
    if (!(g(hi) <= 0.0))
        throw CertificateError("eta_for_epsilon: eps unreachable (eta would reach f'(0))");

    double lo = 0.0;       // g(0) = eps > 0
    double hi_b = hi;
    double mid = 0.5 * hi;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi_b);
        const double gm = g(mid);
        if (std::abs(gm) <= 1e-10) return mid;
        if (gm > 0.0)
            lo = mid;
        else
            hi_b = mid;
        if (hi_b - lo <= 1e-15 * std::max(1.0, mid)) break;
    }
    return mid;
}

GRoots g_roots(const Model& m, double eta, double c, Side side) {
    const double f0 = m.reaction.fprime0();
    if (!(eta > 0.0 && eta < f0))
        throw CertificateError("g_roots: eta must lie in (0, f'(0))");
    const Abscissas ab = m.kernel.exp_abscissas();
    const double J = m.kernel.first_moment();
    auto G = [&](double lam) { return G_eta(m, eta, c, lam); };
    auto dG = [&](double lam) { return c - m.kernel.mgf_prime(lam); };

    // gamma: stationary point of G on the half-axis (M'(gamma) = c)
    const bool right = side == Side::Right;
    if (right ? !(J < c) : !(J > c))
        throw CertificateError("g_roots: no-root, M' never meets c on this half-axis");

    double ga = 0.0, gfa = c - J;  // sign matches `right` convention below
    double gb, gfb;
    {
        const double limit = right ? ab.hi : ab.lo;
        const double start = std::isinf(limit) ? (right ? 1.0 : -1.0) : 0.5 * limit;
        // walk out until dG flips sign (negative on the right side, positive left)
        double x = start;
        bool found = false;
        for (int k = 0; k < 1000 && !found; ++k) {
            double fx = dG(x);
            int back = 0;
            while (!std::isfinite(fx) && back++ < 200) {
                x = ga + 0.5 * (x - ga);
                fx = dG(x);
            }
            if (right ? (fx < 0.0) : (fx < 0.0)) {
                // dG < 0 means M' > c; on the right this is the far end,
                // on the left it is the near end (dG(0) = c - J < 0 there)
            }
            if ((fx < 0.0) != (gfa < 0.0)) {
                gb = x;
                gfb = fx;
                found = true;
                break;
            }
            ga = x;
            gfa = fx;
            x = std::isinf(limit) ? 2.0 * x : limit - 0.5 * (limit - x);
        }
        if (!found) throw BracketError("g_roots: gamma bracket expansion failed");
    }
    double lo = std::min(ga, gb), hi = std::max(ga, gb);
    double flo = ga <= gb ? gfa : gfb, fhi = ga <= gb ? gfb : gfa;
    const double gamma = refine_root(dG, lo, hi, flo, fhi, 1e-13).x;

    const double Ggamma = G(gamma);
    if (!(Ggamma > 0.0)) {
        if (Ggamma > -1e-12)
            throw CertificateError("g_roots: degenerate double root (c = c*(eta))");
        throw CertificateError("g_roots: no-root, c outside the admissible band");
    }

    // alpha between 0 and gamma: G(0) = eta - f'(0) < 0
    const double G0 = eta - f0;
    double a0 = std::min(0.0, gamma), b0 = std::max(0.0, gamma);
    const double alpha =
        refine_root(G, a0, b0, a0 == 0.0 ? G0 : Ggamma, a0 == 0.0 ? Ggamma : G0, 1e-13).x;

    // beta past gamma: expand toward the abscissa until G < 0
    double ba = gamma, bfa = Ggamma;
    double bb = 0, bfb = 0;
    {
        const double limit = right ? ab.hi : ab.lo;
        double x = std::isinf(limit) ? 2.0 * gamma : limit - 0.5 * (limit - gamma);
        bool found = false;
        for (int k = 0; k < 1000 && !found; ++k) {
            double fx = G(x);
            int back = 0;
            while (!std::isfinite(fx) && back++ < 200) {
                x = ba + 0.5 * (x - ba);
                fx = G(x);
            }
            if (fx < 0.0) {
                bb = x;
                bfb = fx;
                found = true;
                break;
            }
            ba = x;
            bfa = fx;
            x = std::isinf(limit) ? 2.0 * x : limit - 0.5 * (limit - x);
        }
        if (!found) throw BracketError("g_roots: beta bracket expansion failed");
    }
    lo = std::min(ba, bb);
    hi = std::max(ba, bb);
    flo = ba <= bb ? bfa : bfb;
    fhi = ba <= bb ? bfb : bfa;
    const double beta = refine_root(G, lo, hi, flo, fhi, 1e-13).x;

    return {alpha, gamma, beta};
}

double h_eval(double A, double B, double D, double delta, double z) {
    const double s = std::log(z);
    return A * std::exp(s) - B * std::exp((1.0 + delta) * s) -
           D * std::exp((1.0 - delta) * s);
}

HGeometry h_geometry(double A, double B, double D, double delta) {
    if (!(A > 0 && B > 0 && D > 0) || !(delta > 0 && delta < 1))
        throw CertificateError("h_geometry: need A,B,D > 0 and delta in (0,1)");
    const double disc = A * A - 4.0 * B * D;
    if (!(disc >= 0.0))
        throw CertificateError("h_geometry: B > A^2/(4D), H has no positive part");
    HGeometry g;
    const double ym = (A - std::sqrt(disc)) / (2.0 * B);
    const double yp = (A + std::sqrt(disc)) / (2.0 * B);
    g.mu = std::exp(std::log(ym) / delta);
    g.nu = std::exp(std::log(yp) / delta);
    const double disc0 = A * A - 4.0 * B * D * (1.0 - delta * delta);
    const double y0 = (A + std::sqrt(disc0)) / (2.0 * B * (1.0 + delta));
    const double lz0 = std::log(y0) / delta;
    g.z0 = std::exp(lz0);
    g.hmax = A * std::exp(lz0) - B * std::exp((1.0 + delta) * lz0) -
             D * std::exp((1.0 - delta) * lz0);
    return g;
}

HeightSolution solve_B_for_height(double A, double D, double delta, double p) {
    if (!(A > 0 && D > 0) || !(delta > 0 && delta < 1) || !(p > 0))
        throw CertificateError("solve_B_for_height: bad arguments");
    const double b_crit = A * A / (4.0 * D);

    auto height = [&](double B) {
        const double disc0 = A * A - 4.0 * B * D * (1.0 - delta * delta);
        const double y0 = (A + std::sqrt(disc0)) / (2.0 * B * (1.0 + delta));
        const double lz0 = std::log(y0) / delta;
        if (lz0 > 700.0) return std::numeric_limits<double>::infinity();
        return A * std::exp(lz0) - B * std::exp((1.0 + delta) * lz0) -
               D * std::exp((1.0 - delta) * lz0);
    };

    double hi = b_crit * (1.0 - 1e-15);  // height ~ 0 here
    double lo = hi;
    for (int k = 0; k < 600; ++k) {
        lo *= 0.5;
        if (height(lo) > p) break;
        if (k == 599)
            throw CertificateError("solve_B_for_height: height unreachable");
    }
    // bisection on the strictly decreasing height(B)
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double hm = height(mid);
        if (std::abs(hm - p) <= 1e-12) break;
        if (hm > p)
            lo = mid;
        else
            hi = mid;
    }
    const HGeometry g = h_geometry(A, mid, D, delta);
    return {mid, g.mu, g.nu, g.z0, g.hmax};
}

LowerSolutionSpec build_lower_solution(const Model& m, double c, Side side,
                                       double eps, double r,
                                       std::optional<double> eta_margin) {
    if (!(r > 0.0)) throw CertificateError("build_lower_solution: r must be > 0");
    const double f0 = m.reaction.fprime0();
    const double eta = eta_for_epsilon(m, eps, side);

    // admissible band: c strictly between c*(eta) and c* on this side
    {
        const double lam = lambda_star_side(m.kernel, f0, side == Side::Right).x;
        const double c_star = c_of_lambda(m, lam);
        const double c_eta = c_side_of_eta(m, eta, side);
        const bool ok = side == Side::Right ? (c > c_eta && c < c_star)
                                            : (c < c_eta && c > c_star);
        if (!ok)
            throw CertificateError("build_lower_solution: speed outside (c*(eta), c*) band");
    }

    const GRoots roots = g_roots(m, eta, c, side);

    // Exponent scale: the profile's leading decay rate rides the dispersion
    // relation, G_eta(c, alpha) = 0 -- the same primary rate the classical
    // sine-profile construction uses. The correction exponents rho(1 +- delta)
    // hug it; the x-support width is 2 atanh(sqrt(1-t)) / (delta |rho|), so the
    // requested bound width <= r/2 fixes delta at the shape parameter
    // t = 4BD/A^2 below. Validity holds in the wide-support regime (the
    // residual check below is the arbiter); delta beyond ~0.1 or t near 1
    // loses the sub-solution inequality.
    const double rho = roots.alpha;
    const double t_shape = 0.25;
    const double half_logwidth = std::atanh(std::sqrt(1.0 - t_shape));
    constexpr double kDeltaMax = 0.1;    // empirical validity edge
    constexpr double kDeltaMin = 0.004;  // keeps ln(mu), ln(nu) representable
    const double delta_needed = 4.0 * half_logwidth / (std::abs(rho) * r);
    if (delta_needed > kDeltaMax)
        throw CertificateError(
            "build_lower_solution: infeasible width (support bound r/2 = " +
            std::to_string(0.5 * r) + " is below the narrowest valid profile " +
            std::to_string(2.0 * half_logwidth / (kDeltaMax * std::abs(rho))) +
            " at this speed)");
    const double delta = std::max(delta_needed, kDeltaMin);

    const double eta_m = eta_margin.value_or(eta);
    if (!(eta_m > 0.0 && eta_m <= eta + 1e-15))
        throw CertificateError("build_lower_solution: eta margin must be in (0, eta]");
    const double p2 = scan_p2(m.reaction, f0 - 0.5 * eta_m);

    const double s = std::sqrt(1.0 - t_shape);
    const double rt = std::sqrt(t_shape);
    const double y0 = (1.0 + std::sqrt(1.0 - t_shape * (1.0 - delta * delta))) /
                      ((1.0 + delta) * rt);
    const double denom = 1.0 - 0.5 * rt * (y0 + 1.0 / y0);
    if (!(denom > 0.0))
        throw CertificateError("build_lower_solution: degenerate shape (peak height <= 0)");

    LowerSolutionSpec spec;
    spec.side = side;
    spec.c = c;
    spec.eta = eta;
    spec.rho = rho;
    spec.delta = delta;
    spec.hmax = 0.9 * p2;
    // gauge with the peak at z0 = 1
    spec.A = spec.hmax / denom;
    spec.B = spec.A * 0.5 * rt * y0;
    spec.D = spec.A * 0.5 * rt / y0;
    spec.z0 = 1.0;
    spec.mu = std::exp(std::log((1.0 - s) / (rt * y0)) / delta);
    spec.nu = std::exp(std::log((1.0 + s) / (rt * y0)) / delta);
    spec.p1 = p2;
    spec.p2 = p2;
    spec.xi = 0.5 * (std::log(spec.mu) + std::log(spec.nu)) / rho;

    // final feasibility: width within r/2 (holds by construction of delta,
    // re-checked against rounding) and the verified sub-solution inequality
    const auto sup = spec.support(0.0);
    if (sup[1] - sup[0] > 0.5 * r * (1.0 + 1e-9))
        throw CertificateError("build_lower_solution: infeasible width");
    const auto ts = verification_times();
    const auto xs = lower_verification_grid(m, spec, ts, /*coarsen=*/4);
    const ResidualRange rr = residual(m, make_profile(spec), ts, xs);
    if (!(rr.max_residual <= 1e-9))
        throw CertificateError(
            "build_lower_solution: sub-solution inequality failed the residual check "
            "(max residual " + std::to_string(rr.max_residual) + ")");
    return spec;
}

UpperSolutionSpec build_upper_solution(const Model& m, double Gamma) {
    if (!(Gamma > 0.0)) throw CertificateError("build_upper_solution: Gamma must be > 0");
    UpperSolutionSpec u;
    u.gamma0 = std::max(1.0, Gamma);
    const auto [lam_l, lam_r] = lambda_stars(m);
    u.lambda_left = lam_l;
    u.lambda_right = lam_r;
    u.c_left = c_of_lambda(m, lam_l);
    u.c_right = c_of_lambda(m, lam_r);
    return u;
}

CertProfile make_profile(const LowerSolutionSpec& s) {
    return {[s](double t, double x) { return s.value(t, x); },
            [s](double t) { return s.kinks(t); }};
}
CertProfile make_profile(const UpperSolutionSpec& s) {
    return {[s](double t, double x) { return s.value(t, x); },
            [s](double t) { return s.kinks(t); }};
}

ResidualRange residual(const Model& m, const CertProfile& prof,
                       const std::vector<double>& t_grid,
                       const std::vector<double>& x_grid) {
    const auto [klo, khi] = m.kernel.support_bound(1e-14);
    const auto kernel_breaks = m.kernel.integration_breakpoints();
    const double h = 1e-6;

    double cell = 0.0;
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i)
        cell = std::max(cell, x_grid[i + 1] - x_grid[i]);

    ResidualRange out{-std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(), kNan, kNan, kNan, kNan};

    QuadratureOptions qopts;  // abs 1e-12, rel 1e-10
    for (double t : t_grid) {
        const auto kinks = prof.kinks(t);
        for (double x : x_grid) {
            bool near_kink = false;
            for (double kx : kinks)
                if (std::abs(x - kx) <= cell) near_kink = true;
            if (near_kink) continue;

            const double ut = (prof.value(t + h, x) - prof.value(t - h, x)) / (2.0 * h);
            std::vector<double> cuts = kernel_breaks;
            for (double kx : kinks) cuts.push_back(x - kx);
            const double conv = integrate_segmented(
                [&](double y) { return m.kernel.density(y) * prof.value(t, x - y); },
                klo, khi, cuts, qopts);
            const double u = prof.value(t, x);
            const double r = ut - conv + u - m.reaction(u);
            if (r > out.max_residual) {
                out.max_residual = r;
                out.argmax_t = t;
                out.argmax_x = x;
            }
            if (r < out.min_residual) {
                out.min_residual = r;
                out.argmin_t = t;
                out.argmin_x = x;
            }
        }
    }
    return out;
}

std::vector<double> verification_times() { return {0.25, 0.5, 0.75, 1.0}; }

std::vector<double> lower_verification_grid(const Model& m, const LowerSolutionSpec& s,
                                            const std::vector<double>& ts, int coarsen) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double t : ts) {
        const auto sup = s.support(t);
        lo = std::min(lo, sup[0]);
        hi = std::max(hi, sup[1]);
    }
    const auto [klo, khi] = m.kernel.support_bound(1e-14);
    const double a = lo + klo - 0.5;
    const double b = hi + khi + 0.5;
    const auto sup0 = s.support(ts.empty() ? 0.0 : ts.front());
    const double width = sup0[1] - sup0[0];
    const double spacing = std::max(1e-3 * width * coarsen, (b - a) / 200000.0);
    std::vector<double> xs;
    for (double x = a; x <= b; x += spacing) xs.push_back(x);
    return xs;
}

std::vector<double> upper_verification_grid(const Model& m, const UpperSolutionSpec& s,
                                            const std::vector<double>& ts) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double t : ts) {
        for (double k : s.kinks(t)) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
    }
    const auto [klo, khi] = m.kernel.support_bound(1e-14);
    const double a = lo + klo - 2.0;
    const double b = hi + khi + 2.0;
    const double spacing = (b - a) / 2000.0;
    std::vector<double> xs;
    for (double x = a; x <= b; x += spacing) xs.push_back(x);
    return xs;
}

std::vector<std::string> check_lower_invariants(const LowerSolutionSpec& s) {
    std::vector<std::string> v;
    if (!(s.delta > 0.0 && s.delta < 1.0)) v.push_back("delta outside (0,1)");
    if (!(s.A > 0 && s.B > 0 && s.D > 0)) v.push_back("coefficients not all positive");
    if (!(s.B < s.A * s.A / (4.0 * s.D)))
        v.push_back("B outside (0, A^2/(4D))");
    if (!(s.mu < s.nu)) v.push_back("support roots not ordered (mu < nu)");
    if (std::abs(h_eval(s.A, s.B, s.D, s.delta, s.mu)) > 1e-10)
        v.push_back("H(mu) != 0");
    if (std::abs(h_eval(s.A, s.B, s.D, s.delta, s.nu)) > 1e-10)
        v.push_back("H(nu) != 0");
    if (std::abs(h_eval(s.A, s.B, s.D, s.delta, s.z0) - s.hmax) > 1e-10)
        v.push_back("H(z0) != hmax");
    // peak: H' vanishes at z0
    const double hp = s.A - s.B * (1.0 + s.delta) * std::pow(s.z0, s.delta) -
                      s.D * (1.0 - s.delta) * std::pow(s.z0, -s.delta);
    if (std::abs(hp) * s.z0 > 1e-8) v.push_back("z0 is not the peak of H");
    if (!(s.hmax <= s.p2 * (1.0 + 1e-12)) || !(s.p2 <= s.p1 * (1.0 + 1e-12)))
        v.push_back("height chain hmax <= p2 <= p1 violated");
    return v;
}

Schedule forward_backward_schedule(double c1, double c2, double kappa, double tau,
                                   const LowerSolutionSpec* phase2) {
    if (!(c2 <= c1)) throw DomainError("forward_backward_schedule: need c2 <= c1");
    if (!(kappa >= 0.0 && kappa <= 1.0))
        throw DomainError("forward_backward_schedule: kappa in [0,1]");
    if (!(tau > 0.0)) throw DomainError("forward_backward_schedule: tau > 0");
    Schedule s;
    s.switch_time = kappa * tau;
    s.terminal_position = kappa * c1 * tau + (1.0 - kappa) * c2 * tau;
    s.xi2 = phase2 ? (c1 - c2) * kappa * tau + std::log(phase2->z0) / phase2->rho : kNan;
    return s;
}

namespace {

nlohmann::json lower_to_json(const LowerSolutionSpec& s) {
    return {{"side", side_label(s.side)}, {"c", s.c},       {"eta", s.eta},
            {"rho", s.rho},               {"delta", s.delta}, {"A", s.A},
            {"B", s.B},                   {"D", s.D},         {"mu", s.mu},
            {"nu", s.nu},                 {"z0", s.z0},       {"hmax", s.hmax},
            {"xi", s.xi},                 {"p1", s.p1},       {"p2", s.p2}};
}

LowerSolutionSpec lower_from_json(const nlohmann::json& j) {
    LowerSolutionSpec s;
    const std::string side = j.at("side").get<std::string>();
    if (side != "right" && side != "left")
        throw ConfigError("certificate: side must be 'right' or 'left'");
    s.side = side == "right" ? Side::Right : Side::Left;
    s.c = j.at("c").get<double>();
    s.eta = j.at("eta").get<double>();
    s.rho = j.at("rho").get<double>();
    s.delta = j.at("delta").get<double>();
    s.A = j.at("A").get<double>();
    s.B = j.at("B").get<double>();
    s.D = j.at("D").get<double>();
    s.mu = j.at("mu").get<double>();
    s.nu = j.at("nu").get<double>();
    s.z0 = j.at("z0").get<double>();
    s.hmax = j.at("hmax").get<double>();
    s.xi = j.at("xi").get<double>();
    s.p1 = j.at("p1").get<double>();
    s.p2 = j.at("p2").get<double>();
    return s;
}

}  // namespace

void save_certificates(const std::string& path, const CertificateSet& set) {
    nlohmann::json j;
    j["lower"] = nlohmann::json::array();
    for (const auto& s : set.lower) j["lower"].push_back(lower_to_json(s));
    if (set.upper) {
        j["upper"] = {{"gamma0", set.upper->gamma0},
                      {"lambda_left", set.upper->lambda_left},
                      {"lambda_right", set.upper->lambda_right},
                      {"c_left", set.upper->c_left},
                      {"c_right", set.upper->c_right}};
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write certificate file " + path);
    out << j.dump(2) << "\n";
}

CertificateSet load_certificates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open certificate file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("certificate file " + path + ": " + e.what());
    }
    CertificateSet set;
    try {
        for (const auto& l : j.at("lower")) set.lower.push_back(lower_from_json(l));
        if (j.contains("upper")) {
            UpperSolutionSpec u;
            u.gamma0 = j["upper"].at("gamma0").get<double>();
            u.lambda_left = j["upper"].at("lambda_left").get<double>();
            u.lambda_right = j["upper"].at("lambda_right").get<double>();
            u.c_left = j["upper"].at("c_left").get<double>();
            u.c_right = j["upper"].at("c_right").get<double>();
            set.upper = u;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("certificate file " + path + ": " + e.what());
    }
    return set;
}

}  // namespace kpp
