#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kpp/model.hpp"

namespace kpp {

enum class Side { Left, Right };
const char* side_label(Side s);

// Compactly supported traveling sub-solution profile
//   u(t,x) = max{0, H(e^{rho(-x + c t + xi)})},  H(z) = A z - B z^{1+delta} - D z^{1-delta}.
struct LowerSolutionSpec {
    Side side = Side::Right;
    double c = 0;       // profile speed
    double eta = 0;     // linearization slack used for this side
    double rho = 0;     // exponent scale (negative for the left side)
    double delta = 0;   // exponent spread, in (0,1)
    double A = 0, B = 0, D = 0;
    double mu = 0, nu = 0;  // z-support roots of H, mu < nu
    double z0 = 0;          // peak location, H(z0) = hmax
    double hmax = 0;
    double xi = 0;  // translation, admissible-window midpoint
    double p1 = 0, p2 = 0;

    double value(double t, double x) const;
    std::array<double, 2> support(double t) const;  // sorted x-interval
    std::vector<double> kinks(double t) const;      // support edges
};

// min{1, Gamma0 e^{lambda_r* (-x + c_r* t)}, Gamma0 e^{lambda_l* (-x + c_l* t)}}
struct UpperSolutionSpec {
    double gamma0 = 1;
    double lambda_left = 0, lambda_right = 0;
    double c_left = 0, c_right = 0;

    double value(double t, double x) const;
    std::vector<double> kinks(double t) const;  // min-switch loci
};

// G_eta(c, lambda) = c lambda - M(lambda) + 1 - f'(0) + eta.
double G_eta(const Model& m, double eta, double c, double lambda);

// eta with c_r*(eta) = c_r* - eps (side Right) or c_l*(eta) = c_l* + eps
// (side Left), found by bisection on the eta-shifted linearization.
double eta_for_epsilon(const Model& m, double eps, Side side);

struct GRoots {
    double alpha;  // zero of G nearer 0
    double gamma;  // maximizer of G between the zeros
    double beta;   // zero of G farther from 0
};
GRoots g_roots(const Model& m, double eta, double c, Side side);

// H-geometry for given coefficients: support roots, peak, height.
struct HGeometry {
    double mu, nu, z0, hmax;
};
HGeometry h_geometry(double A, double B, double D, double delta);
double h_eval(double A, double B, double D, double delta, double z);

// Solves H^max(B) = p on B in (0, A^2/(4D)); H^max is strictly decreasing in B.
struct HeightSolution {
    double B, mu, nu, z0, hmax;
};
HeightSolution solve_B_for_height(double A, double D, double delta, double p);

// Builds a verified lower solution at speed c. eta_margin, when supplied,
// replaces this side's eta in the p2 scan (min{eta_1, eta_2} when both sides
// are built together).
LowerSolutionSpec build_lower_solution(const Model& m, double c, Side side,
                                       double eps, double r,
                                       std::optional<double> eta_margin = std::nullopt);

UpperSolutionSpec build_upper_solution(const Model& m, double Gamma);

// A profile with known kink loci, as the residual scan needs it.
struct CertProfile {
    std::function<double(double, double)> value;          // (t, x)
    std::function<std::vector<double>(double)> kinks;     // t -> x positions
};
CertProfile make_profile(const LowerSolutionSpec& s);
CertProfile make_profile(const UpperSolutionSpec& s);

// Extremal values of u_t - k*u + u - f(u) over the grid, one grid cell around
// each kink excluded. u_t by central differences (h = 1e-6), k*u by segmented
// adaptive quadrature against the analytic profile.
struct ResidualRange {
    double max_residual, min_residual;
    double argmax_t, argmax_x;
    double argmin_t, argmin_x;
};
ResidualRange residual(const Model& m, const CertProfile& prof,
                       const std::vector<double>& t_grid,
                       const std::vector<double>& x_grid);

// Standard verification grids.
std::vector<double> verification_times();
std::vector<double> lower_verification_grid(const Model& m, const LowerSolutionSpec& s,
                                            const std::vector<double>& ts,
                                            int coarsen = 1);
std::vector<double> upper_verification_grid(const Model& m, const UpperSolutionSpec& s,
                                            const std::vector<double>& ts);

// Structural invariant checks (empty result = sound).
std::vector<std::string> check_lower_invariants(const LowerSolutionSpec& s);

// Two-phase composition: phase 1 at speed c1 on [0, kappa tau], phase 2 at
// speed c2 after; terminal position sweeps [c2 tau, c1 tau] as kappa sweeps
// [0,1]. xi2 places the phase-2 profile under the phase-1 profile at the
// switch (NaN when no phase-2 spec given).
struct Schedule {
    double switch_time;
    double terminal_position;
    double xi2;
};
Schedule forward_backward_schedule(double c1, double c2, double kappa, double tau,
                                   const LowerSolutionSpec* phase2 = nullptr);

// Structured-text (JSON) certificate records.
struct CertificateSet {
    std::vector<LowerSolutionSpec> lower;
    std::optional<UpperSolutionSpec> upper;
};
void save_certificates(const std::string& path, const CertificateSet& set);
CertificateSet load_certificates(const std::string& path);

}  // namespace kpp
