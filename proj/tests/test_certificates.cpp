#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "kpp/certificates.hpp"
#include "kpp/errors.hpp"
#include "kpp/speed.hpp"

using namespace kpp;

namespace {

Model uniform_model() { return {Kernel::uniform(-1.0, 1.0), ReactionKPP::logistic(1.0)}; }

}  // namespace

TEST_CASE("G_eta closed values") {
    const Model m = uniform_model();
    CHECK(G_eta(m, 0.5, 0.7, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));

    const auto [ll, lr] = lambda_stars(m);
    const double cr = c_of_lambda(m, lr);
    CHECK(std::abs(G_eta(m, 0.0, cr, lr)) <= 1e-10);  // minimizing pair

    CHECK(G_eta(m, 0.1, 0.8, 1.0) ==
          doctest::Approx(0.8 - std::sinh(1.0) + 0.1).epsilon(1e-12));
}

TEST_CASE("G_eta is concave in lambda") {
    const Model m = uniform_model();
    for (double lam : {-1.5, -0.5, 0.3, 1.1, 2.0}) {
        const double h = 0.05;
        const double dd = G_eta(m, 0.1, 0.8, lam - h) - 2.0 * G_eta(m, 0.1, 0.8, lam) +
                          G_eta(m, 0.1, 0.8, lam + h);
        CHECK(dd < 0.0);
    }
}

TEST_CASE("eta_for_epsilon round trip") {
    const Model m = uniform_model();
    const auto [ll, lr] = lambda_stars(m);
    const double cr = c_of_lambda(m, lr);
    const double cl = c_of_lambda(m, ll);

    const double eta = eta_for_epsilon(m, 0.05, Side::Right);
    CHECK(eta > 0.0);
    CHECK(eta < 1.0);
    // recompute c_r*(eta) via the shifted linearization
    const double lam_eta = lambda_star_side(m.kernel, 1.0 - eta, true).x;
    const double cr_eta = (m.kernel.mgf(lam_eta) - 1.0 + 1.0 - eta) / lam_eta;
    CHECK(std::abs(cr_eta - (cr - 0.05)) <= 1e-10);

    // monotone in eps near zero
    CHECK(eta_for_epsilon(m, 1e-6, Side::Right) < eta_for_epsilon(m, 1e-3, Side::Right));

    // left side mirrors on a symmetric model
    const double eta_l = eta_for_epsilon(m, 0.05, Side::Left);
    CHECK(eta_l == doctest::Approx(eta).epsilon(1e-8));

    CHECK_THROWS_AS(eta_for_epsilon(m, cr - cl, Side::Right), CertificateError);
    CHECK_THROWS_AS(eta_for_epsilon(m, -0.1, Side::Right), CertificateError);
}

TEST_CASE("g_roots ordering and degenerate cases") {
    const Model m = uniform_model();
    const double cr = c_of_lambda(m, lambda_stars(m).second);
    const double eta = eta_for_epsilon(m, 0.05, Side::Right);
    const double c1 = cr - 0.025;

    const GRoots g = g_roots(m, eta, c1, Side::Right);
    CHECK(g.alpha < g.gamma);
    CHECK(g.gamma < g.beta);
    CHECK(std::abs(G_eta(m, eta, c1, g.alpha)) <= 1e-10);
    CHECK(std::abs(G_eta(m, eta, c1, g.beta)) <= 1e-10);
    CHECK(G_eta(m, eta, c1, g.gamma) > 0.0);

    // left side mirror
    const GRoots gl = g_roots(m, eta, -c1, Side::Left);
    CHECK(gl.beta < gl.gamma);
    CHECK(gl.gamma < gl.alpha);
    CHECK(gl.alpha < 0.0);
    CHECK(gl.alpha == doctest::Approx(-g.alpha).epsilon(1e-8));

    // tangency: c equal to c_r*(eta) gives a double root
    const double c_eta = cr - 0.05;
    CHECK_THROWS_WITH_AS(g_roots(m, eta, c_eta - 1e-10, Side::Right),
                         doctest::Contains("degenerate"), CertificateError);
    // far below the band: no roots at all
    CHECK_THROWS_AS(g_roots(m, eta, c_of_lambda(m, lambda_stars(m).first), Side::Right),
                    CertificateError);
}

TEST_CASE("h_geometry at the critical B") {
    // A=2, D=1, delta=0.5: B = A^2/(4D) = 1 collapses the support to z = 1
    const HGeometry g = h_geometry(2.0, 1.0, 1.0, 0.5);
    CHECK(g.mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.nu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.hmax == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(h_eval(2.0, 1.0, 1.0, 0.5, 1.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("solve_B_for_height hits the requested height") {
    const HeightSolution s = solve_B_for_height(2.0, 1.0, 0.5, 0.1);
    CHECK(s.B > 0.0);
    CHECK(s.B < 1.0);
    CHECK(std::abs(s.hmax - 0.1) <= 1e-12);
    CHECK(std::abs(h_eval(2.0, s.B, 1.0, 0.5, s.z0) - 0.1) <= 1e-12);
    CHECK(s.mu < s.z0);
    CHECK(s.z0 < s.nu);

    // sweep oracle: a B-grid brackets the returned B
    double best_b = 0.0;
    for (double B = 0.01; B < 1.0; B += 0.001) {
        const HGeometry g = h_geometry(2.0, B, 1.0, 0.5);
        if (g.hmax >= 0.1) best_b = B;  // hmax decreases in B
    }
    CHECK(std::abs(best_b - s.B) <= 2e-3);
}

TEST_CASE("support shrinks as the height drops") {
    double prev_width = 1e300;
    double prev_b = 0.0;
    for (double p : {0.1, 0.01, 0.001, 1e-5}) {
        const HeightSolution s = solve_B_for_height(2.0, 1.0, 0.5, p);
        const double width = s.nu - s.mu;
        CHECK(width < prev_width);
        CHECK(s.B > prev_b);  // B(p) -> A^2/(4D) as p -> 0+
        prev_width = width;
        prev_b = s.B;
    }
    CHECK(prev_width < 0.02);
}

TEST_CASE("build_lower_solution produces a verified compact sub-solution") {
    const Model m = uniform_model();
    const double cr = c_of_lambda(m, lambda_stars(m).second);
    const double c1 = cr - 0.025;
    const double r = 40.0;

    const LowerSolutionSpec low = build_lower_solution(m, c1, Side::Right, 0.05, r);
    CHECK(low.delta > 0.0);
    CHECK(low.delta < 1.0);
    CHECK(low.hmax <= low.p2);
    CHECK(low.p2 <= low.p1);
    CHECK(low.B < low.A * low.A / (4.0 * low.D));
    CHECK(check_lower_invariants(low).empty());

    // compact support at t=0 of length <= r/2, inside (-r, r)
    const auto sup = low.support(0.0);
    CHECK(sup[1] - sup[0] <= 0.5 * r + 1e-9);
    CHECK(sup[0] > -r);
    CHECK(sup[1] < r);
    CHECK(low.value(0.0, sup[0] - 0.1) == 0.0);
    CHECK(low.value(0.0, sup[1] + 0.1) == 0.0);
    CHECK(low.value(0.0, 0.5 * (sup[0] + sup[1])) > 0.0);

    // residual oracle on the standard grid
    const auto ts = verification_times();
    const auto xs = lower_verification_grid(m, low, ts);
    const ResidualRange rr = residual(m, make_profile(low), ts, xs);
    CHECK(rr.max_residual <= 1e-6);

    // the profile travels: support at t=1 shifted by c1
    const auto sup1 = low.support(1.0);
    CHECK(sup1[0] == doctest::Approx(sup[0] + c1).epsilon(1e-12));
}

TEST_CASE("build_lower_solution on the left side") {
    const Model m = uniform_model();
    const double cl = c_of_lambda(m, lambda_stars(m).first);
    const double c2 = cl + 0.025;

    const LowerSolutionSpec low = build_lower_solution(m, c2, Side::Left, 0.05, 40.0);
    CHECK(low.rho < 0.0);
    CHECK(check_lower_invariants(low).empty());

    const auto ts = verification_times();
    const auto xs = lower_verification_grid(m, low, ts);
    const ResidualRange rr = residual(m, make_profile(low), ts, xs);
    CHECK(rr.max_residual <= 1e-6);

    // moves left
    CHECK(low.support(1.0)[0] < low.support(0.0)[0]);
}

TEST_CASE("narrow support demand is infeasible at near-critical speeds") {
    // a compact sub-solution this close to c_r* needs support much wider than
    // r/2 = 0.5; the builder must refuse rather than return an invalid one
    const Model m = uniform_model();
    const double cr = c_of_lambda(m, lambda_stars(m).second);
    CHECK_THROWS_AS(build_lower_solution(m, cr - 0.025, Side::Right, 0.05, 1.0),
                    CertificateError);
}

TEST_CASE("speed band preconditions") {
    const Model m = uniform_model();
    const double cr = c_of_lambda(m, lambda_stars(m).second);
    // outside (c_r*(eta), c_r*)
    CHECK_THROWS_AS(build_lower_solution(m, cr + 0.01, Side::Right, 0.05, 40.0),
                    CertificateError);
    CHECK_THROWS_AS(build_lower_solution(m, cr - 0.2, Side::Right, 0.05, 40.0),
                    CertificateError);
}

TEST_CASE("build_upper_solution clamps Gamma and verifies") {
    const Model m = uniform_model();
    const UpperSolutionSpec up = build_upper_solution(m, 0.5);
    CHECK(up.gamma0 == 1.0);

    const UpperSolutionSpec up2 = build_upper_solution(m, 3.0);
    CHECK(up2.gamma0 == 3.0);

    // plateau value is exactly 1 between the switch loci
    const auto kinks = up2.kinks(0.5);
    CHECK(up2.value(0.5, 0.5 * (kinks[0] + kinks[1])) == 1.0);

    const auto ts = verification_times();
    const auto xs = upper_verification_grid(m, up2, ts);
    const ResidualRange rr = residual(m, make_profile(up2), ts, xs);
    CHECK(rr.min_residual >= -1e-6);
}

TEST_CASE("residual vanishes on the equilibria") {
    const Model m = uniform_model();
    CertProfile ones{[](double, double) { return 1.0; },
                     [](double) { return std::vector<double>{}; }};
    CertProfile zeros{[](double, double) { return 0.0; },
                      [](double) { return std::vector<double>{}; }};
    std::vector<double> xs;
    for (double x = -3.0; x <= 3.0; x += 0.05) xs.push_back(x);
    const auto r1 = residual(m, ones, {0.5}, xs);
    CHECK(std::abs(r1.max_residual) <= 1e-12);
    CHECK(std::abs(r1.min_residual) <= 1e-12);
    const auto r0 = residual(m, zeros, {0.5}, xs);
    CHECK(std::abs(r0.max_residual) <= 1e-12);
    CHECK(std::abs(r0.min_residual) <= 1e-12);
}

TEST_CASE("forward_backward_schedule arithmetic") {
    CHECK(forward_backward_schedule(1.2, -0.3, 1.0, 10.0).terminal_position ==
          doctest::Approx(12.0));
    CHECK(forward_backward_schedule(1.2, -0.3, 0.0, 10.0).terminal_position ==
          doctest::Approx(-3.0));
    CHECK(forward_backward_schedule(1.0, -1.0, 0.5, 10.0).terminal_position ==
          doctest::Approx(0.0));
    CHECK(forward_backward_schedule(1.0, -1.0, 0.25, 8.0).switch_time ==
          doctest::Approx(2.0));

    // terminal position sweeps [c2 tau, c1 tau] linearly in kappa
    for (double kappa : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto s = forward_backward_schedule(0.9, -0.9, kappa, 5.0);
        CHECK(s.terminal_position ==
              doctest::Approx(-4.5 + kappa * 9.0).epsilon(1e-14));
    }

    CHECK_THROWS_AS(forward_backward_schedule(-1.0, 1.0, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(forward_backward_schedule(1.0, -1.0, 1.5, 1.0), DomainError);

    // xi2 shift places phase 2 under phase 1 at the switch
    const Model m = uniform_model();
    const double cl = c_of_lambda(m, lambda_stars(m).first);
    const LowerSolutionSpec low = build_lower_solution(m, cl + 0.025, Side::Left, 0.05, 40.0);
    const auto s = forward_backward_schedule(0.88, cl + 0.025, 0.5, 10.0, &low);
    CHECK(s.xi2 == doctest::Approx((0.88 - (cl + 0.025)) * 5.0 +
                                   std::log(low.z0) / low.rho).epsilon(1e-12));
}

TEST_CASE("certificate serialization round trip and tamper detection") {
    const Model m = uniform_model();
    const double cr = c_of_lambda(m, lambda_stars(m).second);
    CertificateSet set;
    set.lower.push_back(build_lower_solution(m, cr - 0.025, Side::Right, 0.05, 40.0));
    set.upper = build_upper_solution(m, 1.0);

    const std::string path = "test_cert_roundtrip.json";
    save_certificates(path, set);
    const CertificateSet loaded = load_certificates(path);
    REQUIRE(loaded.lower.size() == 1);
    REQUIRE(loaded.upper.has_value());
    CHECK(loaded.lower[0].A == set.lower[0].A);
    CHECK(loaded.lower[0].B == set.lower[0].B);
    CHECK(loaded.lower[0].xi == set.lower[0].xi);
    CHECK(loaded.upper->gamma0 == set.upper->gamma0);
    CHECK(check_lower_invariants(loaded.lower[0]).empty());

    // a 10% bump of B breaks H(mu) = H(nu) = 0 against the stored support
    LowerSolutionSpec tampered = loaded.lower[0];
    tampered.B *= 1.1;
    const auto violations = check_lower_invariants(tampered);
    CHECK(!violations.empty());

    std::remove(path.c_str());
}
