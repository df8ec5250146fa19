#include "kpp/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "kpp/case_studies.hpp"
#include "kpp/certificates.hpp"
#include "kpp/csv.hpp"
#include "kpp/errors.hpp"
#include "kpp/simulator.hpp"
#include "kpp/speed.hpp"

namespace fs = std::filesystem;

namespace kpp::cli {
namespace {

constexpr double kResidualTol = 1e-6;

Kernel load_kernel(const IniConfig& cfg) {
    const std::string family = cfg.get_string("kernel", "family");
    if (family == "normal") {
        const double alpha = cfg.get_double("kernel", "alpha");
        const double sigma = cfg.get_double("kernel", "sigma");
        if (!(sigma > 0.0)) throw ConfigError("kernel.sigma must be > 0");
        return Kernel::normal(alpha, sigma);
    }
    if (family == "uniform") {
        const double b = cfg.get_double("kernel", "b");
        const double a = cfg.get_double("kernel", "a");
        if (!(a > 0.0)) throw ConfigError("kernel.a must be > 0");
        if (!(b < 0.0)) throw ConfigError("kernel.b must be < 0");
        return Kernel::uniform(b, a);
    }
    if (family == "asymexp" || family == "asymmetric-exponential") {
        const double tl = cfg.get_double("kernel", "theta_l");
        const double tr = cfg.get_double("kernel", "theta_r");
        if (!(tl > 0.0)) throw ConfigError("kernel.theta_l must be > 0");
        if (!(tr > 0.0)) throw ConfigError("kernel.theta_r must be > 0");
        return Kernel::asymmetric_exponential(tl, tr);
    }
    if (family == "tabulated") {
        const std::string path = cfg.get_string("kernel", "table");
        try {
            return Kernel::tabulated_from_file(path);
        } catch (const ModelError& e) {
            throw ConfigError(std::string("kernel.table: ") + e.what());
        }
    }
    throw ConfigError("kernel.family: unknown family '" + family + "'");
}

ReactionKPP load_reaction(const IniConfig& cfg) {
    const std::string family = cfg.get_string_or("reaction", "family", "logistic");
    if (family == "logistic") {
        const double r = cfg.get_double_or("reaction", "r", 1.0);
        if (!(r > 0.0)) throw ConfigError("reaction.r must be > 0");
        return ReactionKPP::logistic(r);
    }
    throw ConfigError("reaction.family: unknown family '" + family + "' (config models are logistic)");
}

fs::path prepare_outdir(const IniConfig& cfg, const std::string& outdir_flag) {
    const std::string dir =
        !outdir_flag.empty() ? outdir_flag : cfg.get_string_or("output", "dir", ".");
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw ConfigError("output.dir: cannot create '" + dir + "': " + ec.message());
    return p;
}

void print_kv(std::ostream& out, const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
}

int cmd_speeds(const IniConfig& cfg, const fs::path& outdir, std::ostream& out) {
    const Model m = load_model(cfg);
    const double tol = cfg.get_double_or("speeds", "tol_equality", 1e-9);
    const SpeedReport rep = spreading_speeds(m, tol);

    print_kv(out, "kernel", m.kernel.describe());
    print_kv(out, "fprime0", g17(m.reaction.fprime0()));
    print_kv(out, "c_left", g17(rep.c_left));
    print_kv(out, "c_right", g17(rep.c_right));
    print_kv(out, "lambda_left", g17(rep.lambda_left));
    print_kv(out, "lambda_right", g17(rep.lambda_right));
    print_kv(out, "lambda_k", g17(rep.lambda_min));
    print_kv(out, "J", g17(rep.first_moment));
    print_kv(out, "E", g17(rep.asymmetry));
    print_kv(out, "classification", case_label(rep.classification));
    print_kv(out, "selfcheck_left", g17(std::abs(rep.c_left - m.kernel.mgf_prime(rep.lambda_left))));
    print_kv(out, "selfcheck_right",
             g17(std::abs(rep.c_right - m.kernel.mgf_prime(rep.lambda_right))));
    print_kv(out, "iterations_left", std::to_string(rep.left_root.iterations));
    print_kv(out, "iterations_right", std::to_string(rep.right_root.iterations));
    print_kv(out, "bracket_width_left", g17(rep.left_root.bracket_width));
    print_kv(out, "bracket_width_right", g17(rep.right_root.bracket_width));

    std::ofstream csv(outdir / "speeds.csv");
    if (!csv) throw ConfigError("cannot write speeds.csv");
    csv << "c_left,c_right,lambda_left,lambda_right,lambda_k,J,E,classification\n";
    csv << g17(rep.c_left) << ',' << g17(rep.c_right) << ',' << g17(rep.lambda_left) << ','
        << g17(rep.lambda_right) << ',' << g17(rep.lambda_min) << ','
        << g17(rep.first_moment) << ',' << g17(rep.asymmetry) << ','
        << case_label(rep.classification) << "\n";
    return kExitOk;
}

int cmd_casestudy(const IniConfig& cfg, const fs::path& outdir, std::ostream& out) {
    const double r_min = cfg.get_double_or("casestudy", "r_min", -2.0);
    const double r_max = cfg.get_double_or("casestudy", "r_max", 2.0);
    const double r_step = cfg.get_double_or("casestudy", "r_step", 0.1);
    if (!(r_step > 0.0)) throw ConfigError("casestudy.r_step must be > 0");
    {
        std::ofstream csv(outdir / "normal_E.csv");
        if (!csv) throw ConfigError("cannot write normal_E.csv");
        csv << "r,E\n";
        const long n = std::lround((r_max - r_min) / r_step);
        for (long i = 0; i <= n; ++i) {
            const double r = r_min + static_cast<double>(i) * r_step;
            csv << g17(r) << ',' << g17(normal_E(r)) << "\n";
        }
    }

    const double th_min = cfg.get_double_or("casestudy", "theta_min", 1e-2);
    const double th_max = cfg.get_double_or("casestudy", "theta_max", 1e2);
    const long th_points = cfg.get_int_or("casestudy", "theta_points", 50);
    if (!(th_min > 0.0) || !(th_max > th_min))
        throw ConfigError("casestudy.theta_min/theta_max must satisfy 0 < min < max");
    if (th_points < 2) throw ConfigError("casestudy.theta_points must be >= 2");
    {
        std::ofstream csv(outdir / "uniform_z.csv");
        if (!csv) throw ConfigError("cannot write uniform_z.csv");
        csv << "theta,z,q,E\n";
        const double lmin = std::log(th_min), lmax = std::log(th_max);
        for (long i = 0; i < th_points; ++i) {
            const double th =
                std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / (th_points - 1));
            const double z = uniform_z(th);
            const double q = uniform_q(th);
            const double E = th > 1.0 ? q : (th < 1.0 ? -q : 0.0);
            csv << g17(th) << ',' << g17(z) << ',' << g17(q) << ',' << g17(E) << "\n";
        }
    }

    const double f0_min = cfg.get_double_or("casestudy", "f0_min", 0.05);
    const double f0_max = cfg.get_double_or("casestudy", "f0_max", 0.95);
    const double f0_step = cfg.get_double_or("casestudy", "f0_step", 0.05);
    if (!(f0_step > 0.0)) throw ConfigError("casestudy.f0_step must be > 0");
    {
        std::ofstream csv(outdir / "rstar.csv");
        if (!csv) throw ConfigError("cannot write rstar.csv");
        csv << "f0,r_star_normal,theta_star_uniform,r_star_uniform\n";
        const long n = std::lround((f0_max - f0_min) / f0_step);
        for (long i = 0; i <= n; ++i) {
            const double f0 = f0_min + static_cast<double>(i) * f0_step;
            const auto rn = normal_r_star(f0);
            const auto tu = uniform_theta_star(f0);
            csv << g17(f0) << ',' << (rn ? g17(*rn) : "none") << ','
                << (tu ? g17(tu->theta_star) : "none") << ','
                << (tu ? g17(tu->r_star) : "none") << "\n";
        }
    }

    print_kv(out, "normal_E_rows", std::to_string(std::lround((r_max - r_min) / r_step) + 1));
    print_kv(out, "uniform_z_rows", std::to_string(th_points));
    print_kv(out, "rstar_rows", std::to_string(std::lround((f0_max - f0_min) / f0_step) + 1));
    return kExitOk;
}

SimConfig load_sim_config(const IniConfig& cfg) {
    SimConfig sc;
    sc.x_min = cfg.get_double("simulate", "x_min");
    sc.x_max = cfg.get_double("simulate", "x_max");
    sc.dx = cfg.get_double("simulate", "dx");
    sc.dt = cfg.get_double("simulate", "dt");
    sc.t_final = cfg.get_double("simulate", "t_final");
    sc.omegas = cfg.get_double_list_or("simulate", "omega", {0.5});
    if (cfg.get_string_or("simulate", "omega", "x") == "none") sc.omegas.clear();
    sc.output_every = static_cast<int>(cfg.get_int_or("simulate", "output_every", 1));
    sc.snapshot_times = cfg.get_double_list_or("simulate", "snapshot_times", {});
    sc.fit_window_fraction = cfg.get_double_or("simulate", "fit_window", 0.5);

    const std::string init = cfg.get_string_or("simulate", "init", "bump");
    if (init == "bump") {
        sc.init.kind = InitKind::Bump;
        sc.init.center = cfg.get_double_or("simulate", "bump_center", 0.0);
        sc.init.half_width = cfg.get_double_or("simulate", "bump_half_width", 5.0);
        sc.init.height = cfg.get_double_or("simulate", "bump_height", 0.5);
    } else if (init == "exponential") {
        sc.init.kind = InitKind::Exponential;
        sc.init.center = cfg.get_double_or("simulate", "exp_center", 0.0);
        sc.init.lambda = cfg.get_double("simulate", "exp_lambda");
    } else if (init == "plateau") {
        sc.init.kind = InitKind::Plateau;
        sc.init.level = cfg.get_double("simulate", "plateau_level");
    } else if (init == "table") {
        sc.init.kind = InitKind::Table;
        const std::string path = cfg.get_string("simulate", "table");
        std::ifstream in(path);
        if (!in) throw ConfigError("simulate.table: cannot open " + path);
        double x, u;
        while (in >> x >> u) {
            sc.init.xs.push_back(x);
            sc.init.us.push_back(u);
        }
    } else {
        throw ConfigError("simulate.init: unknown initial datum '" + init + "'");
    }
    return sc;
}

int cmd_simulate(const IniConfig& cfg, const fs::path& outdir, std::ostream& out) {
    const Model m = load_model(cfg);
    const SimConfig sc = load_sim_config(cfg);

    const RunResult res = run(m, sc);
    write_trace_csv((outdir / "trace.csv").string(), res.trace);
    for (std::size_t i = 0; i < res.snapshots.size(); ++i)
        write_snapshot_csv((outdir / ("snapshot_" + std::to_string(i) + ".csv")).string(),
                           res.snapshots[i]);

    const SpeedReport rep = spreading_speeds(m);
    print_kv(out, "analytic_c_left", g17(rep.c_left));
    print_kv(out, "analytic_c_right", g17(rep.c_right));
    print_kv(out, "classification", case_label(rep.classification));

    if (sc.init.kind == InitKind::Exponential && m.kernel.is_symmetric()) {
        const double claw = exp_decay_speed(m, sc.init.lambda);
        print_kv(out, "analytic_exp_decay_speed", g17(claw));
    }

    if (!sc.omegas.empty()) {
        const auto [fl, fr] = estimate_speeds(res.trace, 0, sc.fit_window_fraction);
        print_kv(out, "fitted_c_left", g17(fl.slope));
        print_kv(out, "fitted_c_left_stderr", g17(fl.stderr_slope));
        print_kv(out, "fitted_c_right", g17(fr.slope));
        print_kv(out, "fitted_c_right_stderr", g17(fr.stderr_slope));
        print_kv(out, "rel_err_right", g17(std::abs(fr.slope - rep.c_right) /
                                           std::abs(rep.c_right)));
        print_kv(out, "rel_err_left",
                 g17(std::abs(fl.slope - rep.c_left) / std::abs(rep.c_left)));
    }
    const std::size_t mid = res.final_state.values.size() / 2;
    print_kv(out, "u_center_final", g17(res.final_state.values[mid]));
    print_kv(out, "clamp_count", std::to_string(res.final_state.clamp_count));
    return kExitOk;
}

int verify_certificates(const Model& m, const CertificateSet& set, std::ostream& out) {
    bool ok = true;
    for (const auto& low : set.lower) {
        for (const auto& msg : check_lower_invariants(low)) {
            out << "lower[" << side_label(low.side) << "] invariant violation: " << msg
                << "\n";
            ok = false;
        }
        const auto ts = verification_times();
        const auto xs = lower_verification_grid(m, low, ts);
        const ResidualRange rr = residual(m, make_profile(low), ts, xs);
        out << "lower[" << side_label(low.side) << "] max_residual = " << g17(rr.max_residual)
            << " (tol " << g17(kResidualTol) << ") "
            << (rr.max_residual <= kResidualTol ? "PASS" : "FAIL") << "\n";
        if (!(rr.max_residual <= kResidualTol)) ok = false;
    }
    if (set.upper) {
        const auto& up = *set.upper;
        if (!(up.gamma0 >= 1.0)) {
            out << "upper invariant violation: gamma0 < 1\n";
            ok = false;
        }
        // the exponential branches must ride the dispersion relation
        const double gl = G_eta(m, 0.0, up.c_left, up.lambda_left);
        const double gr = G_eta(m, 0.0, up.c_right, up.lambda_right);
        if (std::abs(gl) > 1e-6 || std::abs(gr) > 1e-6) {
            out << "upper invariant violation: (c, lambda) pairs off the dispersion "
                   "relation\n";
            ok = false;
        }
        const auto ts = verification_times();
        const auto xs = upper_verification_grid(m, up, ts);
        const ResidualRange rr = residual(m, make_profile(up), ts, xs);
        out << "upper min_residual = " << g17(rr.min_residual) << " (tol -"
            << g17(kResidualTol) << ") "
            << (rr.min_residual >= -kResidualTol ? "PASS" : "FAIL") << "\n";
        if (!(rr.min_residual >= -kResidualTol)) ok = false;
    }
    return ok ? kExitOk : kExitVerification;
}

int cmd_certify(const IniConfig& cfg, const fs::path& outdir, std::ostream& out) {
    const Model m = load_model(cfg);
    const double eps = cfg.get_double_or("certify", "epsilon", 0.05);
    const double offset = cfg.get_double_or("certify", "speed_offset", 0.5 * eps);
    const double r = cfg.get_double_or("certify", "r", 40.0);
    const double gamma = cfg.get_double_or("certify", "gamma", 1.0);
    const std::string side = cfg.get_string_or("certify", "side", "both");
    if (side != "both" && side != "right" && side != "left")
        throw ConfigError("certify.side must be both|right|left");

    const SpeedReport rep = spreading_speeds(m);
    CertificateSet set;
    std::optional<double> eta_margin;
    if (side == "both") {
        const double e1 = eta_for_epsilon(m, eps, Side::Right);
        const double e2 = eta_for_epsilon(m, eps, Side::Left);
        eta_margin = std::min(e1, e2);
    }
    if (side != "left") {
        const double c1 = rep.c_right - offset;
        set.lower.push_back(build_lower_solution(m, c1, Side::Right, eps, r, eta_margin));
        out << "built lower[right]: c = " << g17(c1) << ", hmax = "
            << g17(set.lower.back().hmax) << ", support width = "
            << g17(set.lower.back().support(0)[1] - set.lower.back().support(0)[0]) << "\n";
    }
    if (side != "right") {
        const double c2 = rep.c_left + offset;
        set.lower.push_back(build_lower_solution(m, c2, Side::Left, eps, r, eta_margin));
        out << "built lower[left]: c = " << g17(c2) << ", hmax = "
            << g17(set.lower.back().hmax) << ", support width = "
            << g17(set.lower.back().support(0)[1] - set.lower.back().support(0)[0]) << "\n";
    }
    set.upper = build_upper_solution(m, gamma);
    out << "built upper: gamma0 = " << g17(set.upper->gamma0) << "\n";

    const std::string certpath = (outdir / "certificates.json").string();
    save_certificates(certpath, set);
    out << "certificates written to " << certpath << "\n";

    const int code = verify_certificates(m, set, out);
    if (code != kExitOk) throw VerificationError("certify: residual verification failed");
    return kExitOk;
}

int cmd_verify(const IniConfig& cfg, const fs::path&, std::ostream& out) {
    const Model m = load_model(cfg);
    const std::string path = cfg.get_string("verify", "certificate");
    const CertificateSet set = load_certificates(path);
    const int code = verify_certificates(m, set, out);
    if (code != kExitOk) throw VerificationError("verify: certificate checks failed");
    return kExitOk;
}

}  // namespace

Model load_model(const IniConfig& cfg) {
    Kernel k = load_kernel(cfg);
    const auto violations = validate_kernel(k);
    if (!violations.empty()) {
        std::string msg = "kernel fails validation:";
        for (const auto& v : violations) msg += " (" + v.code + ") " + v.message + ";";
        throw ConfigError(msg);
    }
    return Model{std::move(k), load_reaction(cfg)};
}

int execute_config(IniConfig cfg, const std::string& outdir_flag, std::ostream& out,
                   std::ostream& err) {
    try {
        const std::string name = cfg.get_string("command", "name");
        const fs::path outdir = prepare_outdir(cfg, outdir_flag);
        if (name == "speeds") return cmd_speeds(cfg, outdir, out);
        if (name == "casestudy") return cmd_casestudy(cfg, outdir, out);
        if (name == "simulate") return cmd_simulate(cfg, outdir, out);
        if (name == "certify") return cmd_certify(cfg, outdir, out);
        if (name == "verify") return cmd_verify(cfg, outdir, out);
        throw ConfigError("command.name: unknown command '" + name + "'");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const VerificationError& e) {
        err << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int execute(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& outdir_flag, std::ostream& out, std::ostream& err) {
    IniConfig cfg;
    try {
        cfg = IniConfig::parse_file(config_path);
        for (const auto& o : overrides) cfg.apply_override(o);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return execute_config(std::move(cfg), outdir_flag, out, err);
}

}  // namespace kpp::cli
