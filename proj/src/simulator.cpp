#include "kpp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpp/convolution.hpp"
#include "kpp/errors.hpp"

namespace kpp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kDirectStencilMax = 512;

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
    if (i < 0) return 0;
    if (i >= static_cast<std::ptrdiff_t>(n)) return n - 1;
    return static_cast<std::size_t>(i);
}

}  // namespace

DiscreteOperator::DiscreteOperator(const Kernel& k, double dx, std::size_t n,
                                   ConvMethod method) {
    if (!(dx > 0.0) || n < 2) throw ConfigError("discretize: need dx > 0 and n >= 2");
    dx_ = dx;
    n_ = n;

    const auto [lo, hi] = k.support_bound(1e-12);
    m_ = static_cast<std::size_t>(std::ceil(std::max(-lo, hi) / dx - 1e-12));
    if (m_ < 1) m_ = 1;
    if (m_ > n - 1)
        throw SimulationError(
            "discretize: kernel mass beyond the representable offset range exceeds 1e-12 "
            "(domain too small for this kernel)");

    w_.assign(2 * m_ + 1, 0.0);
    for (std::size_t j = 0; j <= 2 * m_; ++j) {
        const double off = (static_cast<double>(j) - static_cast<double>(m_)) * dx;
        w_[j] = k.density(off) * dx;
    }
    // paired fixed-order sum, then renormalize to unit mass
    double s = w_[m_];
    for (std::size_t j = 1; j <= m_; ++j) s += w_[m_ - j] + w_[m_ + j];
    if (!(s > 0.0)) throw SimulationError("discretize: zero kernel mass on the grid");
    for (double& w : w_) w /= s;

    fft_ = method == ConvMethod::Auto ? m_ > kDirectStencilMax
                                      : method == ConvMethod::Fft;
}

void DiscreteOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const std::size_t n = u.size();
    out.resize(n);
    if (!fft_) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ui = u[i];
            double acc = 0.0;
            for (std::size_t j = 1; j <= m_; ++j) {
                const double um = u[clamp_index(static_cast<std::ptrdiff_t>(i) -
                                                    static_cast<std::ptrdiff_t>(j),
                                                n)];
                const double up = u[clamp_index(static_cast<std::ptrdiff_t>(i) +
                                                    static_cast<std::ptrdiff_t>(j),
                                                n)];
                acc += w_[m_ + j] * (um - ui) + w_[m_ - j] * (up - ui);
            }
            out[i] = acc;
        }
        return;
    }

    // clamp-extended array, full linear convolution, central slice
    std::vector<double> ext(n + 2 * m_);
    std::fill(ext.begin(), ext.begin() + m_, u.front());
    std::copy(u.begin(), u.end(), ext.begin() + m_);
    std::fill(ext.begin() + m_ + n, ext.end(), u.back());
    const std::vector<double> c = linear_convolve_fft(ext, w_);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i + 2 * m_] - u[i];
}

DiscreteOperator discretize(const Model& m, const SimConfig& cfg, ConvMethod method) {
    const std::size_t n =
        static_cast<std::size_t>(std::llround((cfg.x_max - cfg.x_min) / cfg.dx)) + 1;
    return DiscreteOperator(m.kernel, cfg.dx, n, method);
}

void validate_sim_config(const Model& m, const SimConfig& cfg) {
    if (!(cfg.dx > 0.0)) throw ConfigError("simulate.dx must be > 0");
    if (!(cfg.dt > 0.0)) throw ConfigError("simulate.dt must be > 0");
    if (!(cfg.t_final > 0.0)) throw ConfigError("simulate.t_final must be > 0");
    if (!(cfg.x_min < cfg.x_max)) throw ConfigError("simulate.x_min must be < simulate.x_max");
    const double cells = (cfg.x_max - cfg.x_min) / cfg.dx;
    if (std::abs(cells - std::llround(cells)) > 1e-8)
        throw ConfigError("simulate: (x_max - x_min) must be an integer multiple of dx");
    if (cfg.output_every < 1) throw ConfigError("simulate.output_every must be >= 1");
    for (double w : cfg.omegas)
        if (!(w > 0.0 && w < 1.0)) throw ConfigError("simulate.omega values must lie in (0,1)");

    const double lf = m.reaction.lipschitz_bound();
    if (cfg.dt > 0.5 / (1.0 + lf))
        throw ConfigError("simulate.dt violates the stability bound dt <= 0.5/(1+L_f)");

    const double width = cfg.x_max - cfg.x_min;
    const auto [lo, hi] = m.kernel.support_bound(1e-12);
    if (lo < -width || hi > width)
        throw ConfigError("simulate: kernel mass outside +-(x_max - x_min) exceeds 1e-12");

    if (cfg.init.kind == InitKind::Exponential) {
        if (!(cfg.init.lambda > 0.0)) throw ConfigError("simulate.exp_lambda must be > 0");
        // tail truncated where e^{-lambda x} underflows; that point must lie
        // beyond any front excursion the domain can hold
        const double x_trunc =
            -std::log(std::numeric_limits<double>::denorm_min()) / cfg.init.lambda;
        if (x_trunc < 0.5 * width)
            throw ConfigError(
                "simulate: exponential tail truncates inside the domain "
                "(decay rate too large for this domain)");
    }
    if (cfg.init.kind == InitKind::Table) {
        if (cfg.init.xs.size() < 2 || cfg.init.xs.size() != cfg.init.us.size())
            throw ConfigError("simulate: initial table needs >= 2 (x, u) pairs");
        for (std::size_t i = 0; i + 1 < cfg.init.xs.size(); ++i)
            if (!(cfg.init.xs[i] < cfg.init.xs[i + 1]))
                throw ConfigError("simulate: initial table x must be strictly increasing");
        for (double u : cfg.init.us)
            if (!(u >= 0.0 && u <= 1.0))
                throw ConfigError("simulate: initial table values must lie in [0,1]");
    }
    if (cfg.init.kind == InitKind::Bump) {
        if (!(cfg.init.half_width > 0.0)) throw ConfigError("simulate.bump_half_width must be > 0");
        if (!(cfg.init.height > 0.0 && cfg.init.height <= 1.0))
            throw ConfigError("simulate.bump_height must lie in (0,1]");
    }
    if (cfg.init.kind == InitKind::Plateau) {
        if (!(cfg.init.level > 0.0 && cfg.init.level <= 1.0))
            throw ConfigError("simulate.plateau_level must lie in (0,1]");
    }
}

SimState make_initial_state(const SimConfig& cfg) {
    const std::size_t n =
        static_cast<std::size_t>(std::llround((cfg.x_max - cfg.x_min) / cfg.dx)) + 1;
    SimState st;
    st.x_min = cfg.x_min;
    st.dx = cfg.dx;
    st.values.assign(n, 0.0);

    const InitialData& in = cfg.init;
    // exact mirrored offsets when the center sits on the grid, so symmetric
    // data are bitwise symmetric
    const double ic_real = (in.center - cfg.x_min) / cfg.dx;
    const bool on_grid = std::abs(ic_real - std::llround(ic_real)) < 1e-9;
    const std::ptrdiff_t ic = std::llround(ic_real);

    for (std::size_t i = 0; i < n; ++i) {
        const double d = on_grid
                             ? (static_cast<double>(static_cast<std::ptrdiff_t>(i) - ic)) * cfg.dx
                             : st.x(i) - in.center;
        const double ad = std::abs(d);
        double u = 0.0;
        switch (in.kind) {
            case InitKind::Bump: {
                if (ad < in.half_width) {
                    const double cphase = std::cos(M_PI * ad / (2.0 * in.half_width));
                    u = in.height * cphase * cphase;
                }
                break;
            }
            case InitKind::Exponential:
                u = std::exp(-in.lambda * ad);
                break;
            case InitKind::Plateau:
                u = in.level;
                break;
            case InitKind::Table: {
                const double x = st.x(i);
                const auto& xs = in.xs;
                const auto& us = in.us;
                if (x <= xs.front())
                    u = us.front();
                else if (x >= xs.back())
                    u = us.back();
                else {
                    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
                    const std::size_t k = static_cast<std::size_t>(it - xs.begin()) - 1;
                    const double w = (x - xs[k]) / (xs[k + 1] - xs[k]);
                    u = us[k] + w * (us[k + 1] - us[k]);
                }
                break;
            }
        }
        st.values[i] = std::clamp(u, 0.0, 1.0);
    }
    return st;
}

namespace {

struct Rk4Buffers {
    std::vector<double> k1, k2, k3, k4, tmp;
};

void rk4_step(SimState& st, const DiscreteOperator& op, const ReactionKPP& f, double dt,
              Rk4Buffers& b) {
    auto& u = st.values;
    const std::size_t n = u.size();

    auto rhs = [&](const std::vector<double>& v, std::vector<double>& out) {
        op.apply(v, out);
        for (std::size_t i = 0; i < n; ++i) out[i] += f(std::clamp(v[i], 0.0, 1.0));
    };

    b.tmp.resize(n);
    rhs(u, b.k1);
    for (std::size_t i = 0; i < n; ++i) b.tmp[i] = u[i] + 0.5 * dt * b.k1[i];
    rhs(b.tmp, b.k2);
    for (std::size_t i = 0; i < n; ++i) b.tmp[i] = u[i] + 0.5 * dt * b.k2[i];
    rhs(b.tmp, b.k3);
    for (std::size_t i = 0; i < n; ++i) b.tmp[i] = u[i] + dt * b.k3[i];
    rhs(b.tmp, b.k4);

    const double w = dt / 6.0;
    double over = 0.0;
    long clamps = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = u[i] + w * ((b.k1[i] + 2.0 * b.k2[i]) + (2.0 * b.k3[i] + b.k4[i]));
        if (v < 0.0) {
            over = std::max(over, -v);
            v = 0.0;
            ++clamps;
        } else if (v > 1.0) {
            over = std::max(over, v - 1.0);
            v = 1.0;
            ++clamps;
        }
        u[i] = v;
    }
    if (over > 1e-12)
        throw SimulationError("step: solution left [0,1] by " + std::to_string(over) +
                              " (instability, aborting)");
    st.clamp_count += clamps;
    st.time += dt;
}

}  // namespace

void step(SimState& st, const DiscreteOperator& op, const ReactionKPP& f, double dt) {
    Rk4Buffers b;
    rk4_step(st, op, f, dt, b);
}

std::pair<double, double> front_positions(const SimState& st, double omega) {
    if (!(omega > 0.0 && omega < 1.0))
        throw DomainError("front_positions: omega must lie in (0,1)");
    const auto& u = st.values;
    const std::size_t n = u.size();

    std::ptrdiff_t first = -1, last = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] >= omega) {
            if (first < 0) first = static_cast<std::ptrdiff_t>(i);
            last = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (first < 0) return {kNan, kNan};

    double xl, xr;
    if (first == 0) {
        xl = st.x(0);
    } else {
        const double u0 = u[first - 1], u1 = u[first];
        xl = st.x(first - 1) + st.dx * (omega - u0) / (u1 - u0);
    }
    if (last == static_cast<std::ptrdiff_t>(n) - 1) {
        xr = st.x(n - 1);
    } else {
        const double u0 = u[last], u1 = u[last + 1];
        xr = st.x(last) + st.dx * (omega - u0) / (u1 - u0);
    }
    return {xl, xr};
}

RunResult run(const Model& m, const SimConfig& cfg) {
    validate_sim_config(m, cfg);
    const DiscreteOperator op = discretize(m, cfg);
    RunResult res;
    SimState st = make_initial_state(cfg);

    res.trace.omegas = cfg.omegas;
    res.trace.x_left.assign(cfg.omegas.size(), {});
    res.trace.x_right.assign(cfg.omegas.size(), {});

    const double margin = 10.0 * op.kernel_half_width();
    auto record = [&]() {
        res.trace.times.push_back(st.time);
        for (std::size_t k = 0; k < cfg.omegas.size(); ++k) {
            const auto [xl, xr] = front_positions(st, cfg.omegas[k]);
            res.trace.x_left[k].push_back(xl);
            res.trace.x_right[k].push_back(xr);
            if (std::isfinite(xl) && xl < cfg.x_min + margin)
                throw SimulationError("run: left front within 10 kernel half-widths of the "
                                      "boundary at t = " + std::to_string(st.time));
            if (std::isfinite(xr) && xr > cfg.x_max - margin)
                throw SimulationError("run: right front within 10 kernel half-widths of the "
                                      "boundary at t = " + std::to_string(st.time));
        }
    };

    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    auto take_snapshots = [&]() {
        while (next_snap < snaps.size() && st.time >= snaps[next_snap] - 0.5 * cfg.dt) {
            res.snapshots.push_back(st);
            ++next_snap;
        }
    };

    record();
    take_snapshots();
    const long nsteps = std::lround(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    Rk4Buffers buf;
    for (long s = 1; s <= nsteps; ++s) {
        rk4_step(st, op, m.reaction, cfg.dt, buf);
        if (s % cfg.output_every == 0 || s == nsteps) record();
        take_snapshots();
    }
    res.final_state = std::move(st);
    return res;
}

std::pair<SpeedFit, SpeedFit> estimate_speeds(const FrontTrace& trace,
                                              std::size_t omega_index,
                                              double fit_window_fraction) {
    if (omega_index >= trace.omegas.size())
        throw DomainError("estimate_speeds: omega index out of range");
    if (trace.times.size() < 2)
        throw SimulationError("estimate_speeds: trace has fewer than 2 samples");
    const double t0 = trace.times.front(), t1 = trace.times.back();
    const double cut = t1 - fit_window_fraction * (t1 - t0);

    auto fit = [&](const std::vector<double>& xs) {
        SpeedFit f;
        double st = 0, sx = 0;
        std::vector<double> ts, vs;
        for (std::size_t i = 0; i < trace.times.size(); ++i) {
            if (trace.times[i] < cut || !std::isfinite(xs[i])) continue;
            ts.push_back(trace.times[i]);
            vs.push_back(xs[i]);
            st += trace.times[i];
            sx += xs[i];
        }
        const int n = static_cast<int>(ts.size());
        if (n < 10)
            throw SimulationError("estimate_speeds: fewer than 10 samples in the fit window");
        const double tbar = st / n, xbar = sx / n;
        double sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            sxx += (ts[i] - tbar) * (ts[i] - tbar);
            sxy += (ts[i] - tbar) * (vs[i] - xbar);
        }
        f.slope = sxy / sxx;
        double ssr = 0;
        for (int i = 0; i < n; ++i) {
            const double e = vs[i] - xbar - f.slope * (ts[i] - tbar);
            ssr += e * e;
        }
        f.stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
        f.n = n;
        f.t_begin = ts.front();
        f.t_end = ts.back();
        return f;
    };

    return {fit(trace.x_left[omega_index]), fit(trace.x_right[omega_index])};
}

SymmetryReport check_symmetry_monotone(const SimState& st, double center) {
    const std::size_t n = st.values.size();
    const double ic_real = (center - st.x_min) / st.dx;
    const std::ptrdiff_t ic = std::llround(ic_real);
    if (std::abs(ic_real - static_cast<double>(ic)) > 1e-9)
        throw DomainError("check_symmetry_monotone: center must sit on the grid");
    if (ic < 0 || ic >= static_cast<std::ptrdiff_t>(n))
        throw DomainError("check_symmetry_monotone: center outside the grid");
    if (2 * ic != static_cast<std::ptrdiff_t>(n) - 1)
        throw DomainError("check_symmetry_monotone: grid not symmetric about center");

    SymmetryReport rep{0.0, 0.0};
    for (std::ptrdiff_t i = 0; i <= ic; ++i) {
        const std::ptrdiff_t jm = 2 * ic - i;
        rep.max_asymmetry =
            std::max(rep.max_asymmetry, std::abs(st.values[i] - st.values[jm]));
    }
    for (std::size_t i = static_cast<std::size_t>(ic); i + 1 < n; ++i)
        rep.max_monotone_violation =
            std::max(rep.max_monotone_violation, st.values[i + 1] - st.values[i]);
    rep.max_monotone_violation = std::max(rep.max_monotone_violation, 0.0);
    return rep;
}

}  // namespace kpp
