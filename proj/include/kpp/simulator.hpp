#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kpp/model.hpp"

namespace kpp {

enum class InitKind { Bump, Exponential, Plateau, Table };

struct InitialData {
    InitKind kind = InitKind::Bump;
    // bump: height * cos^2(pi (x-center)/(2 half_width)) on |x-center| < half_width
    double center = 0.0;
    double half_width = 5.0;
    double height = 0.5;
    // exponential: e^{-lambda |x-center|}, tail cut by floating-point underflow
    double lambda = 1.0;
    // plateau: constant level
    double level = 0.1;
    // table: piecewise-linear (x, u), clamped to the end values outside
    std::vector<double> xs, us;
};

struct SimConfig {
    double x_min = -100.0, x_max = 100.0;
    double dx = 0.1;
    double dt = 0.05;
    double t_final = 50.0;
    InitialData init;
    std::vector<double> omegas{0.5};
    int output_every = 1;  // trace records every this many steps
    std::vector<double> snapshot_times;
    double fit_window_fraction = 0.5;
};

enum class ConvMethod { Auto, Direct, Fft };

// Grid realization of u -> k*u - u: kernel sampled on cell offsets and
// renormalized to unit sum. Direct paired summation for stencils up to 512
// cells per side, zero-padded FFT convolution beyond. The paired fixed-order
// sum makes the operator exactly symmetric for symmetric kernels and
// annihilates constants exactly.
class DiscreteOperator {
public:
    DiscreteOperator(const Kernel& k, double dx, std::size_t n,
                     ConvMethod method = ConvMethod::Auto);

    void apply(const std::vector<double>& u, std::vector<double>& out) const;

    std::size_t half_width_cells() const { return m_; }
    double kernel_half_width() const { return static_cast<double>(m_) * dx_; }
    bool uses_fft() const { return fft_; }
    const std::vector<double>& weights() const { return w_; }  // size 2m+1

private:
    std::vector<double> w_;
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    double dx_ = 0;
    bool fft_ = false;
};

DiscreteOperator discretize(const Model& m, const SimConfig& cfg,
                            ConvMethod method = ConvMethod::Auto);

struct SimState {
    double time = 0.0;
    std::vector<double> values;
    double x_min = 0.0;
    double dx = 1.0;
    long clamp_count = 0;

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
};

SimState make_initial_state(const SimConfig& cfg);

// One classical 4-stage Runge-Kutta step. Values are clamped back into [0,1]
// afterwards (count recorded); an overshoot beyond 1e-12 aborts.
void step(SimState& st, const DiscreteOperator& op, const ReactionKPP& f, double dt);

struct FrontTrace {
    std::vector<double> omegas;
    std::vector<double> times;
    // [omega][sample]; NaN encodes "level not reached"
    std::vector<std::vector<double>> x_left, x_right;
};

struct RunResult {
    FrontTrace trace;
    SimState final_state;
    std::vector<SimState> snapshots;  // at the configured snapshot times
};

// Deterministic end-to-end run: identical configs give bit-identical results.
RunResult run(const Model& m, const SimConfig& cfg);

// Outermost crossings of level omega, linearly interpolated; NaN when the
// level is never reached.
std::pair<double, double> front_positions(const SimState& st, double omega);

struct SpeedFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    int n = 0;
    double t_begin = 0.0, t_end = 0.0;
};

// Least-squares front speeds over the trailing window (left fit, right fit).
std::pair<SpeedFit, SpeedFit> estimate_speeds(const FrontTrace& trace,
                                              std::size_t omega_index,
                                              double fit_window_fraction = 0.5);

struct SymmetryReport {
    double max_asymmetry;
    double max_monotone_violation;
};

// Mirror defect about `center` and the largest positive increment on the
// right half. Requires a grid symmetric about center.
SymmetryReport check_symmetry_monotone(const SimState& st, double center);

// Throws ConfigError when the config violates its invariants (stability bound,
// kernel mass inside the domain, exponential-tail truncation rule).
void validate_sim_config(const Model& m, const SimConfig& cfg);

}  // namespace kpp
