#pragma once

#include <functional>
#include <vector>

// Reduced Born-Markov dynamics of the collective atomic amplitude P(t)
// driven by an input envelope F_in(t) under a cooperativity schedule
// C(t), in units gamma = 1:
//
//   dP/dt  = -(1 + C(t)) P - sqrt(2 C(t)) F_in(t)
//   F_out  = F_in + sqrt(2 C(t)) P
//
// Two routes are provided: a fixed-step RK4 initial-value integrator and
// the closed-form quadrature of the integrating-factor solution, which
// serves as the accuracy oracle for the first.
namespace qmem {

using TimeFunction = std::function<double(double)>;

enum class Method { rk4_fixed, closed_form_quadrature };

struct SimulationConfig {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;  // base step; the grid is uniform
    Method method = Method::rk4_fixed;
    double P_initial = 0.0;
    double quad_tol = 1e-10;         // closed-form quadrature tolerance
    double ledger_tolerance = 1e-6;  // acceptance threshold recorded with results
};

struct SimulationResult {
    std::vector<double> times;
    std::vector<double> C;
    std::vector<double> F_in;
    std::vector<double> F_out;
    std::vector<double> P;
    std::vector<double> free_space_loss;  // cumulative 2 int P^2
    std::vector<double> ledger_series;    // conservation residual R(t)
    double ledger_residual = 0.0;         // max |R| over the grid
    double ledger_tolerance = 1e-6;       // copied from the config
    double step = 0.0;                    // realized uniform step
};

// Fixed-step classic RK4. Throws std::invalid_argument when the step
// fails dt <= 0.01/(C_max + 2), and std::runtime_error on negative C.
SimulationResult integrate_ode(const TimeFunction& C, const TimeFunction& F_in,
                               const SimulationConfig& cfg);

// Integrating-factor solution evaluated by nested adaptive quadrature on
// the same grid; the slow, independent route.
SimulationResult closed_form(const TimeFunction& C, const TimeFunction& F_in,
                             const SimulationConfig& cfg);

// Dispatches on cfg.method.
SimulationResult simulate(const TimeFunction& C, const TimeFunction& F_in,
                          const SimulationConfig& cfg);

// Max |R(t)| of the conservation identity
//   R = P^2 + int (F_out^2 - F_in^2) + 2 int P^2 - P(t0)^2,
// recomputed from the sampled series.
double ledger(const SimulationResult& res);
std::vector<double> ledger_series(const SimulationResult& res);

// Simpson integral of an arbitrary sampled series on the result grid.
double series_integral(const SimulationResult& res,
                       const std::vector<double>& values);

}  // namespace qmem
