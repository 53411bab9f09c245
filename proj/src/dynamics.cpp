#include "qmem/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmem/numerics.hpp"

namespace qmem {

namespace {

struct Grid {
    std::size_t n_steps = 0;
    double h = 0.0;
    std::vector<double> t;        // n_steps + 1 nodes
    std::vector<double> c_node;   // C at nodes
    std::vector<double> c_half;   // C at midpoints
    std::vector<double> f_node;   // F_in at nodes
    std::vector<double> f_half;   // F_in at midpoints
};

Grid sample_grid(const TimeFunction& C, const TimeFunction& F_in,
                 const SimulationConfig& cfg) {
    if (!(cfg.t_end > cfg.t_start))
        throw std::invalid_argument("dynamics: t_start must precede t_end");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dynamics: dt must be > 0");
    Grid g;
    const double span = cfg.t_end - cfg.t_start;
    g.n_steps = static_cast<std::size_t>(std::llround(span / cfg.dt));
    if (g.n_steps < 1) g.n_steps = 1;
    g.h = span / static_cast<double>(g.n_steps);
    g.t.resize(g.n_steps + 1);
    g.c_node.resize(g.n_steps + 1);
    g.f_node.resize(g.n_steps + 1);
    g.c_half.resize(g.n_steps);
    g.f_half.resize(g.n_steps);
    double c_max = 0.0;
    for (std::size_t i = 0; i <= g.n_steps; ++i) {
        const double t = cfg.t_start + g.h * static_cast<double>(i);
        g.t[i] = t;
        g.c_node[i] = C(t);
        g.f_node[i] = F_in(t);
        if (g.c_node[i] < 0.0)
            throw std::runtime_error("dynamics: negative C encountered");
        c_max = std::max(c_max, g.c_node[i]);
        if (i < g.n_steps) {
            g.c_half[i] = C(t + 0.5 * g.h);
            g.f_half[i] = F_in(t + 0.5 * g.h);
            if (g.c_half[i] < 0.0)
                throw std::runtime_error("dynamics: negative C encountered");
            c_max = std::max(c_max, g.c_half[i]);
        }
    }
    if (g.h > 0.01 / (c_max + 2.0))
        throw std::invalid_argument(
            "dynamics: dt exceeds 0.01/(C_max + 2); reduce the step");
    return g;
}

SimulationResult assemble(const Grid& g, std::vector<double> P,
                          const SimulationConfig& cfg) {
    SimulationResult res;
    res.times = g.t;
    res.C = g.c_node;
    res.F_in = g.f_node;
    res.P = std::move(P);
    res.step = g.h;
    res.ledger_tolerance = cfg.ledger_tolerance;
    res.F_out.resize(res.times.size());
    std::vector<double> p_sq(res.times.size());
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        res.F_out[i] = res.F_in[i] + std::sqrt(2.0 * res.C[i]) * res.P[i];
        p_sq[i] = 2.0 * res.P[i] * res.P[i];
    }
    res.free_space_loss = cumulative_simpson(g.h, p_sq);
    res.ledger_series = ledger_series(res);
    res.ledger_residual = 0.0;
    for (double r : res.ledger_series)
        res.ledger_residual = std::max(res.ledger_residual, std::abs(r));
    return res;
}

}  // namespace

SimulationResult integrate_ode(const TimeFunction& C, const TimeFunction& F_in,
                               const SimulationConfig& cfg) {
    const Grid g = sample_grid(C, F_in, cfg);
    std::vector<double> P(g.n_steps + 1);
    P[0] = cfg.P_initial;
    auto rhs = [](double c, double f, double p) {
        return -(1.0 + c) * p - std::sqrt(2.0 * c) * f;
    };
    for (std::size_t i = 0; i < g.n_steps; ++i) {
        const double h = g.h;
        const double p = P[i];
        const double k1 = rhs(g.c_node[i], g.f_node[i], p);
        const double k2 = rhs(g.c_half[i], g.f_half[i], p + 0.5 * h * k1);
        const double k3 = rhs(g.c_half[i], g.f_half[i], p + 0.5 * h * k2);
        const double k4 = rhs(g.c_node[i + 1], g.f_node[i + 1], p + h * k3);
        P[i + 1] = p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return assemble(g, std::move(P), cfg);
}

SimulationResult closed_form(const TimeFunction& C, const TimeFunction& F_in,
                             const SimulationConfig& cfg) {
    const Grid g = sample_grid(C, F_in, cfg);
    std::vector<double> P(g.n_steps + 1);
    P[0] = cfg.P_initial;
    auto c_plus_one = [&C](double t) { return C(t) + 1.0; };
    const double tol_exp = std::min(1e-13, cfg.quad_tol);
    const double tol_step =
        cfg.quad_tol * g.h / (cfg.t_end - cfg.t_start);
    // Step-by-step form of the integrating-factor solution: splitting the
    // driving integral at every node keeps all exponents small.
    //   P(b) = e^{-E(a,b)} P(a) - int_a^b sqrt(2C) F_in e^{-E(tau,b)} dtau
    for (std::size_t i = 0; i < g.n_steps; ++i) {
        const double a = g.t[i];
        const double b = g.t[i + 1];
        const double e_step = adaptive_simpson(c_plus_one, a, b, tol_exp);
        auto damped_drive = [&](double tau) {
            const double c = C(tau);
            const double e_tail = adaptive_simpson(c_plus_one, tau, b, tol_exp);
            return std::sqrt(2.0 * c) * F_in(tau) * std::exp(-e_tail);
        };
        const double driven = adaptive_simpson(damped_drive, a, b, tol_step);
        P[i + 1] = std::exp(-e_step) * P[i] - driven;
    }
    return assemble(g, std::move(P), cfg);
}

SimulationResult simulate(const TimeFunction& C, const TimeFunction& F_in,
                          const SimulationConfig& cfg) {
    return cfg.method == Method::closed_form_quadrature
               ? closed_form(C, F_in, cfg)
               : integrate_ode(C, F_in, cfg);
}

std::vector<double> ledger_series(const SimulationResult& res) {
    const std::size_t n = res.times.size();
    std::vector<double> flux(n), loss(n);
    for (std::size_t i = 0; i < n; ++i) {
        flux[i] = res.F_out[i] * res.F_out[i] - res.F_in[i] * res.F_in[i];
        loss[i] = 2.0 * res.P[i] * res.P[i];
    }
    const std::vector<double> flux_cum = cumulative_simpson(res.step, flux);
    const std::vector<double> loss_cum = cumulative_simpson(res.step, loss);
    std::vector<double> r(n);
    const double p0_sq = res.P.empty() ? 0.0 : res.P.front() * res.P.front();
    for (std::size_t i = 0; i < n; ++i)
        r[i] = res.P[i] * res.P[i] + flux_cum[i] + loss_cum[i] - p0_sq;
    return r;
}

double ledger(const SimulationResult& res) {
    double worst = 0.0;
    for (double r : ledger_series(res)) worst = std::max(worst, std::abs(r));
    return worst;
}

double series_integral(const SimulationResult& res,
                       const std::vector<double>& values) {
    if (values.size() != res.times.size())
        throw std::invalid_argument("series_integral: size mismatch");
    return simpson_total(res.step, values);
}

}  // namespace qmem
