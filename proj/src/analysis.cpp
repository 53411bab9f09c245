#include "qmem/analysis.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "qmem/constants.hpp"
#include "qmem/numerics.hpp"

namespace qmem {

namespace {

Asymptotics make_asymptotics(double Cm, double T) {
    Asymptotics a;
    a.valid = Cm > 2.0;
    if (!a.valid) return a;
    const double l = std::log(0.5 * Cm);
    a.N_eq23 = (1.0 - 1.0 / (Cm * Cm)) * std::exp(-2.0 * T);
    a.N_trunc_max_eq28 = 1.0 - (l + 1.0) / Cm;
    a.two_T_max_eq29 = l / Cm;
    a.efficiency_eq30 = 1.0 - 2.0 / Cm - 2.0 * l / Cm;
    return a;
}

// Overlap of exp(-k|tau-T|) and exp(-k|tau-T-d|) over [0, 2T], d >= 0.
// Three exponential segments (two when the shifted peak leaves the
// window); each integrates in closed form.
double overlap_integral(double Cm, double T, double d) {
    const double k = Cm + 1.0;
    const double front = std::exp(-k * d) * (-std::expm1(-2.0 * k * T)) / (2.0 * k);
    if (d <= T) {
        const double plateau = d * std::exp(-k * d);
        const double back =
            -std::exp(-k * d) * std::expm1(-2.0 * k * (T - d)) / (2.0 * k);
        return front + plateau + back;
    }
    return front + T * std::exp(-k * d);
}

}  // namespace

EfficiencyReport efficiency(double Cm, std::optional<double> T,
                            EfficiencyMode mode) {
    if (!(Cm > 0.0)) throw std::invalid_argument("efficiency: Cm must be > 0");
    EfficiencyReport rep;
    rep.Cm = Cm;
    double t_peak;
    if (T) {
        t_peak = *T;
    } else {
        t_peak = optimal_window(Cm).T_max;
    }
    (void)mode;  // both closed forms are always reported
    rep.T = t_peak;
    rep.N_exact = norm(Cm, t_peak);
    rep.N_trunc_exact = norm_truncated(Cm, t_peak);
    rep.efficiency_ideal = rep.N_exact * rep.N_exact;
    rep.efficiency_windowed = rep.N_trunc_exact * rep.N_trunc_exact;
    rep.asymptotics = make_asymptotics(Cm, t_peak);
    rep.bound_reference = (Cm / (1.0 + Cm)) * (Cm / (1.0 + Cm));
    return rep;
}

FullCycleResult full_cycle(double Cm, double T, double dt,
                           double jitter_delta, Method method) {
    const EmissionSchedule emission = build_emission(Cm, T);
    const EmissionSchedule storage = time_reverse(emission);
    const TargetPulse input = storage_input(emission);

    auto c_storage = [&storage](double t) { return C_of_t(storage, t); };
    auto f_input = [&input, jitter_delta](double t) {
        return envelope(input, t - jitter_delta);
    };

    SimulationConfig store_cfg;
    store_cfg.t_start = -2.0 * T;
    store_cfg.t_end = 0.0;
    store_cfg.dt = dt;
    store_cfg.P_initial = 0.0;
    store_cfg.method = method;

    FullCycleResult out;
    out.storage = simulate(c_storage, f_input, store_cfg);
    out.P0 = out.storage.P.back();

    auto c_emission = [&emission](double t) { return C_of_t(emission, t); };
    auto zero = [](double) { return 0.0; };
    SimulationConfig retr_cfg;
    retr_cfg.t_start = 0.0;
    retr_cfg.t_end = 2.0 * T;
    retr_cfg.dt = dt;
    retr_cfg.P_initial = out.P0;
    retr_cfg.method = method;
    out.retrieval = simulate(c_emission, zero, retr_cfg);

    auto square = [](const std::vector<double>& v) {
        std::vector<double> s(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] * v[i];
        return s;
    };
    out.energy_in = series_integral(out.storage, square(out.storage.F_in));
    out.leaked_storage = series_integral(out.storage, square(out.storage.F_out));
    out.energy_out = series_integral(out.retrieval, square(out.retrieval.F_out));
    out.efficiency_numeric = out.energy_out / out.energy_in;

    const double p_end = out.retrieval.P.back();
    out.bookkeeping_residual =
        std::abs(out.energy_out + out.leaked_storage +
                 out.storage.free_space_loss.back() +
                 out.retrieval.free_space_loss.back() + p_end * p_end -
                 out.energy_in);
    return out;
}

double overlap_ratio(double Cm, double T, double delta) {
    return overlap_integral(Cm, T, std::abs(delta)) /
           overlap_integral(Cm, T, 0.0);
}

double overlap_ratio_closed(double Cm, double delta) {
    const double x = Cm * std::abs(delta);
    return (1.0 + x - (1.0 + std::exp(2.0 * x)) / Cm) / (1.0 - 2.0 / Cm) *
           std::exp(-x);
}

JitterCurve jitter_scan(double Cm, double T,
                        const std::vector<double>& deltas) {
    JitterCurve c;
    c.deltas = deltas;
    c.ratio_numeric.reserve(deltas.size());
    c.ratio_closed.reserve(deltas.size());
    c.efficiency_factor.reserve(deltas.size());
    c.closed_valid.reserve(deltas.size());
    for (double d : deltas) {
        const double r = overlap_ratio(Cm, T, d);
        c.ratio_numeric.push_back(r);
        c.ratio_closed.push_back(overlap_ratio_closed(Cm, d));
        c.efficiency_factor.push_back(r * r);
        c.closed_valid.push_back(std::abs(d) < T);
    }
    return c;
}

JitterThresholds jitter_thresholds(double Cm, double T) {
    auto factor = [&](double d) {
        const double r = overlap_ratio(Cm, T, d);
        return r * r;
    };
    auto locate = [&](double target) {
        auto f = [&](double d) { return factor(d) - target; };
        // factor(0) = 1 > target and the curve decays within the window
        const double d = bisect(f, 0.0, T, 1e-6 / Cm, 200);
        return d * Cm;
    };
    JitterThresholds th;
    th.gdCm_90 = locate(0.90);
    th.gdCm_99 = locate(0.99);
    return th;
}

std::vector<AuditRow> asymptotic_audit(const std::vector<double>& Cm_list) {
    if (Cm_list.empty())
        throw std::invalid_argument("asymptotic_audit: empty Cm list");
    auto gap = [](double exact, double asym) {
        AuditEntry e;
        e.exact = exact;
        e.asym = asym;
        e.abs_gap = std::abs(exact - asym);
        e.rel_gap = e.abs_gap / std::abs(exact);
        return e;
    };
    auto audit_one = [&gap](double Cm) {
        const OptimalWindow w = optimal_window(Cm);
        const Asymptotics a = make_asymptotics(Cm, 5.0);
        AuditRow row;
        row.Cm = Cm;
        row.norm_large_T = gap(norm(Cm, 5.0), a.N_eq23);
        row.n_trunc_max = gap(w.N_max, a.N_trunc_max_eq28);
        row.window = gap(2.0 * w.T_max, a.two_T_max_eq29);
        row.efficiency_window = gap(w.N_max * w.N_max, a.efficiency_eq30);
        return row;
    };
    // grid points are independent pure computations; run them in parallel
    // and assemble in order
    std::vector<std::future<AuditRow>> pending;
    pending.reserve(Cm_list.size());
    for (double Cm : Cm_list)
        pending.push_back(std::async(std::launch::async, audit_one, Cm));
    std::vector<AuditRow> rows;
    rows.reserve(Cm_list.size());
    for (auto& f : pending) rows.push_back(f.get());
    return rows;
}

DesignReport design(const PhysicalParams& p,
                    std::optional<double> cm_override) {
    validate(p);
    const DimensionlessParams dims = derive(p);
    DesignReport r;
    r.T2 = p.T2;
    r.gamma = p.gamma;
    r.Cm_derived = dims.Cm;
    r.Cm_used = cm_override.value_or(dims.Cm);
    if (!(r.Cm_used > 0.0))
        throw std::invalid_argument("design: Cm override must be > 0");
    r.cm_inconsistent =
        std::abs(r.Cm_derived - r.Cm_used) > 0.01 * r.Cm_used;
    const double lmax = 2.0 * p.finesse / constants::pi;
    r.C_min = r.Cm_used / (1.0 + lmax * lmax);
    const OptimalWindow w = optimal_window(r.Cm_used);
    r.pulse_duration = p.T2 / (r.Cm_used + 1.0);
    r.window_2T = 2.0 * w.T_max * p.T2;
    r.window_2T_asym = w.asym_valid ? w.T_max_asym * 2.0 * p.T2 : 0.0;
    r.efficiency_windowed = w.N_max * w.N_max;
    r.efficiency_eq30 =
        w.asym_valid ? make_asymptotics(r.Cm_used, w.T_max).efficiency_eq30
                     : 0.0;
    DimensionlessParams used = dims;
    used.Cm = r.Cm_used;
    used.C_min = r.C_min;
    r.bad_cavity = bad_cavity_check(p, used);
    r.feasibility = finesse_feasibility(r.Cm_used, w.T_max, p.finesse);
    r.warnings = check_assumptions(p);
    return r;
}

double hold_survival(double T_s, double C_hold) {
    return std::exp(-T_s * (1.0 + C_hold));
}

}  // namespace qmem
