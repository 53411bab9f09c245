#pragma once

#include <optional>
#include <vector>

#include "qmem/dynamics.hpp"
#include "qmem/params.hpp"
#include "qmem/schedule.hpp"

// Efficiency bookkeeping, asymptotic-formula audits, the time-jitter
// sensitivity analysis and the experimental design report.
namespace qmem {

enum class EfficiencyMode { ideal, windowed };

struct Asymptotics {
    double N_eq23 = 0.0;             // (1 - Cm^-2) e^{-2T}
    double N_trunc_max_eq28 = 0.0;   // 1 - (ln(Cm/2)+1)/Cm
    double two_T_max_eq29 = 0.0;     // ln(Cm/2)/Cm
    double efficiency_eq30 = 0.0;    // 1 - 2/Cm - 2 ln(Cm/2)/Cm
    bool valid = false;              // Cm > 2
};

struct EfficiencyReport {
    double Cm = 0.0;
    double T = 0.0;                       // resolved peak time
    double N_exact = 0.0;
    double N_trunc_exact = 0.0;
    double efficiency_ideal = 0.0;        // N^2, infinite windows
    double efficiency_windowed = 0.0;     // N_trunc^2, [-2T,0]/[0,2T] windows
    std::optional<double> efficiency_numeric;  // filled by full_cycle runs
    Asymptotics asymptotics;
    double bound_reference = 0.0;         // (Cm/(1+Cm))^2
};

// Closed-form report. Windowed mode falls back to T = T_max when T is
// not supplied.
EfficiencyReport efficiency(double Cm, std::optional<double> T,
                            EfficiencyMode mode);

struct FullCycleResult {
    SimulationResult storage;    // window [-2T, 0]
    SimulationResult retrieval;  // window [0, 2T]
    double P0 = 0.0;             // atomic amplitude between the windows
    double energy_in = 0.0;
    double energy_out = 0.0;     // retrieval window
    double leaked_storage = 0.0; // unabsorbed light during storage
    double efficiency_numeric = 0.0;
    double bookkeeping_residual = 0.0;  // closure of the photon ledger
};

// Storage followed by retrieval with the matched time-reversed schedule;
// jitter_delta shifts the input pulse arrival inside the fixed window.
FullCycleResult full_cycle(double Cm, double T, double dt,
                           double jitter_delta = 0.0,
                           Method method = Method::rk4_fixed);

struct JitterCurve {
    std::vector<double> deltas;
    std::vector<double> ratio_numeric;      // piecewise-exact overlap ratio
    std::vector<double> ratio_closed;       // large-Cm closed form
    std::vector<double> efficiency_factor;  // ratio^2
    std::vector<bool> closed_valid;         // |delta| < T
};

// Overlap of the programmed and delta-shifted envelopes over [0, 2T],
// normalized to the aligned value. The integrand is piecewise
// exponential, so the integral is evaluated segment-by-segment in closed
// form rather than by quadrature.
double overlap_ratio(double Cm, double T, double delta);
// The Cm >> 1 closed-form ratio; stated for |delta| < T.
double overlap_ratio_closed(double Cm, double delta);

JitterCurve jitter_scan(double Cm, double T,
                        const std::vector<double>& deltas);

struct JitterThresholds {
    double gdCm_90 = 0.0;  // gamma*delta*Cm where the efficiency factor is 0.90
    double gdCm_99 = 0.0;  // and 0.99
};

// Bisection on the efficiency-factor curve, resolved to 1e-6 in
// gamma*delta*Cm. Both crossings must lie inside |delta| < T, which
// holds for Cm of order 10 and up at the optimal window.
JitterThresholds jitter_thresholds(double Cm, double T);

struct AuditEntry {
    double exact = 0.0;
    double asym = 0.0;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
};

struct AuditRow {
    double Cm = 0.0;
    AuditEntry norm_large_T;       // full norm at T = 5 vs its large-Cm form
    AuditEntry n_trunc_max;        // exact optimum vs 1-(ln(Cm/2)+1)/Cm
    AuditEntry window;             // exact 2 T_max vs ln(Cm/2)/Cm
    AuditEntry efficiency_window;  // exact N_trunc^2 vs the expanded form
};

std::vector<AuditRow> asymptotic_audit(const std::vector<double>& Cm_list);

struct DesignReport {
    double T2 = 0.0;                 // [s]
    double gamma = 0.0;              // [1/s]
    double Cm_derived = 0.0;         // alpha_L * finesse / (2 pi)
    double Cm_used = 0.0;            // override when provided
    bool cm_inconsistent = false;    // derived and used differ by > 1%
    double C_min = 0.0;
    double pulse_duration = 0.0;     // 1/(gamma (Cm+1)) [s]
    double window_2T = 0.0;          // 2 T_max / gamma [s], exact optimizer
    double window_2T_asym = 0.0;     // large-Cm value [s]
    double efficiency_windowed = 0.0;
    double efficiency_eq30 = 0.0;
    BadCavityCheck bad_cavity;
    FeasibilityCheck feasibility;    // evaluated at T = T_max
    ParamWarnings warnings;
};

// Full "experimental conditions" audit; cm_override lets the caller pin
// the operating cooperativity independently of alpha_L and finesse.
DesignReport design(const PhysicalParams& p,
                    std::optional<double> cm_override = std::nullopt);

// Amplitude survival of a storage hold of duration T_s (units of T2)
// with the cooperativity parked at C_hold.
double hold_survival(double T_s, double C_hold);

}  // namespace qmem
