#include "qmem/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmem/constants.hpp"
#include "qmem/numerics.hpp"

namespace qmem {

namespace {

// The Bernoulli denominator D(t) = A (Cm+2) e^{-2(Cm+2)t} - 1 factors as
// e^u z with u = 2 (Cm+2)(T - t) and z = (q+1) - e^{-u}, q = (Cm+2)/Cm.
// u >= 0 on the rising branch, so z in (q, q+1] and e^{-u} <= 1: both
// factors stay representable for any window length.
struct Denominator {
    double u = 0.0;
    double z = 0.0;
};

Denominator denominator(double Cm, double T, double t) {
    Denominator d;
    d.u = 2.0 * (Cm + 2.0) * (T - t);
    const double q = (Cm + 2.0) / Cm;
    d.z = q - std::expm1(-d.u);
    return d;
}

double emission_time(const EmissionSchedule& s, double t) {
    return s.direction == Direction::storage ? -t : t;
}

double fm_squared(double Cm, double T) {
    return 2.0 / (std::exp(2.0 * T) * (1.0 / (Cm + 2.0) + 1.0 / Cm) -
                  std::exp(-2.0 * (Cm + 1.0) * T) / (Cm + 2.0));
}

}  // namespace

EmissionSchedule build_emission(double Cm, double T) {
    if (!(Cm > 0.0)) throw std::invalid_argument("build_emission: Cm must be > 0");
    if (!(T >= 0.0)) throw std::invalid_argument("build_emission: T must be >= 0");
    EmissionSchedule s;
    s.Cm = Cm;
    s.T = T;
    s.A = std::exp(2.0 * (Cm + 2.0) * T) * (1.0 / (Cm + 2.0) + 1.0 / Cm);
    s.Fm = peak_amplitude(Cm, T);
    return s;
}

EmissionSchedule time_reverse(const EmissionSchedule& s) {
    EmissionSchedule out = s;
    out.direction = s.direction == Direction::emission ? Direction::storage
                                                       : Direction::emission;
    return out;
}

double C_of_t(const EmissionSchedule& s, double t) {
    const double tt = emission_time(s, t);
    if (tt >= s.T) return s.Cm;
    const auto d = denominator(s.Cm, s.T, tt);
    return (s.Cm + 2.0) * std::exp(-d.u) / d.z;
}

double accumulated_decay(const EmissionSchedule& s, double t) {
    const double Cm = s.Cm;
    const double T = s.T;
    // ln D(t) = u + ln z, and int_0^t C = -(Cm+2) t - (ln D(t) - ln D(0))/2.
    auto log_denominator = [&](double tt) {
        const auto d = denominator(Cm, T, tt);
        return d.u + std::log(d.z);
    };
    const double t_rise = std::min(t, T);
    double value = -(Cm + 1.0) * t_rise -
                   0.5 * (log_denominator(t_rise) - log_denominator(0.0));
    if (t > T) value += (Cm + 1.0) * (t - T);
    return value;
}

TargetPulse target_pulse(const EmissionSchedule& s) {
    TargetPulse p;
    p.Fm = s.Fm;
    p.T = s.T;
    p.Cm = s.Cm;
    p.normalized = false;
    p.direction = Direction::emission;
    return p;
}

TargetPulse storage_input(const EmissionSchedule& s) {
    TargetPulse p = target_pulse(s);
    p.Fm = s.Fm / std::sqrt(norm(s.Cm, s.T));
    p.normalized = true;
    p.direction = Direction::storage;
    return p;
}

double envelope(const TargetPulse& p, double t) {
    const double peak_time = p.direction == Direction::storage ? -p.T : p.T;
    return p.Fm * std::exp(-(p.Cm + 1.0) * std::abs(t - peak_time));
}

double peak_amplitude(double Cm, double T) {
    return std::sqrt(fm_squared(Cm, T));
}

double norm(double Cm, double T) {
    // 2 - e^{-x} written as 1 - expm1(-x) to keep small-T precision
    return fm_squared(Cm, T) * (1.0 - std::expm1(-2.0 * (Cm + 1.0) * T)) /
           (2.0 * (Cm + 1.0));
}

double norm_truncated(double Cm, double T) {
    return fm_squared(Cm, T) * (-std::expm1(-2.0 * (Cm + 1.0) * T)) /
           (Cm + 1.0);
}

OptimalWindow optimal_window(double Cm) {
    if (!(Cm > 0.0)) throw std::invalid_argument("optimal_window: Cm must be > 0");
    OptimalWindow w;
    w.asym_valid = Cm > 2.0;
    if (w.asym_valid) {
        w.T_max_asym = std::log(0.5 * Cm) / (2.0 * Cm);
        w.N_max_asym = 1.0 - (std::log(0.5 * Cm) + 1.0) / Cm;
    }
    auto objective = [Cm](double T) { return norm_truncated(Cm, T); };
    // Expand the bracket until the objective is past its peak.
    double hi = std::max(2.0 * w.T_max_asym, 1.0 / Cm);
    for (int i = 0; i < 200 && objective(hi) > objective(0.99 * hi); ++i)
        hi *= 2.0;
    auto [t_best, n_best] = golden_section_max(objective, 0.0, hi, 1e-10);
    w.T_max = t_best;
    w.N_max = n_best;
    return w;
}

FeasibilityCheck finesse_feasibility(double Cm, double T, double finesse) {
    FeasibilityCheck f;
    f.finesse_sq_required = 2.0 * std::exp(2.0 * Cm * T);
    f.general_ok = finesse * finesse > f.finesse_sq_required;
    f.reduced_ok = finesse * finesse > Cm;
    f.C_start = C_of_t(build_emission(Cm, T), 0.0);
    const double lmax = 2.0 * finesse / constants::pi;
    f.C_min = Cm / (1.0 + lmax * lmax);
    f.exact_ok = f.C_start >= f.C_min;
    return f;
}

}  // namespace qmem
