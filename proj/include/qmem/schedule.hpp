#pragma once

// Analytic cavity-tuning schedule: the cooperativity profile C(t) whose
// spontaneous emission is a double-sided exponential pulse peaking at
// time T, its time-reversed twin used for storage, the pulse norms, and
// the optimal truncation window. Everything here runs in dimensionless
// time (units of 1/gamma, gamma = 1).
namespace qmem {

enum class Direction { emission, storage };

struct EmissionSchedule {
    double Cm = 0.0;  // peak cooperativity, reached at t = T
    double T = 0.0;   // pulse-maximum time
    double A = 0.0;   // integration constant of the Bernoulli solution
    double Fm = 0.0;  // peak amplitude of the emitted envelope [sqrt(gamma)]
    Direction direction = Direction::emission;
};

// Builds the emission schedule for given peak cooperativity and peak time.
EmissionSchedule build_emission(double Cm, double T);

// Mirrors the schedule about t = 0: storage evaluates C(-t).
EmissionSchedule time_reverse(const EmissionSchedule& s);

// Cooperativity at time t. Emission: rising branch on [0, T], constant Cm
// after. Storage: the mirror image on (-inf, 0].
double C_of_t(const EmissionSchedule& s, double t);

// Closed form of the accumulated decay integral of (C(tau) + 1) from 0
// to t, emission direction (t >= 0). The log-derivative of the Bernoulli
// denominator supplies the antiderivative of C.
double accumulated_decay(const EmissionSchedule& s, double t);

struct TargetPulse {
    double Fm = 0.0;
    double T = 0.0;
    double Cm = 0.0;
    bool normalized = false;  // divided by sqrt(norm) (storage-input form)
    Direction direction = Direction::emission;
};

// Emitted envelope Fm exp(-(Cm+1)|t - T|) for t >= 0.
TargetPulse target_pulse(const EmissionSchedule& s);
// Unit-norm time-reversed input peaking at -T, defined on t <= 0.
TargetPulse storage_input(const EmissionSchedule& s);
double envelope(const TargetPulse& p, double t);

// Photon content of the full emitted pulse.
double norm(double Cm, double T);
// Photon content over the finite window [0, 2T].
double norm_truncated(double Cm, double T);
// Peak emitted amplitude Fm.
double peak_amplitude(double Cm, double T);

struct OptimalWindow {
    double T_max = 0.0;       // exact maximizer of norm_truncated
    double N_max = 0.0;       // norm_truncated at T_max
    double T_max_asym = 0.0;  // ln(Cm/2) / (2 Cm)
    double N_max_asym = 0.0;  // 1 - (ln(Cm/2) + 1)/Cm
    bool asym_valid = false;  // the Cm >> 1 forms need Cm > 2
};

// Exact numerical maximization of the truncated norm over T (bracketed
// golden section, relative tolerance 1e-10 in T), with the large-Cm
// closed forms reported alongside.
OptimalWindow optimal_window(double Cm);

struct FeasibilityCheck {
    double finesse_sq_required = 0.0;  // 2 exp(2 Cm T)
    bool general_ok = false;           // finesse^2 > finesse_sq_required
    bool reduced_ok = false;           // finesse^2 > Cm (the T = T_max form)
    double C_start = 0.0;              // schedule value C(0)
    double C_min = 0.0;                // Airy minimum for this finesse
    bool exact_ok = false;             // C_start >= C_min
};

// Can a cavity of the given finesse reach the low starting cooperativity
// the schedule requires? Reports the large-Cm criterion, its reduced
// T = T_max form, and the exact check against the Airy minimum.
FeasibilityCheck finesse_feasibility(double Cm, double T, double finesse);

}  // namespace qmem
