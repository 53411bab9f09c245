#pragma once

#include "qmem/params.hpp"

// Cavity transfer functions: the Airy enhancement of the intracavity
// field, the input-output phase of the detuned cavity, and the inverse
// problem of finding the round-trip detuning that realizes a requested
// cooperativity.
namespace qmem {

struct CavityPoint {
    double phase_detuning = 0.0;  // theta = kp mod 2 pi, folded to (-pi, pi]
    double enhancement = 0.0;     // Airy enhancement at theta
    double beta = 0.0;            // input-output phase in (-pi, pi]
};

// Folds an angle into (-pi, pi].
double fold_angle(double theta);

// Airy lineshape: (2F/pi) / (1 + (2F/pi)^2 sin^2(theta/2)).
double enhancement(double theta, double finesse);

// Input-output phase of the detuned cavity relative to resonance,
// evaluated with a quadrant-correct two-argument arctangent so beta is
// odd, zero at resonance and continuous across the line.
double beta(double theta, double r);

// Solves finesse = pi sqrt(r)/(1-r) for the mirror reflectivity
// r in (0,1) by bracketed bisection; requires finesse > pi.
double finesse_to_r(double finesse);

// Caches r and the line maximum for repeated per-sample lookups.
class Cavity {
public:
    explicit Cavity(double finesse);

    double finesse() const { return finesse_; }
    double r() const { return r_; }
    double peak_enhancement() const { return peak_; }  // 2 finesse / pi

    CavityPoint at(double theta) const;

    // Cooperativity at the antiresonance theta = pi for peak value cm.
    double c_min(double cm) const;

    // Positive-detuning branch with C(theta) = c_target given the peak
    // cooperativity cm; throws if c_target is outside [c_min, cm].
    CavityPoint solve_detuning(double c_target, double cm) const;

private:
    double finesse_;
    double r_;
    double peak_;
};

// Convenience overload recovering the finesse from the exact Airy
// minimum stored in DimensionlessParams.
CavityPoint solve_detuning(double c_target, const DimensionlessParams& dims);

}  // namespace qmem
