#include "qmem/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmem/constants.hpp"
#include "qmem/numerics.hpp"

namespace qmem {

using constants::pi;

double fold_angle(double theta) {
    double x = std::remainder(theta, 2.0 * pi);  // lands in [-pi, pi]
    if (x <= -pi) x = pi;
    return x;
}

double enhancement(double theta, double finesse) {
    if (!(finesse > 1.0))
        throw std::invalid_argument("enhancement: finesse must be > 1");
    const double lmax = 2.0 * finesse / pi;
    const double s = std::sin(0.5 * theta);
    return lmax / (1.0 + lmax * lmax * s * s);
}

double beta(double theta, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("beta: r must be in (0, 1)");
    // Quadrant-correct form of the detuned-cavity phase. Written so that
    // the numerator is odd and the denominator even in theta, with the
    // denominator positive at resonance: beta(0) = 0 and beta is
    // continuous through the half-line |theta| where the phase passes
    // +-pi/2.
    const double num = (r * r - 1.0) * std::sin(theta);
    const double den = (1.0 + r * r) * std::cos(theta) - 2.0 * r;
    return fold_angle(std::atan2(num, den));
}

double finesse_to_r(double finesse) {
    if (!(finesse > pi))
        throw std::invalid_argument(
            "finesse_to_r: no root in (0,1) for finesse <= pi");
    // Solve in w = 1 - r, the well-conditioned variable for near-unit r:
    // g(w) = pi sqrt(1-w) - finesse w is strictly decreasing with
    // g(0from) = pi > 0 and g(1) = -finesse < 0. Bisection runs until the
    // bracket collapses to adjacent doubles.
    auto g = [finesse](double w) {
        return pi * std::sqrt(1.0 - w) - finesse * w;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 300; ++i) {
        const double m = 0.5 * (lo + hi);
        if (m <= lo || m >= hi) break;
        (g(m) > 0.0 ? lo : hi) = m;
    }
    const double w = hi;
    const double back = pi * std::sqrt(1.0 - w) / w;
    if (std::abs(back - finesse) > 1e-12 * finesse)
        throw std::runtime_error("finesse_to_r: residual too large");
    return 1.0 - w;
}

Cavity::Cavity(double finesse)
    : finesse_(finesse), r_(finesse_to_r(finesse)), peak_(2.0 * finesse / pi) {}

CavityPoint Cavity::at(double theta) const {
    CavityPoint p;
    p.phase_detuning = fold_angle(theta);
    p.enhancement = enhancement(p.phase_detuning, finesse_);
    p.beta = beta(p.phase_detuning, r_);
    return p;
}

double Cavity::c_min(double cm) const {
    return cm / (1.0 + peak_ * peak_);
}

CavityPoint Cavity::solve_detuning(double c_target, double cm) const {
    const double lo = c_min(cm);
    if (!(c_target >= lo && c_target <= cm))
        throw std::invalid_argument(
            "solve_detuning: c_target outside [C_min, Cm]");
    // sin^2(theta/2) = (pi/2F)^2 (Cm/C - 1); the clamp absorbs roundoff
    // at the antiresonance endpoint.
    double s2 = (cm / c_target - 1.0) / (peak_ * peak_);
    s2 = std::min(s2, 1.0);
    const double theta = 2.0 * std::asin(std::sqrt(s2));
    return at(theta);
}

CavityPoint solve_detuning(double c_target, const DimensionlessParams& dims) {
    // C_min = Cm / (1 + (2F/pi)^2) inverts to the finesse.
    const double lmax_sq = dims.Cm / dims.C_min - 1.0;
    const double finesse = 0.5 * pi * std::sqrt(lmax_sq);
    return Cavity(finesse).solve_detuning(c_target, dims.Cm);
}

}  // namespace qmem
