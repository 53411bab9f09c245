#include "qmem/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmem/constants.hpp"

namespace qmem {

using constants::pi;

double PhysicalParams::fresnel_number() const {
    return cross_section / (sample_length * wavelength);
}

double PhysicalParams::mu() const {
    return 3.0 * wavelength * wavelength / (8.0 * pi * cross_section);
}

PhysicalParams make_params(double T2, double alpha_L, double finesse,
                           double round_trip_length, double wavelength,
                           double cross_section, double sample_length) {
    PhysicalParams p;
    p.T2 = T2;
    p.gamma = 1.0 / T2;
    p.alpha_L = alpha_L;
    p.finesse = finesse;
    p.round_trip_length = round_trip_length;
    p.wavelength = wavelength;
    p.cross_section = cross_section;
    p.sample_length = sample_length;
    validate(p);
    return p;
}

void validate(const PhysicalParams& p) {
    if (!(p.T2 > 0.0)) throw std::invalid_argument("params: T2 must be > 0");
    if (!(p.alpha_L > 0.0))
        throw std::invalid_argument("params: alpha_L must be > 0");
    if (!(p.finesse > 1.0))
        throw std::invalid_argument("params: finesse must be > 1");
    if (!(p.round_trip_length > 0.0))
        throw std::invalid_argument("params: round_trip_length must be > 0");
    if (!(p.wavelength > 0.0))
        throw std::invalid_argument("params: wavelength must be > 0");
    if (!(p.cross_section > 0.0))
        throw std::invalid_argument("params: cross_section must be > 0");
    if (!(p.sample_length > 0.0))
        throw std::invalid_argument("params: sample_length must be > 0");
}

ParamWarnings check_assumptions(const PhysicalParams& p) {
    ParamWarnings w;
    if (p.alpha_L >= 1.0) {
        w.optically_thick = true;
        w.notes.push_back("alpha_L >= 1: outside the thin-sample regime");
    }
    if (p.fresnel_number() < 1.0) {
        w.fresnel_small = true;
        w.notes.push_back("Fresnel number S/(L lambda) < 1");
    }
    return w;
}

DimensionlessParams derive(const PhysicalParams& p) {
    validate(p);
    DimensionlessParams d;
    d.Cm = p.alpha_L * p.finesse / (2.0 * pi);
    d.gamma = p.gamma;
    const double lmax = 2.0 * p.finesse / pi;
    d.C_min = d.Cm / (1.0 + lmax * lmax);
    return d;
}

EinsteinA einstein_A(const PhysicalParams& p) {
    if (!p.dipole_moment || !p.omega0)
        throw std::invalid_argument(
            "einstein_A: dipole_moment and omega0 are required");
    const double d = *p.dipole_moment;
    const double w0 = *p.omega0;
    const double c = constants::speed_of_light;
    EinsteinA out;
    out.A = 1.0 / (4.0 * pi * constants::vacuum_permittivity) * 4.0 * d * d *
            w0 * w0 * w0 / (3.0 * constants::hbar * c * c * c);
    out.T1 = out.A > 0.0 ? 1.0 / out.A
                         : std::numeric_limits<double>::infinity();
    out.T2 = 2.0 * out.T1;
    return out;
}

BadCavityCheck bad_cavity_check(const PhysicalParams& p,
                                const DimensionlessParams& d) {
    if (!(p.round_trip_length > 0.0))
        throw std::invalid_argument("bad_cavity_check: round_trip_length <= 0");
    BadCavityCheck out;
    out.cavity_linewidth =
        2.0 * pi * constants::speed_of_light / (p.finesse * p.round_trip_length);
    out.ratio = d.Cm * d.gamma / out.cavity_linewidth;
    out.flagged = out.ratio > bad_cavity_threshold;
    return out;
}

}  // namespace qmem
