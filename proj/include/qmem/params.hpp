#pragma once

#include <optional>
#include <string>
#include <vector>

// Physical parameters of the memory cell and the derived dimensionless
// constants. All core math downstream runs in dimensionless time tau =
// gamma*t with gamma = 1; conversion to laboratory units happens only at
// the CLI boundary.
namespace qmem {

struct PhysicalParams {
    double T2 = 0.0;                // phase relaxation time [s], T2 = 2 T1
    double gamma = 0.0;             // 1/T2 [1/s], set on construction
    double alpha_L = 0.0;           // resonant optical depth
    double finesse = 0.0;           // cavity finesse
    double round_trip_length = 0.0; // optical path p for one round trip [m]
    double wavelength = 0.0;        // transition wavelength [m]
    double cross_section = 0.0;     // excitation cross section S [m^2]
    double sample_length = 0.0;     // atomic cylinder length L [m]
    std::optional<double> dipole_moment;  // d [C m], for the T1 helper
    std::optional<double> omega0;         // transition frequency [rad/s]

    double fresnel_number() const;  // S / (L lambda)
    double mu() const;              // geometrical factor 3 lambda^2 / (8 pi S)
};

// Builds a validated parameter set with gamma = 1/T2.
PhysicalParams make_params(double T2, double alpha_L, double finesse,
                           double round_trip_length, double wavelength,
                           double cross_section, double sample_length);

// Hard invariants (positive T2 and alpha_L, finesse > 1, positive geometry).
// Throws std::invalid_argument.
void validate(const PhysicalParams& p);

// Soft model-assumption diagnostics; informative, never fatal.
struct ParamWarnings {
    bool optically_thick = false;  // alpha_L >= 1 breaks the thin-sample model
    bool fresnel_small = false;    // Fresnel number below 1
    std::vector<std::string> notes;
};
ParamWarnings check_assumptions(const PhysicalParams& p);

struct DimensionlessParams {
    double Cm = 0.0;     // peak cooperativity, alpha_L * finesse / (2 pi)
    double gamma = 0.0;  // carried through [1/s]
    double C_min = 0.0;  // cooperativity at antiresonance (exact Airy minimum)
};

DimensionlessParams derive(const PhysicalParams& p);

struct EinsteinA {
    double A = 0.0;   // 1/T1 [1/s]
    double T1 = 0.0;  // [s]
    double T2 = 0.0;  // implied 2 T1 [s]
};

// Spontaneous-emission rate from first principles; requires the optional
// dipole_moment and omega0 fields.
EinsteinA einstein_A(const PhysicalParams& p);

// Ratio of the memory bandwidth Cm*gamma to the cavity linewidth
// 2 pi c / (finesse * p). Flagged when above bad_cavity_threshold; this
// is a reported diagnostic, never a hard error.
inline constexpr double bad_cavity_threshold = 0.1;

struct BadCavityCheck {
    double ratio = 0.0;
    double cavity_linewidth = 0.0;  // [rad/s]
    bool flagged = false;
};
BadCavityCheck bad_cavity_check(const PhysicalParams& p,
                                const DimensionlessParams& d);

}  // namespace qmem
