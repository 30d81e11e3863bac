// model.hpp — system parameters, gauge reduction, dynamic/damping matrices,
// cooperativities, sweet-spot configuration, thermal occupancy.
//
// Conventions (used across the whole library):
//   * every rate and coupling is stored as the value/2pi in MHz, exactly as
//     quoted in experiment-style captions; no 2pi factor is applied anywhere
//     because all formulas are homogeneous in these units,
//   * mode order is (a^dag, b, c, d) everywhere a 4x4 matrix appears,
//   * the gauge phase phi lives in (-pi, pi], with -pi mapped to +pi.

#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace oemi::model {

using cdouble = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4d = Eigen::Vector4d;

enum class Mode { a, c, d };
enum class Branch { plus, minus };  // phi = +pi/2 or -pi/2 operation point

// Normalize an angle into (-pi, pi]; ties at -pi map to +pi.
double normalize_phase(double phi);

// One operating point of the three-cavity interface.
struct SystemParams {
    double kappa_a{2.0};   // cavity a damping (MHz)
    double kappa_c{3.0};   // cavity c damping (MHz)
    double kappa_d{3.0};   // cavity d damping (MHz)
    double gamma_m{0.01};  // mechanical damping (MHz)
    double g_a{1.5};       // |G_a| (MHz), blue-detuned drive
    double g_c{2.0};       // |G_c| (MHz), red-detuned drive
    double g_x{1.5};       // photon hopping rate c<->d (MHz)
    double g_d_mag{2.0};   // |G_d| (MHz)
    double phi{1.5707963267948966};  // gauge phase of G_d (rad, (-pi, pi])
    double n_th{0.0};      // mechanical thermal occupancy

    // Empty when valid; otherwise one message per violated constraint.
    std::vector<std::string> validate() const;
    void require_valid() const;  // throws std::invalid_argument on first violation

    cdouble g_d() const { return g_d_mag * std::polar(1.0, phi); }
};

// Complex couplings before the gauge reduction of the operator phases.
struct RawCouplings {
    cdouble g_a{1.5, 0.0};
    cdouble g_c{2.0, 0.0};
    cdouble g_d{0.0, 2.0};
    cdouble g_x{1.5, 0.0};
};

// Per-mode phases absorbed into the operators by canonicalize(), for traceability.
struct PhaseRecord {
    double a{0.0};
    double b{0.0};
    double c{0.0};
    double d{0.0};
};

struct CanonicalForm {
    SystemParams params;
    PhaseRecord phases;
};

// Absorb the coupling phases into the mode operators: G_{a,c,x} become their
// magnitudes and only the loop phase phi = arg(G_d) + arg(G_x) - arg(G_c)
// survives, attached to G_d. Rates/n_th are copied through unchanged.
CanonicalForm canonicalize(const RawCouplings& raw, const SystemParams& rates);

// Dynamic matrix M of the linearized Langevin equation, mode order (a^dag, b, c, d).
Matrix4c dynamic_matrix(const SystemParams& p);

// Generalized builder accepting complex couplings; exists so gauge invariance
// can be checked against the canonical pipeline.
Matrix4c dynamic_matrix(const RawCouplings& raw, const SystemParams& rates);

// Diag[sqrt(kappa_a), sqrt(gamma_m), sqrt(kappa_c), sqrt(kappa_d)].
Vector4d damping_diagonal(const SystemParams& p);

// Gamma_mode = 4 G_mode^2 / kappa_mode (heating rate for a, cooling for c, d).
double cooperativity(const SystemParams& p, Mode mode);

// Operating point with G_x = sqrt(kappa_c kappa_d)/2, phi = +-pi/2 and |G_d|
// fixed by the branch; both branches satisfy the impedance matching condition
// Gamma_c = Gamma_d.
SystemParams sweet_spot(const SystemParams& p, Branch branch);

// Bose-Einstein occupancy for a mechanical frequency omega_m/2pi in MHz at
// temperature K. Physical constants are CODATA 2018 exact values.
double thermal_occupancy(double omega_m_mhz, double temperature_k);

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::a: return "a";
        case Mode::c: return "c";
        case Mode::d: return "d";
    }
    return "?";
}

}  // namespace oemi::model
