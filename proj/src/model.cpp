#include "oemi/model.hpp"

#include <cmath>

namespace oemi::model {

namespace {
constexpr double kPi = 3.14159265358979323846;
// CODATA 2018 (exact by SI definition)
constexpr double kPlanck = 6.62607015e-34;     // J s
constexpr double kBoltzmann = 1.380649e-23;    // J/K

void check_finite(double v, const char* name, std::vector<std::string>& errs) {
    if (!std::isfinite(v)) errs.push_back(std::string(name) + " is not finite");
}
}  // namespace

double normalize_phase(double phi) {
    double x = std::remainder(phi, 2.0 * kPi);  // (-pi, pi] up to the -pi tie
    if (x <= -kPi) x = kPi;
    return x;
}

std::vector<std::string> SystemParams::validate() const {
    std::vector<std::string> errs;
    check_finite(kappa_a, "kappa_a", errs);
    check_finite(kappa_c, "kappa_c", errs);
    check_finite(kappa_d, "kappa_d", errs);
    check_finite(gamma_m, "gamma_m", errs);
    check_finite(g_a, "g_a", errs);
    check_finite(g_c, "g_c", errs);
    check_finite(g_x, "g_x", errs);
    check_finite(g_d_mag, "g_d_mag", errs);
    check_finite(phi, "phi", errs);
    check_finite(n_th, "n_th", errs);
    if (!errs.empty()) return errs;

    if (kappa_a <= 0.0) errs.push_back("kappa_a must be > 0");
    if (kappa_c <= 0.0) errs.push_back("kappa_c must be > 0");
    if (kappa_d <= 0.0) errs.push_back("kappa_d must be > 0");
    if (gamma_m < 0.0) errs.push_back("gamma_m must be >= 0");
    if (g_a < 0.0) errs.push_back("g_a must be >= 0");
    if (g_c < 0.0) errs.push_back("g_c must be >= 0");
    if (g_x < 0.0) errs.push_back("g_x must be >= 0");
    if (g_d_mag < 0.0) errs.push_back("g_d_mag must be >= 0");
    if (n_th < 0.0) errs.push_back("n_th must be >= 0");
    return errs;
}

void SystemParams::require_valid() const {
    const auto errs = validate();
    if (!errs.empty()) throw std::invalid_argument("SystemParams: " + errs.front());
}

CanonicalForm canonicalize(const RawCouplings& raw, const SystemParams& rates) {
    const double phi_a = std::arg(raw.g_a);
    const double phi_c = std::arg(raw.g_c);
    const double phi_d = std::arg(raw.g_d);
    const double phi_x = std::arg(raw.g_x);

    CanonicalForm out;
    out.params = rates;
    out.params.g_a = std::abs(raw.g_a);
    out.params.g_c = std::abs(raw.g_c);
    out.params.g_x = std::abs(raw.g_x);
    out.params.g_d_mag = std::abs(raw.g_d);
    out.params.phi = normalize_phase(phi_d + phi_x - phi_c);

    out.phases.a = 0.0;
    out.phases.b = -phi_a;
    out.phases.c = phi_c - phi_a;
    out.phases.d = -phi_x + phi_c - phi_a;
    return out;
}

Matrix4c dynamic_matrix(const SystemParams& p) {
    RawCouplings raw;
    raw.g_a = p.g_a;
    raw.g_c = p.g_c;
    raw.g_d = p.g_d();
    raw.g_x = p.g_x;
    return dynamic_matrix(raw, p);
}

Matrix4c dynamic_matrix(const RawCouplings& raw, const SystemParams& rates) {
    const cdouble i{0.0, 1.0};
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = -rates.kappa_a / 2.0;
    m(0, 1) = i * raw.g_a;
    m(1, 0) = -i * std::conj(raw.g_a);
    m(1, 1) = -rates.gamma_m / 2.0;
    m(1, 2) = -i * std::conj(raw.g_c);
    m(1, 3) = -i * std::conj(raw.g_d);
    m(2, 1) = -i * raw.g_c;
    m(2, 2) = -rates.kappa_c / 2.0;
    m(2, 3) = -i * raw.g_x;
    m(3, 1) = -i * raw.g_d;
    m(3, 2) = -i * std::conj(raw.g_x);
    m(3, 3) = -rates.kappa_d / 2.0;
    return m;
}

Vector4d damping_diagonal(const SystemParams& p) {
    return Vector4d{std::sqrt(p.kappa_a), std::sqrt(p.gamma_m),
                    std::sqrt(p.kappa_c), std::sqrt(p.kappa_d)};
}

double cooperativity(const SystemParams& p, Mode mode) {
    switch (mode) {
        case Mode::a: return 4.0 * p.g_a * p.g_a / p.kappa_a;
        case Mode::c: return 4.0 * p.g_c * p.g_c / p.kappa_c;
        case Mode::d: return 4.0 * p.g_d_mag * p.g_d_mag / p.kappa_d;
    }
    throw std::invalid_argument("cooperativity: unknown mode label");
}

SystemParams sweet_spot(const SystemParams& p, Branch branch) {
    if (p.kappa_c <= 0.0 || p.kappa_d <= 0.0 || p.g_c <= 0.0) {
        throw std::invalid_argument("sweet_spot: requires kappa_c, kappa_d, g_c > 0");
    }
    SystemParams out = p;
    out.g_x = std::sqrt(p.kappa_c * p.kappa_d) / 2.0;
    if (branch == Branch::plus) {
        out.g_d_mag = 2.0 * p.g_c * out.g_x / p.kappa_c;
        out.phi = kPi / 2.0;
    } else {
        out.g_d_mag = p.g_c * p.kappa_d / (2.0 * out.g_x);
        out.phi = -kPi / 2.0;
    }
    return out;
}

double thermal_occupancy(double omega_m_mhz, double temperature_k) {
    if (!(omega_m_mhz > 0.0)) {
        throw std::invalid_argument("thermal_occupancy: omega_m must be > 0");
    }
    if (!(temperature_k > 0.0)) {
        throw std::invalid_argument("thermal_occupancy: temperature must be > 0");
    }
    const double x = kPlanck * omega_m_mhz * 1e6 / (kBoltzmann * temperature_k);
    return 1.0 / std::expm1(x);
}

}  // namespace oemi::model
