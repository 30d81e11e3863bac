#include "oemi/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace oemi::scattering {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kConditionTol = 1e-9;

void require_close(double actual, double expected, const char* what) {
    const double scale = std::max({1.0, std::abs(actual), std::abs(expected)});
    if (std::abs(actual - expected) > kConditionTol * scale) {
        throw PreconditionError(std::string("closed_form: operation condition violated: ") +
                                what);
    }
}
}  // namespace

Matrix4c transmission_from_dynamic(const Matrix4c& m, const model::Vector4d& sqrt_k,
                                   double omega) {
    const cdouble i{0.0, 1.0};
    const Matrix4c a = omega * Matrix4c::Identity() - i * m;
    const Matrix4c ainv = numerics::invert(a);
    Matrix4c t = -i * (sqrt_k.asDiagonal() * ainv * sqrt_k.asDiagonal());
    t += Matrix4c::Identity();
    return t;
}

TransmissionMatrix transmission(const SystemParams& p, double omega) {
    p.require_valid();
    return TransmissionMatrix{
        transmission_from_dynamic(model::dynamic_matrix(p), model::damping_diagonal(p), omega),
        omega, p};
}

TransmissionMatrix closed_form(const SystemParams& p, Branch branch) {
    p.require_valid();
    require_close(p.g_x, std::sqrt(p.kappa_c * p.kappa_d) / 2.0,
                  "G_x = sqrt(kappa_c kappa_d)/2");
    if (branch == Branch::plus) {
        require_close(p.phi, kPi / 2.0, "phi = +pi/2");
        require_close(p.g_d_mag, 2.0 * p.g_c * p.g_x / p.kappa_c,
                      "|G_d| = 2 G_c G_x / kappa_c");
    } else {
        require_close(p.phi, -kPi / 2.0, "phi = -pi/2");
        require_close(p.g_d_mag, p.g_c * p.kappa_d / (2.0 * p.g_x),
                      "|G_d| = G_c kappa_d / (2 G_x)");
    }

    const double ga = model::cooperativity(p, model::Mode::a);
    const double gc = model::cooperativity(p, model::Mode::c);
    const double gm = p.gamma_m;
    const double den = gc - ga + gm;
    if (std::abs(den) < 1e-300) {
        throw numerics::SingularMatrixError("closed_form: Gamma_c - Gamma_a + gamma_m = 0");
    }
    const cdouble i{0.0, 1.0};
    const double sag = std::sqrt(ga * gm);
    const double scg = std::sqrt(gc * gm);
    const double sac = std::sqrt(ga * gc);

    Matrix4c t = Matrix4c::Zero();
    // Common 3x3 core on the (a, b) and entangled-optical rows.
    t(0, 0) = -(gc + ga + gm) / den;
    t(0, 1) = -2.0 * i * sag / den;
    t(1, 0) = 2.0 * i * sag / den;
    t(1, 1) = (gc - ga - gm) / den;

    if (branch == Branch::plus) {
        t(0, 3) = 2.0 * i * sac / den;
        t(1, 3) = 2.0 * scg / den;
        t(2, 0) = 2.0 * sac / den;
        t(2, 1) = 2.0 * i * scg / den;
        t(2, 3) = -i * (gc + ga - gm) / den;
        t(3, 2) = i;
    } else {
        t(0, 2) = -2.0 * sac / den;
        t(1, 2) = 2.0 * i * scg / den;
        t(3, 0) = -2.0 * i * sac / den;
        t(3, 1) = 2.0 * scg / den;
        t(3, 2) = -i * (gc + ga - gm) / den;
        t(2, 3) = i;
    }
    return TransmissionMatrix{t, 0.0, p};
}

BogoliubovCoeffs bogoliubov(const SystemParams& p, Branch /*branch*/) {
    const double ga = model::cooperativity(p, model::Mode::a);
    const double gc = model::cooperativity(p, model::Mode::c);
    if (!(gc > ga)) {
        throw PreconditionError("bogoliubov: requires Gamma_c > Gamma_a (stable regime)");
    }
    return BogoliubovCoeffs{(gc + ga) / (gc - ga), 2.0 * std::sqrt(ga * gc) / (gc - ga)};
}

double halfwidth_estimate(const SystemParams& p) {
    double w = p.kappa_a;
    w = std::min(w, p.kappa_c);
    w = std::min(w, p.kappa_d);
    w = std::min(w, model::cooperativity(p, model::Mode::a));
    w = std::min(w, model::cooperativity(p, model::Mode::c));
    w = std::min(w, model::cooperativity(p, model::Mode::d));
    return w;
}

cdouble a_of_omega(const SystemParams& p, double omega) {
    const cdouble i{0.0, 1.0};
    const cdouble wa = omega + i * (p.kappa_a / 2.0);
    const cdouble wm = omega + i * (p.gamma_m / 2.0);
    const cdouble wc = omega + i * (p.kappa_c / 2.0);
    const cdouble wd = omega + i * (p.kappa_d / 2.0);
    const double gx2 = p.g_x * p.g_x;
    const double gc2 = p.g_c * p.g_c;
    const double gd2 = p.g_d_mag * p.g_d_mag;
    const double ga2 = p.g_a * p.g_a;
    return wa * wm * wc * wd - wa * (wm * gx2 + wd * gc2 + wc * gd2) + ga2 * (wc * wd - gx2);
}

}  // namespace oemi::scattering
