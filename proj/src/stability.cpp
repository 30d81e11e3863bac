#include "oemi/stability.hpp"

#include <algorithm>
#include <cmath>

namespace oemi::stability {

CharCoeffs char_coeffs(const SystemParams& p) {
    const double ka = p.kappa_a, kc = p.kappa_c, kd = p.kappa_d, gm = p.gamma_m;
    const double ga2 = p.g_a * p.g_a;
    const double gc2 = p.g_c * p.g_c;
    const double gd2 = p.g_d_mag * p.g_d_mag;
    const double gx2 = p.g_x * p.g_x;

    CharCoeffs s;
    s.s3 = (ka + kc + kd + gm) / 2.0;
    s.s2 = (ka * kc + ka * kd + kc * kd + gm * (ka + kc + kd)) / 4.0 + gx2 + gc2 + gd2 - ga2;
    s.s1 = (gm * (ka * kc + ka * kd + kc * kd) + ka * kc * kd) / 8.0 +
           (ka + gm) * gx2 / 2.0 + (ka + kd) * gc2 / 2.0 + (ka + kc) * gd2 / 2.0 -
           (kc + kd) * ga2 / 2.0;
    s.s0 = ka * gm * kc * kd / 16.0 + ka * gm * gx2 / 4.0 + ka * kd * gc2 / 4.0 +
           ka * kc * gd2 / 4.0 - kc * kd * ga2 / 4.0 - ga2 * gx2;
    return s;
}

std::array<cdouble, 4> char_poly(const model::Matrix4c& m) {
    using model::Matrix4c;
    const Matrix4c id = Matrix4c::Identity();
    const cdouble c3 = -m.trace();
    const Matrix4c m2 = m * (m + c3 * id);
    const cdouble c2 = -m2.trace() / 2.0;
    const Matrix4c m3 = m * (m2 + c2 * id);
    const cdouble c1 = -m3.trace() / 3.0;
    const Matrix4c m4 = m * (m3 + c1 * id);
    const cdouble c0 = -m4.trace() / 4.0;
    return {c0, c1, c2, c3};  // c[k] multiplies lambda^k
}

RhVerdict is_stable_rh(const SystemParams& p) {
    p.require_valid();
    const CharCoeffs s = char_coeffs(p);
    if (!(s.s3 > 0.0 && s.s2 > 0.0 && s.s1 > 0.0 && s.s0 > 0.0)) {
        return RhVerdict{false, 1};
    }
    if (!(s.s3 * s.s2 - s.s1 > 0.0)) {
        return RhVerdict{false, 2};
    }
    if (!(s.s3 * s.s2 * s.s1 - s.s1 * s.s1 - s.s0 * s.s3 * s.s3 > 0.0)) {
        return RhVerdict{false, 3};
    }
    return RhVerdict{true, 0};
}

EigVerdict is_stable_eig(const SystemParams& p) {
    p.require_valid();
    const auto c = char_poly(model::dynamic_matrix(p));
    const auto roots = numerics::quartic_roots({1.0, 0.0}, c[3], c[2], c[1], c[0]);
    EigVerdict v;
    v.eigenvalues = roots.roots;
    v.max_real_part = roots.roots[0].real();
    for (const auto& r : roots.roots) v.max_real_part = std::max(v.max_real_part, r.real());
    v.stable = v.max_real_part < -1e-9;
    return v;
}

ApproxVerdict approx_condition(const SystemParams& p) {
    p.require_valid();
    const double gamma_a = model::cooperativity(p, model::Mode::a);
    const double gamma_c = model::cooperativity(p, model::Mode::c);
    const double gamma_d = model::cooperativity(p, model::Mode::d);

    ApproxVerdict v;
    v.stable = gamma_c > gamma_a;  // boundary Gamma_a = Gamma_c counts unstable

    const double kmin = std::min({p.kappa_a, p.kappa_c, p.kappa_d});
    double gmin = kmin;
    for (double g : {p.g_a, p.g_c, p.g_d_mag, p.g_x}) {
        if (g > 0.0) gmin = std::min(gmin, g);
    }
    if (p.gamma_m > 0.1 * gmin) {
        v.preconditions_ok = false;
        v.warning = "gamma_m is not small against the kappas/couplings";
    }
    const double scale = std::max({gamma_c, gamma_d, 1e-300});
    if (std::abs(gamma_c - gamma_d) > 0.1 * scale) {
        v.preconditions_ok = false;
        if (!v.warning.empty()) v.warning += "; ";
        v.warning += "impedance matching Gamma_c = Gamma_d violated";
    }
    return v;
}

}  // namespace oemi::stability
