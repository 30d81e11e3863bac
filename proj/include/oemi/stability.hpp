// stability.hpp — Routh-Hurwitz classification of an operating point and the
// eigenvalue-based oracle.

#pragma once

#include "oemi/model.hpp"
#include "oemi/numerics.hpp"

#include <array>

namespace oemi::stability {

using model::SystemParams;
using numerics::cdouble;

// Coefficients of lambda^4 + s3 lambda^3 + s2 lambda^2 + s1 lambda + s0 = 0.
//
// These closed forms are exact characteristic-polynomial coefficients whenever
// G_c G_x |G_d| cos(phi) = 0 (in particular at phi = +-pi/2). Away from that
// the true polynomial acquires the imaginary loop term -i g (2 lambda + kappa_a)
// with g = G_c G_x |G_d| cos(phi), which these coefficients drop; use
// is_stable_eig for the exact verdict at arbitrary phase.
struct CharCoeffs {
    double s3, s2, s1, s0;
};

CharCoeffs char_coeffs(const SystemParams& p);

// Exact complex characteristic coefficients of the dynamic matrix
// (Faddeev-LeVerrier), det(lambda I - M) = lambda^4 + c[3] l^3 + ... + c[0].
std::array<cdouble, 4> char_poly(const model::Matrix4c& m);

struct RhVerdict {
    bool stable{false};
    int failing_relation{0};  // 0 = none, 1..3 = first failing relation
};

// Routh-Hurwitz relations on the closed-form coefficients:
// (1) all s_i > 0, (2) s3 s2 - s1 > 0, (3) s3 s2 s1 - s1^2 - s0 s3^2 > 0.
RhVerdict is_stable_rh(const SystemParams& p);

struct EigVerdict {
    bool stable{false};
    double max_real_part{0.0};
    std::array<cdouble, 4> eigenvalues;
};

// Stable iff max Re(lambda) < -1e-9 over the eigenvalues of M (roots of the
// exact characteristic quartic); the band [-1e-9, 1e-9] counts as unstable.
EigVerdict is_stable_eig(const SystemParams& p);

struct ApproxVerdict {
    bool stable{false};
    bool preconditions_ok{true};  // gamma_m << kappa, G and Gamma_c = Gamma_d
    std::string warning;
};

// Gamma_c > Gamma_a, the impedance-matched small-gamma_m approximation.
ApproxVerdict approx_condition(const SystemParams& p);

}  // namespace oemi::stability
