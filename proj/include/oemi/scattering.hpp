// scattering.hpp — input-output transmission matrix T(omega), sweet-spot
// closed forms, Bogoliubov coefficients and the spectral-halfwidth estimate.

#pragma once

#include "oemi/model.hpp"
#include "oemi/numerics.hpp"

#include <complex>

namespace oemi::scattering {

using model::Branch;
using model::Matrix4c;
using model::SystemParams;
using numerics::cdouble;

// T(omega) together with the frequency and parameters it was computed from.
// Element (i, j) is the probability amplitude of input mode j in output mode i,
// mode order (a^dag, b, c, d). T preserves the bosonic commutators:
// T Sigma T^dag = Sigma with Sigma = diag(-1, 1, 1, 1).
struct TransmissionMatrix {
    Matrix4c t;
    double omega{0.0};  // probe frequency (MHz)
    SystemParams params;
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Core map M, sqrt(K), omega -> I - i sqrt(K) (omega I - i M)^-1 sqrt(K).
// Throws numerics::SingularMatrixError at exceptional points.
Matrix4c transmission_from_dynamic(const Matrix4c& m, const model::Vector4d& sqrt_k,
                                   double omega);

TransmissionMatrix transmission(const SystemParams& p, double omega);

// Closed-form T at omega = 0 under the branch's operation conditions
// (checked to 1e-9; violations name the offending condition).
TransmissionMatrix closed_form(const SystemParams& p, Branch branch);

struct BogoliubovCoeffs {
    double u{1.0};
    double v{0.0};  // u^2 - v^2 = 1
};

// u = (Gamma_c + Gamma_a)/(Gamma_c - Gamma_a), v = 2 sqrt(Gamma_a Gamma_c)/(Gamma_c - Gamma_a),
// the gamma_m -> 0 two-mode-squeezing coefficients of the sweet-spot outputs.
// Requires Gamma_c > Gamma_a (throws otherwise: unstable regime).
BogoliubovCoeffs bogoliubov(const SystemParams& p, Branch branch);

// Order-of-magnitude bandwidth of the transmission resonances:
// min over cavity modes of {kappa_alpha, Gamma_alpha}.
double halfwidth_estimate(const SystemParams& p);

// Frequency-dependent part of the transmission denominators,
// A(omega) = wa wm wc wd - wa (wm Gx^2 + wd Gc^2 + wc |Gd|^2) + Ga^2 (wc wd - Gx^2)
// with w_alpha = omega + i kappa_alpha / 2 and wm = omega + i gamma_m / 2.
// Diagnostic only; A(0) equals the characteristic coefficient s0.
cdouble a_of_omega(const SystemParams& p, double omega);

}  // namespace oemi::scattering
