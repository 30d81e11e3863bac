// moments.hpp — 6x6 output covariance matrix of the discrete filtered modes,
// two-mode reductions and the standard form.
//
// Quadratures X = (o + o^dag)/sqrt(2), P = (o - o^dag)/(i sqrt(2)), so the
// vacuum variance is 1/2. Quadrature order (X_a, P_a, X_c, P_c, X_d, P_d).

#pragma once

#include "oemi/model.hpp"
#include "oemi/scattering.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <stdexcept>

namespace oemi::moments {

using model::SystemParams;
using numerics::cdouble;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix4d = Eigen::Matrix4d;

enum class Pair { ac, ad, cd };

struct UnstablePointError : std::runtime_error {
    explicit UnstablePointError(const std::string& what) : std::runtime_error(what) {}
};

struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

// Second-moment coefficients of the output covariance in terms of the
// transmission elements and the thermal phonon number.
struct CovarianceCoeffs {
    double v_aa, v_cc, v_dd;
    cdouble v_ac, v_ad, v_cd;
};

CovarianceCoeffs covariance_coeffs(const model::Matrix4c& t, double n_th);

struct CovarianceMatrix {
    Matrix6d m;
    double omega_n{0.0};
    double n_th{0.0};
};

// Assemble the 6x6 covariance from T(omega_n): diagonal blocks v_aa I_2,
// off-diagonal blocks [[Re v, -Im v], [-Im v, -Re v]].
CovarianceMatrix covariance_from_transmission(const scattering::TransmissionMatrix& t,
                                              double n_th);

// Full pipeline at one bin center; rejects unstable operating points
// (the stationary covariance does not exist there).
CovarianceMatrix output_covariance(const SystemParams& p, double omega_n);

struct ReducedCovariance {
    Matrix4d m;
    Pair pair{Pair::ac};
};

ReducedCovariance reduce_pair(const CovarianceMatrix& v, Pair pair);

// Two-mode covariance after the local phase rotations that diagonalize the
// correlation block to diag(|v|, -|v|); the diagonal blocks are untouched.
struct StandardFormCov {
    double v_aa{0.5};      // first-mode variance
    double v_cc{0.5};      // second-mode variance
    double v_corr{0.0};    // |v| of the correlation block, >= 0
    double theta_a{0.0};   // rotation angle applied to each mode
    double theta_c{0.0};
    Matrix4d matrix() const;
};

// Requires the Eq.-(Vab) block structure (diagonal blocks proportional to the
// identity, symmetric traceless correlation block); throws StructureError when
// the input deviates beyond 1e-8 relative.
StandardFormCov standard_form(const ReducedCovariance& r);

// Symplectic eigenvalues (positive branch) of a 2n x 2n covariance; physical
// states have all of them >= 1/2.
std::array<double, 2> symplectic_eigenvalues(const Matrix4d& v);
std::array<double, 3> symplectic_eigenvalues(const Matrix6d& v);

// Smaller symplectic eigenvalue of the partial transpose of a two-mode
// covariance; < 1/2 iff the state is entangled.
double ppt_nu_minus(const Matrix4d& v);

inline const char* pair_name(Pair p) {
    switch (p) {
        case Pair::ac: return "ac";
        case Pair::ad: return "ad";
        case Pair::cd: return "cd";
    }
    return "?";
}

Pair pair_from_name(const std::string& name);

}  // namespace oemi::moments
