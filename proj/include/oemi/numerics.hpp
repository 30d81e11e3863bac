// numerics.hpp — small dense complex linear algebra and quartic root finding.
// No physics in here.

#pragma once

#include <Eigen/Core>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace oemi::numerics {

using cdouble = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix6c = Eigen::Matrix<cdouble, 6, 6>;

// Relative pivot threshold below which a matrix is reported singular.
inline constexpr double kSingularPivotRel = 1e-14;

struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Inverse by Gauss-Jordan elimination with partial pivoting.
// Throws SingularMatrixError when the best pivot of a column falls below
// kSingularPivotRel times the row scale of the input.
Matrix4c invert(const Matrix4c& m);
Matrix6c invert(const Matrix6c& m);

struct QuarticRoots {
    std::array<cdouble, 4> roots;
    std::array<double, 4> residuals;  // |p(root)|, after polishing
    int iterations{0};
};

// All four roots of c4 x^4 + c3 x^3 + c2 x^2 + c1 x + c0, c4 != 0.
// Durand-Kerner iteration followed by Newton polishing; each residual is
// bounded by 1e-8 times the largest coefficient magnitude or
// NonConvergenceError is thrown.
QuarticRoots quartic_roots(cdouble c4, cdouble c3, cdouble c2, cdouble c1, cdouble c0);

}  // namespace oemi::numerics
