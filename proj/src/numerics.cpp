#include "oemi/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace oemi::numerics {

namespace {

template <int N>
Eigen::Matrix<cdouble, N, N> invert_impl(const Eigen::Matrix<cdouble, N, N>& m) {
    // Row scale of the input fixes the singularity threshold.
    double scale = 0.0;
    for (int i = 0; i < N; ++i) {
        scale = std::max(scale, m.row(i).template lpNorm<Eigen::Infinity>());
    }
    if (scale == 0.0) {
        throw SingularMatrixError("invert: zero matrix");
    }

    Eigen::Matrix<cdouble, N, N> a = m;
    Eigen::Matrix<cdouble, N, N> inv = Eigen::Matrix<cdouble, N, N>::Identity();

    for (int col = 0; col < N; ++col) {
        int piv = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < N; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best < kSingularPivotRel * scale) {
            throw SingularMatrixError("invert: singular to tolerance at column " +
                                      std::to_string(col));
        }
        if (piv != col) {
            a.row(piv).swap(a.row(col));
            inv.row(piv).swap(inv.row(col));
        }
        const cdouble d = a(col, col);
        a.row(col) /= d;
        inv.row(col) /= d;
        for (int r = 0; r < N; ++r) {
            if (r == col) continue;
            const cdouble f = a(r, col);
            if (f == cdouble{0.0, 0.0}) continue;
            a.row(r) -= f * a.row(col);
            inv.row(r) -= f * inv.row(col);
        }
    }
    return inv;
}

cdouble eval(const std::array<cdouble, 5>& c, cdouble x) {
    // c[k] multiplies x^k
    cdouble acc = c[4];
    for (int k = 3; k >= 0; --k) acc = acc * x + c[k];
    return acc;
}

cdouble eval_deriv(const std::array<cdouble, 5>& c, cdouble x) {
    cdouble acc = 4.0 * c[4];
    for (int k = 3; k >= 1; --k) acc = acc * x + double(k) * c[k];
    return acc;
}

}  // namespace

Matrix4c invert(const Matrix4c& m) { return invert_impl<4>(m); }
Matrix6c invert(const Matrix6c& m) { return invert_impl<6>(m); }

QuarticRoots quartic_roots(cdouble c4, cdouble c3, cdouble c2, cdouble c1, cdouble c0) {
    if (c4 == cdouble{0.0, 0.0}) {
        throw std::invalid_argument("quartic_roots: leading coefficient is zero");
    }
    const std::array<cdouble, 5> coeff{c0, c1, c2, c3, c4};
    const double cmax = std::max({std::abs(c0), std::abs(c1), std::abs(c2),
                                  std::abs(c3), std::abs(c4)});
    const double tol = 1e-8 * cmax;

    // Monic form for the iteration.
    const std::array<cdouble, 5> monic{c0 / c4, c1 / c4, c2 / c4, c3 / c4, cdouble{1.0, 0.0}};

    // Cauchy bound keeps the start circle outside degenerate configurations.
    double radius = 0.0;
    for (int k = 0; k < 4; ++k) radius = std::max(radius, std::abs(monic[k]));
    radius = 1.0 + radius;

    // Starts spread around a circle at an irrational-ish angle so no start
    // coincides with an axis-aligned root.
    std::array<cdouble, 4> z;
    for (int k = 0; k < 4; ++k) {
        const double ang = 0.7 + 1.5707963267948966 * k;
        z[k] = radius * cdouble{std::cos(ang), std::sin(ang)};
    }

    constexpr int kMaxIter = 10000;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        double step = 0.0;
        for (int k = 0; k < 4; ++k) {
            cdouble denom{1.0, 0.0};
            for (int j = 0; j < 4; ++j) {
                if (j != k) denom *= (z[k] - z[j]);
            }
            if (denom == cdouble{0.0, 0.0}) {
                z[k] += cdouble{1e-8 * radius, 1e-8 * radius};
                step = radius;
                continue;
            }
            const cdouble delta = eval(monic, z[k]) / denom;
            z[k] -= delta;
            step = std::max(step, std::abs(delta));
        }
        if (step < 1e-14 * radius) break;
    }
    if (it >= kMaxIter) {
        throw NonConvergenceError("quartic_roots: Durand-Kerner did not converge in 10000 iterations");
    }

    QuarticRoots out;
    out.iterations = it;
    for (int k = 0; k < 4; ++k) {
        // A few Newton steps against the original (unscaled) polynomial.
        cdouble x = z[k];
        for (int s = 0; s < 8; ++s) {
            const cdouble p = eval(coeff, x);
            if (std::abs(p) <= tol * 1e-3) break;
            const cdouble dp = eval_deriv(coeff, x);
            if (dp == cdouble{0.0, 0.0}) break;
            x -= p / dp;
        }
        out.roots[k] = x;
        out.residuals[k] = std::abs(eval(coeff, x));
    }
    for (int k = 0; k < 4; ++k) {
        if (out.residuals[k] > tol) {
            throw NonConvergenceError("quartic_roots: residual " +
                                      std::to_string(out.residuals[k]) +
                                      " exceeds tolerance");
        }
    }
    return out;
}

}  // namespace oemi::numerics
