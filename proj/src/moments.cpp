#include "oemi/moments.hpp"

#include "oemi/stability.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace oemi::moments {

namespace {

// Row i of T against row j, weighted by the input second moments:
// 1/2 [ T_i1 T_j1* + (2 n_th + 1) T_i2 T_j2* + T_i3 T_j3* + T_i4 T_j4* ].
cdouble row_product(const model::Matrix4c& t, int i, int j, double n_th) {
    const double w = 2.0 * n_th + 1.0;
    cdouble s = t(i, 0) * std::conj(t(j, 0));
    s += w * t(i, 1) * std::conj(t(j, 1));
    s += t(i, 2) * std::conj(t(j, 2));
    s += t(i, 3) * std::conj(t(j, 3));
    return 0.5 * s;
}

Eigen::Matrix2d corr_block(cdouble v) {
    Eigen::Matrix2d b;
    b << v.real(), -v.imag(), -v.imag(), -v.real();
    return b;
}

// Coefficients of det(lambda I - Omega V) restricted to the even powers;
// eigenvalues of Omega V are +-i nu_k, so the polynomial is prod(lambda^2 + nu_k^2).
template <int N>
std::array<double, N / 2> even_char_coeffs(const Eigen::Matrix<double, N, N>& v) {
    Eigen::Matrix<double, N, N> omega = Eigen::Matrix<double, N, N>::Zero();
    for (int k = 0; k < N / 2; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    const Eigen::Matrix<double, N, N> k = omega * v;

    // Faddeev-LeVerrier on the real matrix K.
    std::array<double, N + 1> coeff{};
    coeff[N] = 1.0;
    Eigen::Matrix<double, N, N> mk = Eigen::Matrix<double, N, N>::Identity();
    for (int step = 1; step <= N; ++step) {
        mk = k * mk;
        coeff[N - step] = -mk.trace() / double(step);
        mk += coeff[N - step] * Eigen::Matrix<double, N, N>::Identity();
    }
    std::array<double, N / 2> even{};
    for (int k2 = 0; k2 < N / 2; ++k2) even[k2] = coeff[2 * k2];
    return even;
}

}  // namespace

CovarianceCoeffs covariance_coeffs(const model::Matrix4c& t, double n_th) {
    CovarianceCoeffs c;
    c.v_aa = row_product(t, 0, 0, n_th).real();
    c.v_cc = row_product(t, 2, 2, n_th).real();
    c.v_dd = row_product(t, 3, 3, n_th).real();
    c.v_ac = row_product(t, 0, 2, n_th);
    c.v_ad = row_product(t, 0, 3, n_th);
    c.v_cd = row_product(t, 2, 3, n_th);
    return c;
}

CovarianceMatrix covariance_from_transmission(const scattering::TransmissionMatrix& t,
                                              double n_th) {
    const CovarianceCoeffs c = covariance_coeffs(t.t, n_th);
    CovarianceMatrix v;
    v.omega_n = t.omega;
    v.n_th = n_th;
    v.m = Matrix6d::Zero();
    v.m.block<2, 2>(0, 0) = c.v_aa * Eigen::Matrix2d::Identity();
    v.m.block<2, 2>(2, 2) = c.v_cc * Eigen::Matrix2d::Identity();
    v.m.block<2, 2>(4, 4) = c.v_dd * Eigen::Matrix2d::Identity();
    v.m.block<2, 2>(0, 2) = corr_block(c.v_ac);
    v.m.block<2, 2>(0, 4) = corr_block(c.v_ad);
    v.m.block<2, 2>(2, 4) = corr_block(c.v_cd);
    v.m.block<2, 2>(2, 0) = v.m.block<2, 2>(0, 2).transpose();
    v.m.block<2, 2>(4, 0) = v.m.block<2, 2>(0, 4).transpose();
    v.m.block<2, 2>(4, 2) = v.m.block<2, 2>(2, 4).transpose();
    return v;
}

CovarianceMatrix output_covariance(const SystemParams& p, double omega_n) {
    const auto verdict = stability::is_stable_eig(p);
    if (!verdict.stable) {
        throw UnstablePointError("output_covariance: operating point is unstable (max Re lambda = " +
                                 std::to_string(verdict.max_real_part) + " MHz)");
    }
    return covariance_from_transmission(scattering::transmission(p, omega_n), p.n_th);
}

ReducedCovariance reduce_pair(const CovarianceMatrix& v, Pair pair) {
    int r0 = 0, r1 = 2;
    switch (pair) {
        case Pair::ac: r0 = 0; r1 = 2; break;
        case Pair::ad: r0 = 0; r1 = 4; break;
        case Pair::cd: r0 = 2; r1 = 4; break;
    }
    ReducedCovariance out;
    out.pair = pair;
    out.m.block<2, 2>(0, 0) = v.m.block<2, 2>(r0, r0);
    out.m.block<2, 2>(0, 2) = v.m.block<2, 2>(r0, r1);
    out.m.block<2, 2>(2, 0) = v.m.block<2, 2>(r1, r0);
    out.m.block<2, 2>(2, 2) = v.m.block<2, 2>(r1, r1);
    return out;
}

Matrix4d StandardFormCov::matrix() const {
    Matrix4d m = Matrix4d::Zero();
    m(0, 0) = m(1, 1) = v_aa;
    m(2, 2) = m(3, 3) = v_cc;
    m(0, 2) = m(2, 0) = v_corr;
    m(1, 3) = m(3, 1) = -v_corr;
    return m;
}

StandardFormCov standard_form(const ReducedCovariance& r) {
    const Matrix4d& m = r.m;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double tol = 1e-8 * scale;

    auto check = [&](double dev, const char* what) {
        if (std::abs(dev) > tol) {
            throw StructureError(std::string("standard_form: ") + what);
        }
    };
    check(m(0, 0) - m(1, 1), "first diagonal block not proportional to identity");
    check(m(0, 1), "first diagonal block not diagonal");
    check(m(2, 2) - m(3, 3), "second diagonal block not proportional to identity");
    check(m(2, 3), "second diagonal block not diagonal");
    check(m(0, 2) + m(1, 3), "correlation block is not of the Eq.-(Vab) type");
    check(m(0, 3) - m(1, 2), "correlation block is not symmetric");

    const double x = m(0, 2);
    const double y = -m(0, 3);
    StandardFormCov s;
    s.v_aa = 0.5 * (m(0, 0) + m(1, 1));
    s.v_cc = 0.5 * (m(2, 2) + m(3, 3));
    s.v_corr = std::hypot(x, y);
    const double alpha = (s.v_corr > 0.0) ? std::atan2(y, x) : 0.0;
    s.theta_a = s.theta_c = -alpha / 2.0;
    return s;
}

std::array<double, 2> symplectic_eigenvalues(const Matrix4d& v) {
    const auto even = even_char_coeffs<4>(v);  // lambda^4 + a lambda^2 + b
    const double a = even[1], b = even[0];
    const double disc = std::max(0.0, a * a - 4.0 * b);
    // mu = lambda^2 = -nu^2; stable small-root form avoids cancellation when
    // the symplectic eigenvalues are widely split.
    const double mu_big = (-a - std::sqrt(disc)) / 2.0;
    const double mu_small = (mu_big != 0.0) ? b / mu_big : (-a + std::sqrt(disc)) / 2.0;
    std::array<double, 2> nus{std::sqrt(std::max(0.0, -mu_small)),
                              std::sqrt(std::max(0.0, -mu_big))};
    if (nus[0] > nus[1]) std::swap(nus[0], nus[1]);
    return nus;
}

std::array<double, 3> symplectic_eigenvalues(const Matrix6d& v) {
    const auto even = even_char_coeffs<6>(v);  // lambda^6 + a l^4 + b l^2 + c
    const double a = even[2], b = even[1], c = even[0];
    // Roots of mu^3 + a mu^2 + b mu + c (all real and <= 0 for covariance input),
    // by the trigonometric method.
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    std::array<double, 3> mu;
    const double t = -a / 3.0;
    if (std::abs(p) < 1e-300) {
        const double r = std::cbrt(-q);
        mu = {t + r, t + r, t + r};
    } else {
        const double s = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
        double arg = 3.0 * q / (p * s);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        constexpr double k2pi3 = 2.0943951023931953;  // 2 pi / 3
        mu = {t + s * std::cos(theta), t + s * std::cos(theta - k2pi3),
              t + s * std::cos(theta - 2.0 * k2pi3)};
    }
    std::array<double, 3> nus;
    for (int k = 0; k < 3; ++k) nus[k] = std::sqrt(std::max(0.0, -mu[k]));
    std::sort(nus.begin(), nus.end());
    return nus;
}

double ppt_nu_minus(const Matrix4d& v) {
    const Eigen::Matrix2d a = v.block<2, 2>(0, 0);
    const Eigen::Matrix2d b = v.block<2, 2>(2, 2);
    const Eigen::Matrix2d c = v.block<2, 2>(0, 2);
    const double det_a = a.determinant();
    const double det_b = b.determinant();
    const double det_c = c.determinant();
    // det V via the Schur complement of A; the direct 4x4 cofactor expansion
    // cancels catastrophically for the strongly correlated states this code
    // produces (block entries ~1e2, determinant ~1e-1).
    if (std::abs(det_a) < 1e-300) return 0.0;
    const Eigen::Matrix2d schur = b - c.transpose() * (a.inverse() * c);
    const double det_v = det_a * schur.determinant();

    const double delta = det_a + det_b - 2.0 * det_c;
    const double disc = std::max(0.0, delta * delta - 4.0 * det_v);
    // Stable small-root form of nu^4 - delta nu^2 + det V = 0.
    const double big = (delta + std::sqrt(disc)) / 2.0;
    const double nu2 = (big > 0.0) ? det_v / big : (delta - std::sqrt(disc)) / 2.0;
    return std::sqrt(std::max(0.0, nu2));
}

Pair pair_from_name(const std::string& name) {
    if (name == "ac") return Pair::ac;
    if (name == "ad") return Pair::ad;
    if (name == "cd") return Pair::cd;
    throw std::invalid_argument("unknown output pair '" + name + "' (expected ac, ad or cd)");
}

}  // namespace oemi::moments
