#include "oemi/entanglement.hpp"

#include "oemi/rng.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace oemi::entanglement {

namespace {
constexpr double kSeparabilityTol = 1e-12;

double entropy_of_squeezing(double r0) {
    if (r0 <= 0.0) return 0.0;
    const double ch2 = std::cosh(r0) * std::cosh(r0);
    const double sh2 = std::sinh(r0) * std::sinh(r0);
    return ch2 * std::log2(ch2) - sh2 * std::log2(sh2);
}

Eigen::Matrix3d x_block(const CovarianceMatrix& v) {
    Eigen::Matrix3d b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = v.m(2 * i, 2 * j);
    return b;
}

Eigen::Matrix3d p_block(const CovarianceMatrix& v) {
    Eigen::Matrix3d b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b(i, j) = v.m(2 * i + 1, 2 * j + 1);
    return b;
}
}  // namespace

EofResult eof(const StandardFormCov& s) {
    EofResult out;
    out.nu_minus_pt = moments::ppt_nu_minus(s.matrix());

    // det S = (v_aa v_cc - v_corr^2)^2 by the standard-form block structure;
    // the generic 4x4 cofactor determinant loses ~8 digits here to cancellation.
    const double minor = s.v_aa * s.v_cc - s.v_corr * s.v_corr;
    const double det_s = minor * minor;
    out.kappa_inv = 2.0 * (16.0 * det_s + 1.0) - 4.0 * (s.v_aa - s.v_cc) * (s.v_aa - s.v_cc);
    const double lp = s.v_aa + s.v_cc + 2.0 * s.v_corr;
    const double lm = s.v_aa + s.v_cc - 2.0 * s.v_corr;
    out.lambda_plus = 4.0 * lp * lp;
    out.lambda_minus = 4.0 * lm * lm;

    if (out.nu_minus_pt >= 0.5 - kSeparabilityTol) {
        return out;  // separable: r0 = e_f = 0
    }
    const double disc = out.kappa_inv * out.kappa_inv - out.lambda_plus * out.lambda_minus;
    if (out.lambda_minus <= 0.0) {
        throw std::invalid_argument("eof: unphysical covariance (lambda_minus <= 0)");
    }
    const double arg = (out.kappa_inv - std::sqrt(std::max(0.0, disc))) / out.lambda_minus;
    if (arg <= 1.0) {
        return out;
    }
    out.r0 = 0.5 * std::log(std::sqrt(arg));
    out.e_f = entropy_of_squeezing(out.r0);
    return out;
}

EofResult eof_pair(const SystemParams& p, double omega_n, Pair pair) {
    const CovarianceMatrix v = moments::output_covariance(p, omega_n);
    const ReducedCovariance r = moments::reduce_pair(v, pair);
    return eof(moments::standard_form(r));
}

double log_negativity(const ReducedCovariance& r) {
    const double nu = moments::ppt_nu_minus(r.m);
    if (nu <= 0.0) {
        throw std::invalid_argument("log_negativity: unphysical covariance");
    }
    return std::max(0.0, -std::log2(2.0 * nu));
}

WeightVector weights_at(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t base = 6 * index;
    WeightVector w;
    w.h1 = rng::symmetric_at(seed, base + 0);
    w.h2 = rng::symmetric_at(seed, base + 1);
    w.h3 = rng::symmetric_at(seed, base + 2);
    w.g1 = rng::symmetric_at(seed, base + 3);
    w.g2 = rng::symmetric_at(seed, base + 4);
    w.g3 = rng::symmetric_at(seed, base + 5);
    return w;
}

double witness_bound(const WeightVector& w) {
    const double b1 = std::abs(w.g3 * w.h3) + std::abs(w.h1 * w.g1 + w.h2 * w.g2);
    const double b2 = std::abs(w.g2 * w.h2) + std::abs(w.h1 * w.g1 + w.h3 * w.g3);
    const double b3 = std::abs(w.g1 * w.h1) + std::abs(w.g2 * w.h2 + w.h3 * w.g3);
    return std::min({b1, b2, b3});
}

double delta_e(const CovarianceMatrix& v, const WeightVector& w) {
    const Eigen::Vector3d h{w.h1, w.h2, w.h3};
    const Eigen::Vector3d g{w.g1, w.g2, w.g3};
    const double var_u = h.dot(x_block(v) * h);
    const double var_v = g.dot(p_block(v) * g);
    return 2.0 * std::sqrt(std::max(0.0, var_u * var_v)) - witness_bound(w);
}

std::string TripartiteWitness::verdict() const {
    if (witnessed) return "genuine tripartite entanglement witnessed";
    return "no violation found";
}

TripartiteWitness tripartite_witness(const CovarianceMatrix& v, std::uint64_t n_samples,
                                     std::uint64_t seed) {
    if (n_samples == 0) {
        throw std::invalid_argument("tripartite_witness: n_samples must be > 0");
    }
    const Eigen::Matrix3d vx = x_block(v);
    const Eigen::Matrix3d vp = p_block(v);

    TripartiteWitness out;
    out.n_samples = n_samples;
    out.seed = seed;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    std::uint64_t negative = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        const WeightVector w = weights_at(seed, i);
        const Eigen::Vector3d h{w.h1, w.h2, w.h3};
        const Eigen::Vector3d g{w.g1, w.g2, w.g3};
        const double prod = h.dot(vx * h) * g.dot(vp * g);
        const double de = 2.0 * std::sqrt(std::max(0.0, prod)) - witness_bound(w);
        mn = std::min(mn, de);
        mx = std::max(mx, de);
        if (de < 0.0) ++negative;
    }
    out.min_delta_e = mn;
    out.max_delta_e = mx;
    out.fraction_negative = double(negative) / double(n_samples);
    out.witnessed = mn < 0.0;
    out.all_negative = mx < 0.0;
    return out;
}

OptimizedWitness tripartite_optimize(const CovarianceMatrix& v, std::uint64_t n_samples,
                                     std::uint64_t seed) {
    WeightVector best = weights_at(seed, 0);
    double best_val = delta_e(v, best);
    for (std::uint64_t i = 1; i < n_samples; ++i) {
        const WeightVector w = weights_at(seed, i);
        const double de = delta_e(v, w);
        if (de < best_val) {
            best_val = de;
            best = w;
        }
    }

    double* coords[6] = {&best.h1, &best.h2, &best.h3, &best.g1, &best.g2, &best.g3};
    double step = 0.25;
    while (step > 1e-10) {
        bool improved = false;
        for (double* c : coords) {
            const double base = *c;
            for (double cand : {base - step, base + step}) {
                cand = std::clamp(cand, -1.0, 1.0);
                const double saved = *c;
                *c = cand;
                const double de = delta_e(v, best);
                if (de < best_val - 1e-15) {
                    best_val = de;
                    improved = true;
                } else {
                    *c = saved;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    return OptimizedWitness{best, best_val};
}

}  // namespace oemi::entanglement
