// Shared helpers for the test suites: canonical parameter set, deterministic
// random draws, and library-independent oracles.

#pragma once

#include "oemi/model.hpp"
#include "oemi/rng.hpp"
#include "oemi/stability.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>

namespace oemi::test {

inline constexpr double kPi = 3.14159265358979323846;

// Canonical caption parameters (kappa_a 2, kappa_c = kappa_d = 3,
// gamma_m 0.01, G_a 1.5, G_c 2, |G_d| = G_c sqrt(kd/kc), G_x = sqrt(kc kd)/2).
inline model::SystemParams canonical_params(double phi = kPi / 2.0) {
    model::SystemParams p;  // defaults are already the caption values
    p.phi = phi;
    return p;
}

// Deterministic uniform draws on top of the counter-based generator.
class DrawStream {
  public:
    explicit DrawStream(std::uint64_t seed) : seed_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * rng::unit_at(seed_, k_++); }
    std::uint64_t next_raw() { return rng::splitmix64_at(seed_, k_++); }

  private:
    std::uint64_t seed_;
    std::uint64_t k_{0};
};

inline model::SystemParams random_params(DrawStream& ds, double rate_lo = 0.1,
                                         double rate_hi = 10.0, double coupling_hi = 3.0) {
    model::SystemParams p;
    p.kappa_a = ds.uniform(rate_lo, rate_hi);
    p.kappa_c = ds.uniform(rate_lo, rate_hi);
    p.kappa_d = ds.uniform(rate_lo, rate_hi);
    p.gamma_m = ds.uniform(rate_lo, rate_hi);
    p.g_a = ds.uniform(0.0, coupling_hi);
    p.g_c = ds.uniform(0.0, coupling_hi);
    p.g_d_mag = ds.uniform(0.0, coupling_hi);
    p.g_x = ds.uniform(0.0, coupling_hi);
    p.phi = ds.uniform(-kPi, kPi);
    p.n_th = 0.0;
    return p;
}

// Rejection-sample a stable operating point (eigenvalue verdict).
inline model::SystemParams random_stable_params(DrawStream& ds) {
    for (int tries = 0; tries < 10000; ++tries) {
        model::SystemParams p = random_params(ds);
        if (stability::is_stable_eig(p).stable) return p;
    }
    throw std::runtime_error("random_stable_params: no stable draw found");
}

// Eigen's QR eigensolver as the independent spectrum oracle.
inline Eigen::Vector4cd eigenvalue_oracle(const model::Matrix4c& m) {
    Eigen::ComplexEigenSolver<model::Matrix4c> solver(m, false);
    return solver.eigenvalues();
}

}  // namespace oemi::test
