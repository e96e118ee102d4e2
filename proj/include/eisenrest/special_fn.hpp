#pragma once

#include <complex>

namespace eisenrest::special {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Principal branch of log Gamma(z). Requires Re z > 0 or |Im z| > 1
/// (any z off the poles works in practice) and |z| <= 1e6.
cplx log_gamma(cplx z);

/// Riemann zeta by Euler-Maclaurin summation, for Re s >= 1/2,
/// |Im s| <= 1e5, s != 1. Satisfies zeta(conj s) == conj(zeta(s)) exactly.
cplx zeta(cplx s, double tol = kDefaultTol);

/// e^{pi T/2} sqrt(y) K_{iT}(y), together with an absolute error estimate.
struct ScaledKernelValue {
  double value = 0.0;
  double abs_error_est = 0.0;
};

ScaledKernelValue bessel_k_imag_scaled(double T, double y, double tol = kDefaultTol);

/// Bessel function of the first kind J_n(u), 0 <= n <= 64, |u| <= 1e6.
double bessel_j(int order, double u);

/// Per-T constants of the completed Eisenstein series.
///
/// mu is the unit phase theta(1/2+iT)/|theta(1/2+iT)| with
/// theta(s) = pi^{-s} Gamma(s) zeta(2s). rho_scaled is rho*(1) e^{-pi T/2},
/// which stays O(1) for every T in range while rho*(1) itself overflows.
struct NormalizationData {
  double T = 0.0;
  cplx mu{1.0, 0.0};
  cplx zeta_1_2iT{};
  double rho_scaled = 0.0;
  double log_scale = 0.0;  // pi T / 2
};

NormalizationData normalization(double T, double tol = kDefaultTol);

/// Mellin transform of the kernel y -> V_T(2 pi y), on the e^{pi T/2}-scaled
/// convention:
///   gamma_v(s', T) = e^{pi T/2} 2^{-3/2} pi^{-s'}
///                    Gamma((1/2 + s' + iT)/2) Gamma((1/2 + s' - iT)/2),
/// i.e. gamma_{V_T}(1/2 + s') with the Mellin variable written as 1/2 + s'.
cplx gamma_v(cplx s_prime, double T);

}  // namespace eisenrest::special
