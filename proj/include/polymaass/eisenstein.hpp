#pragma once

#include <vector>

#include "polymaass/special_functions.hpp"

namespace polymaass {

/// z = x + iy with y > 0.
class PointUHP {
 public:
  PointUHP(double x, double y);
  explicit PointUHP(cplx z) : PointUHP(z.real(), z.imag()) {}

  double x() const { return x_; }
  double y() const { return y_; }
  cplx z() const { return {x_, y_}; }

 private:
  double x_;
  double y_;
};

/// Even weight k and spectral parameter s, eigenvalue s(s+k-1).
class SpectralParam {
 public:
  SpectralParam(int k, cplx s);

  int weight() const { return k_; }
  cplx s() const { return s_; }
  cplx eigenvalue() const { return s_ * (s_ + static_cast<double>(k_) - 1.0); }
  /// Center (1-k)/2 of the functional equation s <-> 1-k-s.
  double center() const { return 0.5 * (1.0 - k_); }
  bool is_center() const { return s_ == cplx(center(), 0.0); }
  SpectralParam dual() const { return {k_, 1.0 - static_cast<double>(k_) - s_}; }

 private:
  int k_;
  cplx s_;
};

struct TruncationPolicy {
  int lattice_radius = 280;
  /// 0 selects ceil(max(1, -log(tol)/(2 pi y))) + 2, grown until the tail fits.
  int mode_count = 0;
  double target_tol = 1e-14;
  /// Extrapolate lattice partial sums in the shell radius.
  bool extrapolate = true;
  sf::Config special{};

  void validate() const;
};

/// Element of SL(2, Z) acting by Moebius transformation.
struct Matrix2 {
  long a = 1, b = 0, c = 0, d = 1;

  cplx act(cplx z) const;
  cplx cocycle(cplx z) const { return static_cast<double>(c) * z + static_cast<double>(d); }
  Matrix2 operator*(const Matrix2& o) const;

  static Matrix2 S() { return {0, -1, 1, 0}; }
  static Matrix2 T() { return {1, 1, 0, 1}; }
};

/// pi^{-s-k/2} Gamma(s + k/2 + |k|/2), the factor turning E_k into its completion.
cplx completion_factor(int k, cplx s);

/// E_k(z, s) by square-shell summation of the lattice. Requires
/// Re s > 1 - k/2 + 1/4.
sf::EvalResult lattice_sum_E(const SpectralParam& p, const PointUHP& z,
                             const TruncationPolicy& t = {});

/// Coefficients of y^s and y^{1-k-s} in the constant term of the completed
/// series (generic s only; throws DomainError at the center).
struct ConstantTermCoeffs {
  cplx plus;
  cplx minus;
};
ConstantTermCoeffs constant_term_coeffs(const SpectralParam& p, bool doubly = false);
/// At the center c = (1-k)/2: plus is the coefficient of y^c log y, minus of y^c.
ConstantTermCoeffs center_constant_term_coeffs(int k, bool doubly = false);

/// Constant term C_0(y, s) of the completed series, including the center
/// (logarithmic) case and a guard annulus of radius 1e-3 around it.
cplx constant_term(const SpectralParam& p, double y);
/// Constant term of the doubly-completed series; entire in s.
cplx constant_term_doubly(const SpectralParam& p, double y);

/// a_n(s): coefficient of y^{-k/2} W_{sgn(n)k/2, s+(k-1)/2}(4 pi |n| y) e(nx)
/// in the completed series.
cplx fourier_coefficient(const SpectralParam& p, long n);

int auto_mode_count(double y, double tol);
/// N at which the adaptive Fourier route meets target_tol at (p, z).
int fourier_mode_count(const SpectralParam& p, const PointUHP& z, const TruncationPolicy& t = {},
                       bool doubly = false);

sf::EvalResult fourier_eval_completed(const SpectralParam& p, const PointUHP& z,
                                      const TruncationPolicy& t = {});
/// (s+k/2)(s+k/2-1) times the completed series; entire in s.
sf::EvalResult doubly_completed_eval(const SpectralParam& p, const PointUHP& z,
                                     const TruncationPolicy& t = {});
/// E_k(z, s) recovered from the Fourier route.
sf::EvalResult eisenstein_E(const SpectralParam& p, const PointUHP& z,
                            const TruncationPolicy& t = {});

/// s-derivatives of orders 0..max_n of the doubly-completed series at s0.
std::vector<sf::EvalResult> taylor_coeffs(int k, cplx s0, const PointUHP& z, int max_n,
                                          const TruncationPolicy& t = {});
sf::EvalResult taylor_coeff(int k, cplx s0, const PointUHP& z, int n,
                            const TruncationPolicy& t = {});

/// Maass's G(z, zbar; alpha, beta) = 2 y^{-beta} E_{alpha-beta}(z, beta).
sf::EvalResult maass_G(cplx alpha, cplx beta, const PointUHP& z, const TruncationPolicy& t = {});

}  // namespace polymaass
