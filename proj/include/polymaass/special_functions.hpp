#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "polymaass/errors.hpp"

namespace polymaass {

using cplx = std::complex<double>;

namespace sf {

/// Tunable thresholds for the special-function layer. Defaults are the
/// documented library defaults; every evaluator takes one of these by const
/// reference so callers can override without global state.
struct Config {
  int max_order = 8;               ///< largest mu-derivative order accepted
  double asym_base = 30.0;         ///< Y_asym = base + mu_weight|mu|^2 + kappa_weight|kappa|^2
  double asym_mu_weight = 2.0;
  double asym_kappa_weight = 2.0;
  double cauchy_radius = 0.25;     ///< circle radius for parameter derivatives
  int cauchy_nodes = 64;           ///< trapezoid nodes on the circle (even)
  double accuracy_tol = 1e-8;      ///< relative threshold for AccuracyError
};

enum class Method {
  asymptotic_series,
  quadrature,
  cauchy_circle,
  connection_formula,
  lattice_sum,
  fourier_series,
  closed_form,
};

std::string_view to_string(Method m);

struct EvalResult {
  cplx value{};
  double abs_error_estimate = 0.0;
  Method method = Method::quadrature;
};

/// Parameters of a Whittaker evaluation: W_{kappa,mu}(y) or its order-th
/// derivative with respect to mu.
struct WhittakerQuery {
  cplx kappa{};
  cplx mu{};
  double y = 1.0;
  int order = 0;
};

// Gamma family ---------------------------------------------------------------

/// Gamma(z). Throws PoleError at non-positive integers.
cplx gamma(cplx z);
/// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
cplx rgamma(cplx z);
/// Principal-branch log Gamma(z) for Re z > 0 (used where Gamma overflows).
cplx lgamma(cplx z);
cplx digamma(cplx z);

/// Rising factorial (a)_n.
cplx pochhammer(cplx a, int n);

// Zeta family ------------------------------------------------------------------

/// Riemann zeta; alternating-series acceleration for Re s >= 1/2 and the
/// functional equation on the other side. PoleError at s = 1.
cplx zeta(cplx s);
/// The accelerated alternating series without reflection. Accurate for
/// Re s >= -2 or so; used to test the functional equation independently.
cplx zeta_series(cplx s);
/// pi^{-s/2} Gamma(s/2) zeta(s). PoleError at s in {0, 1}.
cplx completed_zeta(cplx s);
/// xi(s) = s(s-1)/2 * completed_zeta(s), entire, xi(0) = xi(1) = 1/2.
cplx completed_zeta_entire(cplx s);

/// Sum over positive divisors d of |n| of d^s. ZeroArgument for n = 0.
cplx sigma_power(long n, cplx s);

// Whittaker family ---------------------------------------------------------

/// Height above which the asymptotic series is used for W_{kappa,mu}.
double asymptotic_threshold(cplx kappa, cplx mu, const Config& cfg = {});

/// W_{kappa,mu}(y) (order must be 0). Method picked by asymptotic_threshold.
EvalResult whittaker_w(const WhittakerQuery& q, const Config& cfg = {});

/// d^m/dmu^m W_{kappa,mu}(y) by Cauchy-circle differentiation in mu.
/// order 0 forwards to whittaker_w.
EvalResult whittaker_w_mu_deriv(const WhittakerQuery& q, const Config& cfg = {});

/// All mu-derivatives of orders 0..max_order from one Cauchy circle.
std::vector<EvalResult> whittaker_w_mu_derivs(cplx kappa, cplx mu, double y, int max_order,
                                              const Config& cfg = {});

/// Term-by-term differentiated asymptotic series, truncated at the smallest
/// term. abs_error_estimate is the magnitude of the first omitted term.
EvalResult whittaker_w_asymptotic(cplx kappa, cplx mu, double y, int order = 0);

/// Integral-representation route with kappa recurrences, independent of
/// the asymptotic series. Exposed so the two routes can be compared.
EvalResult whittaker_w_quadrature(cplx kappa, cplx mu, double y);

/// M^+_{kappa,mu}(y) = W_{-kappa,mu}(y e^{i pi}), the exponentially growing
/// second solution; order > 0 gives mu-derivatives.
/// DegenerateParameter when 2 mu is (near) an integer.
EvalResult whittaker_m_plus(const WhittakerQuery& q, const Config& cfg = {});

/// M_{kappa,mu}(y) = e^{-y/2} y^{1/2+mu} M(1/2+mu-kappa, 1+2mu, y).
EvalResult whittaker_m(cplx kappa, cplx mu, double y);

/// Kummer's confluent hypergeometric series M(a, b, x).
cplx kummer_m(cplx a, cplx b, double x);

}  // namespace sf
}  // namespace polymaass
