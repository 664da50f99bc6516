#include "polymaass/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "polymaass/cauchy.hpp"

namespace polymaass::sf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kEps = 2.220446049250313e-16;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma for Re z >= 1/2
cplx lgamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx expm1c(cplx v) {
  if (std::abs(v) < 0.5) {
    cplx term = v;
    cplx sum = v;
    for (int n = 2; n < 40; ++n) {
      term *= v / static_cast<double>(n);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(v) - 1.0;
}

// Dirichlet eta by Cohen-Villegas-Zagier acceleration.
cplx eta_cvz(cplx s) {
  double t = std::abs(s.imag());
  int n = static_cast<int>((1.5708 * t + 37.5 + std::log1p(t)) / 1.7627) + 5;
  std::vector<double> d(n + 1);
  double term = 1.0;
  double acc = 1.0;
  d[0] = acc;
  for (int i = 1; i <= n; ++i) {
    term *= (n + i - 1.0) * 4.0 * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = acc;
  }
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    double w = (d[n] - d[k]) / d[n];
    cplx p = std::exp(-s * std::log(k + 1.0));
    sum += (k % 2 == 0 ? w : -w) * p;
  }
  return sum;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::asymptotic_series: return "asymptotic_series";
    case Method::quadrature: return "quadrature";
    case Method::cauchy_circle: return "cauchy_circle";
    case Method::connection_formula: return "connection_formula";
    case Method::lattice_sum: return "lattice_sum";
    case Method::fourier_series: return "fourier_series";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

// Gamma family ---------------------------------------------------------------

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  if (z.imag() == 0.0 && z.real() == std::floor(z.real()) && z.real() <= 25.0) {
    double f = 1.0;
    for (int i = 2; i < static_cast<int>(z.real()); ++i) f *= i;
    return f;
  }
  return std::exp(lgamma_right(z));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(kPi * z) * gamma(1.0 - z) / kPi;
  return std::exp(-lgamma_right(z));
}

cplx lgamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("lgamma: pole at non-positive integer");
  if (z.real() < 0.5) return std::log(kPi / std::sin(kPi * z)) - lgamma_right(1.0 - z);
  return lgamma_right(z);
}

cplx digamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
  if (z.real() < 0.5) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  cplx acc = 0.0;
  while (std::abs(z) < 16.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  cplx w = 1.0 / (z * z);
  // Bernoulli tail B_{2n}/(2n z^{2n})
  cplx tail = w * (1.0 / 12 - w * (1.0 / 120 - w * (1.0 / 252 - w * (1.0 / 240 -
              w * (1.0 / 132 - w * (691.0 / 32760 - w / 12.0))))));
  return acc + std::log(z) - 0.5 / z - tail;
}

cplx pochhammer(cplx a, int n) {
  cplx p = 1.0;
  for (int i = 0; i < n; ++i) p *= a + static_cast<double>(i);
  return p;
}

// Zeta family ------------------------------------------------------------------

cplx zeta_series(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  cplx v = (1.0 - s) * kLn2;
  return -eta_cvz(s) / expm1c(v);
}

cplx zeta(cplx s) {
  if (s.real() >= 0.5) return zeta_series(s);
  // zeta(s) = -xi(1-s) pi^{s/2} / ((1-s) Gamma(s/2+1)), regular at s = 0
  return -completed_zeta_entire(1.0 - s) * std::pow(kPi, s / 2.0) * rgamma(s / 2.0 + 1.0) /
         (1.0 - s);
}

cplx completed_zeta(cplx s) {
  if (s == cplx(0.0, 0.0) || s == cplx(1.0, 0.0))
    throw PoleError("completed_zeta: pole at s in {0, 1}");
  if (s.real() < 0.5) return completed_zeta(1.0 - s);
  return std::exp(-s / 2.0 * std::log(kPi) + lgamma_right(s / 2.0)) * zeta_series(s);
}

cplx completed_zeta_entire(cplx s) {
  if (s.real() < 0.5) return completed_zeta_entire(1.0 - s);
  cplx v = (1.0 - s) * kLn2;
  cplx ratio = (v == cplx(0.0, 0.0)) ? cplx(1.0) : v / expm1c(v);
  cplx sm1_zeta = eta_cvz(s) / kLn2 * ratio;  // (s-1) zeta(s)
  return 0.5 * s * std::exp(-s / 2.0 * std::log(kPi) + lgamma_right(s / 2.0)) * sm1_zeta;
}

cplx sigma_power(long n, cplx s) {
  if (n == 0) throw ZeroArgument("sigma_power: n must be nonzero");
  long m = n < 0 ? -n : n;
  cplx sum = 0.0;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    sum += std::exp(s * std::log(static_cast<double>(d)));
    long e = m / d;
    if (e != d) sum += std::exp(s * std::log(static_cast<double>(e)));
  }
  return sum;
}

// Whittaker family ---------------------------------------------------------

double asymptotic_threshold(cplx kappa, cplx mu, const Config& cfg) {
  return cfg.asym_base + cfg.asym_mu_weight * std::norm(mu) +
         cfg.asym_kappa_weight * std::norm(kappa);
}

EvalResult whittaker_w_asymptotic(cplx kappa, cplx mu, double y, int order) {
  if (!(y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (order < 0) throw DomainError("whittaker: negative derivative order");
  // Terms are polynomials in delta = mu' - mu truncated at degree `order`.
  const int deg = order;
  std::vector<cplx> term(deg + 1, 0.0), sum(deg + 1, 0.0), next(deg + 1);
  term[0] = 1.0;
  sum[0] = 1.0;
  const cplx a = 0.5 + mu - kappa;
  const cplx b = 0.5 - mu - kappa;
  auto norm_of = [](const std::vector<cplx>& p) {
    double m = 0.0;
    for (auto& c : p) m += std::abs(c);
    return m;
  };
  double prev_norm = 1.0;
  double omitted = 0.0;
  const int max_terms = static_cast<int>(2.0 * y) + 60;
  bool truncated = false;
  for (int n = 0; n < max_terms; ++n) {
    // multiply by (a+n+delta)(b+n-delta) * (-1/y) / (n+1)
    const cplx ca = a + static_cast<double>(n);
    const cplx cb = b + static_cast<double>(n);
    const double f = -1.0 / (y * (n + 1.0));
    for (int i = deg; i >= 0; --i) {
      // (ca + delta)(cb - delta) = ca*cb + (cb - ca) delta - delta^2
      cplx v = term[i] * ca * cb;
      if (i >= 1) v += term[i - 1] * (cb - ca);
      if (i >= 2) v -= term[i - 2];
      next[i] = v * f;
    }
    double nn = norm_of(next);
    if (nn == 0.0) {
      omitted = 0.0;
      truncated = true;
      break;
    }
    if (nn > prev_norm && n > 0) {
      omitted = std::abs(next[deg]);
      truncated = true;
      break;
    }
    if (nn < 1e-18 * norm_of(sum)) {
      omitted = std::abs(next[deg]);
      for (int i = 0; i <= deg; ++i) sum[i] += next[i];
      truncated = true;
      break;
    }
    term = next;
    for (int i = 0; i <= deg; ++i) sum[i] += term[i];
    prev_norm = nn;
  }
  if (!truncated) omitted = std::abs(term[deg]);
  double fact = 1.0;
  for (int i = 2; i <= order; ++i) fact *= i;
  cplx pref = std::exp(-0.5 * y + kappa * std::log(y));
  EvalResult r;
  r.value = pref * fact * sum[deg];
  r.abs_error_estimate = std::abs(pref) * fact * omitted + 16.0 * kEps * std::abs(r.value);
  r.method = Method::asymptotic_series;
  return r;
}

namespace {

// e^{-y/2} y^kappa / Gamma(a) * int_0^inf e^{-u} u^{a-1} (1+u/y)^b du with
// a = 1/2 + mu - kappa, b = mu + kappa - 1/2; requires Re a > 0.
EvalResult w_quadrature_core(cplx kappa, cplx mu, double y) {
  const cplx a = 0.5 + mu - kappa;
  const cplx b = mu + kappa - 0.5;
  const double half_pi = 0.5 * kPi;
  const double t_lo = std::asinh(-46.0 / (a.real() * half_pi));
  const double u_hi = 60.0 + 4.0 * (std::abs(a) + std::abs(b));
  const double t_hi = std::asinh(std::log(u_hi) / half_pi);

  auto node = [&](double t, double& mag) -> cplx {
    double lu = half_pi * std::sinh(t);
    double u = std::exp(lu);
    cplx lg = -u + a * lu + b * std::log1p(u / y) + std::log(half_pi * std::cosh(t));
    if (lg.real() < -745.0) {
      mag = 0.0;
      return 0.0;
    }
    cplx v = std::exp(lg);
    mag = std::abs(v);
    return v;
  };

  double h = 0.125;
  cplx sum = 0.0;
  double abs_sum = 0.0;
  {
    int i0 = static_cast<int>(std::floor(t_lo / h));
    int i1 = static_cast<int>(std::ceil(t_hi / h));
    for (int i = i0; i <= i1; ++i) {
      double mag;
      sum += node(i * h, mag);
      abs_sum += mag;
    }
  }
  cplx integral = sum * h;
  double diff = 0.0;
  bool converged = false;
  for (int level = 0; level < 6; ++level) {
    double hn = h / 2.0;
    int i0 = static_cast<int>(std::floor(t_lo / hn));
    int i1 = static_cast<int>(std::ceil(t_hi / hn));
    if (i0 % 2 == 0) --i0;
    for (int i = i0; i <= i1; i += 2) {
      double mag;
      sum += node(i * hn, mag);
      abs_sum += mag;
    }
    cplx refined = sum * hn;
    diff = std::abs(refined - integral);
    integral = refined;
    h = hn;
    if (diff <= 1e-15 * abs_sum * h && level >= 1) {
      converged = true;
      break;
    }
  }
  cplx pref = std::exp(-0.5 * y + kappa * std::log(y)) * rgamma(a);
  EvalResult r;
  r.value = pref * integral;
  double scale = std::abs(pref) * abs_sum * h;
  r.abs_error_estimate = std::abs(pref) * diff + 8.0 * kEps * scale;
  if (!converged) r.abs_error_estimate = std::max(r.abs_error_estimate, std::abs(pref) * diff);
  r.method = Method::quadrature;
  return r;
}

}  // namespace

EvalResult whittaker_w_quadrature(cplx kappa, cplx mu, double y) {
  if (!(y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (mu.real() < 0.0 || (mu.real() == 0.0 && mu.imag() < 0.0)) mu = -mu;
  const cplx a = 0.5 + mu - kappa;
  if (a.real() >= 1.0) return w_quadrature_core(kappa, mu, y);
  // shift kappa down so the integral converges, then recur upward:
  // W_{k+1} = (y - 2k) W_k - ((k - 1/2)^2 - mu^2) W_{k-1}
  int j = static_cast<int>(std::ceil(1.0 - a.real()));
  cplx k1 = kappa - static_cast<double>(j);
  EvalResult lo = w_quadrature_core(k1 - 1.0, mu, y);
  EvalResult hi = w_quadrature_core(k1, mu, y);
  cplx wm = lo.value, w = hi.value;
  double em = lo.abs_error_estimate, e = hi.abs_error_estimate;
  for (cplx kk = k1; kk.real() < kappa.real() - 0.5; kk += 1.0) {
    cplx c1 = y - 2.0 * kk;
    cplx c2 = (kk - 0.5) * (kk - 0.5) - mu * mu;
    cplx wn = c1 * w - c2 * wm;
    double en = std::abs(c1) * e + std::abs(c2) * em;
    wm = w;
    em = e;
    w = wn;
    e = en;
  }
  EvalResult r;
  r.value = w;
  r.abs_error_estimate = e + 8.0 * kEps * std::abs(w);
  r.method = Method::quadrature;
  return r;
}

EvalResult whittaker_w(const WhittakerQuery& q, const Config& cfg) {
  if (!(q.y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (q.order != 0) return whittaker_w_mu_deriv(q, cfg);
  if (q.y >= asymptotic_threshold(q.kappa, q.mu, cfg))
    return whittaker_w_asymptotic(q.kappa, q.mu, q.y, 0);
  EvalResult r = whittaker_w_quadrature(q.kappa, q.mu, q.y);
  if (r.abs_error_estimate > cfg.accuracy_tol * std::max(std::abs(r.value), 1e-300)) {
    EvalResult alt = whittaker_w_asymptotic(q.kappa, q.mu, q.y, 0);
    if (alt.abs_error_estimate <= cfg.accuracy_tol * std::abs(alt.value)) return alt;
    throw AccuracyError("whittaker_w: neither quadrature nor asymptotic series converged");
  }
  return r;
}

std::vector<EvalResult> whittaker_w_mu_derivs(cplx kappa, cplx mu, double y, int max_order,
                                              const Config& cfg) {
  if (!(y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (max_order < 0 || max_order > cfg.max_order)
    throw DomainError("whittaker: derivative order outside [0, " +
                      std::to_string(cfg.max_order) + "]");
  auto f = [&](cplx m) { return whittaker_w({kappa, m, y, 0}, cfg).value; };
  CauchyDerivs d = cauchy_derivatives(f, mu, cfg.cauchy_radius, cfg.cauchy_nodes, max_order);
  std::vector<EvalResult> out(max_order + 1);
  const bool asym = y >= asymptotic_threshold(kappa, std::abs(mu) + cfg.cauchy_radius, cfg);
  double fact = 1.0;
  for (int j = 0; j <= max_order; ++j) {
    if (j > 0) fact *= j;
    out[j].value = d.value[j];
    out[j].abs_error_estimate = d.err[j];
    out[j].method = Method::cauchy_circle;
    if (asym) {
      EvalResult a = whittaker_w_asymptotic(kappa, mu, y, j);
      out[j].abs_error_estimate = std::max(out[j].abs_error_estimate, std::abs(a.value - d.value[j]));
    }
    double scale = d.fmax * fact / std::pow(cfg.cauchy_radius, j);
    if (d.err[j] > cfg.accuracy_tol * scale)
      throw AccuracyError("whittaker_w_mu_deriv: Cauchy circle failed its half-node check");
  }
  return out;
}

EvalResult whittaker_w_mu_deriv(const WhittakerQuery& q, const Config& cfg) {
  if (q.order == 0) return whittaker_w(q, cfg);
  return whittaker_w_mu_derivs(q.kappa, q.mu, q.y, q.order, cfg)[q.order];
}

cplx kummer_m(cplx a, cplx b, double x) {
  if (is_nonpositive_integer(b)) throw DegenerateParameter("kummer_m: b is a non-positive integer");
  cplx term = 1.0;
  cplx sum = 1.0;
  const int max_terms = static_cast<int>(4.0 * std::abs(x)) + 2000;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + static_cast<double>(n)) * x / ((b + static_cast<double>(n)) * (n + 1.0));
    sum += term;
    if (n > std::abs(x) && std::abs(term) < 1e-17 * std::abs(sum)) break;
    if (term == cplx(0.0, 0.0)) break;
  }
  return sum;
}

EvalResult whittaker_m(cplx kappa, cplx mu, double y) {
  if (!(y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (0.5 * y > 700.0) throw OverflowError("whittaker_m: e^{y/2} overflows");
  EvalResult r;
  r.value = std::exp(-0.5 * y + (0.5 + mu) * std::log(y)) * kummer_m(0.5 + mu - kappa, 1.0 + 2.0 * mu, y);
  r.abs_error_estimate = 64.0 * kEps * std::abs(r.value);
  r.method = Method::connection_formula;
  return r;
}

EvalResult whittaker_m_plus(const WhittakerQuery& q, const Config& cfg) {
  if (!(q.y > 0.0)) throw DomainError("whittaker: y must be positive");
  if (0.5 * q.y > 700.0) throw OverflowError("whittaker_m_plus: e^{y/2} overflows");
  if (q.order > 0) {
    if (q.order > cfg.max_order) throw DomainError("whittaker_m_plus: derivative order too large");
    auto f = [&](cplx m) { return whittaker_m_plus({q.kappa, m, q.y, 0}, cfg).value; };
    CauchyDerivs d = cauchy_derivatives(f, q.mu, cfg.cauchy_radius, cfg.cauchy_nodes, q.order);
    return {d.value[q.order], d.err[q.order], Method::cauchy_circle};
  }
  const cplx two_mu = 2.0 * q.mu;
  if (std::abs(two_mu - std::round(two_mu.real())) < 1e-9)
    throw DegenerateParameter("whittaker_m_plus: 2 mu is an integer");
  const cplx i(0.0, 1.0);
  const cplx mu = q.mu, kappa = q.kappa;
  cplx c1 = gamma(-two_mu) * rgamma(0.5 - mu + kappa) * i * std::exp(i * kPi * mu);
  cplx c2 = gamma(two_mu) * rgamma(0.5 + mu + kappa) * i * std::exp(-i * kPi * mu);
  cplx m1 = whittaker_m(kappa, mu, q.y).value;
  cplx m2 = whittaker_m(kappa, -mu, q.y).value;
  EvalResult r;
  r.value = c1 * m1 + c2 * m2;
  r.abs_error_estimate = 64.0 * kEps * (std::abs(c1 * m1) + std::abs(c2 * m2));
  r.method = Method::connection_formula;
  return r;
}

}  // namespace polymaass::sf
