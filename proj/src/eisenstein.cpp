#include "polymaass/eisenstein.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "polymaass/cauchy.hpp"

namespace polymaass {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr double kCenterGuard = 1e-3;

// Neumaier-compensated complex accumulator.
struct KahanC {
  double re = 0, im = 0, cre = 0, cim = 0;
  static void add1(double& s, double& c, double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v)) {
      c += (s - t) + v;
    } else {
      c += (v - t) + s;
    }
    s = t;
  }
  void add(cplx v) {
    add1(re, cre, v.real());
    add1(im, cim, v.imag());
  }
  cplx value() const { return {re + cre, im + cim}; }
};

// Gaussian elimination with partial pivoting; A is n x n row-major.
std::vector<cplx> solve(std::vector<cplx> A, std::vector<cplx> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A[col * n + c], A[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      cplx f = A[r * n + col] / A[col * n + col];
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    cplx acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= A[r * n + c] * x[c];
    x[r] = acc / A[r * n + r];
  }
  return x;
}

// S from P(r_i) = S - sum_j B_j (r_i/R)^{2-d-j}
cplx extrapolate(const std::vector<double>& rho, const std::vector<cplx>& partial, cplx d) {
  const int n = static_cast<int>(rho.size());
  std::vector<cplx> A(n * n);
  for (int i = 0; i < n; ++i) {
    A[i * n] = 1.0;
    for (int j = 1; j < n; ++j)
      A[i * n + j] = std::exp((2.0 - d - static_cast<double>(j - 1)) * std::log(rho[i]));
  }
  return solve(A, partial)[0];
}

// Real roots of the polynomial factors entering the constant term.
struct RootRatio {
  std::vector<double> num;
  std::vector<double> den;

  void cancel() {
    for (auto it = den.begin(); it != den.end();) {
      auto hit = std::find(num.begin(), num.end(), *it);
      if (hit != num.end()) {
        num.erase(hit);
        it = den.erase(it);
      } else {
        ++it;
      }
    }
  }
  cplx eval(cplx s) const {
    cplx v = 1.0;
    for (double r : num) v *= s - r;
    for (double r : den) {
      if (s == cplx(r, 0.0)) throw PoleError("constant term: pole at s = " + std::to_string(r));
      v /= s - r;
    }
    return v;
  }
};

std::vector<double> plus_roots(int k) {
  std::vector<double> r;
  if (k > 0) {
    for (int i = 0; i < k / 2; ++i) r.push_back(-0.5 * k - i);
  } else if (k < 0) {
    for (int i = 1; i <= -k / 2; ++i) r.push_back(i);
  }
  return r;
}

std::vector<double> minus_roots(int k) {
  std::vector<double> r;
  if (k > 0) {
    for (int i = 0; i < k / 2; ++i) r.push_back(-i);
  } else if (k < 0) {
    for (int i = -k / 2 + 1; i <= -k; ++i) r.push_back(i);
  }
  return r;
}

double sign_k(int k) { return (k / 2) % 2 == 0 ? 1.0 : -1.0; }

// Coefficient A_k (gamma - log 4 pi + 2 H_k) of y^c and A_k of y^c log y at the center.
std::pair<double, double> center_coeffs(int k) {
  int ak = std::abs(k);
  double A = 1.0;
  for (int i = 1; i < ak; i += 2) A *= 0.5 * i;  // Gamma((1+|k|)/2)/sqrt(pi)
  double H = 0.0;
  for (int i = 1; i < ak; i += 2) H += 1.0 / i;
  return {A * (kEuler - std::log(4.0 * kPi) + 2.0 * H), A};
}

cplx doubly_multiplier(int k, cplx s) {
  return (s + 0.5 * k) * (s + 0.5 * k - 1.0);
}

cplx generic_constant_term(int k, cplx s, double y, bool doubly) {
  ConstantTermCoeffs c = constant_term_coeffs(SpectralParam(k, s), doubly);
  double ly = std::log(y);
  return c.plus * std::exp(s * ly) + c.minus * std::exp((1.0 - static_cast<double>(k) - s) * ly);
}

cplx center_constant_term(int k, double y, bool doubly) {
  auto [c0, c1] = center_coeffs(k);
  double c = 0.5 * (1.0 - k);
  double v = (c0 + c1 * std::log(y)) * std::pow(y, c);
  return doubly ? -0.25 * v : v;
}

// Even in eps = s - c: interpolate in w = eps^2 through the exact center value
// and four generic points outside the guard annulus.
cplx guarded_constant_term(int k, cplx s, double y, bool doubly) {
  const double c = 0.5 * (1.0 - k);
  const cplx eps = s - c;
  const double dist = std::abs(eps);
  if (dist == 0.0) return center_constant_term(k, y, doubly);
  if (dist > kCenterGuard) return generic_constant_term(k, s, y, doubly);
  const cplx dir = eps / dist;
  std::array<cplx, 5> w{};
  std::array<cplx, 5> g{};
  w[0] = 0.0;
  g[0] = center_constant_term(k, y, doubly);
  for (int j = 1; j <= 4; ++j) {
    cplx e = 2.0 * kCenterGuard * j * dir;
    w[j] = e * e;
    g[j] = generic_constant_term(k, c + e, y, doubly);
  }
  const cplx wt = eps * eps;
  cplx sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    cplx l = 1.0;
    for (int j = 0; j < 5; ++j)
      if (j != i) l *= (wt - w[j]) / (w[i] - w[j]);
    sum += g[i] * l;
  }
  return sum;
}

struct FourierSum {
  cplx value;
  double tail;
  double scale;
  int modes;
};

// Completed (or doubly-completed) series from N modes, plus the size of the
// first omitted pair of modes.
FourierSum fourier_sum(const SpectralParam& p, const PointUHP& z, int N, bool doubly,
                       const sf::Config& cfg) {
  const int k = p.weight();
  const cplx s = p.s();
  const double y = z.y();
  const cplx mu = s + 0.5 * (k - 1);
  const cplx mult = doubly ? doubly_multiplier(k, s) : cplx(1.0);
  const double ypow = std::pow(y, -0.5 * k);
  cplx c0 = doubly ? constant_term_doubly(p, y) : constant_term(p, y);
  cplx sum = c0;
  double scale = std::abs(c0);
  auto mode = [&](long n) {
    double sg = n > 0 ? 1.0 : -1.0;
    long an = n > 0 ? n : -n;
    cplx a = fourier_coefficient(p, n);
    if (a == cplx(0.0, 0.0) || mult == cplx(0.0, 0.0)) return cplx(0.0);
    cplx w = sf::whittaker_w({sg * 0.5 * k, mu, 4.0 * kPi * an * y, 0}, cfg).value;
    return mult * a * ypow * w * std::polar(1.0, 2.0 * kPi * static_cast<double>(n) * z.x());
  };
  for (long n = 1; n <= N; ++n) {
    cplx plus = mode(n);
    cplx minus = mode(-n);
    sum += plus;
    sum += minus;
    scale = std::max({scale, std::abs(plus), std::abs(minus)});
  }
  double tail = std::abs(mode(N + 1)) + std::abs(mode(-(N + 1)));
  return {sum, tail, std::max(scale, std::abs(sum)), N};
}

sf::EvalResult fourier_route(const SpectralParam& p, const PointUHP& z, const TruncationPolicy& t,
                             bool doubly, int* used = nullptr) {
  t.validate();
  const bool automatic = t.mode_count == 0;
  int N = automatic ? auto_mode_count(z.y(), t.target_tol) : t.mode_count;
  for (;;) {
    FourierSum f = fourier_sum(p, z, N, doubly, t.special);
    if (f.tail <= t.target_tol * f.scale || f.tail == 0.0) {
      if (used) *used = N;
      return {f.value, f.tail + 1e-15 * f.scale, sf::Method::fourier_series};
    }
    if (!automatic || N > 400)
      throw TailError("fourier route: first omitted mode exceeds target_tol with N = " +
                      std::to_string(N));
    N += 2;
  }
}

}  // namespace

PointUHP::PointUHP(double x, double y) : x_(x), y_(y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw DomainError("PointUHP: y must be positive and finite");
}

SpectralParam::SpectralParam(int k, cplx s) : k_(k), s_(s) {
  if (k % 2 != 0) throw DomainError("weight must be even");
}

void TruncationPolicy::validate() const {
  if (lattice_radius < 2) throw DomainError("TruncationPolicy: lattice_radius must be >= 2");
  if (mode_count < 0) throw DomainError("TruncationPolicy: mode_count must be >= 1 (0 = auto)");
  if (!(target_tol > 0.0 && target_tol < 1.0))
    throw DomainError("TruncationPolicy: target_tol must lie in (0, 1)");
}

cplx Matrix2::act(cplx z) const {
  return (static_cast<double>(a) * z + static_cast<double>(b)) / cocycle(z);
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

cplx completion_factor(int k, cplx s) {
  return std::exp(-(s + 0.5 * k) * std::log(kPi)) * sf::gamma(s + 0.5 * k + 0.5 * std::abs(k));
}

sf::EvalResult lattice_sum_E(const SpectralParam& p, const PointUHP& z, const TruncationPolicy& t) {
  t.validate();
  const int k = p.weight();
  const cplx s = p.s();
  if (!(s.real() > 1.0 - 0.5 * k + 0.25))
    throw DomainError("lattice_sum_E: requires Re s > 1 - k/2 + 1/4");
  const int R = t.lattice_radius;
  const cplx zz = z.z();
  const cplx ex = s + 0.5 * k;
  auto term = [&](long m, long n) {
    cplx w = static_cast<double>(m) * zz + static_cast<double>(n);
    return std::exp(-ex * std::log(std::norm(w)) - cplx(0.0, k * std::arg(w)));
  };
  const bool extrap = t.extrapolate && R >= 14;
  std::vector<int> radii;
  if (extrap)
    for (int i = 1; i <= 7; ++i) radii.push_back(static_cast<int>(std::lround(R * i / 7.0)));
  std::vector<cplx> partial;
  KahanC total;
  cplx last_shell = 0.0;
  size_t next = 0;
  for (long r = 1; r <= R; ++r) {
    KahanC shell;
    shell.add(term(0, r));
    for (long m = 1; m < r; ++m) {
      shell.add(term(m, r));
      shell.add(term(m, -r));
    }
    for (long n = -r; n <= r; ++n) shell.add(term(r, n));
    last_shell = shell.value();
    total.add(last_shell);
    if (next < radii.size() && r == radii[next]) {
      partial.push_back(total.value());
      ++next;
    }
  }
  const cplx ys = std::exp(s * std::log(z.y()));
  const cplx d = 2.0 * s + static_cast<double>(k);
  sf::EvalResult out;
  out.method = sf::Method::lattice_sum;
  if (extrap) {
    std::vector<double> rho;
    for (int r : radii) rho.push_back(static_cast<double>(r) / R);
    cplx s7 = extrapolate(rho, partial, d);
    std::vector<double> rho6(rho.begin() + 1, rho.end());
    std::vector<cplx> p6(partial.begin() + 1, partial.end());
    cplx s6 = extrapolate(rho6, p6, d);
    out.value = ys * s7;
    out.abs_error_estimate = std::abs(ys) * std::abs(s7 - s6);
  } else {
    out.value = ys * total.value();
    out.abs_error_estimate = std::abs(ys) * std::abs(last_shell) * R / (d.real() - 2.0);
  }
  if (out.abs_error_estimate > t.target_tol * std::abs(out.value))
    throw TailError("lattice_sum_E: tail estimate exceeds target_tol at radius " + std::to_string(R));
  return out;
}

ConstantTermCoeffs constant_term_coeffs(const SpectralParam& p, bool doubly) {
  const int k = p.weight();
  const cplx s = p.s();
  const double c = p.center();
  if (p.is_center()) throw DomainError("constant_term_coeffs: s is the center, use the log basis");
  RootRatio plus{plus_roots(k), {-0.5 * k, c}};
  RootRatio minus{minus_roots(k), {1.0 - 0.5 * k, c}};
  if (doubly) {
    for (RootRatio* r : {&plus, &minus}) {
      r->num.push_back(-0.5 * k);
      r->num.push_back(1.0 - 0.5 * k);
    }
  }
  plus.cancel();
  minus.cancel();
  const cplx xi = sf::completed_zeta_entire(2.0 * s + static_cast<double>(k));
  // xi(2 - 2s - k) = xi(2s + k - 1)
  const cplx xi_dual = sf::completed_zeta_entire(2.0 * s + static_cast<double>(k) - 1.0);
  return {0.5 * xi * plus.eval(s), sign_k(k) * 0.5 * xi_dual * minus.eval(s)};
}

ConstantTermCoeffs center_constant_term_coeffs(int k, bool doubly) {
  auto [c0, c1] = center_coeffs(k);
  double f = doubly ? -0.25 : 1.0;
  return {f * c1, f * c0};
}

cplx constant_term(const SpectralParam& p, double y) {
  if (!(y > 0.0)) throw DomainError("constant_term: y must be positive");
  return guarded_constant_term(p.weight(), p.s(), y, false);
}

cplx constant_term_doubly(const SpectralParam& p, double y) {
  if (!(y > 0.0)) throw DomainError("constant_term: y must be positive");
  return guarded_constant_term(p.weight(), p.s(), y, true);
}

cplx fourier_coefficient(const SpectralParam& p, long n) {
  if (n == 0) throw ZeroArgument("fourier_coefficient: n must be nonzero");
  const int k = p.weight();
  const cplx s = p.s();
  // Gamma(s + k/2 + |k|/2) / Gamma(s + k/2 (1 + sgn n)) as a polynomial
  cplx poly = 1.0;
  if (k > 0 && n < 0) {
    for (int i = 0; i < k; ++i) poly *= s + static_cast<double>(i);
  } else if (k < 0 && n > 0) {
    for (int i = 1; i <= -k; ++i) poly *= s - static_cast<double>(i);
  }
  // |n|^{-s-k/2} sigma_{2s+k-1}(|n|) = sum_{d | n} (d^2/n)^{s+k/2} / d
  const long an = n < 0 ? -n : n;
  const cplx e = s + 0.5 * k;
  cplx div = 0.0;
  for (long d = 1; d <= an; ++d) {
    if (an % d != 0) continue;
    div += std::exp(e * std::log(static_cast<double>(d) * d / an)) / static_cast<double>(d);
  }
  return sign_k(k) * poly * div;
}

int auto_mode_count(double y, double tol) {
  return static_cast<int>(std::ceil(std::max(1.0, -std::log(tol) / (2.0 * kPi * y)))) + 2;
}

int fourier_mode_count(const SpectralParam& p, const PointUHP& z, const TruncationPolicy& t, bool doubly) {
  TruncationPolicy a = t;
  a.mode_count = 0;
  int N = 0;
  fourier_route(p, z, a, doubly, &N);
  return N;
}

sf::EvalResult fourier_eval_completed(const SpectralParam& p, const PointUHP& z,
                                      const TruncationPolicy& t) {
  return fourier_route(p, z, t, false);
}

sf::EvalResult doubly_completed_eval(const SpectralParam& p, const PointUHP& z,
                                     const TruncationPolicy& t) {
  return fourier_route(p, z, t, true);
}

sf::EvalResult eisenstein_E(const SpectralParam& p, const PointUHP& z, const TruncationPolicy& t) {
  sf::EvalResult r = fourier_eval_completed(p, z, t);
  const int k = p.weight();
  const cplx s = p.s();
  cplx inv = std::exp((s + 0.5 * k) * std::log(kPi)) * sf::rgamma(s + 0.5 * k + 0.5 * std::abs(k));
  r.value *= inv;
  r.abs_error_estimate *= std::abs(inv);
  return r;
}

std::vector<sf::EvalResult> taylor_coeffs(int k, cplx s0, const PointUHP& z, int max_n,
                                          const TruncationPolicy& t) {
  t.validate();
  if (max_n < 0 || max_n > t.special.max_order)
    throw DomainError("taylor_coeffs: order outside [0, " + std::to_string(t.special.max_order) + "]");
  TruncationPolicy fixed = t;
  if (fixed.mode_count == 0) {
    // one N for every node: the largest the adaptive route needs on the circle
    const double r = t.special.cauchy_radius;
    for (cplx d : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)})
      fixed.mode_count = std::max(fixed.mode_count, fourier_mode_count(SpectralParam(k, s0 + r * d), z, t, true) + 2);
  }
  auto f = [&](cplx s) { return doubly_completed_eval(SpectralParam(k, s), z, fixed).value; };
  CauchyDerivs d = cauchy_derivatives(f, s0, t.special.cauchy_radius, t.special.cauchy_nodes, max_n);
  std::vector<sf::EvalResult> out(max_n + 1);
  double fact = 1.0;
  for (int j = 0; j <= max_n; ++j) {
    if (j > 0) fact *= j;
    out[j] = {d.value[j], d.err[j], sf::Method::cauchy_circle};
    if (d.err[j] > t.special.accuracy_tol * d.fmax * fact / std::pow(t.special.cauchy_radius, j))
      throw AccuracyError("taylor_coeffs: circle nodes disagree with the half-node refinement");
  }
  return out;
}

sf::EvalResult taylor_coeff(int k, cplx s0, const PointUHP& z, int n, const TruncationPolicy& t) {
  return taylor_coeffs(k, s0, z, n, t)[n];
}

sf::EvalResult maass_G(cplx alpha, cplx beta, const PointUHP& z, const TruncationPolicy& t) {
  cplx kk = alpha - beta;
  double kr = std::round(kk.real());
  if (std::abs(kk.imag()) > 1e-12 || std::abs(kk.real() - kr) > 1e-12 ||
      std::fmod(std::abs(kr), 2.0) != 0.0)
    throw DomainError("maass_G: alpha - beta must be an even integer");
  const int k = static_cast<int>(kr);
  sf::EvalResult e = eisenstein_E(SpectralParam(k, beta), z, t);
  cplx f = 2.0 * std::exp(-beta * std::log(z.y()));
  return {f * e.value, std::abs(f) * e.abs_error_estimate, e.method};
}

}  // namespace polymaass
