#include "polymaass/mode_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "polymaass/errors.hpp"

namespace polymaass {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool close(cplx a, cplx b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

// phi(s0), phi'(s0), phi''(s0) for the s-dependent mode factor
using Deriv3 = std::array<cplx, 3>;

// Mode action T(u_{k,n}(s)) = phi_n(s) u_{k',n'}(s') with s' affine in s, then
// differentiated j times (Leibniz). For xi the image is antiholomorphic in s:
// phi is taken in t = conj(s), s' = -t, and the coefficients are conjugated.
template <class Phi>
FormExpansion mode_action(const FormExpansion& f, int new_k, cplx new_s0, bool flip_n,
                          bool conjugate, Phi phi) {
  FormExpansion g(new_k, new_s0, f.depth(), f.truncation());
  const int m = f.depth();
  const bool center = f.is_center();
  for (long n = -f.truncation(); n <= f.truncation(); ++n) {
    if (n == 0) continue;
    const Deriv3 d = phi(n);
    const long n2 = flip_n ? -n : n;
    for (int j = 0; j < m; ++j) {
      cplx c = f.mode(n, j);
      if (c == cplx(0.0, 0.0)) continue;
      if (conjugate) c = std::conj(c);
      const int order = center ? 2 * j : j;
      for (int i = 0; i <= std::min(order, 2); ++i) {
        const int rest = order - i;
        // odd derivatives vanish at the center
        if (center && rest % 2 != 0) continue;
        double sg = (conjugate && rest % 2 != 0) ? -1.0 : 1.0;
        const int j2 = center ? rest / 2 : rest;
        g.set_mode(n2, j2, g.mode(n2, j2) + c * sg * binom(order, i) * d[i]);
      }
    }
  }
  return g;
}

void add_atoms(FormExpansion& g, const AtomList& atoms) {
  for (const ConstTermAtom& a : atoms) g.add_atom(a);
}

cplx ypow(cplx e, double ly) { return std::exp(e * ly); }

}  // namespace

// --- constant atoms ---------------------------------------------------------

cplx eval_atoms(const AtomList& atoms, double y) {
  const double ly = std::log(y);
  cplx sum = 0.0;
  for (const ConstTermAtom& a : atoms) sum += a.coefficient * std::pow(ly, a.log_power) * ypow(a.exponent, ly);
  return sum;
}

// d/dy of c L^j y^s = c (s L^j + j L^{j-1}) y^{s-1}
static AtomList derivative(const ConstTermAtom& a) {
  AtomList out;
  out.push_back({a.log_power, a.exponent - 1.0, a.coefficient * a.exponent});
  if (a.log_power > 0)
    out.push_back({a.log_power - 1, a.exponent - 1.0, a.coefficient * static_cast<double>(a.log_power)});
  return out;
}

AtomList atoms_raising(const AtomList& a, int k) {
  AtomList out;
  for (const ConstTermAtom& t : a) {
    for (const ConstTermAtom& d : derivative(t)) out.push_back(d);
    out.push_back({t.log_power, t.exponent - 1.0, t.coefficient * static_cast<double>(k)});
  }
  return out;
}

AtomList atoms_lowering(const AtomList& a, int) {
  AtomList out;
  for (const ConstTermAtom& t : a)
    for (ConstTermAtom d : derivative(t)) {
      d.exponent += 2.0;
      d.coefficient = -d.coefficient;
      out.push_back(d);
    }
  return out;
}

AtomList atoms_xi(const AtomList& a, int k) {
  AtomList out;
  for (const ConstTermAtom& t : a)
    for (ConstTermAtom d : derivative(t)) {
      d.exponent = std::conj(d.exponent) + static_cast<double>(k);
      d.coefficient = std::conj(d.coefficient);
      out.push_back(d);
    }
  return out;
}

AtomList atoms_laplacian(const AtomList& a, int k) {
  AtomList out;
  for (const ConstTermAtom& t : a) {
    const cplx s = t.exponent;
    const double j = t.log_power;
    out.push_back({t.log_power, s, t.coefficient * s * (s + static_cast<double>(k) - 1.0)});
    if (t.log_power >= 1) out.push_back({t.log_power - 1, s, t.coefficient * j * (2.0 * s - 1.0 + static_cast<double>(k))});
    if (t.log_power >= 2) out.push_back({t.log_power - 2, s, t.coefficient * j * (j - 1.0)});
  }
  return out;
}

// --- FormExpansion ----------------------------------------------------------

FormExpansion::FormExpansion(int k, cplx s0, int depth, int N)
    : k_(k), s0_(s0), m_(depth), N_(N) {
  if (k % 2 != 0) throw DomainError("weight must be even");
  if (depth < 1 || depth > 8) throw DomainError("FormExpansion: depth must lie in [1, 8]");
  if (N < 1) throw DomainError("FormExpansion: truncation N must be positive");
  center_ = s0 == cplx(0.5 * (1.0 - k), 0.0);
  if (center_ && depth > 5) throw DomainError("FormExpansion: depth at the center is limited to 5");
  plus_.assign(m_, 0.0);
  minus_.assign(m_, 0.0);
  modes_.assign(static_cast<std::size_t>(2 * N_) * m_, 0.0);
}

std::size_t FormExpansion::mode_index(long n, int j) const {
  if (n == 0 || n < -N_ || n > N_) throw DomainError("FormExpansion: mode index outside 0 < |n| <= N");
  if (j < 0 || j >= m_) throw DomainError("FormExpansion: derivative index outside [0, depth)");
  long pos = n < 0 ? n + N_ : n + N_ - 1;
  return static_cast<std::size_t>(pos) * m_ + j;
}

cplx FormExpansion::constant(int j, Slot sl) const {
  if (j < 0 || j >= m_) throw DomainError("FormExpansion: constant index outside [0, depth)");
  return sl == Slot::plus ? plus_[j] : minus_[j];
}

void FormExpansion::set_constant(int j, Slot sl, cplx c) {
  if (j < 0 || j >= m_) throw DomainError("FormExpansion: constant index outside [0, depth)");
  (sl == Slot::plus ? plus_ : minus_)[j] = c;
}

cplx FormExpansion::mode(long n, int j) const { return modes_[mode_index(n, j)]; }

void FormExpansion::set_mode(long n, int j, cplx c) { modes_[mode_index(n, j)] = c; }

int FormExpansion::slot_log_power(int j, Slot sl) const {
  if (!center_) return j;
  return sl == Slot::minus ? 2 * j : 2 * j + 1;
}

cplx FormExpansion::slot_exponent(Slot sl) const {
  return sl == Slot::plus ? s0_ : 1.0 - static_cast<double>(k_) - s0_;
}

AtomList FormExpansion::const_atoms() const {
  AtomList out;
  for (int j = 0; j < m_; ++j)
    for (Slot sl : {Slot::plus, Slot::minus}) {
      cplx c = constant(j, sl);
      if (c != cplx(0.0, 0.0)) out.push_back({slot_log_power(j, sl), slot_exponent(sl), c});
    }
  return out;
}

void FormExpansion::add_atom(const ConstTermAtom& a) {
  if (a.coefficient == cplx(0.0, 0.0)) return;
  int j = -1;
  Slot sl = Slot::plus;
  if (center_) {
    if (close(a.exponent, s0_)) {
      j = a.log_power / 2;
      sl = a.log_power % 2 == 0 ? Slot::minus : Slot::plus;
    }
  } else if (close(a.exponent, slot_exponent(Slot::plus))) {
    j = a.log_power;
  } else if (close(a.exponent, slot_exponent(Slot::minus))) {
    j = a.log_power;
    sl = Slot::minus;
  }
  if (j < 0 || j >= m_) throw DomainError("FormExpansion: constant atom outside the expansion's basis");
  set_constant(j, sl, constant(j, sl) + a.coefficient);
}

double max_coeff_diff(const FormExpansion& a, const FormExpansion& b) {
  if (a.weight() != b.weight() || a.depth() != b.depth() || a.truncation() != b.truncation() ||
      !close(a.base(), b.base()))
    throw DomainError("max_coeff_diff: expansions have different shapes");
  double d = 0.0;
  for (int j = 0; j < a.depth(); ++j) {
    for (Slot sl : {Slot::plus, Slot::minus}) d = std::max(d, std::abs(a.constant(j, sl) - b.constant(j, sl)));
    for (long n = -a.truncation(); n <= a.truncation(); ++n)
      if (n != 0) d = std::max(d, std::abs(a.mode(n, j) - b.mode(n, j)));
  }
  return d;
}

FormExpansion scaled(const FormExpansion& f, cplx c) {
  FormExpansion g = f;
  for (int j = 0; j < f.depth(); ++j) {
    for (Slot sl : {Slot::plus, Slot::minus}) g.set_constant(j, sl, c * f.constant(j, sl));
    for (long n = -f.truncation(); n <= f.truncation(); ++n)
      if (n != 0) g.set_mode(n, j, c * f.mode(n, j));
  }
  return g;
}

FormExpansion added(const FormExpansion& a, const FormExpansion& b) {
  max_coeff_diff(a, b);  // shape check
  FormExpansion g = a;
  for (int j = 0; j < a.depth(); ++j) {
    for (Slot sl : {Slot::plus, Slot::minus}) g.set_constant(j, sl, a.constant(j, sl) + b.constant(j, sl));
    for (long n = -a.truncation(); n <= a.truncation(); ++n)
      if (n != 0) g.set_mode(n, j, a.mode(n, j) + b.mode(n, j));
  }
  return g;
}

GrowthFit fit_growth(const FormExpansion& f) {
  std::vector<double> lx, ly;
  for (long n = 1; n <= f.truncation(); ++n) {
    double v = 0.0;
    for (int j = 0; j < f.depth(); ++j) v = std::max({v, std::abs(f.mode(n, j)), std::abs(f.mode(-n, j))});
    if (v > 0.0) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(v));
    }
  }
  if (lx.size() < 2) return {ly.empty() ? 0.0 : std::exp(ly[0]), 0.0};
  const double cnt = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / cnt;
    my += ly[i] / cnt;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double A = sxy / sxx;
  // smallest C with |c_n| <= C n^A on the data
  double logC = -1e300;
  for (std::size_t i = 0; i < lx.size(); ++i) logC = std::max(logC, ly[i] - A * lx[i]);
  return {std::exp(logC), A};
}

// --- JSON -------------------------------------------------------------------

std::string to_json(const FormExpansion& f) {
  using ojson = nlohmann::ordered_json;
  auto pair = [](cplx c) { return ojson::array({c.real(), c.imag()}); };
  ojson j;
  j["weight"] = f.weight();
  j["s0"] = pair(f.base());
  j["depth"] = f.depth();
  j["N"] = f.truncation();
  j["is_center"] = f.is_center();
  ojson cs = ojson::array();
  for (int i = 0; i < f.depth(); ++i)
    for (Slot sl : {Slot::plus, Slot::minus}) {
      ojson e;
      e["j"] = i;
      e["sign"] = sl == Slot::plus ? "+" : "-";
      e["c"] = pair(f.constant(i, sl));
      cs.push_back(e);
    }
  j["const"] = cs;
  ojson ms = ojson::array();
  for (long n = -f.truncation(); n <= f.truncation(); ++n) {
    if (n == 0) continue;
    for (int i = 0; i < f.depth(); ++i) {
      ojson e;
      e["n"] = n;
      e["j"] = i;
      e["c"] = pair(f.mode(n, i));
      ms.push_back(e);
    }
  }
  j["modes"] = ms;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

FormExpansion expansion_from_json(const std::string& text) {
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    auto cx = [](const nlohmann::json& a) { return cplx(a.at(0).get<double>(), a.at(1).get<double>()); };
    FormExpansion f(j.at("weight").get<int>(), cx(j.at("s0")), j.at("depth").get<int>(), j.at("N").get<int>());
    if (j.contains("is_center") && j.at("is_center").get<bool>() != f.is_center())
      throw DomainError("FormExpansion JSON: is_center disagrees with s0");
    for (const auto& e : j.at("const")) {
      std::string sg = e.at("sign").get<std::string>();
      if (sg != "+" && sg != "-") throw DomainError("FormExpansion JSON: sign must be \"+\" or \"-\"");
      f.set_constant(e.at("j").get<int>(), sg == "+" ? Slot::plus : Slot::minus, cx(e.at("c")));
    }
    for (const auto& e : j.at("modes")) f.set_mode(e.at("n").get<long>(), e.at("j").get<int>(), cx(e.at("c")));
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("FormExpansion JSON: ") + e.what());
  }
}

// --- evaluation -------------------------------------------------------------

std::vector<sf::EvalResult> u_basis(int k, long n, cplx s0, double y, int max_j, bool is_center,
                                    const sf::Config& cfg) {
  if (n == 0) throw ZeroArgument("u_basis: n must be nonzero");
  if (!(y > 0.0)) throw DomainError("u_basis: y must be positive");
  const double kappa = (n > 0 ? 0.5 : -0.5) * k;
  const cplx mu = s0 + 0.5 * (k - 1);
  const double Y = 4.0 * kPi * std::abs(static_cast<double>(n)) * y;
  const double yk = std::pow(y, -0.5 * k);
  const int order = is_center ? 2 * max_j : max_j;
  std::vector<sf::EvalResult> all;
  if (order == 0)
    all.push_back(sf::whittaker_w({kappa, mu, Y, 0}, cfg));
  else
    all = sf::whittaker_w_mu_derivs(kappa, mu, Y, order, cfg);
  std::vector<sf::EvalResult> out;
  for (int j = 0; j <= max_j; ++j) {
    sf::EvalResult r = all[is_center ? 2 * j : j];
    r.value *= yk;
    r.abs_error_estimate *= yk;
    out.push_back(r);
  }
  return out;
}

cplx eval_expansion(const FormExpansion& f, const PointUHP& z, const sf::Config& cfg) {
  cplx sum = eval_atoms(f.const_atoms(), z.y());
  for (long n = -f.truncation(); n <= f.truncation(); ++n) {
    if (n == 0) continue;
    int top = -1;
    for (int j = 0; j < f.depth(); ++j)
      if (f.mode(n, j) != cplx(0.0, 0.0)) top = j;
    if (top < 0) continue;
    std::vector<sf::EvalResult> u = u_basis(f.weight(), n, f.base(), z.y(), top, f.is_center(), cfg);
    cplx t = 0.0;
    for (int j = 0; j <= top; ++j) t += f.mode(n, j) * u[j].value;
    sum += t * std::polar(1.0, 2.0 * kPi * static_cast<double>(n) * z.x());
  }
  return sum;
}

FormExpansion eisenstein_expansion(const SpectralParam& p, int N, bool doubly) {
  const int k = p.weight();
  const cplx s = p.s();
  FormExpansion f(k, s, 1, N);
  ConstantTermCoeffs c = p.is_center() ? center_constant_term_coeffs(k, doubly) : constant_term_coeffs(p, doubly);
  f.set_constant(0, Slot::plus, c.plus);
  f.set_constant(0, Slot::minus, c.minus);
  const cplx mult = doubly ? (s + 0.5 * k) * (s + 0.5 * k - 1.0) : cplx(1.0);
  for (long n = 1; n <= N; ++n) {
    f.set_mode(n, 0, mult * fourier_coefficient(p, n));
    f.set_mode(-n, 0, mult * fourier_coefficient(p, -n));
  }
  return f;
}

// --- operators --------------------------------------------------------------

FormExpansion apply_raising(const FormExpansion& f) {
  const int k = f.weight();
  const cplx s = f.base();
  FormExpansion g = mode_action(f, k + 2, s - 1.0, false, false, [&](long n) -> Deriv3 {
    if (n > 0) return {-1.0, 0.0, 0.0};
    return {(s + static_cast<double>(k)) * (1.0 - s), 1.0 - static_cast<double>(k) - 2.0 * s, -2.0};
  });
  add_atoms(g, atoms_raising(f.const_atoms(), k));
  return g;
}

FormExpansion apply_lowering(const FormExpansion& f) {
  const int k = f.weight();
  const cplx s = f.base();
  FormExpansion g = mode_action(f, k - 2, s + 1.0, false, false, [&](long n) -> Deriv3 {
    if (n < 0) return {1.0, 0.0, 0.0};
    return {s * (s + static_cast<double>(k) - 1.0), 2.0 * s + static_cast<double>(k) - 1.0, 2.0};
  });
  add_atoms(g, atoms_lowering(f.const_atoms(), k));
  return g;
}

FormExpansion apply_xi(const FormExpansion& f) {
  const int k = f.weight();
  const cplx t = std::conj(f.base());
  FormExpansion g = mode_action(f, 2 - k, -t, true, true, [&](long n) -> Deriv3 {
    if (n < 0) return {-1.0, 0.0, 0.0};
    return {t * (1.0 - static_cast<double>(k) - t), 1.0 - static_cast<double>(k) - 2.0 * t, -2.0};
  });
  add_atoms(g, atoms_xi(f.const_atoms(), k));
  return g;
}

FormExpansion apply_laplacian(const FormExpansion& f) {
  const int k = f.weight();
  const cplx s = f.base();
  FormExpansion g = mode_action(f, k, s, false, false, [&](long) -> Deriv3 {
    return {s * (s + static_cast<double>(k) - 1.0), 2.0 * s + static_cast<double>(k) - 1.0, 2.0};
  });
  add_atoms(g, atoms_laplacian(f.const_atoms(), k));
  return g;
}

// --- finite differences -----------------------------------------------------

namespace {

struct Cross {
  cplx c, xp, xm, yp, ym;
  double h;
  cplx dx() const { return (xp - xm) / (2.0 * h); }
  cplx dy() const { return (yp - ym) / (2.0 * h); }
};

Cross sample(const PointFunction& g, const PointUHP& z, double h, bool centre) {
  if (!(h > 0.0) || !(h < 0.25 * z.y()))
    throw DomainError("finite difference: step must satisfy 0 < h < y/4");
  const double x = z.x(), y = z.y();
  Cross c{};
  c.h = h;
  if (centre) c.c = g(z);
  c.xp = g(PointUHP(x + h, y));
  c.xm = g(PointUHP(x - h, y));
  c.yp = g(PointUHP(x, y + h));
  c.ym = g(PointUHP(x, y - h));
  return c;
}

}  // namespace

cplx numeric_laplacian(const PointFunction& g, int k, const PointUHP& z, double h) {
  Cross c = sample(g, z, h, true);
  const double y = z.y();
  cplx lap = (c.xp + c.xm + c.yp + c.ym - 4.0 * c.c) / (h * h);
  return y * y * lap - cplx(0.0, k) * y * (c.dx() + cplx(0.0, 1.0) * c.dy());
}

cplx numeric_xi(const PointFunction& g, int k, const PointUHP& z, double h) {
  Cross c = sample(g, z, h, false);
  cplx dzbar = 0.5 * (c.dx() + cplx(0.0, 1.0) * c.dy());
  return cplx(0.0, 2.0) * std::pow(z.y(), k) * std::conj(dzbar);
}

cplx numeric_raising(const PointFunction& g, int k, const PointUHP& z, double h) {
  Cross c = sample(g, z, h, true);
  return cplx(0.0, 1.0) * c.dx() + c.dy() + static_cast<double>(k) * c.c / z.y();
}

cplx numeric_lowering(const PointFunction& g, int, const PointUHP& z, double h) {
  Cross c = sample(g, z, h, false);
  const double y2 = z.y() * z.y();
  return cplx(0.0, 1.0) * y2 * c.dx() - y2 * c.dy();
}

Richardson richardson(const std::function<cplx(double)>& d, double h) {
  cplx a = d(h), b = d(0.5 * h);
  return {a, b, (4.0 * b - a) / 3.0};
}

}  // namespace polymaass
