#include "polymaass/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "polymaass/errors.hpp"

namespace polymaass {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

ojson cx(cplx c) { return ojson::array({c.real(), c.imag()}); }

std::string dump(const ojson& j) { return j.dump(); }

double coeff_scale(const FormExpansion& f) {
  double s = 0.0;
  for (int j = 0; j < f.depth(); ++j) {
    for (Slot sl : {Slot::plus, Slot::minus}) s = std::max(s, std::abs(f.constant(j, sl)));
    for (long n = -f.truncation(); n <= f.truncation(); ++n)
      if (n != 0) s = std::max(s, std::abs(f.mode(n, j)));
  }
  return s;
}

FormExpansion constants_only(const FormExpansion& f) {
  FormExpansion g(f.weight(), f.base(), f.depth(), f.truncation());
  for (int j = 0; j < f.depth(); ++j)
    for (Slot sl : {Slot::plus, Slot::minus}) g.set_constant(j, sl, f.constant(j, sl));
  return g;
}

// Mode count fixed for all points of a stencil reaching down to y - reach.
TruncationPolicy stencil_policy(const VerifyConfig& cfg, const SpectralParam& p, const PointUHP& z, double reach) {
  TruncationPolicy t = cfg.trunc;
  if (t.mode_count == 0) t.mode_count = fourier_mode_count(p, PointUHP(z.x(), z.y() - reach), t) + 2;
  return t;
}

CheckReport nonvanishing(std::string name, std::string inputs, cplx value, double scale, double tol) {
  double inv = std::abs(value) > 0.0 ? 10.0 * tol * scale / std::abs(value) : HUGE_VAL;
  CheckReport r = make_report(std::move(name), std::move(inputs), tol * inv, 0.0, tol);
  r.extras["abs_value"] = std::abs(value);
  r.extras["local_scale"] = scale;
  return r;
}

ojson base_inputs(int k, const PointUHP& z, cplx s) {
  ojson j;
  j["k"] = k;
  j["z"] = cx(z.z());
  j["s"] = cx(s);
  return j;
}

}  // namespace

CheckReport make_report(std::string name, std::string inputs, double residual, double scale,
                        double tol) {
  CheckReport r;
  r.check_name = std::move(name);
  r.inputs = std::move(inputs);
  r.residual = residual;
  r.scale = scale;
  r.tolerance = tol;
  r.passed = std::isfinite(residual) && std::isfinite(scale) && residual <= tol * std::max(scale, 1.0);
  return r;
}

// --- individual checks ------------------------------------------------------

CheckReport check_functional_equation(int k, const PointUHP& z, cplx s, double tol,
                                      const VerifyConfig& cfg) {
  SpectralParam p(k, s);
  cplx a = doubly_completed_eval(p, z, cfg.trunc).value;
  cplx b = doubly_completed_eval(p.dual(), z, cfg.trunc).value;
  return make_report("functional_equation", dump(base_inputs(k, z, s)), std::abs(a - b), std::abs(a), tol);
}

CheckReport check_eigen_equation(int k, const PointUHP& z, cplx s, double h, double tol,
                                 const VerifyConfig& cfg) {
  SpectralParam p(k, s);
  TruncationPolicy t = stencil_policy(cfg, p, z, h);
  PointFunction f = [&](const PointUHP& w) { return fourier_eval_completed(p, w, t).value; };
  const cplx fz = f(z);
  const cplx lam = p.eigenvalue();
  Richardson r = richardson([&](double hh) { return numeric_laplacian(f, k, z, hh) - lam * fz; }, h);
  // terms of Delta_k at the coarse stencil; the sum cancels, so each term sets the scale
  const double y = z.y();
  const cplx fe = f(PointUHP(z.x() + h, y)), fw = f(PointUHP(z.x() - h, y));
  const cplx fn = f(PointUHP(z.x(), y + h)), fs = f(PointUHP(z.x(), y - h));
  const double terms = std::max({y * y * std::abs(fe - 2.0 * fz + fw) / (h * h), y * y * std::abs(fn - 2.0 * fz + fs) / (h * h),
                                 std::abs(k) * y * std::abs(fe - fw) / (2.0 * h), std::abs(k) * y * std::abs(fn - fs) / (2.0 * h)});
  const double value_scale = std::max(std::abs(lam * fz), std::abs(r.coarse + lam * fz));
  ojson in = base_inputs(k, z, s);
  in["h"] = h;
  CheckReport rep = make_report("eigen_equation", dump(in), std::abs(r.coarse), std::max(value_scale, terms), tol);
  rep.extras["value_scale"] = value_scale;
  const double ratio = std::abs(r.coarse) / std::abs(r.fine);
  rep.extras["ratio"] = ratio;
  rep.extras["richardson_residual"] = std::abs(r.value);
  // worst-case rounding in the h/2 stencil; the ratio only means something well above it
  const double hf = 0.5 * h;
  const double eps = std::numeric_limits<double>::epsilon() * std::max(std::abs(fz), 1e-300);
  const double floor = 4.0 * eps * y * y / (hf * hf) + 2.0 * std::abs(k) * y * eps / hf + eps * std::abs(lam);
  const bool resolved = std::abs(r.fine) >= 8.0 * floor;
  rep.extras["roundoff_floor"] = floor;
  rep.extras["ratio_resolved"] = resolved ? 1.0 : 0.0;
  if (resolved) rep.passed = rep.passed && ratio >= 3.0 && ratio <= 5.0;
  return rep;
}

std::vector<CheckReport> check_xi_action(int k, const PointUHP& z, cplx s, double tol_fd,
                                         double tol_exact, const VerifyConfig& cfg) {
  SpectralParam p(k, s);
  const cplx sb = std::conj(s);
  SpectralParam q(2 - k, -sb);
  const cplx factor = k <= 0 ? cplx(1.0) : sb * (sb + static_cast<double>(k) - 1.0);
  const std::string in = dump(base_inputs(k, z, s));
  std::vector<CheckReport> out;

  const double h = 1e-4 * z.y();
  TruncationPolicy t = stencil_policy(cfg, p, z, h);
  t.mode_count = std::max(t.mode_count, fourier_mode_count(q, z, cfg.trunc));
  PointFunction f = [&](const PointUHP& w) { return fourier_eval_completed(p, w, t).value; };
  const cplx rhs = factor * fourier_eval_completed(q, z, t).value;
  Richardson r = richardson([&](double hh) { return numeric_xi(f, k, z, hh); }, h);
  CheckReport fd = make_report("xi_action/finite_difference", in, std::abs(r.value - rhs), std::abs(rhs), tol_fd);
  fd.extras["ratio"] = std::abs(r.coarse - rhs) / std::abs(r.fine - rhs);
  out.push_back(fd);

  FormExpansion lhs = apply_xi(eisenstein_expansion(p, cfg.expansion_modes));
  FormExpansion want = scaled(eisenstein_expansion(q, cfg.expansion_modes), factor);
  out.push_back(make_report("xi_action/modes", in, max_coeff_diff(lhs, want), coeff_scale(want), tol_exact));

  // constant term alone: y^s lands in the y^{1-k'-s'} slot and vice versa
  FormExpansion ct = constants_only(eisenstein_expansion(p, 1));
  FormExpansion lc = apply_xi(ct);
  FormExpansion wc = constants_only(scaled(eisenstein_expansion(q, 1), factor));
  CheckReport slots = make_report("xi_action/constant_slots", in, max_coeff_diff(lc, wc), coeff_scale(wc), tol_exact);
  if (!p.is_center()) {
    FormExpansion plus_only(k, s, 1, 1);
    plus_only.set_constant(0, Slot::plus, ct.constant(0, Slot::plus));
    FormExpansion img = apply_xi(plus_only);
    if (img.constant(0, Slot::plus) != cplx(0.0, 0.0)) slots.passed = false;
    slots.extras["swap_residual"] = std::abs(img.constant(0, Slot::minus) - wc.constant(0, Slot::minus));
  }
  out.push_back(slots);
  return out;
}

CheckReport check_taylor_recursion(int k, const PointUHP& z, cplx s0, int n, double tol,
                                   const VerifyConfig& cfg) {
  if (n < 0 || n > 6) throw DomainError("check_taylor_recursion: n must lie in [0, 6]");
  const double h = 0.01 * z.y();
  TruncationPolicy t = cfg.trunc;
  t.special.cauchy_radius = cfg.taylor_radius;
  t.special.cauchy_nodes = cfg.taylor_nodes;
  if (t.mode_count == 0) {
    const PointUHP low(z.x(), z.y() - h);
    for (cplx d : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)})
      t.mode_count = std::max(t.mode_count, fourier_mode_count(SpectralParam(k, s0 + cfg.taylor_radius * d), low, cfg.trunc, true) + 2);
  }
  auto T = [&](const PointUHP& w) { return taylor_coeffs(k, s0, w, n, t); };
  std::vector<sf::EvalResult> tz = T(z);
  PointFunction tn = [&](const PointUHP& w) { return T(w)[n].value; };
  Richardson r = richardson([&](double hh) { return numeric_laplacian(tn, k, z, hh); }, h);
  const cplx lam = s0 * (s0 + static_cast<double>(k) - 1.0);
  const cplx a = lam * tz[n].value;
  const cplx b = n >= 1 ? static_cast<double>(n) * (2.0 * s0 + static_cast<double>(k) - 1.0) * tz[n - 1].value : 0.0;
  const cplx c = n >= 2 ? static_cast<double>(n * (n - 1)) * tz[n - 2].value : 0.0;
  ojson in = base_inputs(k, z, s0);
  in["n"] = n;
  const double scale = std::max({std::abs(r.value), std::abs(a), std::abs(b), std::abs(c)});
  CheckReport rep = make_report(SpectralParam(k, s0).is_center() ? "taylor_recursion/center" : "taylor_recursion",
                                dump(in), std::abs(r.value - a - b - c), scale, tol);
  rep.extras["coarse_residual"] = std::abs(r.coarse - a - b - c);
  return rep;
}

std::vector<CheckReport> check_taylor_vanishing(int k, const PointUHP& z, double tol,
                                                const VerifyConfig& cfg) {
  TruncationPolicy t = cfg.trunc;
  t.special.cauchy_radius = cfg.taylor_radius;
  t.special.cauchy_nodes = cfg.taylor_nodes;
  auto local_scale = [&](cplx s0) {
    double m = 0.0;
    for (cplx d : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)})
      m = std::max(m, std::abs(doubly_completed_eval(SpectralParam(k, s0 + cfg.taylor_radius * d), z, t).value));
    return m;
  };
  std::vector<CheckReport> out;
  auto record = [&](cplx s0) {
    ojson in;
    in["k"] = k;
    in["z"] = cx(z.z());
    in["s0"] = cx(s0);
    return dump(in);
  };
  const cplx zero_pt = -0.5 * k;
  {
    auto T = taylor_coeffs(k, zero_pt, z, 1, t);
    double S = local_scale(zero_pt);
    if (k != 0) {
      out.push_back(make_report("taylor_vanishing/T0_zero", record(zero_pt), std::abs(T[0].value), S, tol));
      out.push_back(nonvanishing("taylor_vanishing/T1_nonzero", record(zero_pt), T[1].value, S, tol));
    } else {
      out.push_back(nonvanishing("taylor_vanishing/T0_nonzero_at_pole", record(zero_pt), T[0].value, S, tol));
    }
  }
  const cplx c = 0.5 * (1.0 - k);
  {
    auto T = taylor_coeffs(k, c, z, 1, t);
    out.push_back(make_report("taylor_vanishing/T1_center", record(c), std::abs(T[1].value), local_scale(c), tol));
  }
  const cplx g = c + cplx(0.37, 0.21);
  out.push_back(nonvanishing("taylor_vanishing/T0_generic", record(g), taylor_coeffs(k, g, z, 0, t)[0].value,
                             local_scale(g), tol));
  return out;
}

CheckReport check_modularity(int k, const std::string& label, const PointFunction& f,
                             const PointUHP& z, const Matrix2& g, double tol) {
  if (g.a * g.d - g.b * g.c != 1) throw DomainError("check_modularity: matrix must have determinant 1");
  const cplx gz = g.act(z.z());
  if (!(gz.imag() > 0.05)) throw DomainError("check_modularity: image point too close to the real axis");
  const cplx j = std::pow(g.cocycle(z.z()), k);
  const cplx fz = f(z);
  const cplx fg = f(PointUHP(gz));
  ojson in;
  in["k"] = k;
  in["f"] = label;
  in["z"] = cx(z.z());
  in["gamma"] = ojson::array({g.a, g.b, g.c, g.d});
  return make_report("modularity", dump(in), std::abs(fg - j * fz), std::abs(fz) * std::abs(j), tol);
}

std::vector<CheckReport> check_whittaker_suite(const std::vector<sf::WhittakerQuery>& grid,
                                               const WhittakerTolerances& tol) {
  std::vector<CheckReport> out;
  const cplx i(0.0, 1.0);
  for (double y : {1.0, 10.0, 40.0}) {
    ojson in;
    in["y"] = y;
    cplx w = sf::whittaker_w({0.0, 0.5, y, 0}).value;
    out.push_back(make_report("whittaker/closed_form", dump(in), std::abs(w * std::exp(0.5 * y) - 1.0), 1.0,
                              tol.closed_form));
  }
  for (const sf::WhittakerQuery& q : grid) {
    ojson in;
    in["kappa"] = cx(q.kappa);
    in["mu"] = cx(q.mu);
    in["y"] = q.y;
    const std::string rec = dump(in);
    const cplx kappa = q.kappa, mu = q.mu;
    const double y = q.y;
    auto W = [&](double t) { return sf::whittaker_w({kappa, mu, t, 0}).value; };
    const cplx wy = W(y);
    // ODE W'' + (-1/4 + kappa/y + (1/4 - mu^2)/y^2) W = 0
    const double hode = std::min(1e-2, 0.05 * y);
    Richardson r = richardson(
        [&](double h) {
          cplx d2 = (W(y + h) - 2.0 * wy + W(y - h)) / (h * h);
          return d2 + (-0.25 + kappa / y + (0.25 - mu * mu) / (y * y)) * wy;
        },
        hode);
    CheckReport ode = make_report("whittaker/ode", rec, std::abs(r.value) / std::abs(wy), 1.0, tol.ode);
    ode.extras["ratio"] = std::abs(r.coarse) / std::abs(r.fine);
    out.push_back(ode);

    // Wronskians need 2 mu outside the integers
    const cplx tm = 2.0 * mu;
    if (std::abs(tm - std::round(tm.real())) > 1e-6 && 0.5 * y < 600.0) {
      const double h = 1e-3 * std::max(1.0, y / 10.0);
      auto d = [&](auto fn) {
        return (8.0 * (fn(y + h) - fn(y - h)) - (fn(y + 2 * h) - fn(y - 2 * h))) / (12 * h);
      };
      auto Mp = [&](double t) { return sf::whittaker_m_plus({kappa, mu, t, 0}).value; };
      auto Mm = [&](double t) { return sf::whittaker_m(kappa, mu, t).value; };
      const cplx wr1 = wy * d(Mp) - d(W) * Mp(y);
      const cplx e1 = std::exp(-i * kPi * kappa);
      out.push_back(make_report("whittaker/wronskian_W_Mplus", rec, std::abs(wr1 - e1), std::abs(e1), tol.wronskian));
      const cplx wr2 = Mm(y) * d(W) - d(Mm) * wy;
      const cplx e2 = -sf::gamma(1.0 + 2.0 * mu) * sf::rgamma(0.5 + mu - kappa);
      out.push_back(make_report("whittaker/wronskian_M_W", rec, std::abs(wr2 - e2), std::abs(e2), tol.wronskian));
    }

    // asymptotic series against quadrature beyond the threshold
    const double ya = std::max(y, sf::asymptotic_threshold(kappa, mu));
    sf::EvalResult as = sf::whittaker_w_asymptotic(kappa, mu, ya);
    sf::EvalResult qu = sf::whittaker_w_quadrature(kappa, mu, ya);
    ojson ina = in;
    ina["y"] = ya;
    CheckReport aq = make_report("whittaker/asymptotic_vs_quadrature", dump(ina),
                                 std::abs(as.value - qu.value) / (2.0 * as.abs_error_estimate), 0.0, 1.0);
    aq.extras["first_omitted_term"] = as.abs_error_estimate;
    out.push_back(aq);

    // odd mu-derivatives vanish at mu = 0
    if (kappa.imag() == 0.0) {
      auto dv = sf::whittaker_w_mu_derivs(kappa, 0.0, y, 5);
      ojson in0 = in;
      in0["mu"] = cx(0.0);
      for (int m : {1, 3, 5}) {
        ojson inm = in0;
        inm["order"] = m;
        out.push_back(make_report("whittaker/odd_mu_derivative", dump(inm),
                                  std::abs(dv[m].value) / std::abs(dv[m - 1].value), 1.0, tol.odd_derivative));
      }
    }
  }
  // decay of W and growth of M+ at the envelope rate
  for (const sf::WhittakerQuery& q : grid) {
    const double y = 20.0;
    const cplx tm = 2.0 * q.mu;
    if (std::abs(tm - std::round(tm.real())) <= 1e-6) continue;
    ojson in;
    in["kappa"] = cx(q.kappa);
    in["mu"] = cx(q.mu);
    in["y"] = y;
    const double env = y / 2.0 - q.kappa.real() * std::log(2.0);
    double lw = std::log(std::abs(sf::whittaker_w({q.kappa, q.mu, 2 * y, 0}).value / sf::whittaker_w({q.kappa, q.mu, y, 0}).value));
    double lm = std::log(std::abs(sf::whittaker_m_plus({q.kappa, q.mu, 2 * y, 0}).value /
                                  sf::whittaker_m_plus({q.kappa, q.mu, y, 0}).value));
    out.push_back(make_report("whittaker/decay_W", dump(in), std::abs(lw + env) / (y / 2.0), 1.0, 0.05));
    out.push_back(make_report("whittaker/growth_Mplus", dump(in), std::abs(lm - env) / (y / 2.0), 1.0, 0.05));
  }
  return out;
}

std::vector<CheckReport> check_operator_ladder(const FormExpansion& f, double tol) {
  const double k = f.weight();
  ojson in;
  in["k"] = f.weight();
  in["s0"] = cx(f.base());
  in["depth"] = f.depth();
  in["N"] = f.truncation();
  in["coefficient_scale"] = coeff_scale(f);
  const std::string rec = dump(in);
  FormExpansion lap = apply_laplacian(f);
  FormExpansion lr = apply_lowering(apply_raising(f));
  FormExpansion rl = apply_raising(apply_lowering(f));
  FormExpansion xx = apply_xi(apply_xi(f));
  const double sc = std::max({coeff_scale(lap), coeff_scale(lr), coeff_scale(rl), std::abs(k) * coeff_scale(f)});
  std::vector<CheckReport> out;
  out.push_back(make_report("ladder/lower_raise", rec, max_coeff_diff(lr, added(scaled(lap, -1.0), scaled(f, k))), sc, tol));
  out.push_back(make_report("ladder/raise_lower", rec, max_coeff_diff(rl, scaled(lap, -1.0)), sc, tol));
  out.push_back(make_report("ladder/commutator", rec, max_coeff_diff(added(rl, scaled(lr, -1.0)), scaled(f, -k)), sc, tol));
  out.push_back(make_report("ladder/xi_xi", rec, max_coeff_diff(xx, lap), std::max(sc, coeff_scale(xx)), tol));
  if (f.depth() == 1) {
    // depth 1: L R f = -(lambda - k) f, so R is injective unless lambda = k
    const cplx lam = f.eigenvalue();
    out.push_back(make_report("ladder/lower_raise_eigen", rec, max_coeff_diff(lr, scaled(f, -(lam - k))), sc, tol));
    if (std::abs(lam - k) > 1e-8) {
      FormExpansion back = scaled(lr, -1.0 / (lam - k));
      out.push_back(make_report("ladder/raise_injective", rec, max_coeff_diff(back, f), coeff_scale(f), tol));
    }
  }
  return out;
}

std::vector<CheckReport> check_mode_actions(const FormExpansion& f, const PointUHP& z, double tol) {
  ojson in;
  in["k"] = f.weight();
  in["s0"] = cx(f.base());
  in["depth"] = f.depth();
  in["N"] = f.truncation();
  in["z"] = cx(z.z());
  const std::string rec = dump(in);
  const int k = f.weight();
  PointFunction g = [&](const PointUHP& w) { return eval_expansion(f, w); };
  const double h = 2e-3 * z.y();
  std::vector<CheckReport> out;
  auto one = [&](const char* name, const FormExpansion& exact,
                 cplx (*num)(const PointFunction&, int, const PointUHP&, double)) {
    const cplx want = eval_expansion(exact, z);
    Richardson r = richardson([&](double hh) { return num(g, k, z, hh); }, h);
    CheckReport rep = make_report(name, rec, std::abs(r.value - want), std::abs(want), tol);
    rep.extras["ratio"] = std::abs(r.coarse - want) / std::abs(r.fine - want);
    out.push_back(rep);
  };
  one("mode_action/laplacian", apply_laplacian(f), numeric_laplacian);
  one("mode_action/raising", apply_raising(f), numeric_raising);
  one("mode_action/lowering", apply_lowering(f), numeric_lowering);
  one("mode_action/xi", apply_xi(f), numeric_xi);
  return out;
}

CheckReport check_route_agreement(int k, const PointUHP& z, cplx s, double tol, const VerifyConfig& cfg) {
  SpectralParam p(k, s);
  TruncationPolicy lt = cfg.trunc;
  lt.target_tol = std::max(lt.target_tol, 1e-10);
  sf::EvalResult lat = lattice_sum_E(p, z, lt);
  const cplx a = completion_factor(k, s) * lat.value;
  const cplx b = fourier_eval_completed(p, z, cfg.trunc).value;
  CheckReport r = make_report("route_agreement", dump(base_inputs(k, z, s)), std::abs(a - b), std::abs(b), tol);
  r.extras["lattice_error_estimate"] = std::abs(completion_factor(k, s)) * lat.abs_error_estimate;
  return r;
}

CheckReport check_constant_term_extraction(int k, cplx s, double y, double tol, const VerifyConfig& cfg) {
  SpectralParam p(k, s);
  TruncationPolicy lt = cfg.trunc;
  lt.target_tol = std::max(lt.target_tol, 1e-10);
  const int nodes = 64;
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) sum += lattice_sum_E(p, PointUHP(static_cast<double>(j) / nodes, y), lt).value;
  const cplx extracted = completion_factor(k, s) * sum / static_cast<double>(nodes);
  const cplx formula = constant_term(p, y);
  ojson in;
  in["k"] = k;
  in["s"] = cx(s);
  in["y"] = y;
  return make_report("constant_term/extraction", dump(in), std::abs(extracted - formula), std::abs(formula), tol);
}

CheckReport check_constant_term_center(int k, double y, bool doubly, double tol) {
  const double c = 0.5 * (1 - k);
  auto ct = [&](cplx s) {
    return doubly ? constant_term_doubly(SpectralParam(k, s), y) : constant_term(SpectralParam(k, s), y);
  };
  auto g = [&](double h) { return 0.5 * (ct(c + h) + ct(c - h)); };
  // even in h: two Richardson levels from h = 0.005, 0.01, 0.02
  const cplx r1 = (4.0 * g(0.005) - g(0.01)) / 3.0, r2 = (4.0 * g(0.01) - g(0.02)) / 3.0;
  const cplx lim = (16.0 * r1 - r2) / 15.0;
  const cplx exact = ct(c);
  ojson in;
  in["k"] = k;
  in["y"] = y;
  in["doubly"] = doubly;
  return make_report("constant_term/center", dump(in), std::abs(lim - exact), std::abs(exact), tol);
}

CheckReport check_growth(int k, cplx s, int N, double margin) {
  SpectralParam p(k, s);
  GrowthFit g = fit_growth(eisenstein_expansion(p, N));
  const double bound = (2.0 * s + static_cast<double>(k) - 1.0).real() + margin;
  ojson in;
  in["k"] = k;
  in["s"] = cx(s);
  in["N"] = N;
  CheckReport r = make_report("growth", dump(in), std::max(0.0, g.A - bound), 0.0, 1e-12);
  r.passed = r.passed && g.A < bound;
  r.extras["A"] = g.A;
  r.extras["C"] = g.C;
  r.extras["bound"] = bound;
  return r;
}

std::vector<CheckReport> check_maass_G(int k, cplx s, const PointUHP& z, double tol, const VerifyConfig& cfg) {
  const cplx alpha = s + static_cast<double>(k), beta = s;
  const double h = 1e-3 * z.y();
  TruncationPolicy t = stencil_policy(cfg, SpectralParam(k, s), z, h);
  const std::string rec = dump(base_inputs(k, z, s));
  std::vector<CheckReport> out;
  const cplx G = maass_G(alpha, beta, z, t).value;
  const cplx E = eisenstein_E(SpectralParam(k, s), z, t).value;
  const cplx back = 0.5 * std::exp(s * std::log(z.y())) * G;
  out.push_back(make_report("maass_G/conversion", rec, std::abs(back - E), std::abs(E), tol));
  // Omega_{s+k,s} = -Delta_k - 2 s y d/dy annihilates G(.; s+k, s)
  PointFunction g = [&](const PointUHP& w) { return maass_G(alpha, beta, w, t).value; };
  const double x0 = z.x(), y0 = z.y();
  double sc = 0.0;
  Richardson r = richardson(
      [&](double hh) {
        cplx gy = (g(PointUHP(x0, y0 + hh)) - g(PointUHP(x0, y0 - hh))) / (2 * hh);
        cplx lap = numeric_laplacian(g, k, z, hh);
        sc = std::max({sc, std::abs(lap), std::abs(2.0 * s * y0 * gy)});
        return -lap - 2.0 * s * y0 * gy;
      },
      h);
  CheckReport om = make_report("maass_G/omega", rec, std::abs(r.value), sc, tol);
  om.extras["ratio"] = std::abs(r.coarse) / std::abs(r.fine);
  out.push_back(om);
  return out;
}

// --- suites -----------------------------------------------------------------

namespace {

using Task = std::function<std::vector<CheckReport>()>;

const std::vector<int> kWeights{-4, -2, 0, 2, 4};

std::vector<int> weights(const SuiteOptions& o) { return o.has_weight ? std::vector<int>{o.weight} : kWeights; }

double tol_or(const SuiteOptions& o, double d) { return o.tol > 0.0 ? o.tol : d; }

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  PointUHP point(double ylo, double yhi) {
    double x = uni(-0.5, 0.5);
    return PointUHP(x, uni(ylo, yhi));
  }
  cplx param(double relo, double rehi, double imlo, double imhi) {
    double re = uni(relo, rehi);
    return {re, uni(imlo, imhi)};
  }
};

// k = 0 singly-completed poles at s = 0, 1
bool near_k0_pole(int k, cplx s) { return k == 0 && (std::abs(s) < 0.15 || std::abs(s - 1.0) < 0.15); }

Task one(std::function<CheckReport()> f) {
  return [f] { return std::vector<CheckReport>{f()}; };
}

void route_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k, double tol,
                 const VerifyConfig& cfg) {
  for (int k : ks) {
    const double lo = std::max(2.0, 1.0 - 0.5 * k + 0.5);
    for (int i = 0; i < per_k; ++i) {
      PointUHP z = sm.point(0.8, 3.0);
      cplx s = sm.param(lo, lo + 1.5, -3.0, 3.0);
      ts.push_back(one([=] { return check_route_agreement(k, z, s, tol, cfg); }));
    }
  }
}

void fe_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k, double tol,
              const VerifyConfig& cfg) {
  for (int k : ks)
    for (int i = 0; i < per_k; ++i) {
      PointUHP z = sm.point(0.8, 2.0);
      cplx s = sm.param(-3.0, 3.0, -5.0, 5.0);
      ts.push_back(one([=] { return check_functional_equation(k, z, s, tol, cfg); }));
    }
}

void eigen_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k, double tol,
                 const VerifyConfig& cfg) {
  for (int k : ks)
    for (int i = 0; i < per_k;) {
      PointUHP z = sm.point(0.8, 2.0);
      cplx s = sm.param(-1.0, 2.0, -2.0, 2.0);
      if (near_k0_pole(k, s)) continue;
      ts.push_back(one([=] { return check_eigen_equation(k, z, s, 1e-3, tol, cfg); }));
      ++i;
    }
}

void xi_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k, double tol_fd,
              double tol_exact, const VerifyConfig& cfg) {
  for (int k : ks)
    for (int i = 0; i < per_k; ++i) {
      PointUHP z = sm.point(0.8, 2.0);
      cplx s = sm.param(-1.0, 2.0, 0.3, 2.0);
      ts.push_back([=] { return check_xi_action(k, z, s, tol_fd, tol_exact, cfg); });
    }
}

void taylor_rec_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int count, double tol,
                      const VerifyConfig& cfg) {
  std::uniform_int_distribution<std::size_t> pick(0, ks.size() - 1);
  for (int i = 0; i < count; ++i) {
    int k = ks[pick(sm.rng)];
    PointUHP z = sm.point(0.8, 1.6);
    cplx s0 = sm.param(-1.0, 1.5, -1.0, 1.0);
    for (int n = 1; n <= 3; ++n) ts.push_back(one([=] { return check_taylor_recursion(k, z, s0, n, tol, cfg); }));
  }
  for (int k : ks) {
    PointUHP z = sm.point(0.8, 1.6);
    const cplx c = 0.5 * (1.0 - k);
    ts.push_back(one([=] { return check_taylor_recursion(k, z, c, 2, tol, cfg); }));
  }
}

void vanishing_tasks(std::vector<Task>& ts, const std::vector<int>& ks, double tol, const VerifyConfig& cfg) {
  for (int k : ks) {
    PointUHP z = k % 4 != 0 ? PointUHP(0.3, 1.2) : PointUHP(0.0, 1.0);  // k = 2 mod 4 vanishes at i
    ts.push_back([=] { return check_taylor_vanishing(k, z, tol, cfg); });
  }
}

std::vector<sf::WhittakerQuery> whittaker_grid() {
  return {{1.0, 0.3, 6.0, 0}, {-2.0, {0.2, 0.7}, 3.0, 0}, {0.0, 1.3, 1.5, 0},
          {2.0, {0.1, 0.5}, 9.0, 0}, {-1.0, 1.2, 4.0, 0}, {0.5, 0.0, 2.0, 0}};
}

void ladder_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int count, double tol) {
  std::uniform_int_distribution<std::size_t> pick(0, ks.size() - 1);
  std::uniform_int_distribution<int> depth(1, 3);
  for (int i = 0; i < count; ++i) {
    int k = ks[pick(sm.rng)];
    cplx s0 = (i % 5 == 4) ? cplx(0.5 * (1 - k), 0.0) : sm.param(-2.0, 2.0, -2.0, 2.0);
    FormExpansion f(k, s0, depth(sm.rng), 4);
    for (int j = 0; j < f.depth(); ++j) {
      f.set_constant(j, Slot::plus, sm.param(-1, 1, -1, 1));
      f.set_constant(j, Slot::minus, sm.param(-1, 1, -1, 1));
      for (long n = 1; n <= 4; ++n) {
        f.set_mode(n, j, sm.param(-1, 1, -1, 1));
        f.set_mode(-n, j, sm.param(-1, 1, -1, 1));
      }
    }
    ts.push_back([=] { return check_operator_ladder(f, tol); });
  }
}

void mode_action_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, double tol) {
  for (int k : ks)
    for (bool center : {false, true}) {
      cplx s0 = center ? cplx(0.5 * (1 - k), 0.0) : sm.param(-1.0, 1.5, -1.0, 1.0);
      FormExpansion f(k, s0, 2, 2);
      for (int j = 0; j < 2; ++j) {
        f.set_constant(j, Slot::plus, sm.param(-1, 1, -1, 1));
        f.set_constant(j, Slot::minus, sm.param(-1, 1, -1, 1));
        for (long n = 1; n <= 2; ++n) {
          f.set_mode(n, j, sm.param(-1, 1, -1, 1));
          f.set_mode(-n, j, sm.param(-1, 1, -1, 1));
        }
      }
      PointUHP z = sm.point(0.8, 1.5);
      ts.push_back([=] { return check_mode_actions(f, z, tol); });
    }
}

void constant_term_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k, double tol_ext,
                         double tol_center, const VerifyConfig& cfg) {
  for (int k : ks) {
    const double lo = std::max(2.0, 1.0 - 0.5 * k + 0.5);
    for (int i = 0; i < per_k; ++i) {
      cplx s = sm.param(lo, lo + 1.0, -2.0, 2.0);
      double y = sm.uni(0.8, 2.0);
      ts.push_back(one([=] { return check_constant_term_extraction(k, s, y, tol_ext, cfg); }));
    }
    for (double y : {0.7, 1.9})
      for (bool doubly : {false, true}) ts.push_back(one([=] { return check_constant_term_center(k, y, doubly, tol_center); }));
  }
}

void growth_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, int per_k) {
  for (int k : ks)
    for (int i = 0; i < per_k;) {
      // sampled on the Re s >= (1-k)/2 side of the functional equation
      const double c = 0.5 * (1 - k);
      cplx s = sm.param(c, c + 3.0, -4.0, 4.0);
      if (near_k0_pole(k, s)) continue;
      ts.push_back(one([=] { return check_growth(k, s, 60, 1.5); }));
      ++i;
    }
}

void modularity_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, double tol,
                      const VerifyConfig& cfg) {
  const Matrix2 S = Matrix2::S(), T = Matrix2::T();
  for (int k : ks) {
    cplx s = sm.param(0.6, 1.6, 0.2, 1.5);
    PointUHP z(0.4, 1.1);
    for (Matrix2 g : {S, T, S * T, T * S}) {
      ts.push_back(one([=] {
        PointFunction f = [=](const PointUHP& w) { return fourier_eval_completed(SpectralParam(k, s), w, cfg.trunc).value; };
        ojson lab;
        lab["completed"] = cx(s);
        return check_modularity(k, dump(lab), f, z, g, tol);
      }));
    }
    ts.push_back(one([=] {
      TruncationPolicy t = cfg.trunc;
      t.special.cauchy_radius = cfg.taylor_radius;
      t.special.cauchy_nodes = cfg.taylor_nodes;
      PointFunction f = [=](const PointUHP& w) { return taylor_coeff(k, s, w, 2, t).value; };
      ojson lab;
      lab["taylor_T2"] = cx(s);
      return check_modularity(k, dump(lab), f, PointUHP(0.4, 1.1), S * T, std::max(tol, 1e-8));
    }));
  }
}

void maass_tasks(std::vector<Task>& ts, Sampler& sm, const std::vector<int>& ks, double tol, const VerifyConfig& cfg) {
  for (int k : ks) {
    PointUHP z = sm.point(0.8, 1.6);
    cplx s = sm.param(0.6, 2.0, -1.5, 1.5);
    ts.push_back([=] { return check_maass_G(k, s, z, tol, cfg); });
  }
}

std::vector<Task> build(const std::string& name, const SuiteOptions& o) {
  std::vector<Task> ts;
  Sampler sm(o.seed);
  const auto ks = weights(o);
  const VerifyConfig& cfg = o.config;
  if (name == "route-agreement") route_tasks(ts, sm, ks, 4, tol_or(o, 1e-8), cfg);
  else if (name == "functional-equation") fe_tasks(ts, sm, ks, 10, tol_or(o, 1e-9), cfg);
  else if (name == "eigen-equation") eigen_tasks(ts, sm, ks, 4, tol_or(o, 1e-5), cfg);
  else if (name == "xi-action") xi_tasks(ts, sm, ks, 3, tol_or(o, 1e-7), tol_or(o, 1e-10), cfg);
  else if (name == "taylor-recursion") taylor_rec_tasks(ts, sm, ks, 3, tol_or(o, 1e-6), cfg);
  else if (name == "taylor-vanishing") vanishing_tasks(ts, ks, tol_or(o, 1e-9), cfg);
  else if (name == "modularity") modularity_tasks(ts, sm, ks, tol_or(o, 1e-9), cfg);
  else if (name == "whittaker") {
    WhittakerTolerances wt;
    if (o.tol > 0.0) wt = {o.tol, o.tol, o.tol, o.tol};
    ts.push_back([wt] { return check_whittaker_suite(whittaker_grid(), wt); });
  } else if (name == "operator-ladder") ladder_tasks(ts, sm, ks, 20, tol_or(o, 1e-12));
  else if (name == "mode-actions") mode_action_tasks(ts, sm, ks, tol_or(o, 1e-8));
  else if (name == "constant-term") constant_term_tasks(ts, sm, ks, 1, tol_or(o, 1e-8), tol_or(o, 1e-6), cfg);
  else if (name == "growth") growth_tasks(ts, sm, ks, 3);
  else if (name == "maass-g") maass_tasks(ts, sm, ks, tol_or(o, 1e-8), cfg);
  return ts;
}

std::vector<CheckReport> execute(std::vector<Task> tasks, int threads) {
  const std::size_t n = tasks.size();
  std::vector<std::vector<CheckReport>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      for (CheckReport& r : results[i]) r.runtime_ms = ms / static_cast<double>(results[i].size());
    }
  };
  int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nt), std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CheckReport> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) {
    return std::tie(a.check_name, a.inputs) < std::tie(b.check_name, b.inputs);
  });
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "constant-term", "eigen-equation", "functional-equation", "growth", "maass-g", "mode-actions",
      "modularity", "operator-ladder", "route-agreement", "taylor-recursion", "taylor-vanishing",
      "whittaker", "xi-action"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return name == "all" || std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (!is_suite(name)) throw DomainError("unknown suite: " + name);
  if (opt.has_weight && opt.weight % 2 != 0) throw DomainError("weight must be even");
  std::vector<Task> tasks;
  if (name == "all") {
    for (const std::string& n : suite_names()) {
      auto t = build(n, opt);
      tasks.insert(tasks.end(), t.begin(), t.end());
    }
  } else {
    tasks = build(name, opt);
  }
  return execute(std::move(tasks), opt.threads);
}

std::string acceptance_title(int criterion) {
  static const char* titles[] = {
      "lattice sum vs Fourier route",
      "functional equation of the doubly-completed series",
      "eigen-equation by finite differences",
      "xi-action on Eisenstein series",
      "Taylor coefficient recursion",
      "Taylor coefficient vanishing structure",
      "Whittaker suite",
      "operator algebra on coefficient data",
      "constant-term formulas",
      "moderate-growth coefficient bound"};
  if (criterion < 1 || criterion > 10) throw DomainError("acceptance criterion must lie in [1, 10]");
  return titles[criterion - 1];
}

std::vector<CheckReport> run_acceptance(int criterion, const SuiteOptions& opt) {
  std::vector<Task> ts;
  Sampler sm(opt.seed + static_cast<std::uint64_t>(criterion));
  const VerifyConfig& cfg = opt.config;
  switch (criterion) {
    case 1: route_tasks(ts, sm, kWeights, 20, 1e-8, cfg); break;
    case 2: fe_tasks(ts, sm, kWeights, 10, 1e-9, cfg); break;
    case 3: eigen_tasks(ts, sm, kWeights, 4, 1e-5, cfg); break;
    case 4: xi_tasks(ts, sm, kWeights, 4, 1e-7, 1e-10, cfg); break;
    case 5: taylor_rec_tasks(ts, sm, kWeights, 10, 1e-6, cfg); break;
    case 6: {
      for (int k : {2, 4}) {
        PointUHP z = k % 4 != 0 ? PointUHP(0.3, 1.2) : PointUHP(0.0, 1.0);  // k = 2 mod 4 vanishes at i
        ts.push_back([=] {
          auto r = check_taylor_vanishing(k, z, 1e-9, cfg);
          std::erase_if(r, [](const CheckReport& c) { return c.check_name == "taylor_vanishing/T1_center"; });
          return r;
        });
      }
      for (int k : {0, 2, 4}) {
        PointUHP z = PointUHP(0.2, 1.1);
        ts.push_back([=] {
          auto r = check_taylor_vanishing(k, z, 1e-8, cfg);
          std::erase_if(r, [](const CheckReport& c) { return c.check_name != "taylor_vanishing/T1_center"; });
          return r;
        });
      }
      break;
    }
    case 7: ts.push_back([] { return check_whittaker_suite(whittaker_grid()); }); break;
    case 8: ladder_tasks(ts, sm, kWeights, 50, 1e-12); break;
    case 9: constant_term_tasks(ts, sm, kWeights, 2, 1e-8, 1e-6, cfg); break;
    case 10: growth_tasks(ts, sm, kWeights, 4); break;
    default: throw DomainError("acceptance criterion must lie in [1, 10]");
  }
  return execute(std::move(ts), opt.threads);
}

const std::vector<ManifestEntry>& manifest() {
  static const std::vector<ManifestEntry> m{
      {"weight-k hyperbolic Laplacian and eigenvalue parametrization", {"eigen-equation"}},
      {"lattice-sum definition of E_k(z,s)", {"route-agreement", "constant-term"}},
      {"doubly-completed series is entire", {"functional-equation", "taylor-vanishing"}},
      {"conversion between E_k and Maass's G(z,zbar;alpha,beta)", {"maass-g"}},
      {"completed series and its Fourier expansion", {"route-agreement", "xi-action"}},
      {"constant term including the logarithmic center case", {"constant-term"}},
      {"functional equation s <-> 1-k-s", {"functional-equation"}},
      {"eigenfunction property of the completed series", {"eigen-equation", "maass-g"}},
      {"modularity in weight k", {"modularity"}},
      {"Whittaker u-basis and Fourier-mode solutions", {"mode-actions", "whittaker"}},
      {"Wronskians of W and M+", {"whittaker"}},
      {"moderate-growth Fourier expansion and coefficient bound", {"growth"}},
      {"mode-level action of raising and lowering operators", {"mode-actions", "operator-ladder"}},
      {"composition identities and commutator of R_k and L_k", {"operator-ladder"}},
      {"isomorphism property of raising when lambda != k", {"operator-ladder"}},
      {"xi_k on u-basis and xi_{2-k} xi_k = Delta_k", {"mode-actions", "operator-ladder"}},
      {"xi_k on the completed Eisenstein series", {"xi-action"}},
      {"xi_k on the constant term (slot swap)", {"xi-action"}},
      {"Taylor coefficient recursion in s", {"taylor-recursion"}},
      {"Taylor coefficients transform with weight k", {"modularity"}},
      {"vanishing and non-vanishing of Taylor coefficients", {"taylor-vanishing"}},
      {"mu-derivative asymptotics and odd-derivative vanishing", {"whittaker"}},
      {"exponential decay of W and growth of M+", {"whittaker"}},
  };
  return m;
}

std::vector<ManifestEntry> manifest_missing() {
  std::vector<ManifestEntry> out;
  for (const ManifestEntry& e : manifest()) {
    bool ok = !e.suites.empty();
    for (const std::string& s : e.suites) ok = ok && is_suite(s) && s != "all";
    if (!ok) out.push_back(e);
  }
  return out;
}

// --- serialization ----------------------------------------------------------

namespace {

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_json(const std::vector<CheckReport>& r, bool with_runtime) {
  ojson arr = ojson::array();
  for (const CheckReport& c : r) {
    ojson j;
    j["check_name"] = c.check_name;
    j["inputs"] = ojson::parse(c.inputs);
    auto num = [](double v) { return std::isfinite(v) ? ojson(v) : ojson(g17(v)); };
    j["residual"] = num(c.residual);
    j["scale"] = num(c.scale);
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    if (with_runtime) j["runtime_ms"] = c.runtime_ms;
    if (!c.extras.empty()) {
      ojson e;
      for (const auto& [k, v] : c.extras) e[k] = num(v);
      j["extras"] = e;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<CheckReport>& r, bool with_runtime) {
  std::string out = "check_name,inputs,residual,scale,tolerance,passed";
  if (with_runtime) out += ",runtime_ms";
  out += "\n";
  for (const CheckReport& c : r) {
    out += csv_field(c.check_name) + "," + csv_field(c.inputs) + "," + g17(c.residual) + "," + g17(c.scale) + "," +
           g17(c.tolerance) + "," + (c.passed ? "true" : "false");
    if (with_runtime) out += "," + g17(c.runtime_ms);
    out += "\n";
  }
  return out;
}

std::string reports_to_text(const std::vector<CheckReport>& r, bool with_runtime) {
  std::size_t w = 10;
  for (const CheckReport& c : r) w = std::max(w, c.check_name.size());
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::left << std::setw(static_cast<int>(w)) << "check" << "  result  " << std::setw(12) << "residual"
     << "  " << std::setw(12) << "tolerance";
  if (with_runtime) os << "  runtime_ms";
  os << "  inputs\n";
  std::size_t failed = 0;
  for (const CheckReport& c : r) {
    if (!c.passed) ++failed;
    os << std::left << std::setw(static_cast<int>(w)) << c.check_name << "  " << (c.passed ? "pass  " : "FAIL  ") << "  "
       << std::setw(12) << std::setprecision(4) << std::scientific << c.residual << "  " << std::setw(12) << c.tolerance;
    if (with_runtime) os << "  " << std::setw(10) << std::fixed << std::setprecision(2) << c.runtime_ms;
    os << std::defaultfloat << "  " << c.inputs << "\n";
  }
  os << r.size() - failed << "/" << r.size() << " checks passed\n";
  return os.str();
}

}  // namespace polymaass
