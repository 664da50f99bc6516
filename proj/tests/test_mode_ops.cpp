#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "polymaass/mode_ops.hpp"

using namespace polymaass;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double coeff_scale(const FormExpansion& f) {
  double s = 0.0;
  for (int j = 0; j < f.depth(); ++j) {
    for (Slot sl : {Slot::plus, Slot::minus}) s = std::max(s, std::abs(f.constant(j, sl)));
    for (long n = -f.truncation(); n <= f.truncation(); ++n)
      if (n != 0) s = std::max(s, std::abs(f.mode(n, j)));
  }
  return s;
}

FormExpansion random_expansion(std::mt19937_64& rng, int k, cplx s0, int depth, int N) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FormExpansion f(k, s0, depth, N);
  for (int j = 0; j < depth; ++j) {
    f.set_constant(j, Slot::plus, {u(rng), u(rng)});
    f.set_constant(j, Slot::minus, {u(rng), u(rng)});
    for (long n = 1; n <= N; ++n) {
      f.set_mode(n, j, {u(rng), u(rng)});
      f.set_mode(-n, j, {u(rng), u(rng)});
    }
  }
  return f;
}

std::vector<FormExpansion> random_family(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kd(-3, 3), md(1, 3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<FormExpansion> out;
  for (int i = 0; i < count; ++i) {
    int k = 2 * kd(rng);
    cplx s0 = (i % 5 == 4) ? cplx(0.5 * (1 - k), 0.0) : cplx(u(rng), u(rng));
    out.push_back(random_expansion(rng, k, s0, md(rng), 4));
  }
  return out;
}
}  // namespace

TEST_CASE("evaluation basics") {
  FormExpansion f(0, 2.0, 1, 1);
  f.set_mode(1, 0, 1.0);
  cplx v = eval_expansion(f, PointUHP(0.0, 1.0));
  CHECK(rel(v, sf::whittaker_w({0.0, 1.5, 4 * kPi, 0}).value) < 1e-15);
  FormExpansion e(4, {0.3, 0.2}, 3, 5);
  CHECK(eval_expansion(e, PointUHP(0.1, 0.7)) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(FormExpansion(3, 1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(FormExpansion(2, 1.0, 0, 1), DomainError);
  CHECK_THROWS_AS(FormExpansion(2, 1.0, 9, 1), DomainError);
  CHECK_THROWS_AS(f.set_mode(0, 0, 1.0), DomainError);
  CHECK_THROWS_AS(f.set_mode(2, 0, 1.0), DomainError);
  CHECK(FormExpansion(2, -0.5, 1, 1).is_center());
  CHECK_FALSE(FormExpansion(2, 0.5, 1, 1).is_center());
}

TEST_CASE("Eisenstein expansion") {
  SpectralParam p2(2, 1.0);
  FormExpansion f = eisenstein_expansion(p2, 3);
  CHECK(std::abs(f.mode(1, 0) + 1.0) < 1e-15);
  FormExpansion g = eisenstein_expansion(SpectralParam(0, {0.3, 2.1}), 6);
  for (long n = 1; n <= 6; ++n) CHECK(g.mode(n, 0) == g.mode(-n, 0));
  CHECK_THROWS_AS(eisenstein_expansion(SpectralParam(0, 1.0), 3), PoleError);

  TruncationPolicy t;
  t.mode_count = 12;
  for (auto [k, s] : std::vector<std::pair<int, cplx>>{{4, {1.3, 0.4}}, {-2, {0.2, -1.1}}, {0, {0.5, 3.0}},
                                                       {2, -0.5}, {0, 0.5}, {-4, 2.5}}) {
    SpectralParam p(k, s);
    PointUHP z(0.27, 0.9);
    FormExpansion e = eisenstein_expansion(p, 12);
    CHECK(rel(eval_expansion(e, z), fourier_eval_completed(p, z, t).value) < 1e-13);
    FormExpansion d = eisenstein_expansion(p, 12, true);
    CHECK(rel(eval_expansion(d, z), doubly_completed_eval(p, z, t).value) < 1e-13);
  }
}

TEST_CASE("raising and lowering factors") {
  FormExpansion f(2, {0.4, 0.3}, 1, 2);
  f.set_mode(1, 0, 1.0);
  f.set_mode(-1, 0, 1.0);
  FormExpansion r = apply_raising(f);
  CHECK(r.weight() == 4);
  CHECK(r.base() == cplx(-0.6, 0.3));
  CHECK(r.mode(1, 0) == cplx(-1.0, 0.0));
  cplx s = f.base();
  CHECK(std::abs(r.mode(-1, 0) - (s + 2.0) * (1.0 - s)) < 1e-15);
  FormExpansion l = apply_lowering(f);
  CHECK(l.weight() == 0);
  CHECK(l.base() == cplx(1.4, 0.3));
  CHECK(l.mode(-1, 0) == cplx(1.0, 0.0));
  CHECK(std::abs(l.mode(1, 0) - s * (s + 1.0)) < 1e-15);
  // lambda = 0 kernel
  FormExpansion z(4, 0.0, 1, 3);
  for (long n = 1; n <= 3; ++n) z.set_mode(n, 0, 1.0);
  FormExpansion lz = apply_lowering(z);
  for (long n = 1; n <= 3; ++n) CHECK(lz.mode(n, 0) == cplx(0.0, 0.0));
}

TEST_CASE("operator ladder on random expansions") {
  for (const FormExpansion& f : random_family(11, 50)) {
    const int k = f.weight();
    const double tol = 1e-12 * std::max(1.0, coeff_scale(f) * (1.0 + std::norm(f.base())));
    FormExpansion lap = apply_laplacian(f);
    // L_{k+2} R_k = -Delta_k + k
    FormExpansion lr = apply_lowering(apply_raising(f));
    CHECK(max_coeff_diff(lr, added(scaled(lap, -1.0), scaled(f, static_cast<double>(k)))) < tol);
    // R_{k-2} L_k = -Delta_k
    FormExpansion rl = apply_raising(apply_lowering(f));
    CHECK(max_coeff_diff(rl, scaled(lap, -1.0)) < tol);
    CHECK(max_coeff_diff(added(rl, scaled(lr, -1.0)), scaled(f, -static_cast<double>(k))) < tol);
    // xi_{2-k} xi_k = Delta_k
    FormExpansion xx = apply_xi(apply_xi(f));
    CHECK(max_coeff_diff(xx, lap) < tol);
    CHECK(xx.is_center() == f.is_center());
  }
}

TEST_CASE("eigenvalue bookkeeping") {
  cplx s0(0.35, -0.8);
  for (int k : {-2, 0, 2}) {
    FormExpansion f(k, s0, 1, 1);
    cplx lam = f.eigenvalue();
    CHECK(std::abs(apply_raising(f).eigenvalue() - (lam - static_cast<double>(k))) < 1e-14);
    CHECK(std::abs(apply_lowering(f).eigenvalue() - (lam + static_cast<double>(k) - 2.0)) < 1e-14);
    CHECK(std::abs(apply_xi(f).eigenvalue() - std::conj(lam)) < 1e-14);
  }
}

TEST_CASE("Laplacian recursion and nilpotency") {
  std::mt19937_64 rng(3);
  for (cplx s0 : {cplx(0.7, 0.4), cplx(-1.5, 0.0)}) {
    FormExpansion f = random_expansion(rng, 2, s0, 3, 3);
    FormExpansion d = f;
    for (int i = 0; i < 3; ++i) d = added(apply_laplacian(d), scaled(d, -f.eigenvalue()));
    CHECK(max_coeff_diff(d, FormExpansion(2, s0, 3, 3)) < 1e-11);
    FormExpansion one(2, s0, 1, 3);
    one.set_mode(2, 0, 1.0);
    one.set_constant(0, Slot::minus, 2.0);
    CHECK(max_coeff_diff(apply_laplacian(one), scaled(one, one.eigenvalue())) < 1e-15);
  }
}

TEST_CASE("exact actions agree with finite differences") {
  std::mt19937_64 rng(21);
  PointUHP z(0.13, 0.85);
  sf::Config cfg;
  struct Case {
    int k;
    cplx s0;
    int depth;
  };
  for (Case c : {Case{2, {0.6, 0.3}, 3}, Case{-2, {1.1, -0.4}, 2}, Case{0, 0.5, 2}, Case{4, -1.5, 2}}) {
    FormExpansion f = random_expansion(rng, c.k, c.s0, c.depth, 2);
    PointFunction g = [&](const PointUHP& w) { return eval_expansion(f, w, cfg); };
    const double h = 2e-3;
    auto check = [&](const FormExpansion& exact, auto numeric) {
      cplx want = eval_expansion(exact, z, cfg);
      Richardson r = richardson([&](double hh) { return numeric(g, c.k, z, hh); }, h);
      CHECK(std::abs(r.value - want) < 1e-8 * std::max(1.0, std::abs(want)));
    };
    check(apply_laplacian(f), numeric_laplacian);
    check(apply_raising(f), numeric_raising);
    check(apply_lowering(f), numeric_lowering);
    check(apply_xi(f), numeric_xi);
  }
}

TEST_CASE("constant atoms against finite differences") {
  AtomList a{{2, {0.3, 0.7}, {1.0, -0.5}}, {0, {-1.2, 0.1}, 0.4}};
  const int k = -2;
  PointFunction g = [&](const PointUHP& w) { return eval_atoms(a, w.y()); };
  PointUHP z(0.0, 1.3);
  auto near = [&](const AtomList& exact, cplx fd) {
    cplx want = eval_atoms(exact, z.y());
    CHECK(std::abs(fd - want) < 1e-8 * std::max(1.0, std::abs(want)));
  };
  auto rich = [&](auto op) { return richardson([&](double h) { return op(g, k, z, h); }, 1e-3).value; };
  near(atoms_laplacian(a, k), rich(numeric_laplacian));
  near(atoms_raising(a, k), rich(numeric_raising));
  near(atoms_lowering(a, k), rich(numeric_lowering));
  near(atoms_xi(a, k), rich(numeric_xi));
}

TEST_CASE("xi on Eisenstein expansions") {
  cplx s(0.6, 1.3);
  // k <= 0: xi E_k(s) = E_{2-k}(-conj s)
  FormExpansion a = apply_xi(eisenstein_expansion(SpectralParam(-2, s), 8));
  FormExpansion b = eisenstein_expansion(SpectralParam(4, -std::conj(s)), 8);
  CHECK(max_coeff_diff(a, b) < 1e-12 * coeff_scale(b));
  CHECK(std::abs(a.constant(0, Slot::plus) - b.constant(0, Slot::plus)) < 1e-12 * coeff_scale(b));
  // k > 0: factor conj(s)(conj(s) + k - 1)
  FormExpansion c = apply_xi(eisenstein_expansion(SpectralParam(4, s), 8));
  cplx sb = std::conj(s);
  FormExpansion d = scaled(eisenstein_expansion(SpectralParam(-2, -sb), 8), sb * (sb + 3.0));
  CHECK(max_coeff_diff(c, d) < 1e-12 * coeff_scale(d));
  // constant-term slots swap: y^s goes to the y^{1-k'-s'} slot
  FormExpansion one(0, s, 1, 1);
  one.set_constant(0, Slot::plus, 1.0);
  FormExpansion x = apply_xi(one);
  CHECK(x.constant(0, Slot::plus) == cplx(0.0, 0.0));
  CHECK(std::abs(x.constant(0, Slot::minus) - sb) < 1e-15);
}

TEST_CASE("modularity of operator images") {
  SpectralParam p(2, {0.9, 0.4});
  FormExpansion f = eisenstein_expansion(p, 24);
  sf::Config cfg;
  for (const FormExpansion& g : {apply_raising(f), apply_lowering(f), apply_xi(f)}) {
    cplx z(0.12, 1.05);
    cplx gz = eval_expansion(g, PointUHP(z), cfg);
    cplx gt = eval_expansion(g, PointUHP(z + 1.0), cfg);
    CHECK(std::abs(gt - gz) < 1e-7 * std::max(1.0, std::abs(gz)));
    cplx gs = eval_expansion(g, PointUHP(-1.0 / z), cfg);
    cplx want = std::pow(z, g.weight()) * gz;
    CHECK(std::abs(gs - want) < 1e-7 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("growth of Eisenstein coefficients") {
  for (auto [k, s] : std::vector<std::pair<int, cplx>>{{0, {1.4, 2.0}}, {4, {0.3, 0.0}}, {-2, {2.5, -1.0}}}) {
    SpectralParam p(k, s);
    GrowthFit g = fit_growth(eisenstein_expansion(p, 60));
    CHECK(g.A < (2.0 * s + static_cast<double>(k) - 1.0).real() + 1.5);
    CHECK(g.C > 0.0);
  }
}

TEST_CASE("JSON round trip") {
  std::mt19937_64 rng(8);
  FormExpansion f = random_expansion(rng, -4, {0.25, -1.5}, 2, 3);
  std::string j = to_json(f);
  CHECK(j.rfind("{\"weight\":-4,\"s0\":[0.25,-1.5],\"depth\":2,\"N\":3,\"is_center\":false,\"const\":[", 0) == 0);
  CHECK(expansion_from_json(j) == f);
  CHECK(to_json(expansion_from_json(j)) == j);
  FormExpansion c = eisenstein_expansion(SpectralParam(2, -0.5), 2);
  CHECK(expansion_from_json(to_json(c)).is_center());
  CHECK_THROWS_AS(expansion_from_json("{\"weight\":2}"), DomainError);
  CHECK_THROWS_AS(expansion_from_json("not json"), DomainError);
}

TEST_CASE("numeric Laplacian") {
  cplx s(0.7, 1.1);
  const int k = 2;
  PointUHP z(0.2, 1.4);
  PointFunction ys = [&](const PointUHP& w) { return std::exp(s * std::log(w.y())); };
  cplx want = s * (s + static_cast<double>(k) - 1.0) * ys(z);
  CHECK(std::abs(numeric_laplacian(ys, k, z, 1e-3) - want) < 1e-5);
  PointFunction hol = [](const PointUHP& w) { return std::exp(cplx(0.0, 2.0 * kPi) * w.z()); };
  CHECK(std::abs(numeric_laplacian(hol, 4, z, 1e-3)) < 1e-6);
  PointFunction lg = [](const PointUHP& w) { return std::sqrt(w.y()) * std::log(w.y()); };
  CHECK(std::abs(numeric_laplacian(lg, 0, z, 1e-3) + 0.25 * lg(z)) < 1e-7);
  CHECK_THROWS_AS(numeric_laplacian(lg, 0, z, 0.35), DomainError);
  CHECK_THROWS_AS(numeric_laplacian(lg, 0, z, 0.0), DomainError);
}
