#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles/oracle_values.hpp"
#include "polymaass/special_functions.hpp"

using namespace polymaass;
using namespace polymaass::sf;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("gamma values and poles") {
  CHECK(rel(sf::gamma(1.0), 1.0) < 1e-14);
  CHECK(rel(sf::gamma(5.0), 24.0) < 1e-14);
  CHECK(rel(sf::gamma(0.5), std::sqrt(kPi)) < 1e-14);
  CHECK(rel(sf::gamma({3, 2}), oracle::gamma_3p2i) < 1e-13);
  CHECK(rel(sf::gamma({-2.5, 0.5}), oracle::gamma_m2p5_0p5i) < 1e-13);
  CHECK(rel(sf::gamma(20.7), oracle::gamma_20p7) < 1e-13);
  CHECK(rel(sf::gamma({30, 40}), oracle::gamma_30p40i) < 1e-13);
  CHECK(rel(sf::gamma({-20.5, 30}), oracle::gamma_m20p5p30i) < 1e-13);
  CHECK(rel(sf::gamma({-45.3, 0}), oracle::gamma_m45p3) < 1e-13);
  CHECK_THROWS_AS(sf::gamma(0.0), PoleError);
  CHECK_THROWS_AS(sf::gamma(-3.0), PoleError);
  CHECK(rgamma(-3.0) == cplx(0.0));
  CHECK(rel(rgamma({0.3, 4}) * sf::gamma({0.3, 4}), 1.0) < 1e-13);
}

TEST_CASE("gamma accuracy over |z| <= 50 via recurrence") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-35.0, 35.0);
  for (int i = 0; i < 200; ++i) {
    cplx z(u(rng), u(rng));
    // two evaluations, each within 1e-13
    CHECK(rel(sf::gamma(z + 1.0), z * sf::gamma(z)) < 2e-13);
  }
}

TEST_CASE("digamma") {
  CHECK(std::abs(digamma(1.0) + kEuler) < 1e-14);
  CHECK(std::abs(digamma(0.5) - (-kEuler - std::log(4.0))) < 1e-14);
  CHECK(std::abs(digamma(2.0) - (1.0 - kEuler)) < 1e-14);
  CHECK(rel(digamma({1.5, 2}), oracle::digamma_1p5p2i) < 1e-13);
  CHECK(rel(digamma({-0.3, 1}), oracle::digamma_m0p3p1i) < 1e-13);
  for (cplx z : {cplx(0.2, 0.1), cplx(-4.5, 3), cplx(12, -7), cplx(0.01, 0)})
    CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) < 1e-12);
  CHECK_THROWS_AS(digamma(-2.0), PoleError);
}

TEST_CASE("zeta and completed zeta") {
  CHECK(rel(completed_zeta(2.0), kPi / 6) < 1e-14);
  CHECK(rel(completed_zeta(3.0), completed_zeta(-2.0)) < 1e-14);
  CHECK(rel(zeta({0.5, 14}), oracle::zeta_0p5p14i) < 1e-12);
  CHECK(rel(zeta({0.5, 37}), oracle::zeta_0p5p37i) < 1e-12);
  CHECK(rel(zeta({2.3, -5}), oracle::zeta_2p3m5i) < 1e-13);
  CHECK(rel(zeta({-3.5, 1}), oracle::zeta_m3p5p1i) < 1e-12);
  CHECK(rel(completed_zeta({0.3, 7}), oracle::completed_zeta_0p3p7i) < 1e-12);
  CHECK(std::abs(zeta(0.0) + 0.5) < 1e-14);
  CHECK(std::abs(zeta(-2.0)) < 1e-15);
  CHECK_THROWS_AS(completed_zeta(1.0), PoleError);
  CHECK_THROWS_AS(completed_zeta(0.0), PoleError);
  CHECK_THROWS_AS(zeta(1.0), PoleError);
  CHECK(std::abs(completed_zeta_entire(1.0) - 0.5) < 1e-14);
  CHECK(std::abs(completed_zeta_entire(0.0) - 0.5) < 1e-14);
}

TEST_CASE("Laurent constant of completed zeta at s = 1") {
  double eps = std::ldexp(1.0, -17);  // 1 +- eps exact in binary
  cplx a = completed_zeta(1.0 + eps) - 1.0 / eps;
  cplx b = completed_zeta(1.0 - eps) + 1.0 / eps;
  cplx lim = 0.5 * (a + b);
  CHECK(std::abs(lim - 0.5 * (kEuler - std::log(4 * kPi))) < 1e-9);
  CHECK(std::abs(lim - oracle::laurent_const_zeta_hat) < 1e-9);
}

TEST_CASE("completed zeta functional equation through the unreflected series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-1.0, 2.0), im(-40.0, 40.0);
  int n = 0;
  while (n < 100) {
    cplx s(re(rng), im(rng));
    if (std::abs(s) > 40.0 || std::abs(s) < 0.1 || std::abs(s - 1.0) < 0.1) continue;
    auto direct = [](cplx t) {
      return std::exp(-t / 2.0 * std::log(kPi)) * sf::gamma(t / 2.0) * zeta_series(t);
    };
    cplx lhs = direct(s), rhs = direct(1.0 - s);
    CHECK(rel(lhs, rhs) < 1e-11);
    CHECK(rel(completed_zeta(s), lhs) < 1e-11);
    ++n;
  }
}

TEST_CASE("sigma_power") {
  CHECK(std::abs(sigma_power(6, 0.0) - 4.0) < 1e-15);
  CHECK(std::abs(sigma_power(4, -1.0) - 1.75) < 1e-15);
  cplx s(2, 1);
  CHECK(rel(sigma_power(7, s), 1.0 + std::pow(cplx(7.0), s)) < 1e-14);
  CHECK(sigma_power(-12, 1.0) == sigma_power(12, 1.0));
  CHECK_THROWS_AS(sigma_power(0, 1.0), ZeroArgument);
}

TEST_CASE("whittaker_w reference values") {
  CHECK(rel(whittaker_w({0.0, 0.5, 3.0}).value, std::exp(-1.5)) < 1e-14);
  CHECK(rel(whittaker_w({0.0, 0.5, 4 * kPi}).value, std::exp(-2 * kPi)) < 1e-14);
  CHECK(rel(whittaker_w({1.0, 0.3, 5.0}).value, oracle::whittaker_w_1_0p3_5) < 1e-13);
  CHECK(rel(whittaker_w({-1.0, {0.4, 2}, 2.5}).value, oracle::whittaker_w_m1_0p4p2i_2p5) < 1e-12);
  CHECK(rel(whittaker_w({2.0, {0, 1.5}, 0.7}).value, oracle::whittaker_w_2_1p5i_0p7) < 1e-12);
  CHECK(rel(whittaker_w({-2.0, 1.2, 8.0}).value, oracle::whittaker_w_m2_1p2_8) < 1e-13);
  CHECK_THROWS_AS(whittaker_w({0.0, 0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(whittaker_w({0.0, 0.5, -1.0}), DomainError);
}

TEST_CASE("whittaker_w symmetry, conjugation and error estimates") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ku(-2.0, 2.0), mu_re(-1.5, 1.5), mu_im(-3.0, 3.0),
      yu(0.3, 40.0);
  for (int i = 0; i < 40; ++i) {
    double kappa = std::round(ku(rng));
    cplx mu(mu_re(rng), mu_im(rng));
    double y = yu(rng);
    EvalResult a = whittaker_w({kappa, mu, y});
    EvalResult b = whittaker_w({kappa, -mu, y});
    EvalResult c = whittaker_w({kappa, std::conj(mu), y});
    CHECK(std::abs(a.value - b.value) <= 1e-10 * std::abs(a.value));
    CHECK(std::abs(c.value - std::conj(a.value)) <= 1e-10 * std::abs(a.value));
    CHECK(std::isfinite(a.abs_error_estimate));
    CHECK(a.abs_error_estimate >= 0.0);
  }
}

TEST_CASE("whittaker ODE residual is second order in h") {
  // W'' + (-1/4 + kappa/y + (1/4 - mu^2)/y^2) W = 0
  for (WhittakerQuery q : {WhittakerQuery{1.0, 0.3, 5.0}, WhittakerQuery{-2.0, {0.2, 1.1}, 2.0},
                           WhittakerQuery{0.0, 1.4, 12.0}}) {
    const cplx kappa = q.kappa, mu = q.mu;
    const double y = q.y;
    auto W = [&](double t) { return whittaker_w({kappa, mu, t}).value; };
    auto resid = [&](double h) {
      cplx d2 = (W(y + h) - 2.0 * W(y) + W(y - h)) / (h * h);
      return std::abs(d2 + (-0.25 + kappa / y + (0.25 - mu * mu) / (y * y)) * W(y));
    };
    double r1 = resid(1e-2), r2 = resid(5e-3);
    CHECK(r1 < 1e-4 * std::abs(W(y)));
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  }
}

TEST_CASE("asymptotic series agrees with quadrature above the threshold") {
  for (auto [kappa, mu] : {std::pair{cplx(0), cplx(0.3)}, std::pair{cplx(2), cplx(0.1, 0.5)},
                           std::pair{cplx(-1), cplx(1.2)}, std::pair{cplx(1), cplx(0.0)}}) {
    double y0 = asymptotic_threshold(kappa, mu);
    for (double y : {y0, y0 + 3.0, y0 + 10.0}) {
      EvalResult as = whittaker_w_asymptotic(kappa, mu, y);
      EvalResult qu = whittaker_w_quadrature(kappa, mu, y);
      CHECK(std::abs(as.value - qu.value) <= 2.0 * as.abs_error_estimate);
    }
  }
}

TEST_CASE("mu-derivatives") {
  Config cfg;
  for (double kappa : {-2.0, 0.0, 1.0}) {
    for (double y : {0.8, 4.0, 45.0}) {
      auto d = whittaker_w_mu_derivs(kappa, 0.0, y, 5, cfg);
      for (int m : {1, 3, 5}) CHECK(std::abs(d[m].value) < 1e-10 * std::abs(d[m - 1].value));
      CHECK(rel(d[0].value, whittaker_w({kappa, 0.0, y}).value) < 1e-12);
    }
  }
  // leading order (2j)!/j! e^{-y/2} y^{kappa-j} for large y
  for (int j = 1; j <= 3; ++j) {
    double y = 400.0, kappa = 0.5;
    double fact2j = std::tgamma(2.0 * j + 1), factj = std::tgamma(j + 1.0);
    cplx d = whittaker_w_asymptotic(kappa, 0.0, y, 2 * j).value;
    double lead = fact2j / factj * std::exp(-y / 2) * std::pow(y, kappa - j);
    CHECK(std::abs(d / lead - 1.0) < 0.05);
  }
  CHECK(rel(whittaker_w_mu_deriv({1.0, {0.2, 0.1}, 3.0, 2}).value, oracle::whittaker_d2_1_0p2p0p1i_3) < 1e-10);
  CHECK(rel(whittaker_w_mu_deriv({-1.0, 0.6, 1.7, 3}).value, oracle::whittaker_d3_m1_0p6_1p7) < 1e-9);
  CHECK(whittaker_w_mu_deriv({1.0, 0.3, 5.0, 0}).value == whittaker_w({1.0, 0.3, 5.0}).value);
  CHECK_THROWS_AS(whittaker_w_mu_deriv({1.0, 0.3, 5.0, 9}), DomainError);
}

TEST_CASE("M+ and Wronskians") {
  CHECK(rel(whittaker_m_plus({0.0, 0.3, 2.0}).value, oracle::m_plus_0_0p3_2) < 1e-12);
  CHECK(rel(whittaker_m_plus({1.0, 0.3, 6.0}).value, oracle::m_plus_1_0p3_6) < 1e-12);
  CHECK_THROWS_AS(whittaker_m_plus({0.0, 0.5, 2.0}), DegenerateParameter);
  CHECK_THROWS_AS(whittaker_m_plus({0.0, 0.3, 2000.0}), OverflowError);
  const cplx i(0, 1);
  for (WhittakerQuery q : {WhittakerQuery{1.0, 0.3, 6.0}, WhittakerQuery{-2.0, {0.2, 0.7}, 3.0},
                           WhittakerQuery{0.0, 1.3, 1.5}}) {
    const cplx kappa = q.kappa, mu = q.mu;
    const double y = q.y;
    double h = 1e-3;
    auto W = [&](double t) { return whittaker_w({kappa, mu, t}).value; };
    auto Mp = [&](double t) { return whittaker_m_plus({kappa, mu, t}).value; };
    auto Mm = [&](double t) { return whittaker_m(kappa, mu, t).value; };
    auto d = [&](auto f) {
      return (8.0 * (f(y + h) - f(y - h)) - (f(y + 2 * h) - f(y - 2 * h))) / (12 * h);
    };
    cplx wr1 = W(y) * d(Mp) - d(W) * Mp(y);
    CHECK(std::abs(wr1 - std::exp(-i * kPi * kappa)) < 1e-7);
    cplx wr2 = Mm(y) * d(W) - d(Mm) * W(y);
    CHECK(std::abs(wr2 + sf::gamma(1.0 + 2.0 * mu) * rgamma(0.5 + mu - kappa)) < 1e-7 * std::max(1.0, std::abs(wr2)));
  }
  // exponential growth of M+ against decay of W
  double y = 20.0;
  cplx r = whittaker_m_plus({1.0, 0.3, 2 * y}).value / whittaker_m_plus({1.0, 0.3, y}).value;
  CHECK(std::abs(std::log(std::abs(r)) - (y / 2 - std::log(2.0))) < 0.2);
}
