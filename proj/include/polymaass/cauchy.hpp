#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace polymaass {

/// Taylor coefficients f^{(j)}(c) for j = 0..max_order from samples of an
/// analytic f on the circle |t - c| = r with N equispaced nodes.
/// err[j] compares against the even-node subset (N/2 nodes) and adds the
/// roundoff floor eps * j! / r^j * max|f|.
/// The natural size of the j-th derivative is j! / r^j * max|f|.
struct CauchyDerivs {
  std::vector<std::complex<double>> value;
  std::vector<double> err;
  double fmax = 0.0;  ///< max |f| on the circle
};

template <class F>
CauchyDerivs cauchy_derivatives(F&& f, std::complex<double> center, double r, int nodes,
                                int max_order) {
  using C = std::complex<double>;
  const int half_n = nodes / 2;
  // omega[i + N/2] = -omega[i] exactly, so functions even about the centre
  // give odd derivatives that cancel exactly
  std::vector<C> omega(nodes);
  for (int i = 0; i < half_n; ++i) {
    if (4 * i == nodes) {
      omega[i] = C(0.0, 1.0);
    } else {
      omega[i] = std::polar(1.0, 2.0 * std::numbers::pi * i / nodes);
    }
    omega[i + half_n] = -omega[i];
  }
  std::vector<C> samples(nodes);
  double fmax = 0.0;
  for (int i = 0; i < nodes; ++i) {
    samples[i] = f(center + r * omega[i]);
    fmax = std::max(fmax, std::abs(samples[i]));
  }
  std::vector<C> plus(half_n), minus(half_n);
  for (int i = 0; i < half_n; ++i) {
    plus[i] = samples[i] + samples[i + half_n];
    minus[i] = samples[i] - samples[i + half_n];
  }
  CauchyDerivs out;
  out.fmax = fmax;
  out.value.resize(max_order + 1);
  out.err.resize(max_order + 1);
  double fact = 1.0;
  for (int j = 0; j <= max_order; ++j) {
    if (j > 0) fact *= j;
    const std::vector<C>& paired = (j % 2 == 0) ? plus : minus;
    C full = 0.0;
    C half = 0.0;
    for (int i = 0; i < half_n; ++i) {
      C term = paired[i] * std::conj(omega[(static_cast<long>(i) * j) % nodes]);
      full += term;
      if (i % 2 == 0) half += term;
    }
    double scale = fact / std::pow(r, j);
    full *= scale / nodes;
    half *= scale / half_n;
    out.value[j] = full;
    out.err[j] = std::abs(full - half) + 4e-16 * std::sqrt(static_cast<double>(nodes)) * scale * fmax;
  }
  return out;
}

}  // namespace polymaass
