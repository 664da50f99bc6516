#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polymaass/eisenstein.hpp"

namespace polymaass {

enum class Slot { plus, minus };

/// coefficient * (log y)^log_power * y^exponent
struct ConstTermAtom {
  int log_power = 0;
  cplx exponent;
  cplx coefficient;
};

using AtomList = std::vector<ConstTermAtom>;

cplx eval_atoms(const AtomList& atoms, double y);
/// Exact actions on y-only atoms. R_k, L_k, xi_k and Delta_k at weight k.
AtomList atoms_raising(const AtomList& a, int k);
AtomList atoms_lowering(const AtomList& a, int k);
AtomList atoms_xi(const AtomList& a, int k);
AtomList atoms_laplacian(const AtomList& a, int k);

/// f = sum of constant atoms + sum_{0<|n|<=N, j<m} c_{n,j} u_{k,n}^{[j]}(y; s0) e(nx).
///
/// Generic base: u^{[j]} is the j-th s-derivative, constant slots are
/// (j,+) -> (log y)^j y^{s0} and (j,-) -> (log y)^j y^{1-k-s0}.
/// Center base s0 = (1-k)/2: u^{[j]} is the 2j-th derivative, slots are
/// (j,-) -> (log y)^{2j} y^{s0} and (j,+) -> (log y)^{2j+1} y^{s0}.
class FormExpansion {
 public:
  /// is_center is derived from s0 == (1-k)/2.
  FormExpansion(int k, cplx s0, int depth, int N);

  int weight() const { return k_; }
  cplx base() const { return s0_; }
  int depth() const { return m_; }
  int truncation() const { return N_; }
  bool is_center() const { return center_; }
  cplx eigenvalue() const { return s0_ * (s0_ + static_cast<double>(k_) - 1.0); }

  cplx constant(int j, Slot sl) const;
  void set_constant(int j, Slot sl, cplx c);
  cplx mode(long n, int j) const;
  void set_mode(long n, int j, cplx c);

  /// Power of log y and exponent for a constant slot.
  int slot_log_power(int j, Slot sl) const;
  cplx slot_exponent(Slot sl) const;
  AtomList const_atoms() const;
  /// Adds an atom to the matching slot; throws DomainError if it fits none.
  void add_atom(const ConstTermAtom& a);

  bool operator==(const FormExpansion& o) const = default;

 private:
  std::size_t mode_index(long n, int j) const;

  int k_;
  cplx s0_;
  int m_;
  int N_;
  bool center_;
  std::vector<cplx> plus_;
  std::vector<cplx> minus_;
  std::vector<cplx> modes_;
};

/// Largest coefficient difference, used for coefficient-wise comparisons.
double max_coeff_diff(const FormExpansion& a, const FormExpansion& b);
FormExpansion scaled(const FormExpansion& f, cplx c);
FormExpansion added(const FormExpansion& a, const FormExpansion& b);

struct GrowthFit {
  double C;
  double A;
};
/// Least-squares fit of log max_j |c_{n,j}| against log |n|.
GrowthFit fit_growth(const FormExpansion& f);

std::string to_json(const FormExpansion& f);
FormExpansion expansion_from_json(const std::string& text);

/// u_{k,n}^{[j]}(y; s0) for orders 0..max_j (orders 0, 2, 4, .. at the center).
std::vector<sf::EvalResult> u_basis(int k, long n, cplx s0, double y, int max_j, bool is_center,
                                    const sf::Config& cfg = {});

cplx eval_expansion(const FormExpansion& f, const PointUHP& z, const sf::Config& cfg = {});

/// Depth-1 expansion of the completed series with modes |n| <= N.
FormExpansion eisenstein_expansion(const SpectralParam& p, int N, bool doubly = false);

FormExpansion apply_raising(const FormExpansion& f);
FormExpansion apply_lowering(const FormExpansion& f);
FormExpansion apply_xi(const FormExpansion& f);
FormExpansion apply_laplacian(const FormExpansion& f);

using PointFunction = std::function<cplx(const PointUHP&)>;

/// Delta_k by central differences on the 5-point cross. Needs h < y/4.
cplx numeric_laplacian(const PointFunction& g, int k, const PointUHP& z, double h);
/// xi_k g = 2i y^k conj(d g / d zbar) with d/dzbar = (d_x + i d_y)/2.
cplx numeric_xi(const PointFunction& g, int k, const PointUHP& z, double h);
cplx numeric_raising(const PointFunction& g, int k, const PointUHP& z, double h);
cplx numeric_lowering(const PointFunction& g, int k, const PointUHP& z, double h);

/// D(h), D(h/2) and the extrapolated (4 D(h/2) - D(h)) / 3.
struct Richardson {
  cplx coarse;
  cplx fine;
  cplx value;
};
Richardson richardson(const std::function<cplx(double)>& d, double h);

}  // namespace polymaass
