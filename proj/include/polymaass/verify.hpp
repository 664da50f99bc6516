#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polymaass/mode_ops.hpp"

namespace polymaass {

/// passed <=> residual <= tolerance * max(scale, 1), with residual and scale finite.
/// Checks that assert a quantity T is NOT small report scale 0 and
/// residual tol * (10 tol S / |T|), so they pass iff |T| >= 10 tol S.
struct CheckReport {
  std::string check_name;
  std::string inputs;  ///< compact JSON record of the parameters
  double residual = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;
  std::map<std::string, double> extras;
};

CheckReport make_report(std::string name, std::string inputs, double residual, double scale,
                        double tol);

struct VerifyConfig {
  TruncationPolicy trunc{};
  /// N for mode-level expansions
  int expansion_modes = 12;
  /// circle radius and nodes for Taylor coefficients
  double taylor_radius = 0.25;
  int taylor_nodes = 64;
};

CheckReport check_functional_equation(int k, const PointUHP& z, cplx s, double tol,
                                      const VerifyConfig& cfg = {});
/// residual at step h; extras: ratio |r(h)|/|r(h/2)|, richardson residual.
/// Fails unless the ratio lies in [3, 5] as well.
CheckReport check_eigen_equation(int k, const PointUHP& z, cplx s, double h, double tol,
                                 const VerifyConfig& cfg = {});
/// FD route (tol_fd), mode-exact route (tol_exact) and the constant-slot swap.
std::vector<CheckReport> check_xi_action(int k, const PointUHP& z, cplx s, double tol_fd,
                                         double tol_exact, const VerifyConfig& cfg = {});
CheckReport check_taylor_recursion(int k, const PointUHP& z, cplx s0, int n, double tol,
                                   const VerifyConfig& cfg = {});
std::vector<CheckReport> check_taylor_vanishing(int k, const PointUHP& z, double tol,
                                                const VerifyConfig& cfg = {});
CheckReport check_modularity(int k, const std::string& label, const PointFunction& f,
                             const PointUHP& z, const Matrix2& g, double tol);

struct WhittakerTolerances {
  double closed_form = 1e-12;
  double wronskian = 1e-7;
  double odd_derivative = 1e-10;
  double ode = 1e-6;
};
std::vector<CheckReport> check_whittaker_suite(const std::vector<sf::WhittakerQuery>& grid,
                                               const WhittakerTolerances& tol = {});
std::vector<CheckReport> check_operator_ladder(const FormExpansion& f, double tol);
/// eval(apply_X f) against FD X applied to eval f.
std::vector<CheckReport> check_mode_actions(const FormExpansion& f, const PointUHP& z, double tol);

CheckReport check_route_agreement(int k, const PointUHP& z, cplx s, double tol,
                                  const VerifyConfig& cfg = {});
/// Generic constant term against a 64-node trapezoid in x of the Fourier route.
CheckReport check_constant_term_extraction(int k, cplx s, double y, double tol,
                                           const VerifyConfig& cfg = {});
/// Logarithmic closed form at the center against the Richardson limit of the generic formula.
CheckReport check_constant_term_center(int k, double y, bool doubly, double tol);
CheckReport check_growth(int k, cplx s, int N, double margin);
/// 2 y^{-beta} E_k round trip and Omega_{s+k,s} G = 0 by finite differences.
std::vector<CheckReport> check_maass_G(int k, cplx s, const PointUHP& z, double tol,
                                       const VerifyConfig& cfg = {});

struct SuiteOptions {
  std::uint64_t seed = 20240611;
  int threads = 0;        ///< 0: hardware concurrency
  bool has_weight = false;
  int weight = 0;
  double tol = 0.0;       ///< 0: suite default
  VerifyConfig config{};
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Reports sorted by (check_name, inputs); identical for any thread count.
std::vector<CheckReport> run_suite(const std::string& name, const SuiteOptions& opt = {});

/// One acceptance criterion (1..10), independent of SuiteOptions::weight.
std::vector<CheckReport> run_acceptance(int criterion, const SuiteOptions& opt = {});
std::string acceptance_title(int criterion);

struct ManifestEntry {
  std::string result;
  std::vector<std::string> suites;
};
const std::vector<ManifestEntry>& manifest();
/// Entries whose suites are not all registered.
std::vector<ManifestEntry> manifest_missing();

std::string reports_to_json(const std::vector<CheckReport>& r, bool with_runtime = false);
std::string reports_to_csv(const std::vector<CheckReport>& r, bool with_runtime = false);
std::string reports_to_text(const std::vector<CheckReport>& r, bool with_runtime = false);

}  // namespace polymaass
