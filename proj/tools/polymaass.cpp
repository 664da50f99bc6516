#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polymaass/verify.hpp"

using namespace polymaass;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> weight;
  std::string s = "2,0";
  std::string z = "0,1";
  std::optional<std::string> s0;
  int order = 2;
  double radius = 0.25;
  int modes = 0;
  double tol = 0.0;
  std::string suite = "all";
  std::uint64_t seed = 20240611;
  int threads = 0;
  std::string output;
  std::string out;
};

cplx parse_complex(const std::string& flag, const std::string& v) {
  std::istringstream is(v);
  is.imbue(std::locale::classic());
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw UsageError(flag + ": expected \"re,im\", got \"" + v + "\"");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw UsageError(flag + ": expected \"re,im\", got \"" + v + "\"");
    char extra;
    if (is >> extra) throw UsageError(flag + ": trailing characters in \"" + v + "\"");
  }
  return {re, im};
}

std::string complex_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  if (v.is_array() && v.size() == 2) os << v[0].get<double>() << "," << v[1].get<double>();
  else if (v.is_number()) os << v.get<double>() << ",0";
  else throw UsageError("POLYMAASS_CONFIG: complex values must be \"re,im\", [re, im] or a number");
  return os.str();
}

// Defaults from the file named by POLYMAASS_CONFIG; flags parsed later overwrite them.
void load_env(Options& o) {
  const char* path = std::getenv("POLYMAASS_CONFIG");
  if (!path || !*path) return;
  std::ifstream in(path);
  if (!in) throw UsageError(std::string("POLYMAASS_CONFIG: cannot read ") + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (!j.is_object()) throw UsageError("POLYMAASS_CONFIG: expected a JSON object");
    for (auto& [key, v] : j.items()) {
      if (key == "weight") o.weight = v.get<int>();
      else if (key == "s") o.s = complex_string(v);
      else if (key == "z") o.z = complex_string(v);
      else if (key == "s0") o.s0 = complex_string(v);
      else if (key == "order") o.order = v.get<int>();
      else if (key == "radius") o.radius = v.get<double>();
      else if (key == "modes") o.modes = v.get<int>();
      else if (key == "tol") o.tol = v.get<double>();
      else if (key == "suite") o.suite = v.get<std::string>();
      else if (key == "seed") o.seed = v.get<std::uint64_t>();
      else if (key == "threads") o.threads = v.get<int>();
      else if (key == "output") o.output = v.get<std::string>();
      else if (key == "out") o.out = v.get<std::string>();
      else throw UsageError("POLYMAASS_CONFIG: unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("POLYMAASS_CONFIG: ") + e.what());
  }
}

int need_weight(const Options& o) {
  if (!o.weight) throw UsageError("--weight is required");
  if (*o.weight % 2 != 0) throw UsageError("weight must be even");
  return *o.weight;
}

PointUHP need_z(const Options& o) {
  cplx z = parse_complex("--z", o.z);
  if (!(z.imag() > 0.0)) throw UsageError("--z must lie in the upper half-plane");
  return PointUHP(z.real(), z.imag());
}

TruncationPolicy policy(const Options& o) {
  if (o.modes < 0) throw UsageError("--modes must be >= 0");
  TruncationPolicy t;
  t.mode_count = o.modes;
  if (o.tol > 0.0) t.target_tol = o.tol;
  t.special.cauchy_radius = o.radius;
  return t;
}

ojson pair(cplx c) { return ojson::array({c.real(), c.imag()}); }

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::string run_eval(const Options& o, const std::string& format) {
  const int k = need_weight(o);
  const PointUHP z = need_z(o);
  const cplx s = parse_complex("--s", o.s);
  TruncationPolicy t = policy(o);
  sf::EvalResult r = doubly_completed_eval(SpectralParam(k, s), z, t);
  if (format == "csv")
    return "re,im,abs_error_estimate,method\n" + fmt(r.value.real()) + "," + fmt(r.value.imag()) + "," +
           fmt(r.abs_error_estimate) + "," + std::string(sf::to_string(r.method)) + "\n";
  if (format == "text")
    return "value " + fmt(r.value.real()) + " " + fmt(r.value.imag()) + "\nabs_error_estimate " +
           fmt(r.abs_error_estimate) + "\nmethod " + std::string(sf::to_string(r.method)) + "\n";
  ojson j;
  j["value"] = pair(r.value);
  j["abs_error_estimate"] = r.abs_error_estimate;
  j["method"] = std::string(sf::to_string(r.method));
  return j.dump(2) + "\n";
}

std::string run_taylor(const Options& o, const std::string& format) {
  const int k = need_weight(o);
  const PointUHP z = need_z(o);
  const cplx s0 = parse_complex("--s0", o.s0 ? *o.s0 : o.s);
  if (o.order < 0) throw UsageError("--order must be >= 0");
  auto T = taylor_coeffs(k, s0, z, o.order, policy(o));
  std::ostringstream os;
  if (format == "csv") {
    os << "n,re,im,abs_error_estimate,method\n";
    for (std::size_t n = 0; n < T.size(); ++n)
      os << n << "," << fmt(T[n].value.real()) << "," << fmt(T[n].value.imag()) << "," << fmt(T[n].abs_error_estimate)
         << "," << sf::to_string(T[n].method) << "\n";
  } else if (format == "text") {
    for (std::size_t n = 0; n < T.size(); ++n)
      os << "T" << n << "  " << fmt(T[n].value.real()) << " " << fmt(T[n].value.imag()) << "  +- "
         << fmt(T[n].abs_error_estimate) << "\n";
  } else {
    ojson a = ojson::array();
    for (std::size_t n = 0; n < T.size(); ++n) {
      ojson e;
      e["n"] = n;
      e["value"] = pair(T[n].value);
      e["abs_error_estimate"] = T[n].abs_error_estimate;
      e["method"] = std::string(sf::to_string(T[n].method));
      a.push_back(e);
    }
    os << a.dump(2) << "\n";
  }
  return os.str();
}

std::string run_fourier_table(const Options& o, const std::string& format) {
  const int k = need_weight(o);
  const cplx s = parse_complex("--s", o.s0 ? *o.s0 : o.s);
  const int N = o.modes > 0 ? o.modes : 10;
  FormExpansion f = eisenstein_expansion(SpectralParam(k, s), N, true);
  const std::string js = to_json(f);
  if (format == "json") return js + "\n";
  // rows come from the JSON so the two outputs agree digit for digit
  ojson j = ojson::parse(js);
  std::ostringstream os;
  if (format == "csv") os << "n,j,re,im\n";
  for (const auto& m : j["modes"]) {
    const double re = m["c"][0].get<double>(), im = m["c"][1].get<double>();
    if (format == "csv")
      os << m["n"].get<long>() << "," << m["j"].get<int>() << "," << fmt(re) << "," << fmt(im) << "\n";
    else
      os << std::setw(5) << m["n"].get<long>() << std::setw(3) << m["j"].get<int>() << "  " << std::setw(24) << fmt(re)
         << "  " << std::setw(24) << fmt(im) << "\n";
  }
  return os.str();
}

int run_verify(const Options& o, const std::string& format, std::string& text) {
  if (!is_suite(o.suite)) throw UsageError("unknown suite: " + o.suite);
  SuiteOptions so;
  so.seed = o.seed;
  so.threads = o.threads;
  so.tol = o.tol;
  if (o.weight) {
    so.has_weight = true;
    so.weight = need_weight(o);
  }
  if (o.threads < 0) throw UsageError("--threads must be >= 0");
  auto r = run_suite(o.suite, so);
  text = format == "json" ? reports_to_json(r) + "\n" : format == "csv" ? reports_to_csv(r) : reports_to_text(r);
  for (const CheckReport& c : r)
    if (!c.passed) return 1;
  return 0;
}

int run_manifest(const std::string& format, std::string& text) {
  const auto& m = manifest();
  std::ostringstream os;
  if (format == "json") {
    ojson a = ojson::array();
    for (const ManifestEntry& e : m) {
      ojson x;
      x["result"] = e.result;
      x["suites"] = e.suites;
      a.push_back(x);
    }
    os << a.dump(2) << "\n";
  } else if (format == "csv") {
    os << "result,suites\n";
    for (const ManifestEntry& e : m) {
      os << "\"" << e.result << "\",\"";
      for (std::size_t i = 0; i < e.suites.size(); ++i) os << (i ? ";" : "") << e.suites[i];
      os << "\"\n";
    }
  } else {
    for (const ManifestEntry& e : m) {
      os << e.result << ":";
      for (const std::string& s : e.suites) os << " " << s;
      os << "\n";
    }
  }
  auto missing = manifest_missing();
  for (const ManifestEntry& e : missing) std::cerr << "manifest: no registered suite for \"" << e.result << "\"\n";
  text = os.str();
  return missing.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eisenstein series, shifted polyharmonic Maass forms and their identity checks"};
  app.require_subcommand(1, 1);
  Options o;
  try {
    load_env(o);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  std::string weight_flag;
  auto common = [&](CLI::App* c) {
    c->add_option("--weight", weight_flag, "even integer weight k");
    c->add_option("--tol", o.tol, "target tolerance (0: default)");
    c->add_option("--output", o.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", o.out, "write to this file instead of stdout");
  };
  auto point = [&](CLI::App* c) {
    c->add_option("--z", o.z, "point in the upper half-plane as re,im");
    c->add_option("--modes", o.modes, "Fourier modes (0: automatic)");
    c->add_option("--radius", o.radius, "Cauchy circle radius in s");
  };
  CLI::App* ev = app.add_subcommand("eval", "doubly-completed series at (k, s, z)");
  common(ev);
  point(ev);
  ev->add_option("--s", o.s, "spectral parameter as re,im");
  CLI::App* ta = app.add_subcommand("taylor", "s-Taylor coefficients T_0..T_order at s0");
  common(ta);
  point(ta);
  ta->add_option("--s0", o.s0, "expansion point as re,im");
  ta->add_option("--s", o.s, "alias for --s0");
  ta->add_option("--order", o.order, "largest coefficient index");
  CLI::App* ft = app.add_subcommand("fourier-table", "Fourier coefficients of the doubly-completed series");
  common(ft);
  ft->add_option("--s", o.s, "spectral parameter as re,im");
  ft->add_option("--s0", o.s0, "alias for --s");
  ft->add_option("--modes", o.modes, "largest |n| (default 10)");
  CLI::App* ve = app.add_subcommand("verify", "run a check suite");
  common(ve);
  ve->add_option("--suite", o.suite, "suite name or all");
  ve->add_option("--seed", o.seed, "sampling seed");
  ve->add_option("--threads", o.threads, "worker threads (0: available parallelism)");
  CLI::App* ma = app.add_subcommand("manifest", "list results and the suites covering them");
  common(ma);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  std::string text;
  int code = 0;
  try {
    if (!weight_flag.empty()) {
      try {
        std::size_t used = 0;
        o.weight = std::stoi(weight_flag, &used);
        if (used != weight_flag.size()) throw std::invalid_argument("");
      } catch (const std::logic_error&) {
        throw UsageError("--weight: expected an integer, got \"" + weight_flag + "\"");
      }
    }
    std::string format = o.output;
    if (format.empty()) format = (name == "verify" || name == "manifest") ? "text" : "json";
    if (format != "json" && format != "csv" && format != "text") throw UsageError("--output must be json, csv or text");
    if (name == "eval") text = run_eval(o, format);
    else if (name == "taylor") text = run_taylor(o, format);
    else if (name == "fourier-table") text = run_fourier_table(o, format);
    else if (name == "verify") code = run_verify(o, format, text);
    else code = run_manifest(format, text);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << cmd->help();
    return 2;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }

  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "cannot write " << o.out << "\n";
      return 2;
    }
  }
  return code;
}
