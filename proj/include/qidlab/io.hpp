#ifndef QIDLAB_IO_HPP
#define QIDLAB_IO_HPP

// JSON and CSV I/O. Output is written by hand with 17 significant digits so
// that parse -> serialize is byte-stable; input goes through nlohmann::json.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "qidlab/charfn.hpp"
#include "qidlab/config.hpp"
#include "qidlab/dist.hpp"
#include "qidlab/error.hpp"
#include "qidlab/pipelines.hpp"
#include "qidlab/spectral.hpp"

namespace qidlab {

inline std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline double number(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorKind::invalid_argument, std::string(what) + " must be a number");
  return j.get<double>();
}

inline void field(std::string& out, const char* key, const std::string& value, bool& first) {
  if (!first) out += ", ";
  first = false;
  out += "\"";
  out += key;
  out += "\": ";
  out += value;
}

template <class T>
void optional_field(std::string& out, const char* key, const std::optional<T>& v, bool& first) {
  if (!v) return;
  if constexpr (std::is_same_v<T, long>)
    field(out, key, std::to_string(*v), first);
  else if constexpr (std::is_same_v<T, Side>)
    field(out, key, std::string("\"") + to_string(*v) + "\"", first);
  else
    field(out, key, format_real(*v), first);
}

}  // namespace detail

/// Law from its JSON object. `discrete_weight` may be omitted when only one
/// of `atoms` / `density` is present.
inline Law law_from_json(const nlohmann::json& j, const Config& cfg = default_config()) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_argument, "law JSON must be an object");
  std::optional<DiscreteLaw> d;
  std::optional<DensityLaw> a;
  if (j.contains("atoms") && !j["atoms"].is_null() && !j["atoms"].empty()) {
    if (!j["atoms"].is_array()) throw Error(ErrorKind::invalid_argument, "atoms must be an array");
    std::vector<Atom> atoms;
    for (const auto& pair : j["atoms"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error(ErrorKind::invalid_argument, "each atom must be [location, mass]");
      atoms.push_back({detail::number(pair[0], "atom location"), detail::number(pair[1], "atom mass")});
    }
    d = DiscreteLaw::from_atoms(std::move(atoms), cfg);
  }
  if (j.contains("density") && !j["density"].is_null()) {
    const auto& dj = j["density"];
    if (!dj.is_object() || !dj.contains("origin") || !dj.contains("step") || !dj.contains("samples") ||
        !dj["samples"].is_array())
      throw Error(ErrorKind::invalid_argument, "density needs origin, step and samples");
    std::vector<double> samples;
    for (const auto& s : dj["samples"]) samples.push_back(detail::number(s, "density sample"));
    a = DensityLaw::from_samples(detail::number(dj["origin"], "origin"), detail::number(dj["step"], "step"),
                                 std::move(samples), cfg);
  }
  if (!d && !a) throw Error(ErrorKind::invalid_argument, "law needs atoms or a density");
  double w = d ? (a ? -1.0 : 1.0) : 0.0;
  if (j.contains("discrete_weight")) {
    w = detail::number(j["discrete_weight"], "discrete_weight");
  } else if (w < 0.0) {
    throw Error(ErrorKind::invalid_argument, "discrete_weight is required for mixtures");
  }
  return Law::mixture(w, std::move(d), std::move(a));
}

inline Law parse_law(const std::string& text, const Config& cfg = default_config()) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::invalid_argument, std::string("malformed JSON: ") + e.what());
  }
  return law_from_json(j, cfg);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path);
  out << text;
}

inline Law load_law(const std::string& path, const Config& cfg = default_config()) {
  return parse_law(read_file(path), cfg);
}

/// Canonical single-line JSON for a law.
inline std::string law_to_json(const Law& f) {
  std::string out = "{\"discrete_weight\": " + format_real(f.discrete_weight()) + ", \"atoms\": [";
  if (const auto& d = f.discrete_part()) {
    bool first = true;
    for (const auto& a : d->atoms()) {
      if (!first) out += ", ";
      first = false;
      out += "[" + format_real(a.location) + ", " + format_real(a.mass) + "]";
    }
  }
  out += "], \"density\": ";
  if (const auto& a = f.continuous_part()) {
    out += "{\"origin\": " + format_real(a->origin()) + ", \"step\": " + format_real(a->step()) + ", \"samples\": [";
    bool first = true;
    for (double s : a->samples()) {
      if (!first) out += ", ";
      first = false;
      out += format_real(s);
    }
    out += "]}";
  } else {
    out += "null";
  }
  out += "}";
  return out;
}

inline std::string certificate_to_json(const ZeroFreeCertificate& c, const Config& cfg = default_config()) {
  std::string out = "{";
  bool first = true;
  detail::field(out, "window_T", format_real(c.window_T), first);
  detail::field(out, "grid_step", format_real(c.grid_step), first);
  detail::field(out, "min_modulus", format_real(c.min_modulus), first);
  detail::field(out, "argmin_t", format_real(c.argmin_t), first);
  detail::optional_field(out, "tail_bound", c.tail_bound, first);
  detail::optional_field(out, "lipschitz", c.lipschitz, first);
  detail::optional_field(out, "lower_bound", c.lower_bound, first);
  detail::field(out, "resolution_limited", c.resolution_limited ? "true" : "false", first);
  detail::field(out, "verdict", std::string("\"") + verdict(c, cfg) + "\"", first);
  out += "}";
  return out;
}

inline std::string params_to_json(const ApproxParams& p) {
  std::string out = "{";
  bool first = true;
  detail::optional_field(out, "r_eps", p.r_eps, first);
  detail::optional_field(out, "c_eps", p.c_eps, first);
  detail::optional_field(out, "gamma_eps", p.gamma_eps, first);
  detail::optional_field(out, "delta_eps", p.delta_eps, first);
  detail::optional_field(out, "tau_eps", p.tau_eps, first);
  detail::optional_field(out, "q", p.q, first);
  detail::optional_field(out, "side", p.side, first);
  detail::optional_field(out, "K1", p.K1, first);
  detail::optional_field(out, "K2", p.K2, first);
  detail::optional_field(out, "q1_eps", p.q1_eps, first);
  detail::optional_field(out, "q2_eps", p.q2_eps, first);
  detail::optional_field(out, "r_hat", p.r_hat, first);
  detail::optional_field(out, "c_hat", p.c_hat, first);
  detail::optional_field(out, "mu_d", p.mu_d, first);
  detail::optional_field(out, "delta_cap", p.delta_cap, first);
  detail::optional_field(out, "discrete_lower_bound", p.discrete_lower_bound, first);
  detail::optional_field(out, "discrete_min_modulus", p.discrete_min_modulus, first);
  out += "}";
  return out;
}

inline std::string approx_result_to_json(const ApproxResult& r, const Config& cfg = default_config()) {
  std::string out = "{";
  bool first = true;
  detail::field(out, "construction", std::string("\"") + to_string(r.construction) + "\"", first);
  detail::field(out, "eps", format_real(r.eps), first);
  detail::field(out, "tv_value", format_real(r.tv_value), first);
  detail::field(out, "tv_error_bound", format_real(r.tv_error_bound), first);
  detail::field(out, "tv_bound_claimed", format_real(r.tv_bound_claimed), first);
  detail::field(out, "verified", r.verified() ? "true" : "false", first);
  detail::field(out, "params", params_to_json(r.params), first);
  detail::field(out, "certificate", certificate_to_json(r.certificate, cfg), first);
  detail::field(out, "approximant", law_to_json(r.approximant), first);
  out += "}\n";
  return out;
}

inline std::string spectral_pair_to_json(const SpectralPair& p) {
  std::string out = "{\"gamma\": " + format_real(p.drift_gamma) + ", \"a\": " + format_real(p.lattice_a) +
                    ", \"b\": " + format_real(p.lattice_b) + ", \"atoms\": [";
  bool first = true;
  for (const auto& [k, lambda] : p.signed_atoms) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(k) + ", " + format_real(lambda) + "]";
  }
  out += "], \"residual\": " + format_real(p.residual) + "}\n";
  return out;
}

inline SpectralPair spectral_pair_from_json(const nlohmann::json& j) {
  SpectralPair p{detail::number(j.at("gamma"), "gamma"), detail::number(j.at("a"), "a"), detail::number(j.at("b"), "b"),
                 {}, 0, detail::number(j.at("residual"), "residual")};
  for (const auto& pair : j.at("atoms")) {
    p.signed_atoms.push_back({pair.at(0).get<long>(), detail::number(pair.at(1), "lambda")});
    p.truncation_K = std::max(p.truncation_K, static_cast<int>(std::abs(pair.at(0).get<long>())));
  }
  return p;
}

inline std::string tv_to_json(const TvResult& tv) {
  return "{\"value\": " + format_real(tv.value) + ", \"error_bound\": " + format_real(tv.error_bound) + "}\n";
}

/// Settings read from the file named by QIDLAB_CONFIG.
struct RunConfig {
  Config numeric;
  double q = 0.4;
  std::optional<double> grid_step;
  std::optional<std::string> output_dir;
};

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig rc;
  if (!j.is_object()) throw Error(ErrorKind::invalid_argument, "config must be a JSON object");
  auto positive = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    const double v = detail::number(j[key], key);
    if (!(v > 0.0)) throw Error(ErrorKind::invalid_argument, std::string(key) + " must be positive");
    slot = v;
  };
  Config& c = rc.numeric;
  positive("scan_step", c.scan_step);
  positive("scan_window", c.scan_window);
  positive("refine_tol", c.refine_tol);
  positive("merge_tol", c.merge_tol);
  positive("zero_verdict", c.zero_verdict);
  positive("log_floor", c.log_floor);
  positive("lattice_tol", c.lattice_tol);
  positive("symmetry_tol", c.symmetry_tol);
  positive("decay_t_max", c.decay_t_max);
  positive("truncation_tail_fraction", c.truncation_tail_fraction);
  positive("q", rc.q);
  if (j.contains("grid_step")) {
    double h = 0.0;
    positive("grid_step", h);
    rc.grid_step = h;
  }
  if (j.contains("default_cells")) {
    const double cells = detail::number(j["default_cells"], "default_cells");
    if (!(cells >= 2.0)) throw Error(ErrorKind::invalid_argument, "default_cells must be >= 2");
    c.default_cells = static_cast<std::size_t>(cells);
  }
  if (j.contains("output_dir")) rc.output_dir = j["output_dir"].get<std::string>();
  return rc;
}

inline RunConfig load_run_config(const std::string& path) {
  const auto text = read_file(path);
  try {
    return run_config_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_argument, std::string("bad config ") + path + ": " + e.what());
  }
}

}  // namespace qidlab

#endif  // QIDLAB_IO_HPP
