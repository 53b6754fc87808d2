// qidlab command-line tool.
//
// Exit codes: 0 success, 2 input error (parse, shape, parameter), 3 method
// failure (zero on path, unverifiable selection, bound violation, ...).

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qidlab/io.hpp"
#include "qidlab/qidlab.hpp"

namespace {

using namespace qidlab;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kMethodFailure = 3;

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out)
    write_file(*out, text);
  else
    std::cout << text;
}

Side parse_side(const std::string& s) {
  if (s == "plus" || s == "+") return Side::plus;
  if (s == "minus" || s == "-") return Side::minus;
  throw Error(ErrorKind::invalid_argument, "side must be plus or minus");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  try {
    if (const char* path = std::getenv("QIDLAB_CONFIG")) rc = load_run_config(path);
  } catch (const Error& e) {
    std::cerr << "qidlab: " << e.what() << "\n";
    return kInputError;
  }
  const Config& cfg = rc.numeric;

  CLI::App app{"Rational-infinitely divisible approximation and CF diagnostics"};
  app.require_subcommand(1);
  std::optional<std::string> out;

  auto* approx = app.add_subcommand("approximate", "Build a certified approximant of a law");
  std::string approx_input;
  std::string mode;
  double eps = 0.0;
  double q = rc.q;
  double tau = 0.5;
  std::string side = "plus";
  approx->add_option("input", approx_input, "Law JSON file")->required();
  approx->add_option("--mode", mode, "abs, lattice or mixture")
      ->required()
      ->check(CLI::IsMember({"abs", "lattice", "mixture"}));
  approx->add_option("--eps", eps, "Target accuracy")->required();
  approx->add_option("--q", q, "Continuous Bernoulli parameter (abs mode)");
  approx->add_option("--tau", tau, "Kernel width bound (abs mode)");
  approx->add_option("--side", side, "Kernel side: plus or minus (abs mode)");
  approx->add_option("--out", out, "Output file (default stdout)");

  auto* check = app.add_subcommand("check-zero-free", "Scan min |f| and report a certificate");
  std::string check_input;
  std::optional<double> window;
  std::optional<double> step;
  check->add_option("input", check_input, "Law JSON file")->required();
  check->add_option("--window", window, "Scan [-T, T]; default: exhaustive window where one is known");
  check->add_option("--step", step, "Grid step");
  check->add_option("--out", out, "Output file (default stdout)");

  auto* spectral = app.add_subcommand("spectral-pair", "Extract the signed spectral pair of a lattice law");
  std::string spectral_input;
  int K = cfg.spectral_default_k;
  spectral->add_option("input", spectral_input, "Law JSON file")->required();
  spectral->add_option("--K", K, "Truncation index")->check(CLI::NonNegativeNumber);
  spectral->add_option("--out", out, "Output file (default stdout)");

  auto* tv = app.add_subcommand("tv", "Total variation distance of two laws");
  std::string tv_a;
  std::string tv_b;
  tv->add_option("input1", tv_a, "First law JSON file")->required();
  tv->add_option("input2", tv_b, "Second law JSON file")->required();
  tv->add_option("--out", out, "Output file (default stdout)");

  auto* kutlu = app.add_subcommand("kutlu-scan", "Zeros of Kutlu's function on [-pi, pi]^2");
  double kutlu_step = 0.005;
  kutlu->add_option("--step", kutlu_step, "Grid step")->check(CLI::PositiveNumber);
  kutlu->add_option("--out", out, "Output CSV (default stdout)");

  auto* inf = app.add_subcommand("inf-scan", "Running min |f| of the three-point law over [0, T]");
  std::string alpha_spec;
  std::vector<double> ladder{1e2, 1e3, 1e4, 1e5};
  double inf_step = cfg.scan_step;
  inf->add_option("alpha", alpha_spec, "p/q, sqrt2, golden, pi or a decimal")->required();
  inf->add_option("--ladder", ladder, "Comma-separated increasing windows")->delimiter(',');
  inf->add_option("--step", inf_step, "Grid step")->check(CLI::PositiveNumber);
  inf->add_option("--out", out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*approx) {
      const Law law = load_law(approx_input, cfg);
      ApproxResult r = mode == "abs"       ? approximate_abs_cont(law, eps, q, tau, parse_side(side), cfg)
                       : mode == "lattice" ? approximate_lattice(law, eps, cfg)
                                           : approximate_mixture(law, eps, cfg);
      emit(out, approx_result_to_json(r, cfg));
      return r.verified() ? kOk : kMethodFailure;
    }
    if (*check) {
      const Law law = load_law(check_input, cfg);
      ZeroFreeCertificate c = window ? certify_window(law, *window, step.value_or(cfg.scan_step), cfg)
                                     : certify_zero_free(law, cfg);
      emit(out, certificate_to_json(c, cfg) + "\n");
      return kOk;
    }
    if (*spectral) {
      const Law law = load_law(spectral_input, cfg);
      emit(out, spectral_pair_to_json(lattice_spectral_pair(law, K, cfg)));
      return kOk;
    }
    if (*tv) {
      emit(out, tv_to_json(tv_distance(load_law(tv_a, cfg), load_law(tv_b, cfg), cfg)));
      return kOk;
    }
    if (*kutlu) {
      emit(out, kutlu_scan_csv(kutlu_zero_scan(kutlu_step)));
      return kOk;
    }
    if (*inf) {
      emit(out, inf_scan_csv(inf_scan(parse_alpha(alpha_spec), ladder, inf_step, cfg)));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "qidlab: " << e.what() << "\n";
    return e.is_input_error() ? kInputError : kMethodFailure;
  }
  return kInputError;
}
