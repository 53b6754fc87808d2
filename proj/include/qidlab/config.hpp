#ifndef QIDLAB_CONFIG_HPP
#define QIDLAB_CONFIG_HPP

#include <cstddef>

namespace qidlab {

/// Numerical knobs shared by every module. Defaults are what the CLI and the
/// test suites use; a JSON file named by QIDLAB_CONFIG can override them.
struct Config {
  // Representation.
  double merge_tol = 1e-12;          // atom locations closer than this are merged
  double discrete_mass_tol = 1e-12;  // |sum of atom masses - 1|
  double density_mass_tol = 1e-8;    // |integral of density - 1|
  std::size_t default_cells = 1024;  // grid cells across a support width
  std::size_t max_grid_points = std::size_t{1} << 22;
  double q_half_exclusion = 1e-3;    // continuous Bernoulli: |q - 1/2| >= this

  // Scanning.
  double scan_step = 0.01;
  double scan_window = 100.0;        // window when no exhaustive one is known
  double refine_tol = 1e-12;
  std::size_t refine_candidates = 32;
  int max_step_halvings = 6;
  std::size_t max_scan_points = std::size_t{1} << 24;
  double decay_t_max = 1e6;
  double zero_verdict = 1e-8;        // min |f| below this reads as "zero found"
  double log_floor = 1e-6;           // distinguished log refuses |f| below this
  int log_max_depth = 30;
  double identically_zero_tol = 1e-12;

  // Lattice detection.
  double lattice_tol = 1e-9;
  long max_lattice_index = 1L << 20;

  // Delta selection.
  double symmetry_tol = 1e-9;
  double delta_separation = 1e-9;
  double bad_set_fraction = 0.125;   // bad deltas beyond the scanned window are below this * tau
  std::size_t max_delta_candidates = 8;

  // Pipelines.
  double truncation_tail_fraction = 0.01;  // density truncation keeps tail <= fraction * eps
  int tau_ladder_max = 30;
  std::size_t min_kernel_cells = 4;

  // Spectral extraction.
  std::size_t spectral_min_points = 256;
  double spectral_drop_tol = 1e-13;
  int spectral_default_k = 64;
};

inline const Config& default_config() {
  static const Config config{};
  return config;
}

}  // namespace qidlab

#endif  // QIDLAB_CONFIG_HPP
