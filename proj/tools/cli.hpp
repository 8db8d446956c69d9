#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covert/params.hpp"
#include "covert/simulation.hpp"

namespace covert::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

/// Applies `key = value` lines ('#' starts a comment) on top of `base`.
/// Keys are the SystemParams field names; '-' and '_' are interchangeable.
SystemParams parse_params_text(std::string_view text, SystemParams base);
SystemParams load_params_file(const std::string& path, SystemParams base);
void apply_param(SystemParams& params, std::string_view key, std::string_view value);

enum class SweepMode { kCsi, kCdiExact, kCdiApprox, kBoth };

struct DetectSweepOptions {
  std::vector<double> p_d_grid;
  std::vector<int> n_d_list;
  SweepMode mode = SweepMode::kBoth;
};

/// Rows: p_d,n_d,mode,zeta with zeta averaged over Willie's fading.
void run_detect_sweep(const SystemParams& sys, const DetectSweepOptions& opt,
                      std::ostream& out);

enum class Method { kExact, kSuboptimal, kBoth };

struct OptimizeOptions {
  std::vector<double> epsilons;
  Method method = Method::kBoth;
  std::optional<int> force_nd;
};

/// Rows: epsilon,method,p_d_star,n_d_star,throughput,power_capped,
/// n_d_boundary,diagnostics.
void run_optimize(const SystemParams& sys, const OptimizeOptions& opt,
                  std::ostream& out);

struct SimulateOptions {
  double p_d = 0.02;
  std::optional<int> n_d;  // defaults to n_d_min
  simulation::McConfig mc;
  std::optional<std::string> trace_path;
  std::uint64_t trace_slots = 1000;
};

/// Rows: quantity,empirical,analytic,stderr,pass (3-sigma agreement).
void run_simulate(const SystemParams& sys, const SimulateOptions& opt,
                  std::ostream& out);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace covert::cli
