#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "covert/csv.hpp"
#include "covert/detection.hpp"
#include "covert/errors.hpp"
#include "covert/link.hpp"
#include "covert/optimizer.hpp"

namespace covert::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(key);
  for (char& c : k) {
    if (c == '-') c = '_';
  }
  return k;
}

template <class T>
T parse_value(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DomainError("invalid value '" + std::string(text) + "' for " +
                      std::string(key));
  }
  return value;
}

const char* mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::kCsi:
      return "csi";
    case SweepMode::kCdiExact:
      return "cdi_exact";
    case SweepMode::kCdiApprox:
      return "cdi_approx";
    case SweepMode::kBoth:
      return "both";
  }
  return "?";
}

double sweep_zeta(const SystemParams& sys, SweepMode mode, double p_d, int n_d) {
  const auto w = sys.willie(p_d, n_d);
  switch (mode) {
    case SweepMode::kCsi:
      return detection::expected_zeta_star_csi(w);
    case SweepMode::kCdiExact:
      return detection::zeta_star_cdi(w, detection::CdiThreshold::kExact);
    case SweepMode::kCdiApprox:
      return detection::zeta_star_cdi(w, detection::CdiThreshold::kApprox);
    case SweepMode::kBoth:
      break;
  }
  throw DomainError("sweep mode 'both' is not a single curve");
}

// Row of the simulate report: empirical estimate, analytic value, standard
// error of the estimate and 3-sigma agreement. `model_stderr` backs up the
// empirical error when the estimate sits at 0 or 1.
void report_row(std::ostream& out, const char* quantity, double empirical,
                double analytic, double stderr_emp, double stderr_model,
                std::uint64_t samples) {
  out << quantity << ',' << csv::number(empirical) << ',' << csv::number(analytic)
      << ',';
  if (samples < 2 || std::isnan(stderr_emp)) {
    out << csv::kUnavailable << ',' << csv::kUnavailable << '\n';
    return;
  }
  const double se = std::max(stderr_emp, stderr_model);
  out << csv::number(stderr_emp) << ','
      << csv::boolean(std::abs(empirical - analytic) <= 3.0 * se) << '\n';
}

}  // namespace

void apply_param(SystemParams& p, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string_view value = trim(raw_value);
  if (key == "sigma_b2") {
    p.sigma_b2 = parse_value<double>(key, value);
  } else if (key == "sigma_w2") {
    p.sigma_w2 = parse_value<double>(key, value);
  } else if (key == "rate") {
    p.rate = parse_value<double>(key, value);
  } else if (key == "p_max") {
    p.p_max = parse_value<double>(key, value);
  } else if (key == "n_t") {
    p.n_t = parse_value<int>(key, value);
  } else if (key == "p_t") {
    p.p_t = parse_value<double>(key, value);
  } else if (key == "n_d_min") {
    p.n_d_min = parse_value<int>(key, value);
  } else if (key == "n_d_max") {
    p.n_d_max = parse_value<int>(key, value);
  } else {
    throw DomainError("unknown parameter '" + key + "'");
  }
}

SystemParams parse_params_text(std::string_view text, SystemParams base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("params line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    apply_param(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

SystemParams load_params_file(const std::string& path, SystemParams base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read params file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params_text(buf.str(), base);
}

void run_detect_sweep(const SystemParams& sys, const DetectSweepOptions& opt,
                      std::ostream& out) {
  if (opt.p_d_grid.empty() || opt.n_d_list.empty()) {
    throw DomainError("detect-sweep needs a nonempty p_d grid and n_d list");
  }
  for (double p : opt.p_d_grid) {
    if (!std::isfinite(p) || p < 0.0) {
      throw DomainError("p_d grid values must be finite and >= 0");
    }
  }
  for (int n : opt.n_d_list) {
    if (n < 1) throw DomainError("n_d values must be >= 1");
  }
  std::vector<SweepMode> modes;
  if (opt.mode == SweepMode::kBoth) {
    modes = {SweepMode::kCsi, SweepMode::kCdiExact};
  } else {
    modes = {opt.mode};
  }
  out << "p_d,n_d,mode,zeta\n";
  for (int n_d : opt.n_d_list) {
    for (SweepMode mode : modes) {
      for (double p_d : opt.p_d_grid) {
        out << csv::number(p_d) << ',' << n_d << ',' << mode_name(mode) << ','
            << csv::number(sweep_zeta(sys, mode, p_d, n_d)) << '\n';
      }
    }
  }
}

void run_optimize(const SystemParams& sys, const OptimizeOptions& opt,
                  std::ostream& out) {
  if (opt.epsilons.empty()) throw DomainError("optimize needs at least one epsilon");
  SystemParams base = sys;
  if (opt.force_nd) {
    if (*opt.force_nd < 1) throw DomainError("--force-nd must be >= 1");
    base.n_d_min = base.n_d_max = *opt.force_nd;
  }
  base.validate();
  for (double eps : opt.epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon values must lie in (0, 1)");
  }
  out << "epsilon,method,p_d_star,n_d_star,throughput,power_capped,n_d_boundary,"
         "diagnostics\n";
  auto emit = [&](double eps, const char* method,
                  const optimizer::DesignSolution& s) {
    out << csv::number(eps) << ',' << method << ',' << csv::number(s.p_d_star)
        << ',' << s.n_d_star << ',' << csv::number(s.throughput) << ','
        << csv::boolean(s.power_capped) << ',' << optimizer::to_string(s.n_d_boundary)
        << ',' << (s.constraint_violated ? "constraint_violated" : "ok") << '\n';
  };
  for (double eps : opt.epsilons) {
    const auto prob = base.problem(eps);
    if (opt.method != Method::kSuboptimal) emit(eps, "exact", optimizer::solve_p1(prob));
    if (opt.method != Method::kExact) emit(eps, "suboptimal", optimizer::solve_p1_1(prob));
  }
}

void run_simulate(const SystemParams& sys, const SimulateOptions& opt,
                  std::ostream& out) {
  if (opt.mc.trials < 1) throw DomainError("trials must be >= 1");
  simulation::Scenario sc{sys, opt.n_d.value_or(sys.n_d_min), opt.p_d};
  sys.validate();
  sys.willie(sc.p_d, sc.n_d).validate();

  if (opt.trace_path) {
    std::ofstream trace(*opt.trace_path, std::ios::binary);
    if (!trace) throw DomainError("cannot write trace file '" + *opt.trace_path + "'");
    simulation::write_trace_csv(
        trace, simulation::collect_traces(sc, opt.mc, opt.trace_slots));
  }

  const auto det = simulation::estimate_detection(sc, opt.mc);
  const auto pcc = simulation::estimate_pcc(sc, opt.mc);
  const auto link_params = sys.link(sc.p_d, sc.n_d);
  const double pcc_model =
      link::covert_connection_prob(link_params, link::beta_b(link_params));
  const double bits = sc.n_d * sys.rate;

  using simulation::binomial_stderr;
  out << "quantity,empirical,analytic,stderr,pass\n";
  report_row(out, "p_fa", det.p_fa_hat, det.p_fa_model, det.p_fa_stderr,
             binomial_stderr(det.p_fa_model, det.h0_slots), det.h0_slots);
  report_row(out, "p_md", det.p_md_hat, det.p_md_model, det.p_md_stderr,
             binomial_stderr(det.p_md_model, det.h1_slots), det.h1_slots);
  report_row(out, "zeta", det.zeta_hat, det.zeta_model, det.zeta_stderr,
             std::hypot(binomial_stderr(det.p_fa_model, det.h0_slots),
                        binomial_stderr(det.p_md_model, det.h1_slots)),
             std::min(det.h0_slots, det.h1_slots));
  report_row(out, "p_cc", pcc.p_cc_hat, pcc_model, pcc.standard_error,
             binomial_stderr(pcc_model, pcc.slots), pcc.slots);
  report_row(out, "throughput", bits * pcc.p_cc_hat, bits * pcc_model,
             bits * pcc.standard_error, bits * binomial_stderr(pcc_model, pcc.slots),
             pcc.slots);
}

namespace {

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(0.01 * i);
  return grid;
}

std::vector<double> linear_grid(double max, int points) {
  if (points < 1 || !(max >= 0.0)) throw DomainError("invalid p_d grid");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? max : max * i / (points - 1));
  }
  return grid;
}

struct ParamFlag {
  const char* name;
  const char* key;
  std::string value;
  CLI::Option* option = nullptr;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covert communication analysis under quasi-static Rayleigh fading"};
  app.name("covert");
  app.require_subcommand(1);
  app.fallthrough();

  std::string params_path;
  std::string out_path;
  std::uint64_t seed = 1;
  app.add_option("--params", params_path, "key = value parameter file");
  app.add_option("--out", out_path, "write CSV here instead of stdout");
  app.add_option("--seed", seed, "Monte Carlo seed");

  std::vector<ParamFlag> flags = {
      {"--sigma-b2", "sigma_b2", {}},   {"--sigma-w2", "sigma_w2", {}},
      {"--rate", "rate", {}},           {"--p-max", "p_max", {}},
      {"--n-t", "n_t", {}},             {"--p-t", "p_t", {}},
      {"--n-d-min", "n_d_min", {}},     {"--n-d-max", "n_d_max", {}},
  };
  for (auto& f : flags) {
    f.option = app.add_option(f.name, f.value, std::string("override ") + f.key);
  }

  auto* sweep = app.add_subcommand("detect-sweep", "Willie's minimum detection error vs P_D");
  std::vector<double> p_d_grid;
  double p_d_max = 0.02;
  int points = 41;
  std::vector<int> n_d_list = {50, 100};
  std::string sweep_mode = "both";
  sweep->add_option("--p-d", p_d_grid, "explicit P_D grid (comma separated)")
      ->delimiter(',');
  sweep->add_option("--p-d-max", p_d_max, "upper end of the default linear grid");
  sweep->add_option("--points", points, "points in the default linear grid");
  sweep->add_option("--n-d", n_d_list, "data blocklengths (comma separated)")
      ->delimiter(',');
  sweep->add_option("--mode", sweep_mode, "csi | cdi_exact | cdi_approx | both")
      ->check(CLI::IsMember({"csi", "cdi_exact", "cdi_approx", "both"}));

  auto* optimize = app.add_subcommand("optimize", "Covert power and blocklength design vs epsilon");
  std::vector<double> epsilons;
  std::string method = "both";
  int force_nd = 0;
  optimize->add_option("--epsilon", epsilons, "covertness levels (comma separated)")
      ->delimiter(',');
  optimize->add_option("--method", method, "exact | suboptimal | both")
      ->check(CLI::IsMember({"exact", "suboptimal", "both"}));
  auto* force_opt = optimize->add_option("--force-nd", force_nd,
                                         "fix N_D (power still optimized)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the closed forms");
  SimulateOptions sim;
  int sim_nd = 0;
  std::string policy = "csi_optimal";
  std::string trace_path;
  simulate->add_option("--p-d", sim.p_d, "data power");
  auto* sim_nd_opt = simulate->add_option("--n-d", sim_nd, "data blocklength");
  simulate->add_option("--trials", sim.mc.trials, "Monte Carlo slots");
  simulate->add_option("--policy", policy, "csi_optimal | cdi_exact | cdi_approx | fixed")
      ->check(CLI::IsMember({"csi_optimal", "cdi_exact", "cdi_approx", "fixed"}));
  simulate->add_option("--lambda", sim.mc.fixed_lambda, "threshold for --policy fixed");
  simulate->add_option("--threads", sim.mc.threads, "worker threads (0 = all cores)");
  auto* trace_opt = simulate->add_option("--trace", trace_path, "per-slot CSV dump");
  simulate->add_option("--trace-slots", sim.trace_slots, "slots written to --trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "covert: " << e.what() << '\n';
    return kUsage;
  }

  try {
    SystemParams params;
    if (!params_path.empty()) params = load_params_file(params_path, params);
    for (const auto& f : flags) {
      if (f.option->count() > 0) apply_param(params, f.key, f.value);
    }
    params.validate();

    // Buffer the CSV so a failing command leaves no partial output.
    std::ostringstream csv_out;
    if (sweep->parsed()) {
      DetectSweepOptions opt;
      opt.p_d_grid = p_d_grid.empty() ? linear_grid(p_d_max, points) : p_d_grid;
      opt.n_d_list = n_d_list;
      opt.mode = sweep_mode == "csi"          ? SweepMode::kCsi
                 : sweep_mode == "cdi_exact"  ? SweepMode::kCdiExact
                 : sweep_mode == "cdi_approx" ? SweepMode::kCdiApprox
                                              : SweepMode::kBoth;
      run_detect_sweep(params, opt, csv_out);
    } else if (optimize->parsed()) {
      OptimizeOptions opt;
      opt.epsilons = epsilons.empty() ? default_epsilon_grid() : epsilons;
      opt.method = method == "exact"        ? Method::kExact
                   : method == "suboptimal" ? Method::kSuboptimal
                                            : Method::kBoth;
      if (force_opt->count() > 0) opt.force_nd = force_nd;
      run_optimize(params, opt, csv_out);
    } else if (simulate->parsed()) {
      sim.mc.seed = seed;
      sim.mc.policy = *simulation::parse_policy(policy);
      if (sim_nd_opt->count() > 0) sim.n_d = sim_nd;
      if (trace_opt->count() > 0) sim.trace_path = trace_path;
      run_simulate(params, sim, csv_out);
    }
    if (out_path.empty()) {
      out << csv_out.str();
      out.flush();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw DomainError("cannot write '" + out_path + "'");
      file << csv_out.str();
    }
    return kOk;
  } catch (const NumericError& e) {
    err << "covert: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const DomainError& e) {
    err << "covert: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace covert::cli
