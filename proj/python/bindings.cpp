#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "covert/detection.hpp"
#include "covert/errors.hpp"
#include "covert/link.hpp"
#include "covert/optimizer.hpp"
#include "covert/params.hpp"
#include "covert/simulation.hpp"
#include "covert/special.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace covert;

namespace {

detection::WillieParams willie(double sigma_w2, int n_d, double p_d,
                               std::optional<double> h_w2) {
  detection::WillieParams w{sigma_w2, n_d, p_d, h_w2};
  w.validate();
  return w;
}

simulation::McConfig mc_config(std::uint64_t trials, std::uint64_t seed,
                               const std::string& policy, double lambda,
                               unsigned threads) {
  simulation::McConfig mc;
  mc.trials = trials;
  mc.seed = seed;
  const auto parsed = simulation::parse_policy(policy);
  if (!parsed) throw DomainError("unknown threshold policy '" + policy + "'");
  mc.policy = *parsed;
  mc.fixed_lambda = lambda;
  mc.threads = threads;
  return mc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Covert communication analysis under quasi-static Rayleigh fading";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("ln_gamma", &special::ln_gamma, "a"_a);
  m.def("reg_lower_gamma", &special::reg_lower_gamma, "a"_a, "x"_a);
  m.def("reg_upper_gamma", &special::reg_upper_gamma, "a"_a, "x"_a);
  m.def("digamma", &special::digamma, "x"_a);

  // Detection. Conditional quantities take h_w2; fading averages ignore it.
  m.def("p_fa", [](double lambda, double sigma_w2, int n_d) {
    return detection::p_fa(lambda, willie(sigma_w2, n_d, 0.0, std::nullopt));
  }, "lam"_a, "sigma_w2"_a, "n_d"_a);
  m.def("p_md", [](double lambda, double sigma_w2, int n_d, double p_d, double h_w2) {
    return detection::p_md(lambda, willie(sigma_w2, n_d, p_d, h_w2));
  }, "lam"_a, "sigma_w2"_a, "n_d"_a, "p_d"_a, "h_w2"_a);
  m.def("optimal_threshold_csi", [](double sigma_w2, int n_d, double p_d, double h_w2) {
    return detection::optimal_threshold_csi(willie(sigma_w2, n_d, p_d, h_w2));
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a, "h_w2"_a);
  m.def("zeta_star_csi", [](double sigma_w2, int n_d, double p_d, double h_w2) {
    return detection::zeta_star_csi(willie(sigma_w2, n_d, p_d, h_w2));
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a, "h_w2"_a);
  m.def("zeta_linear_csi", [](double sigma_w2, int n_d, double p_d, double h_w2) {
    return detection::zeta_linear_csi(willie(sigma_w2, n_d, p_d, h_w2));
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a, "h_w2"_a);
  m.def("threshold_cdi_approx", &detection::threshold_cdi_approx, "sigma_w2"_a);
  m.def("threshold_cdi_exact", [](double sigma_w2, int n_d, double p_d) {
    return detection::threshold_cdi_exact(willie(sigma_w2, n_d, p_d, std::nullopt));
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a);
  m.def("expected_zeta_cdi", [](double lambda, double sigma_w2, int n_d, double p_d) {
    return detection::expected_zeta_cdi(lambda, willie(sigma_w2, n_d, p_d, std::nullopt));
  }, "lam"_a, "sigma_w2"_a, "n_d"_a, "p_d"_a);
  m.def("zeta_star_cdi", [](double sigma_w2, int n_d, double p_d, bool approx) {
    return detection::zeta_star_cdi(willie(sigma_w2, n_d, p_d, std::nullopt),
                                    approx ? detection::CdiThreshold::kApprox
                                           : detection::CdiThreshold::kExact);
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a, "approx"_a = false);
  m.def("expected_zeta_star_csi", [](double sigma_w2, int n_d, double p_d) {
    return detection::expected_zeta_star_csi(willie(sigma_w2, n_d, p_d, std::nullopt));
  }, "sigma_w2"_a, "n_d"_a, "p_d"_a);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double sigma_b2, double sigma_w2, double rate, double p_max,
                       int n_t, std::optional<double> p_t, int n_d_min, int n_d_max) {
             SystemParams s{sigma_b2, sigma_w2, rate, p_max, n_t, p_t, n_d_min, n_d_max};
             s.validate();
             return s;
           }),
           "sigma_b2"_a = 0.01, "sigma_w2"_a = 0.05, "rate"_a = 1.0, "p_max"_a = 1.0,
           "n_t"_a = 1, "p_t"_a = py::none(), "n_d_min"_a = 50, "n_d_max"_a = 100)
      .def_readwrite("sigma_b2", &SystemParams::sigma_b2)
      .def_readwrite("sigma_w2", &SystemParams::sigma_w2)
      .def_readwrite("rate", &SystemParams::rate)
      .def_readwrite("p_max", &SystemParams::p_max)
      .def_readwrite("n_t", &SystemParams::n_t)
      .def_readwrite("p_t", &SystemParams::p_t)
      .def_readwrite("n_d_min", &SystemParams::n_d_min)
      .def_readwrite("n_d_max", &SystemParams::n_d_max)
      .def("pilot_power", &SystemParams::pilot_power);

  m.def("beta_b", [](const SystemParams& s) {
    return link::beta_b(s.link(0.0, s.n_d_min)).beta_b;
  }, "params"_a);
  m.def("covert_connection_prob", [](const SystemParams& s, double p_d) {
    const auto l = s.link(p_d, s.n_d_min);
    return link::covert_connection_prob(l, link::beta_b(l));
  }, "params"_a, "p_d"_a);

  py::class_<optimizer::DesignSolution>(m, "DesignSolution")
      .def_readonly("p_d_star", &optimizer::DesignSolution::p_d_star)
      .def_readonly("n_d_star", &optimizer::DesignSolution::n_d_star)
      .def_readonly("throughput", &optimizer::DesignSolution::throughput)
      .def_readonly("power_capped", &optimizer::DesignSolution::power_capped)
      .def_readonly("constraint_violated", &optimizer::DesignSolution::constraint_violated)
      .def_property_readonly("n_d_boundary", [](const optimizer::DesignSolution& s) {
        return std::string(optimizer::to_string(s.n_d_boundary));
      })
      .def("__repr__", [](const optimizer::DesignSolution& s) {
        return "DesignSolution(p_d_star=" + std::to_string(s.p_d_star) +
               ", n_d_star=" + std::to_string(s.n_d_star) +
               ", throughput=" + std::to_string(s.throughput) + ")";
      });

  m.def("solve_p1", [](const SystemParams& s, double epsilon) {
    return optimizer::solve_p1(s.problem(epsilon));
  }, "params"_a, "epsilon"_a);
  m.def("solve_p1_1", [](const SystemParams& s, double epsilon) {
    return optimizer::solve_p1_1(s.problem(epsilon));
  }, "params"_a, "epsilon"_a);
  m.def("power_for_covertness", [](const SystemParams& s, double epsilon, int n_d, bool exact) {
    const auto prob = s.problem(epsilon);
    const auto p = exact ? optimizer::power_for_covertness_exact(n_d, prob)
                         : optimizer::power_for_covertness_suboptimal(n_d, prob);
    return py::make_tuple(p.p_d, p.power_capped);
  }, "params"_a, "epsilon"_a, "n_d"_a, "exact"_a = true);

  m.def("estimate_detection", [](const SystemParams& s, double p_d, int n_d,
                                 std::uint64_t trials, std::uint64_t seed,
                                 const std::string& policy, double lam, unsigned threads) {
    const simulation::Scenario sc{s, n_d, p_d};
    simulation::DetectionEstimate e;
    {
      py::gil_scoped_release release;
      e = simulation::estimate_detection(sc, mc_config(trials, seed, policy, lam, threads));
    }
    py::dict d;
    d["p_fa"] = e.p_fa_hat;
    d["p_md"] = e.p_md_hat;
    d["zeta"] = e.zeta_hat;
    d["p_fa_stderr"] = e.p_fa_stderr;
    d["p_md_stderr"] = e.p_md_stderr;
    d["zeta_stderr"] = e.zeta_stderr;
    d["p_fa_model"] = e.p_fa_model;
    d["p_md_model"] = e.p_md_model;
    d["zeta_model"] = e.zeta_model;
    return d;
  }, "params"_a, "p_d"_a, "n_d"_a, "trials"_a = 100000, "seed"_a = 1,
     "policy"_a = "csi_optimal", "lam"_a = 0.0, "threads"_a = 0);

  m.def("estimate_pcc", [](const SystemParams& s, double p_d, int n_d,
                           std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    const simulation::Scenario sc{s, n_d, p_d};
    simulation::PccEstimate e;
    {
      py::gil_scoped_release release;
      e = simulation::estimate_pcc(sc, mc_config(trials, seed, "csi_optimal", 0.0, threads));
    }
    return py::make_tuple(e.p_cc_hat, e.standard_error);
  }, "params"_a, "p_d"_a, "n_d"_a, "trials"_a = 100000, "seed"_a = 1, "threads"_a = 0);
}
