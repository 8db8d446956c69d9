#include <doctest.h>

#include <cmath>
#include <vector>

#include "covert/detection.hpp"
#include "covert/errors.hpp"
#include "covert/optimizer.hpp"
#include "covert/params.hpp"
#include "oracles.hpp"

using namespace covert::optimizer;
using covert::SystemParams;
using doctest::Approx;

namespace {

DesignProblem defaults(double epsilon) { return SystemParams{}.problem(epsilon); }

double expected_deficit(int n_d, double p_d) {
  return covert::detection::expected_zeta_star_csi_deficit({0.05, n_d, p_d, std::nullopt});
}

std::vector<double> epsilon_grid() {
  std::vector<double> g;
  for (int i = 0; i < 20; ++i) g.push_back(0.01 + 0.19 * i / 19.0);
  return g;
}

}  // namespace

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(power_for_covertness_exact(50, defaults(0.0)), covert::DomainError);
  CHECK_THROWS_AS(power_for_covertness_exact(50, defaults(1.0)), covert::DomainError);
  CHECK_THROWS_AS(power_for_covertness_exact(0, defaults(0.05)), covert::DomainError);
  auto p = defaults(0.05);
  p.n_d_min = 80;
  p.n_d_max = 60;
  CHECK_THROWS_AS(solve_p1(p), covert::DomainError);
}

TEST_CASE("suboptimal power closed forms") {
  const double e = std::exp(1.0);
  CHECK(power_for_covertness_suboptimal(1, defaults(0.05)).p_d ==
        Approx(0.05 * 0.05 * e).epsilon(1e-14));
  CHECK(power_for_covertness_suboptimal(2, defaults(0.05)).p_d ==
        Approx(0.05 * 0.05 * e * e / 4.0).epsilon(1e-14));
  const double factor = std::exp(50.0 * std::log(50.0) - 50.0 - oracle::log_factorial_gamma(50));
  const double p50 = power_for_covertness_suboptimal(50, defaults(0.05)).p_d;
  CHECK(p50 == Approx(0.05 * 0.05 / factor).epsilon(1e-12));
  CHECK(std::abs(p50 - 0.000887705182158816265) < 1e-15);
}

TEST_CASE("suboptimal power inverts the linearized constraint") {
  for (int n : {1, 10, 50, 100}) {
    for (double eps : {0.01, 0.05, 0.2}) {
      const double p = power_for_covertness_suboptimal(n, defaults(eps)).p_d;
      const covert::detection::WillieParams w{0.05, n, p, 1.0};
      CHECK(covert::detection::zeta_linear_csi(w) == Approx(1.0 - eps).epsilon(1e-13));
    }
  }
}

TEST_CASE("exact power vanishes with epsilon") {
  double prev = 1.0;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const double p = power_for_covertness_exact(50, defaults(eps)).p_d;
    CHECK(p < prev);
    prev = p;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("exact power against a dense grid scan") {
  const auto prob = defaults(0.05);
  const double p = power_for_covertness_exact(50, prob).p_d;
  // Largest grid power whose expected deficit stays within ε.
  const int points = 20000;
  const double step = 0.01 / points;
  double feasible = 0.0;
  for (int i = 1; i <= points; ++i) {
    if (expected_deficit(50, i * step) <= 0.05) feasible = i * step;
  }
  CHECK(std::abs(p - feasible) <= step);
  CHECK(expected_deficit(50, p) <= 0.05 + 1e-9);
}

TEST_CASE("exact power is nondecreasing in epsilon") {
  double prev = 0.0;
  for (double eps : epsilon_grid()) {
    const double p = power_for_covertness_exact(50, defaults(eps)).p_d;
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("power cap") {
  auto prob = defaults(0.2);
  prob.p_max = 1e-4;
  const auto exact = power_for_covertness_exact(50, prob);
  CHECK(exact.power_capped);
  CHECK(exact.p_d == 1e-4);
  const auto sub = power_for_covertness_suboptimal(50, prob);
  CHECK(sub.power_capped);
  const auto s = solve_p1(prob);
  CHECK(s.power_capped);
  CHECK_FALSE(s.constraint_violated);
}

TEST_CASE("suboptimal power approaches exact power as epsilon shrinks") {
  double prev_gap = 1e300;
  for (double eps : {0.1, 0.05, 0.01}) {
    const double exact = power_for_covertness_exact(50, defaults(eps)).p_d;
    const double sub = power_for_covertness_suboptimal(50, defaults(eps)).p_d;
    const double gap = std::abs(sub / exact - 1.0);
    CHECK(sub <= exact * (1.0 + gap));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("exhaustive search tie-break prefers the smallest blocklength") {
  auto [n, v] = argmax_blocklength(50, 100, [](int) { return 0.25; });
  CHECK(n == 50);
  CHECK(v == 0.25);
  auto [n2, v2] = argmax_blocklength(3, 9, [](int k) { return k == 6 || k == 8 ? 1.0 : 0.0; });
  CHECK(n2 == 6);
  CHECK(v2 == 1.0);
  CHECK_THROWS_AS(argmax_blocklength(5, 4, [](int) { return 0.0; }), covert::DomainError);
}

TEST_CASE("solve_p1 at default parameters") {
  for (double eps : epsilon_grid()) {
    CAPTURE(eps);
    const auto prob = defaults(eps);
    const auto s = solve_p1(prob);
    CHECK(s.n_d_star == 50);
    CHECK(s.n_d_boundary == Boundary::kMin);
    CHECK_FALSE(s.constraint_violated);
    CHECK(1.0 - expected_deficit(s.n_d_star, s.p_d_star) >= 1.0 - eps - 1e-6);
    CHECK(s.throughput == Approx(throughput_at(50, s.p_d_star, prob)).epsilon(1e-15));
  }
}

TEST_CASE("solve_p1_1 always picks the smallest blocklength") {
  for (double eps : {0.01, 0.1, 0.2}) {
    CHECK(solve_p1_1(defaults(eps)).n_d_star == 50);
    auto p = defaults(eps);
    p.n_d_min = 7;
    p.n_d_max = 300;
    CHECK(solve_p1_1(p).n_d_star == 7);
  }
}

TEST_CASE("suboptimal throughput slope") {
  const auto prob = defaults(0.05);
  for (double n : {3.0, 17.5, 50.0, 80.0}) {
    const double fd = oracle::central_difference(
        [&](double x) { return suboptimal_throughput(x, prob); }, n, 1e-5);
    CHECK(suboptimal_throughput_slope(n, prob) == Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("suboptimal throughput decreases in the blocklength") {
  const auto small = defaults(0.01);
  for (double n = 1.0; n <= 200.0; n += 0.5) {
    CAPTURE(n);
    CHECK(suboptimal_throughput_slope(n, small) < 0.0);
  }
  for (double eps : epsilon_grid()) {
    const auto prob = defaults(eps);
    for (double n = 50.0; n <= 100.0; n += 0.5) {
      CAPTURE(eps);
      CAPTURE(n);
      CHECK(suboptimal_throughput_slope(n, prob) < 0.0);
    }
  }
}

TEST_CASE("boundary labels") {
  CHECK(to_string(Boundary::kMin) == "min");
  CHECK(to_string(Boundary::kInterior) == "interior");
  CHECK(to_string(Boundary::kMax) == "max");
}
