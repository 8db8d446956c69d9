#include <doctest.h>

#include <cmath>
#include <random>

#include "covert/errors.hpp"
#include "covert/link.hpp"

using namespace covert::link;
using doctest::Approx;

TEST_CASE("estimation error variance") {
  LinkParams l;
  CHECK(beta_b(l).beta_b == Approx(0.01 / 1.01).epsilon(1e-15));
  CHECK(beta_b(l).estimate_var == Approx(1.0 - 0.01 / 1.01).epsilon(1e-15));

  LinkParams strong = l;
  strong.p_t = 1e12;
  CHECK(beta_b(strong).beta_b < 1e-13);

  LinkParams split = l;
  split.n_t = 4;
  split.p_t = 0.25;
  CHECK(beta_b(split).beta_b == beta_b(l).beta_b);

  LinkParams bad = l;
  bad.p_t = 0.0;
  CHECK_THROWS_AS(beta_b(bad), covert::DomainError);
  bad = l;
  bad.n_t = 0;
  CHECK_THROWS_AS(beta_b(bad), covert::DomainError);
}

TEST_CASE("Bob's effective SNR") {
  LinkParams l;
  l.p_d = 0.05;
  CHECK(snr_bob(0.0, 0.3, l) == 0.0);
  CHECK(snr_bob(2.0, 0.0, l) == Approx(2.0 * 0.05 / 0.01).epsilon(1e-15));
  CHECK(snr_bob(1.0, 0.01, l) == Approx(0.05 / (0.0005 + 0.01)).epsilon(1e-14));
  CHECK_THROWS_AS(snr_bob(-1.0, 0.0, l), covert::DomainError);
}

TEST_CASE("covert connection probability limits") {
  LinkParams l;
  l.p_d = 0.05;
  const EstimationModel perfect{0.0, 1.0};
  CHECK(covert_connection_prob(l, perfect) ==
        Approx(std::exp(-0.01 * 1.0 / 0.05)).epsilon(1e-14));

  LinkParams slow = l;
  slow.rate = 1e-12;
  CHECK(covert_connection_prob(slow, beta_b(slow)) == Approx(1.0).epsilon(1e-10));

  LinkParams silent = l;
  silent.p_d = 0.0;
  CHECK(covert_connection_prob(silent, beta_b(silent)) == 0.0);

  CHECK_THROWS_AS(covert_connection_prob(l, EstimationModel{1.0, 0.0}),
                  covert::DomainError);
}

TEST_CASE("covert connection probability against outage sampling") {
  LinkParams l;
  l.p_d = 0.05;
  const auto e = beta_b(l);
  std::mt19937_64 gen(2024);
  std::exponential_distribution<double> unit(1.0);
  const int trials = 1'000'000;
  int connected = 0;
  for (int i = 0; i < trials; ++i) {
    const double hat2 = e.estimate_var * unit(gen);
    const double tilde2 = e.beta_b * unit(gen);
    const double gamma = hat2 * l.p_d / (tilde2 * l.p_d + l.sigma_b2);
    connected += std::log2(1.0 + gamma) > l.rate;
  }
  CHECK(std::abs(covert_connection_prob(l, e) - double(connected) / trials) < 0.002);
}

TEST_CASE("covert connection probability increases with power") {
  LinkParams l;
  double prev = 0.0;
  for (double p = 1e-4; p < 10.0; p *= 1.3) {
    l.p_d = p;
    const double pcc = covert_connection_prob(l, beta_b(l));
    CHECK(pcc > prev);
    CHECK(pcc <= 1.0);
    prev = pcc;
  }
}

TEST_CASE("throughput") {
  LinkParams l;
  l.p_d = 0.0;
  CHECK(throughput(50, l, beta_b(l)) == 0.0);
  // P_cc = 1/2 with perfect estimates: σ_b^2 (2^R - 1) / P_D = ln 2.
  l.p_d = 0.01 / std::log(2.0);
  CHECK(throughput(50, l, EstimationModel{0.0, 1.0}) == Approx(25.0).epsilon(1e-13));
  CHECK_THROWS_AS(throughput(0, l, beta_b(l)), covert::DomainError);
}
