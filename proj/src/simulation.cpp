#include "covert/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

#include "covert/csv.hpp"
#include "covert/errors.hpp"

namespace covert::simulation {
namespace {

enum Stream : std::uint64_t { kDetectionStream = 1, kLinkStream = 2 };

constexpr std::uint64_t kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Runs per_slot(acc, slot) over [0, count) in fixed-size chunks and folds the
// chunk results in chunk order, so the outcome does not depend on the number
// of worker threads.
template <class Acc, class Fn>
Acc reduce_slots(std::uint64_t count, unsigned threads, Fn&& per_slot) {
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<Acc> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t end = std::min(count, (c + 1) * kChunk);
      for (std::uint64_t s = c * kChunk; s < end; ++s) per_slot(partial[c], s);
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(chunks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  Acc total{};
  for (const Acc& a : partial) total += a;
  return total;
}

struct LinkDraw {
  Complex h_b;
  Complex h_hat;
  Complex h_tilde;
};

LinkDraw draw_link(const SystemParams& sys, SlotRng& rng) {
  LinkDraw d;
  d.h_b = rng.complex_normal(1.0);
  const double p_t = sys.pilot_power();
  const double amp = std::sqrt(p_t);
  // Unit-modulus training symbols x_T(i) = 1; ĥ = √P_T/(σ_b^2 + N_T P_T) Σ y_T(i) x_T(i)*.
  Complex matched{0.0, 0.0};
  for (int i = 0; i < sys.n_t; ++i) {
    matched += amp * d.h_b + rng.complex_normal(sys.sigma_b2);
  }
  d.h_hat = amp / (sys.sigma_b2 + sys.n_t * p_t) * matched;
  d.h_tilde = d.h_b - d.h_hat;
  return d;
}

bool is_outage(const Scenario& sc, const LinkDraw& d) {
  const auto l = sc.system.link(sc.p_d, sc.n_d);
  const double gamma = link::snr_bob(std::norm(d.h_hat), std::norm(d.h_tilde), l);
  return std::log1p(gamma) / std::numbers::ln2 <= l.rate;
}

Hypothesis detection_hypothesis(std::uint64_t slot, std::uint64_t h0_slots) {
  return slot < h0_slots ? Hypothesis::kH0 : Hypothesis::kH1;
}

}  // namespace

std::string_view to_string(Hypothesis h) { return h == Hypothesis::kH0 ? "H0" : "H1"; }

std::string_view to_string(ThresholdPolicy p) {
  switch (p) {
    case ThresholdPolicy::kCsiOptimal:
      return "csi_optimal";
    case ThresholdPolicy::kCdiExact:
      return "cdi_exact";
    case ThresholdPolicy::kCdiApprox:
      return "cdi_approx";
    case ThresholdPolicy::kFixed:
      return "fixed";
  }
  return "?";
}

std::optional<ThresholdPolicy> parse_policy(std::string_view text) {
  for (auto p : {ThresholdPolicy::kCsiOptimal, ThresholdPolicy::kCdiExact,
                 ThresholdPolicy::kCdiApprox, ThresholdPolicy::kFixed}) {
    if (text == to_string(p)) return p;
  }
  return std::nullopt;
}

SlotRng SlotRng::for_slot(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t slot) {
  std::uint64_t key = seed;
  key = splitmix64(key) ^ stream;
  key = splitmix64(key) ^ slot;
  SlotRng rng;
  for (auto& word : rng.s_) word = splitmix64(key);
  return rng;
}

std::uint64_t SlotRng::next() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double SlotRng::uniform() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

Complex SlotRng::complex_normal(double variance) {
  const double radius = std::sqrt(-variance * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

ThresholdRule ThresholdRule::resolve(const Scenario& sc, const McConfig& mc) {
  ThresholdRule rule;
  rule.policy_ = mc.policy;
  rule.willie_ = sc.system.willie(sc.p_d, sc.n_d);
  rule.willie_.validate();
  const double sigma_w2 = sc.system.sigma_w2;
  switch (mc.policy) {
    case ThresholdPolicy::kCsiOptimal:
      rule.lambda_ = sigma_w2;  // limit of λ*_CSI when |h_w|^2 P_D -> 0
      break;
    case ThresholdPolicy::kCdiExact:
      rule.lambda_ = sc.p_d > 0.0 ? detection::threshold_cdi_exact(rule.willie_)
                                  : sigma_w2;
      break;
    case ThresholdPolicy::kCdiApprox:
      rule.lambda_ = detection::threshold_cdi_approx(sigma_w2);
      break;
    case ThresholdPolicy::kFixed:
      if (!(mc.fixed_lambda > 0.0) || !std::isfinite(mc.fixed_lambda)) {
        throw DomainError("fixed threshold policy needs lambda > 0");
      }
      rule.lambda_ = mc.fixed_lambda;
      break;
  }
  return rule;
}

double ThresholdRule::for_gain(double h_w2) const {
  if (policy_ != ThresholdPolicy::kCsiOptimal || !(h_w2 * willie_.p_d > 0.0)) {
    return lambda_;
  }
  return detection::optimal_threshold_csi(willie_.with_gain(h_w2));
}

SlotTrace simulate_slot(const Scenario& sc, Hypothesis hypothesis,
                        const ThresholdRule& rule, SlotRng& rng,
                        std::uint64_t slot) {
  SlotTrace t;
  t.slot = slot;
  t.hypothesis = hypothesis;
  const LinkDraw d = draw_link(sc.system, rng);
  t.h_b = d.h_b;
  t.h_b_hat = d.h_hat;
  t.h_b_tilde = d.h_tilde;
  t.h_w = rng.complex_normal(1.0);

  const double sigma_w2 = sc.system.sigma_w2;
  const Complex gain = std::sqrt(sc.p_d) * t.h_w;
  double energy = 0.0;
  for (int i = 0; i < sc.n_d; ++i) {
    Complex y{0.0, 0.0};
    if (hypothesis == Hypothesis::kH1) y += gain * rng.complex_normal(1.0);
    y += rng.complex_normal(sigma_w2);
    energy += std::norm(y);
  }
  t.statistic = energy / sc.n_d;
  t.threshold = rule.for_gain(std::norm(t.h_w));
  t.decision = t.statistic > t.threshold ? Hypothesis::kH1 : Hypothesis::kH0;
  if (hypothesis == Hypothesis::kH1) t.outage = is_outage(sc, d);
  return t;
}

double binomial_stderr(double p, std::uint64_t n) {
  if (n == 0) return std::nan("");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

namespace {

struct DetectionAcc {
  std::uint64_t false_alarms = 0;
  std::uint64_t misses = 0;
  double fa_model = 0.0;
  double md_model = 0.0;

  DetectionAcc& operator+=(const DetectionAcc& o) {
    false_alarms += o.false_alarms;
    misses += o.misses;
    fa_model += o.fa_model;
    md_model += o.md_model;
    return *this;
  }
};

double rate(std::uint64_t hits, std::uint64_t n) {
  return n ? static_cast<double>(hits) / static_cast<double>(n) : std::nan("");
}

double mean(double sum, std::uint64_t n) {
  return n ? sum / static_cast<double>(n) : std::nan("");
}

}  // namespace

DetectionEstimate estimate_detection(const Scenario& sc, const McConfig& mc) {
  if (mc.trials < 1) throw DomainError("trials must be >= 1");
  sc.system.validate();
  const ThresholdRule rule = ThresholdRule::resolve(sc, mc);
  const auto willie = sc.system.willie(sc.p_d, sc.n_d);
  const std::uint64_t h0 = mc.trials / 2;

  const auto acc = reduce_slots<DetectionAcc>(
      mc.trials, mc.threads, [&](DetectionAcc& a, std::uint64_t slot) {
        SlotRng rng = SlotRng::for_slot(mc.seed, kDetectionStream, slot);
        const Hypothesis h = detection_hypothesis(slot, h0);
        const SlotTrace t = simulate_slot(sc, h, rule, rng, slot);
        if (h == Hypothesis::kH0) {
          a.false_alarms += t.decision == Hypothesis::kH1;
          a.fa_model += detection::p_fa(t.threshold, willie);
        } else {
          a.misses += t.decision == Hypothesis::kH0;
          a.md_model += detection::p_md(t.threshold,
                                        willie.with_gain(std::norm(t.h_w)));
        }
      });

  DetectionEstimate e;
  e.h0_slots = h0;
  e.h1_slots = mc.trials - h0;
  e.p_fa_hat = rate(acc.false_alarms, e.h0_slots);
  e.p_md_hat = rate(acc.misses, e.h1_slots);
  e.zeta_hat = e.p_fa_hat + e.p_md_hat;
  e.p_fa_stderr = binomial_stderr(e.p_fa_hat, e.h0_slots);
  e.p_md_stderr = binomial_stderr(e.p_md_hat, e.h1_slots);
  e.zeta_stderr = std::hypot(e.p_fa_stderr, e.p_md_stderr);
  e.p_fa_model = mean(acc.fa_model, e.h0_slots);
  e.p_md_model = mean(acc.md_model, e.h1_slots);
  e.zeta_model = e.p_fa_model + e.p_md_model;
  return e;
}

PccEstimate estimate_pcc(const Scenario& sc, const McConfig& mc) {
  if (mc.trials < 1) throw DomainError("trials must be >= 1");
  sc.system.validate();
  struct Acc {
    std::uint64_t connected = 0;
    Acc& operator+=(const Acc& o) {
      connected += o.connected;
      return *this;
    }
  };
  const auto acc = reduce_slots<Acc>(
      mc.trials, mc.threads, [&](Acc& a, std::uint64_t slot) {
        SlotRng rng = SlotRng::for_slot(mc.seed, kLinkStream, slot);
        a.connected += !is_outage(sc, draw_link(sc.system, rng));
      });
  PccEstimate e;
  e.slots = mc.trials;
  e.p_cc_hat = rate(acc.connected, e.slots);
  e.standard_error = binomial_stderr(e.p_cc_hat, e.slots);
  return e;
}

EstimationMoments estimation_moments(const Scenario& sc, const McConfig& mc) {
  if (mc.trials < 1) throw DomainError("trials must be >= 1");
  sc.system.validate();
  struct Acc {
    double hat2 = 0.0;
    double tilde2 = 0.0;
    Complex cross{0.0, 0.0};
    Acc& operator+=(const Acc& o) {
      hat2 += o.hat2;
      tilde2 += o.tilde2;
      cross += o.cross;
      return *this;
    }
  };
  const auto acc = reduce_slots<Acc>(
      mc.trials, mc.threads, [&](Acc& a, std::uint64_t slot) {
        SlotRng rng = SlotRng::for_slot(mc.seed, kLinkStream, slot);
        const LinkDraw d = draw_link(sc.system, rng);
        a.hat2 += std::norm(d.h_hat);
        a.tilde2 += std::norm(d.h_tilde);
        a.cross += d.h_hat * std::conj(d.h_tilde);
      });
  const double n = static_cast<double>(mc.trials);
  EstimationMoments m;
  m.slots = mc.trials;
  m.mean_hat2 = acc.hat2 / n;
  m.mean_tilde2 = acc.tilde2 / n;
  m.correlation = std::abs(acc.cross / n) / std::sqrt(m.mean_hat2 * m.mean_tilde2);
  return m;
}

std::vector<SlotTrace> collect_traces(const Scenario& sc, const McConfig& mc,
                                      std::uint64_t count) {
  sc.system.validate();
  const ThresholdRule rule = ThresholdRule::resolve(sc, mc);
  const std::uint64_t h0 = mc.trials / 2;
  std::vector<SlotTrace> out;
  count = std::min(count, mc.trials);
  out.reserve(count);
  for (std::uint64_t slot = 0; slot < count; ++slot) {
    SlotRng rng = SlotRng::for_slot(mc.seed, kDetectionStream, slot);
    out.push_back(simulate_slot(sc, detection_hypothesis(slot, h0), rule, rng, slot));
  }
  return out;
}

void write_trace_csv(std::ostream& os, const std::vector<SlotTrace>& traces) {
  os << "slot,hypothesis,h_b_re,h_b_im,h_w_re,h_w_im,statistic,decision,outage\n";
  for (const auto& t : traces) {
    os << t.slot << ',' << to_string(t.hypothesis) << ','
       << csv::number(t.h_b.real()) << ',' << csv::number(t.h_b.imag()) << ','
       << csv::number(t.h_w.real()) << ',' << csv::number(t.h_w.imag()) << ','
       << csv::number(t.statistic) << ',' << to_string(t.decision) << ','
       << (t.outage ? csv::boolean(*t.outage) : csv::kUnavailable) << '\n';
  }
}

}  // namespace covert::simulation
