#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "sliceopt/net_model.hpp"

namespace sliceopt {

/// Uniform draws layered over std::mt19937_64 so the bit stream, and hence
/// every generated instance, is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// Parameters of the random-instance protocol.
struct GenConfig {
  std::uint64_t seed = 1;
  int node_count = 6;
  int cloud_count = 3;
  double region_side = 100.0;
  double link_probability = 0.6;
  std::array<double, 2> node_capacity_range{6.0, 12.0};
  std::array<double, 2> link_capacity_range{0.5, 3.5};
  int function_universe = 5;
  int chain_length = 3;
  std::array<double, 2> nfv_delay_range{0.8, 1.2};
  double rate_value = 1.0;
  std::array<double, 2> threshold_slack_range{0.0, 2.0};
  int service_count = 1;
};

class RetryExhausted : public std::runtime_error {
 public:
  explicit RetryExhausted(const std::string& what) : std::runtime_error(what) {}
};

class GenConfigError : public std::runtime_error {
 public:
  explicit GenConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Samples one instance. Nodes land uniformly on the square; each unordered
/// node pair gets a bidirectional link pair with the configured probability
/// (shared capacity, delay = Euclidean length / mean shortest-path length);
/// among the cloud nodes all but one support two random functions and the
/// last supports the whole universe; per-service thresholds follow
/// 3 + 6*dist_k/d_mean + alpha with alpha uniform in the slack range.
///
/// Deterministic for a fixed seed. Topologies leaving some service's source
/// and destination mutually unreachable are resampled, up to max_attempts.
Instance generate(const GenConfig& cfg, int path_budget = 2, int max_attempts = 100);

/// The bundled five-node example: two services (I: A->D via f1, threshold 4;
/// II: A->B via f2, threshold 3), unit rates and unit delays.
Instance fig1_instance();

/// Variant of the five-node example with a single rate-4 service A->D via f1.
Instance fig1_rate4_instance();

}  // namespace sliceopt
