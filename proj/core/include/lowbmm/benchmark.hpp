#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lowbmm/datagen.hpp"
#include "lowbmm/metrics.hpp"
#include "lowbmm/sampler.hpp"

namespace lowbmm {

// One simulation setting of the comparison harness.
struct Scenario {
  std::string name = "scenario";
  Generator generator = Generator::kTopRank;
  int n_items = 20;
  int n_star = 8;
  int assessors = 5;
  double alpha = 2.0;               // generating alpha
  std::optional<double> fit_alpha;  // alpha used by lowBMM; defaults to `alpha`
  int noise_levels = 0;
  double noise_fraction = 0.0;

  std::int64_t iterations = 1000;
  std::optional<std::int64_t> burn_in;  // default: iterations / 5
  std::int64_t thin = 1;
  std::optional<int> leap;              // default: max(1, round(n*/5))
  int swap = 1;

  void validate() const;
  SamplerConfig sampler_config(std::uint64_t seed) const;
};

enum class Method { kLowBmm, kBorda };
const char* to_string(Method m);
Method parse_method(const std::string& name);

struct RepRecord {
  int rep = 0;
  Method method = Method::kLowBmm;
  bool ok = true;
  std::string error;
  EvalReport report;
  double acceptance_rho = 0.0;   // lowBMM only
  double acceptance_aset = 0.0;  // lowBMM only
};

struct MethodAggregate {
  Method method = Method::kLowBmm;
  int succeeded = 0;
  int failed = 0;
  double coverage_mean = 0.0, coverage_sd = 0.0;
  double d_norm_mean = 0.0, d_norm_sd = 0.0;  // infinite if any rep had no overlap
  double d_R_mean = 0.0, d_R_sd = 0.0;
  double wall_time_mean = 0.0, wall_time_sd = 0.0;
};

struct BenchmarkResult {
  Scenario scenario;
  int repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<RepRecord> records;  // ordered by rep, then method
  std::vector<MethodAggregate> aggregates;
};

struct BenchmarkOptions {
  std::vector<Method> methods{Method::kLowBmm, Method::kBorda};
  int repetitions = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  std::function<void(int finished, int total)> progress;
};

// Fresh dataset per repetition, every method fitted and scored against the
// truth. A method that throws is recorded as failed and skipped in the
// aggregates. Deterministic given the seed, apart from wall times.
BenchmarkResult run_benchmark(const Scenario& scenario, const BenchmarkOptions& options);

// Means and sample standard deviations per method over the successful reps.
std::vector<MethodAggregate> aggregate(const std::vector<RepRecord>& records,
                                       const std::vector<Method>& methods);

}  // namespace lowbmm
