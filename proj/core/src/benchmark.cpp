#include "lowbmm/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "lowbmm/error.hpp"
#include "lowbmm/postprocess.hpp"
#include "lowbmm/random.hpp"
#include "lowbmm/sampler.hpp"

namespace lowbmm {

void Scenario::validate() const {
  if (n_items < 1) throw ConfigError("scenario " + name + ": n must be positive");
  if (n_star < 1 || n_star > n_items) throw ConfigError("scenario " + name + ": n_star must lie in 1..n");
  if (assessors < 1) throw ConfigError("scenario " + name + ": need at least one assessor");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("scenario " + name + ": alpha must be >= 0");
  if (noise_levels < 0 || noise_levels > n_star) {
    throw ConfigError("scenario " + name + ": noise levels must lie in 0..n_star");
  }
  if (!(noise_fraction >= 0.0 && noise_fraction <= 1.0)) {
    throw ConfigError("scenario " + name + ": noise fraction must lie in [0, 1]");
  }
  sampler_config(0).validate(n_items);
}

SamplerConfig Scenario::sampler_config(std::uint64_t seed) const {
  SamplerConfig cfg = SamplerConfig::defaults(n_star, fit_alpha.value_or(alpha), iterations);
  cfg.burn_in = burn_in.value_or(iterations / 5);
  cfg.thin = thin;
  if (leap) cfg.leap = *leap;
  cfg.swap = swap;
  cfg.seed = seed;
  return cfg;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::kLowBmm: return "lowbmm";
    case Method::kBorda: return "borda";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "lowbmm") return Method::kLowBmm;
  if (name == "borda") return Method::kBorda;
  throw ConfigError("unknown method '" + name + "' (expected lowbmm or borda)");
}

namespace {

std::vector<RepRecord> run_rep(const Scenario& sc, const std::vector<Method>& methods, int rep,
                               std::uint64_t seed) {
  const auto data_seed = derive_seed(seed, 3ULL * static_cast<std::uint64_t>(rep));
  const auto noise_seed = derive_seed(seed, 3ULL * static_cast<std::uint64_t>(rep) + 1);
  const auto fit_seed = derive_seed(seed, 3ULL * static_cast<std::uint64_t>(rep) + 2);

  std::vector<RepRecord> out;
  SimulatedData sim;
  try {
    sim = generate(sc.generator, sc.n_items, sc.n_star, sc.assessors, sc.alpha, data_seed);
    if (sc.noise_levels > 0 && sc.noise_fraction > 0.0) {
      sim.data = apply_noise_swaps(sim.data, sim.truth, sc.noise_levels, sc.noise_fraction,
                                   noise_seed);
    }
  } catch (const std::exception& e) {
    for (Method m : methods) {
      RepRecord r;
      r.rep = rep;
      r.method = m;
      r.ok = false;
      r.error = std::string("data generation failed: ") + e.what();
      out.push_back(r);
    }
    return out;
  }

  for (Method m : methods) {
    RepRecord r;
    r.rep = rep;
    r.method = m;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      PosteriorSummary est;
      if (m == Method::kLowBmm) {
        const PosteriorSamples samples = run_chain(sim.data, sc.sampler_config(fit_seed));
        est = posterior_point_estimates(samples);
        r.acceptance_rho = samples.acceptance_rho;
        r.acceptance_aset = samples.acceptance_aset;
      } else {
        est = borda(sim.data, sc.n_star);
      }
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      r.report = evaluate(sim.truth, est, sc.n_items, dt.count());
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0.0;
  sd = 0.0;
  if (xs.empty()) {
    mean = sd = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  for (double x : xs) {
    if (std::isinf(x)) {
      mean = sd = std::numeric_limits<double>::infinity();
      return;
    }
    mean += x;
  }
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  for (double x : xs) sd += (x - mean) * (x - mean);
  sd = std::sqrt(sd / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<MethodAggregate> aggregate(const std::vector<RepRecord>& records,
                                       const std::vector<Method>& methods) {
  std::vector<MethodAggregate> out;
  for (Method m : methods) {
    MethodAggregate a;
    a.method = m;
    std::vector<double> cov, dn, dr, wt;
    for (const auto& r : records) {
      if (r.method != m) continue;
      if (!r.ok) {
        ++a.failed;
        continue;
      }
      ++a.succeeded;
      cov.push_back(r.report.coverage);
      dn.push_back(r.report.d_norm);
      dr.push_back(r.report.d_R);
      wt.push_back(r.report.wall_time_sec);
    }
    mean_sd(cov, a.coverage_mean, a.coverage_sd);
    mean_sd(dn, a.d_norm_mean, a.d_norm_sd);
    mean_sd(dr, a.d_R_mean, a.d_R_sd);
    mean_sd(wt, a.wall_time_mean, a.wall_time_sd);
    out.push_back(a);
  }
  return out;
}

BenchmarkResult run_benchmark(const Scenario& scenario, const BenchmarkOptions& options) {
  scenario.validate();
  if (options.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (options.methods.empty()) throw ConfigError("no methods selected");

  BenchmarkResult res;
  res.scenario = scenario;
  res.repetitions = options.repetitions;
  res.seed = options.seed;

  std::vector<std::vector<RepRecord>> per_rep(static_cast<std::size_t>(options.repetitions));
  std::atomic<int> next{0};
  std::atomic<int> finished{0};
  std::mutex progress_mu;
  auto worker = [&] {
    for (int rep = next++; rep < options.repetitions; rep = next++) {
      per_rep[static_cast<std::size_t>(rep)] = run_rep(scenario, options.methods, rep, options.seed);
      const int done = ++finished;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mu);
        options.progress(done, options.repetitions);
      }
    }
  };
  const int threads = std::max(1, std::min(options.threads, options.repetitions));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& recs : per_rep) {
    for (auto& r : recs) res.records.push_back(std::move(r));
  }
  res.aggregates = aggregate(res.records, options.methods);
  return res;
}

}  // namespace lowbmm
