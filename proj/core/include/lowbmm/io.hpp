#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lowbmm/alpha.hpp"
#include "lowbmm/benchmark.hpp"
#include "lowbmm/datagen.hpp"
#include "lowbmm/metrics.hpp"
#include "lowbmm/postprocess.hpp"
#include "lowbmm/sampler.hpp"

namespace lowbmm::io {

// Shortest text that parses back to the same double.
std::string format_double(double x);

// Whole-file helpers; throw IoError with the path on failure.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

// ---- ranking datasets -------------------------------------------------------
// Header row of item ids, then one row per assessor holding the rank of each
// item. Every row must be a permutation of 1..n.
std::string dataset_to_csv(const RankingDataset& ds);
RankingDataset dataset_from_csv(const std::string& text);
// Real-valued variant: each row is converted to ranks, largest value first.
RankingDataset dataset_from_score_csv(const std::string& text);

void write_dataset(const std::string& path, const RankingDataset& ds);
RankingDataset read_dataset(const std::string& path, bool from_scores = false);

// ---- ground truth -----------------------------------------------------------
struct TruthFile {
  int n_items = 0;
  std::vector<std::pair<std::string, int>> relevant;  // (item id, true rank)
  std::string provenance;
};
std::string truth_to_json(const GroundTruth& truth, const std::vector<std::string>& item_ids,
                          const std::string& provenance);
TruthFile truth_from_json(const std::string& text);

// ---- draw logs ---------------------------------------------------------------
// Text form: one comment line "# lowbmm-draws " + JSON header, a column line,
// then one row per kept draw: chain, iteration, and n* (item id, rank) pairs.
// Binary form: the 8-byte magic, a little-endian u64 header length, the JSON
// header, then per draw i32 chain, i64 iteration and n* (i32 item, i32 rank).
enum class DrawFormat { kCsv, kBinary };

// 64-bit FNV-1a of the canonical JSON form of the sampler configuration.
std::string config_hash(const SamplerConfig& cfg);

std::string sampler_config_json(const SamplerConfig& cfg);
SamplerConfig sampler_config_from_json(const std::string& text);

class DrawLogWriter {
 public:
  DrawLogWriter(const std::string& path, DrawFormat format, const PosteriorSamples& header);
  ~DrawLogWriter();
  DrawLogWriter(const DrawLogWriter&) = delete;
  DrawLogWriter& operator=(const DrawLogWriter&) = delete;

  void write(int chain, std::int64_t iteration, std::span<const int> items,
             std::span<const int> ranks);
  void close();

 private:
  std::string path_;
  DrawFormat format_;
  std::vector<std::string> item_ids_;
  int n_star_ = 0;
  std::ofstream out_;
  std::string line_;
};

void write_draws(const std::string& path, DrawFormat format, const PosteriorSamples& samples);
// Detects the format from the leading bytes.
PosteriorSamples read_draws(const std::string& path);

// ---- summaries ---------------------------------------------------------------
struct TopSelection {
  int K = 0;
  double c = 0.0;
  ItemSet items;
};

std::string summary_to_json(const std::string& method, const PosteriorSamples* samples,
                            const PosteriorSummary& summary,
                            const std::vector<std::string>& item_ids,
                            const std::optional<TopSelection>& top);

struct SummaryFile {
  int n_items = 0;
  int n_star = 0;
  std::vector<std::pair<std::string, int>> selected;  // (item id, estimated rank)
};
SummaryFile summary_from_json(const std::string& text);

std::string eval_to_json(const EvalReport& r);

// Builds comparable GroundTruth / PosteriorSummary objects over a shared item
// index so the metrics can be computed from the two files.
std::pair<GroundTruth, PosteriorSummary> align_for_evaluation(const TruthFile& truth,
                                                              const SummaryFile& summary);

// ---- tables ------------------------------------------------------------------
std::string heatplot_csv(const std::vector<HeatplotCell>& cells,
                         const std::vector<std::string>& item_ids);
std::string trace_csv(const std::vector<TracePoint>& points,
                      const std::vector<std::string>& item_ids);
std::string violin_csv(const std::vector<ViolinPoint>& points,
                       const std::vector<std::string>& item_ids);
std::string alpha_grid_csv(const AlphaGridResult& r);
std::string alpha_to_json(const AlphaGridResult& r, int n_items, int assessors,
                          std::optional<int> n_star, int reps, std::uint64_t seed);
// The rescaled alpha of an alpha JSON file, or its dimension-n value when no
// n* was given.
double alpha_from_json(const std::string& text);

// When `timing` is false wall times are written as 0 so reruns compare
// byte-for-byte.
std::string bench_csv(const BenchmarkResult& r, bool timing = true);
std::string bench_to_json(const std::vector<BenchmarkResult>& results, bool timing = true);

// {"scenarios": [{...}, ...]} with keys name, generator, n, n_star,
// assessors, alpha, fit_alpha, noise_levels, noise_fraction, iterations,
// burn_in, thin, leap, swap. Unknown keys are rejected; values are range
// checked by Scenario::validate.
std::vector<Scenario> scenarios_from_json(const std::string& text);

}  // namespace lowbmm::io
