#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lowbmm::cli {

struct GlobalOptions {
  std::uint64_t seed = 1;
  int chains = 1;
  int threads = 1;
  std::int64_t progress_every = 0;  // 0 disables progress lines
};

struct SimulateOptions {
  std::string generator = "top-rank";
  int n_items = 20;
  int n_star = 8;
  int assessors = 50;
  double alpha = 2.0;
  int noise_levels = 0;
  double noise_fraction = 0.0;
  std::string out = "data.csv";
  std::string truth = "truth.json";
};

struct FitOptions {
  std::string data;
  bool from_scores = false;
  std::optional<double> alpha;
  std::string alpha_from;  // estimate-alpha JSON; uses its rescaled value
  int n_star = 0;
  std::int64_t iterations = 10000;
  std::optional<std::int64_t> burn_in;  // default: iterations / 5
  std::optional<std::int64_t> thin;
  std::optional<int> leap;
  int swap = 1;
  std::string draws;  // optional draw log path
  std::string draw_format = "csv";
  std::string summary;  // default: standard output
  std::optional<int> k;
  std::optional<int> top_k;
  double cutoff = 0.5;
};

struct EstimateAlphaOptions {
  std::string data;
  bool from_scores = false;
  std::vector<double> grid;
  int reps = 5;
  std::optional<int> n_star;
  std::string grid_csv;
  std::string out;  // default: standard output
};

struct SummarizeOptions {
  std::string draws;
  std::optional<int> k;
  std::optional<int> top_k;
  double cutoff = 0.5;
  std::vector<int> k_grid;
  int trace_top = 10;
  std::string summary;
  std::string heatplot;
  std::string trace;
  std::string violin;
};

struct EvaluateOptions {
  std::string summary;
  std::string truth;
  std::string out;
};

struct BenchOptions {
  std::string scenarios;  // JSON scenario file; otherwise a single scenario from flags
  std::string name = "scenario";
  std::string generator = "top-rank";
  int n_items = 20;
  int n_star = 8;
  int assessors = 5;
  double alpha = 2.0;
  std::optional<double> fit_alpha;
  int noise_levels = 0;
  double noise_fraction = 0.0;
  std::int64_t iterations = 1000;
  std::optional<std::int64_t> burn_in;
  std::int64_t thin = 1;
  std::optional<int> leap;
  int swap = 1;
  int reps = 50;
  std::vector<std::string> methods{"lowbmm", "borda"};
  std::string csv;
  std::string json;
  bool no_timing = false;
};

void cmd_simulate(const GlobalOptions& g, const SimulateOptions& o);
void cmd_fit(const GlobalOptions& g, const FitOptions& o);
void cmd_estimate_alpha(const GlobalOptions& g, const EstimateAlphaOptions& o);
void cmd_summarize(const GlobalOptions& g, const SummarizeOptions& o);
void cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o);
void cmd_bench(const GlobalOptions& g, const BenchOptions& o);

// Parses the command line and dispatches. Returns the process exit code:
// 0 on success, the error category code on library errors, 2 on usage
// errors, 1 on anything unexpected.
int run(int argc, char** argv);

}  // namespace lowbmm::cli
