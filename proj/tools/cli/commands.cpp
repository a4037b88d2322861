#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>

#include "lowbmm/alpha.hpp"
#include "lowbmm/benchmark.hpp"
#include "lowbmm/datagen.hpp"
#include "lowbmm/error.hpp"
#include "lowbmm/io.hpp"
#include "lowbmm/postprocess.hpp"
#include "lowbmm/sampler.hpp"

namespace lowbmm::cli {

namespace {

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    io::write_text(path, content);
  }
}

void note(const std::string& msg) { std::cerr << "lowbmm: " << msg << '\n'; }

std::optional<io::TopSelection> top_selection(const PosteriorSamples& samples,
                                              const PosteriorSummary& summary,
                                              std::optional<int> top_k, double cutoff) {
  if (!top_k) return std::nullopt;
  return io::TopSelection{*top_k, cutoff,
                          top_probability_selection(samples, summary, *top_k, cutoff)};
}

PosteriorSummary summarize_samples(const PosteriorSamples& samples, std::optional<int> k) {
  return k ? posterior_point_estimates(samples, *k) : posterior_point_estimates(samples);
}

}  // namespace

void cmd_simulate(const GlobalOptions& g, const SimulateOptions& o) {
  const Generator gen = parse_generator(o.generator);
  SimulatedData sim = generate(gen, o.n_items, o.n_star, o.assessors, o.alpha, g.seed);
  if (o.noise_levels > 0) {
    sim.data = apply_noise_swaps(sim.data, sim.truth, o.noise_levels, o.noise_fraction,
                                 derive_seed(g.seed, 2));
  }
  io::write_dataset(o.out, sim.data);
  io::write_text(o.truth, io::truth_to_json(sim.truth, sim.data.item_ids(), sim.data.provenance));
  note(sim.data.provenance);
}

void cmd_fit(const GlobalOptions& g, const FitOptions& o) {
  const RankingDataset data = io::read_dataset(o.data, o.from_scores);
  double alpha = 0.0;
  if (o.alpha && !o.alpha_from.empty()) throw ConfigError("give either --alpha or --alpha-from, not both");
  if (o.alpha) {
    alpha = *o.alpha;
  } else if (!o.alpha_from.empty()) {
    alpha = io::alpha_from_json(io::read_text(o.alpha_from));
  } else {
    throw ConfigError("fit needs --alpha or --alpha-from");
  }
  if (o.n_star < 1) throw ConfigError("fit needs --n-star >= 1");

  SamplerConfig cfg = SamplerConfig::defaults(o.n_star, alpha, o.iterations);
  cfg.burn_in = o.burn_in.value_or(o.iterations / 5);
  if (o.thin) cfg.thin = *o.thin;
  if (o.leap) cfg.leap = *o.leap;
  cfg.swap = o.swap;
  cfg.seed = g.seed;
  cfg.validate(data.items());
  if (g.chains < 1) throw ConfigError("--chains must be at least 1");

  note("fitting n=" + std::to_string(data.items()) + " N=" + std::to_string(data.assessors()) +
       " n_star=" + std::to_string(cfg.n_star) + " alpha=" + io::format_double(cfg.alpha) +
       " M=" + std::to_string(cfg.iterations) + " chains=" + std::to_string(g.chains));
  PosteriorSamples samples;
  if (g.chains == 1 && g.progress_every > 0) {
    RunOptions ro;
    ro.progress_every = g.progress_every;
    ro.progress = [&](std::int64_t m) {
      std::cerr << "lowbmm: iteration " << m << '/' << cfg.iterations << '\n';
    };
    samples = run_chain(data, cfg, ro);
  } else {
    samples = run_chains(data, cfg, g.chains, g.threads);
  }
  note("kept " + std::to_string(samples.size()) + " draws; acceptance rho=" +
       io::format_double(samples.acceptance_rho) +
       " set=" + io::format_double(samples.acceptance_aset));

  if (!o.draws.empty()) {
    if (o.draw_format != "csv" && o.draw_format != "binary") {
      throw ConfigError("--draw-format must be csv or binary");
    }
    io::write_draws(o.draws, o.draw_format == "binary" ? io::DrawFormat::kBinary : io::DrawFormat::kCsv,
                    samples);
  }
  const PosteriorSummary summary = summarize_samples(samples, o.k);
  emit(o.summary, io::summary_to_json("lowbmm", &samples, summary, data.item_ids(),
                                      top_selection(samples, summary, o.top_k, o.cutoff)));
}

void cmd_estimate_alpha(const GlobalOptions& g, const EstimateAlphaOptions& o) {
  const RankingDataset data = io::read_dataset(o.data, o.from_scores);
  AlphaEstimateOptions opts;
  opts.reps = o.reps;
  opts.seed = g.seed;
  opts.n_star = o.n_star;
  const auto grid = o.grid.empty() ? default_alpha_grid() : o.grid;
  const AlphaGridResult r = estimate_alpha(data, grid, opts);
  if (r.warning) note("warning: " + *r.warning);
  if (!o.grid_csv.empty()) io::write_text(o.grid_csv, io::alpha_grid_csv(r));
  emit(o.out, io::alpha_to_json(r, data.items(), data.assessors(), o.n_star, o.reps, g.seed));
}

void cmd_summarize(const GlobalOptions&, const SummarizeOptions& o) {
  const PosteriorSamples samples = io::read_draws(o.draws);
  const PosteriorSummary summary = summarize_samples(samples, o.k);
  const auto& ids = samples.item_ids();
  if (!o.heatplot.empty()) io::write_text(o.heatplot, io::heatplot_csv(heatplot_cells(samples, summary), ids));
  if (!o.trace.empty()) {
    io::write_text(o.trace, io::trace_csv(trace_points(samples, summary, o.trace_top), ids));
  }
  if (!o.violin.empty()) {
    const auto grid = o.k_grid.empty() ? default_k_grid(samples.n_star()) : o.k_grid;
    io::write_text(o.violin, io::violin_csv(violin_points(samples, grid), ids));
  }
  emit(o.summary, io::summary_to_json("lowbmm", &samples, summary, ids,
                                      top_selection(samples, summary, o.top_k, o.cutoff)));
}

void cmd_evaluate(const GlobalOptions&, const EvaluateOptions& o) {
  const auto truth = io::truth_from_json(io::read_text(o.truth));
  const auto summary = io::summary_from_json(io::read_text(o.summary));
  const auto [gt, est] = io::align_for_evaluation(truth, summary);
  emit(o.out, io::eval_to_json(evaluate(gt, est, truth.n_items)));
}

void cmd_bench(const GlobalOptions& g, const BenchOptions& o) {
  std::vector<Scenario> scenarios;
  if (!o.scenarios.empty()) {
    scenarios = io::scenarios_from_json(io::read_text(o.scenarios));
  } else {
    Scenario sc;
    sc.name = o.name;
    sc.generator = parse_generator(o.generator);
    sc.n_items = o.n_items;
    sc.n_star = o.n_star;
    sc.assessors = o.assessors;
    sc.alpha = o.alpha;
    sc.fit_alpha = o.fit_alpha;
    sc.noise_levels = o.noise_levels;
    sc.noise_fraction = o.noise_fraction;
    sc.iterations = o.iterations;
    sc.burn_in = o.burn_in;
    sc.thin = o.thin;
    sc.leap = o.leap;
    sc.swap = o.swap;
    scenarios.push_back(sc);
  }
  BenchmarkOptions bo;
  bo.methods.clear();
  for (const auto& m : o.methods) bo.methods.push_back(parse_method(m));
  bo.repetitions = o.reps;
  bo.threads = g.threads;

  std::vector<BenchmarkResult> results;
  std::string csv;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    bo.seed = derive_seed(g.seed, s);
    const std::string name = scenarios[s].name;
    if (g.progress_every > 0) {
      bo.progress = [name](int done, int total) {
        std::cerr << "lowbmm: " << name << " repetition " << done << '/' << total << '\n';
      };
    }
    results.push_back(run_benchmark(scenarios[s], bo));
    for (const auto& a : results.back().aggregates) {
      note(name + " " + to_string(a.method) + ": coverage=" + io::format_double(a.coverage_mean) +
           " d_norm=" + io::format_double(a.d_norm_mean) + " d_R=" + io::format_double(a.d_R_mean) +
           (a.failed ? " failed=" + std::to_string(a.failed) : std::string()));
    }
    std::string part = io::bench_csv(results.back(), !o.no_timing);
    if (s > 0) part.erase(0, part.find('\n') + 1);  // one header line
    csv += part;
  }
  if (!o.csv.empty()) io::write_text(o.csv, csv);
  emit(o.json, io::bench_to_json(results, !o.no_timing));
}

int run(int argc, char** argv) {
  CLI::App app{"Variable selection for ranking data with a lower-dimensional Mallows model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "TOML/INI file with option values ([subcommand] sections)");

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_option("--chains", g.chains, "Independent chains for fit")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--progress", g.progress_every,
                 "Report progress to stderr every this many iterations / repetitions (0 = off)")
      ->check(CLI::NonNegativeNumber);

  SimulateOptions so;
  auto* sim = app.add_subcommand("simulate", "Simulate a ranking dataset with known relevant items");
  sim->add_option("--generator", so.generator, "top-rank or rank-consistency")->capture_default_str();
  sim->add_option("--n", so.n_items, "Number of items")->capture_default_str();
  sim->add_option("--n-star", so.n_star, "Number of relevant items")->capture_default_str();
  sim->add_option("--assessors", so.assessors, "Number of assessors")->capture_default_str();
  sim->add_option("--alpha", so.alpha, "Scale parameter of the generating model")->capture_default_str();
  sim->add_option("--noise-levels", so.noise_levels, "Rank-swap perturbation levels");
  sim->add_option("--noise-fraction", so.noise_fraction, "Fraction of assessors perturbed per level")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_option("--out", so.out, "Dataset CSV path")->capture_default_str();
  sim->add_option("--truth", so.truth, "Ground-truth JSON path")->capture_default_str();
  sim->callback([&] { cmd_simulate(g, so); });

  FitOptions fo;
  auto* fit = app.add_subcommand("fit", "Run the MCMC sampler on a dataset");
  fit->add_option("--data", fo.data, "Dataset CSV")->required();
  fit->add_flag("--from-scores", fo.from_scores, "Data are real scores; largest value gets rank 1");
  fit->add_option("--alpha", fo.alpha, "Fixed scale parameter")->check(CLI::PositiveNumber);
  fit->add_option("--alpha-from", fo.alpha_from, "Take alpha from an estimate-alpha JSON file");
  fit->add_option("--n-star", fo.n_star, "Number of relevant items")->required();
  fit->add_option("--iterations", fo.iterations, "MCMC iterations per chain")->capture_default_str();
  fit->add_option("--burn-in", fo.burn_in, "Burn-in iterations (default: iterations/5)");
  fit->add_option("--thin", fo.thin, "Keep every thin-th draw");
  fit->add_option("--leap", fo.leap, "Leap size l of the consensus proposal");
  fit->add_option("--swap", fo.swap, "Items swapped per set proposal (L)")->capture_default_str();
  fit->add_option("--draws", fo.draws, "Write the kept draws to this file");
  fit->add_option("--draw-format", fo.draw_format, "csv or binary")->capture_default_str();
  fit->add_option("--summary", fo.summary, "Summary JSON path (default: stdout)");
  fit->add_option("--k", fo.k, "Size of the highest probability set");
  fit->add_option("--top-k", fo.top_k, "K for the top-K probability selection");
  fit->add_option("--cutoff", fo.cutoff, "Probability cut-off c for the top-K selection")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  fit->callback([&] { cmd_fit(g, fo); });

  EstimateAlphaOptions ao;
  auto* est = app.add_subcommand("estimate-alpha", "Choose alpha by matching mean pairwise distances");
  est->add_option("--data", ao.data, "Dataset CSV")->required();
  est->add_flag("--from-scores", ao.from_scores, "Data are real scores; largest value gets rank 1");
  est->add_option("--grid", ao.grid, "Candidate alpha values, ascending (default: 13 log-spaced)")
      ->delimiter(',');
  est->add_option("--reps", ao.reps, "Simulated datasets per grid value")
      ->check(CLI::PositiveNumber)->capture_default_str();
  est->add_option("--n-star", ao.n_star, "Rescale the estimate to this many items");
  est->add_option("--grid-csv", ao.grid_csv, "Write the grid table to this CSV");
  est->add_option("--out", ao.out, "Result JSON path (default: stdout)");
  est->callback([&] { cmd_estimate_alpha(g, ao); });

  SummarizeOptions mo;
  auto* sum = app.add_subcommand("summarize", "Posterior summaries and plot tables from a draw log");
  sum->add_option("--draws", mo.draws, "Draw log written by fit")->required();
  sum->add_option("--k", mo.k, "Size of the highest probability set");
  sum->add_option("--top-k", mo.top_k, "K for the top-K probability selection");
  sum->add_option("--cutoff", mo.cutoff, "Probability cut-off c")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sum->add_option("--k-grid", mo.k_grid, "K values for the violin table")->delimiter(',');
  sum->add_option("--trace-top", mo.trace_top, "Items in the trace table")->capture_default_str();
  sum->add_option("--summary", mo.summary, "Summary JSON path (default: stdout)");
  sum->add_option("--heatplot", mo.heatplot, "Heatplot CSV path");
  sum->add_option("--trace", mo.trace, "Trace CSV path");
  sum->add_option("--violin", mo.violin, "Top-K probability CSV path");
  sum->callback([&] { cmd_summarize(g, mo); });

  EvaluateOptions vo;
  auto* ev = app.add_subcommand("evaluate", "Score a summary against the ground truth");
  ev->add_option("--summary", vo.summary, "Summary JSON")->required();
  ev->add_option("--truth", vo.truth, "Ground-truth JSON")->required();
  ev->add_option("--out", vo.out, "Report JSON path (default: stdout)");
  ev->callback([&] { cmd_evaluate(g, vo); });

  BenchOptions bo;
  auto* be = app.add_subcommand("bench", "Repeated simulation study comparing lowbmm and BORDA");
  be->add_option("--scenarios", bo.scenarios, "JSON scenario file (overrides the scenario flags)");
  be->add_option("--name", bo.name, "Scenario name")->capture_default_str();
  be->add_option("--generator", bo.generator, "top-rank or rank-consistency")->capture_default_str();
  be->add_option("--n", bo.n_items, "Number of items")->capture_default_str();
  be->add_option("--n-star", bo.n_star, "Number of relevant items")->capture_default_str();
  be->add_option("--assessors", bo.assessors, "Number of assessors")->capture_default_str();
  be->add_option("--alpha", bo.alpha, "Generating alpha")->capture_default_str();
  be->add_option("--fit-alpha", bo.fit_alpha, "Alpha used for fitting (default: generating alpha)");
  be->add_option("--noise-levels", bo.noise_levels, "Rank-swap perturbation levels");
  be->add_option("--noise-fraction", bo.noise_fraction, "Fraction of assessors perturbed per level");
  be->add_option("--iterations", bo.iterations, "MCMC iterations")->capture_default_str();
  be->add_option("--burn-in", bo.burn_in, "Burn-in (default: iterations/5)");
  be->add_option("--thin", bo.thin, "Thinning stride")->capture_default_str();
  be->add_option("--leap", bo.leap, "Leap size l");
  be->add_option("--swap", bo.swap, "Swap size L")->capture_default_str();
  be->add_option("--reps", bo.reps, "Repetitions")->check(CLI::PositiveNumber)->capture_default_str();
  be->add_option("--methods", bo.methods, "Methods to run (lowbmm, borda)")->delimiter(',');
  be->add_option("--csv", bo.csv, "Per-repetition CSV path");
  be->add_option("--json", bo.json, "Aggregate JSON path (default: stdout)");
  be->add_flag("--no-timing", bo.no_timing, "Write zero wall times (byte-stable output)");
  be->callback([&] { cmd_bench(g, bo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorCategory::kConfig);
  } catch (const Error& e) {
    std::cerr << "lowbmm: error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "lowbmm: unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lowbmm::cli
