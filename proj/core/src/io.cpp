#include "lowbmm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>
#include <nlohmann/json.hpp>

#include "lowbmm/error.hpp"

namespace lowbmm::io {

using json = nlohmann::ordered_json;

namespace {

constexpr char kDrawMagic[8] = {'L', 'B', 'M', 'M', 'D', 'R', 'W', '1'};
constexpr const char* kDrawCsvPrefix = "# lowbmm-draws ";

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur)) {
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    lines.push_back(cur);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

int parse_int(const std::string& s, const std::string& where) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) {
    throw DataError(where + ": '" + s + "' is not an integer");
  }
  return v;
}

std::int64_t parse_int64(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) {
    throw DataError(where + ": '" + s + "' is not an integer");
  }
  return v;
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty() || !std::isfinite(v)) {
    throw DataError(where + ": '" + s + "' is not a finite number");
  }
  return v;
}

void check_id(const std::string& id) {
  if (id.empty() || id.find_first_of(",\"\n\r") != std::string::npos) {
    throw DataError("item id '" + id + "' must be non-empty and free of commas, quotes and newlines");
  }
}

std::vector<std::string> parse_header(const std::vector<std::string>& lines) {
  if (lines.empty()) throw DataError("dataset CSV is empty");
  auto ids = split_fields(lines[0]);
  std::map<std::string, int> seen;
  for (const auto& id : ids) {
    check_id(id);
    if (seen[id]++) throw DataError("duplicate item id '" + id + "' in header");
  }
  return ids;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

template <typename T>
T get_field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw DataError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::map<std::string, int> id_index(const std::vector<std::string>& ids) {
  std::map<std::string, int> m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = static_cast<int>(i);
  return m;
}

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
  if (std::isnan(x)) return "NaN";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// datasets

std::string dataset_to_csv(const RankingDataset& ds) {
  std::string s;
  const auto& ids = ds.item_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    check_id(ids[i]);
    if (i) s += ',';
    s += ids[i];
  }
  s += '\n';
  for (int j = 0; j < ds.assessors(); ++j) {
    const auto row = ds.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(row[i]);
    }
    s += '\n';
  }
  return s;
}

RankingDataset dataset_from_csv(const std::string& text) {
  const auto lines = split_lines(text);
  auto ids = parse_header(lines);
  const std::size_t n = ids.size();
  std::vector<int> ranks;
  ranks.reserve(n * (lines.size() - 1));
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string where = "row " + std::to_string(l);
    const auto fields = split_fields(lines[l]);
    if (fields.size() != n) {
      throw DataError(where + ": expected " + std::to_string(n) + " fields, found " +
                      std::to_string(fields.size()));
    }
    std::vector<int> row;
    row.reserve(n);
    for (const auto& f : fields) row.push_back(parse_int(f, where));
    if (!is_permutation(row)) {
      throw DataError(where + ": ranks are not a permutation of 1.." + std::to_string(n));
    }
    ranks.insert(ranks.end(), row.begin(), row.end());
  }
  if (lines.size() < 2) throw DataError("dataset CSV has no assessor rows");
  return RankingDataset(std::move(ids), std::move(ranks));
}

RankingDataset dataset_from_score_csv(const std::string& text) {
  const auto lines = split_lines(text);
  auto ids = parse_header(lines);
  const std::size_t n = ids.size();
  std::vector<int> ranks;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const std::string where = "row " + std::to_string(l);
    const auto fields = split_fields(lines[l]);
    if (fields.size() != n) {
      throw DataError(where + ": expected " + std::to_string(n) + " fields, found " +
                      std::to_string(fields.size()));
    }
    std::vector<double> neg;
    neg.reserve(n);
    for (const auto& f : fields) neg.push_back(-parse_double(f, where));
    const Ranking r = rank_vector(std::span<const double>(neg));
    ranks.insert(ranks.end(), r.vector().begin(), r.vector().end());
  }
  if (lines.size() < 2) throw DataError("score CSV has no assessor rows");
  return RankingDataset(std::move(ids), std::move(ranks));
}

void write_dataset(const std::string& path, const RankingDataset& ds) {
  write_text(path, dataset_to_csv(ds));
}

RankingDataset read_dataset(const std::string& path, bool from_scores) {
  const std::string text = read_text(path);
  try {
    return from_scores ? dataset_from_score_csv(text) : dataset_from_csv(text);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// ground truth

std::string truth_to_json(const GroundTruth& truth, const std::vector<std::string>& item_ids,
                          const std::string& provenance) {
  json j;
  j["format"] = "lowbmm-truth";
  j["n_items"] = item_ids.size();
  j["n_star"] = truth.n_star();
  j["provenance"] = provenance;
  json rel = json::array();
  for (int r = 1; r <= truth.n_star(); ++r) {
    rel.push_back({{"item", item_ids[static_cast<std::size_t>(truth.item_with_rank(r))]}, {"rank", r}});
  }
  j["relevant"] = rel;
  return dump(j);
}

TruthFile truth_from_json(const std::string& text) {
  const json j = parse_json(text, "truth file");
  TruthFile t;
  t.n_items = get_field<int>(j, "n_items", "truth file");
  if (j.contains("provenance")) t.provenance = get_field<std::string>(j, "provenance", "truth file");
  const json rel = get_field<json>(j, "relevant", "truth file");
  if (!rel.is_array()) throw DataError("truth file: 'relevant' must be an array");
  for (const auto& e : rel) {
    t.relevant.emplace_back(get_field<std::string>(e, "item", "truth file"),
                            get_field<int>(e, "rank", "truth file"));
  }
  return t;
}

// ---------------------------------------------------------------------------
// sampler config and draw logs

std::string sampler_config_json(const SamplerConfig& cfg) {
  json j;
  j["alpha"] = cfg.alpha;
  j["n_star"] = cfg.n_star;
  j["leap"] = cfg.leap;
  j["swap"] = cfg.swap;
  j["iterations"] = cfg.iterations;
  j["burn_in"] = cfg.burn_in;
  j["thin"] = cfg.thin;
  j["seed"] = cfg.seed;
  return j.dump();
}

SamplerConfig sampler_config_from_json(const std::string& text) {
  const json j = parse_json(text, "sampler config");
  SamplerConfig c;
  c.alpha = get_field<double>(j, "alpha", "sampler config");
  c.n_star = get_field<int>(j, "n_star", "sampler config");
  c.leap = get_field<int>(j, "leap", "sampler config");
  c.swap = get_field<int>(j, "swap", "sampler config");
  c.iterations = get_field<std::int64_t>(j, "iterations", "sampler config");
  c.burn_in = get_field<std::int64_t>(j, "burn_in", "sampler config");
  c.thin = get_field<std::int64_t>(j, "thin", "sampler config");
  c.seed = get_field<std::uint64_t>(j, "seed", "sampler config");
  return c;
}

std::string config_hash(const SamplerConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : sampler_config_json(cfg)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json draw_header(const PosteriorSamples& s) {
  json j;
  j["format"] = "lowbmm-draws";
  j["config_hash"] = config_hash(s.config);
  j["config"] = json::parse(sampler_config_json(s.config));
  j["n_items"] = s.n_items();
  j["n_star"] = s.n_star();
  j["chains"] = s.chain_count;
  j["acceptance_rho"] = s.acceptance_rho;
  j["acceptance_aset"] = s.acceptance_aset;
  j["item_ids"] = s.item_ids();
  return j;
}

PosteriorSamples samples_from_header(const json& h) {
  const auto ids = get_field<std::vector<std::string>>(h, "item_ids", "draw log header");
  PosteriorSamples s(get_field<int>(h, "n_items", "draw log header"),
                     get_field<int>(h, "n_star", "draw log header"), ids);
  s.chain_count = get_field<int>(h, "chains", "draw log header");
  s.acceptance_rho = get_field<double>(h, "acceptance_rho", "draw log header");
  s.acceptance_aset = get_field<double>(h, "acceptance_aset", "draw log header");
  s.config = sampler_config_from_json(get_field<json>(h, "config", "draw log header").dump());
  if (get_field<std::string>(h, "config_hash", "draw log header") != config_hash(s.config)) {
    throw DataError("draw log header: config hash does not match the stored config");
  }
  return s;
}

template <typename T>
void put(std::ofstream& out, T v) {
  // Native byte order; all supported targets are little-endian.
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T take(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw DataError("binary draw log is truncated");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof v);
  pos += sizeof v;
  return v;
}

}  // namespace

DrawLogWriter::DrawLogWriter(const std::string& path, DrawFormat format,
                             const PosteriorSamples& header)
    : path_(path), format_(format), item_ids_(header.item_ids()), n_star_(header.n_star()) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
  const std::string h = draw_header(header).dump();
  if (format_ == DrawFormat::kBinary) {
    out_.write(kDrawMagic, sizeof kDrawMagic);
    put<std::uint64_t>(out_, h.size());
    out_.write(h.data(), static_cast<std::streamsize>(h.size()));
  } else {
    out_ << kDrawCsvPrefix << h << '\n' << "chain,iteration";
    for (int k = 1; k <= n_star_; ++k) out_ << ",item_" << k << ",rank_" << k;
    out_ << '\n';
  }
}

DrawLogWriter::~DrawLogWriter() {
  if (out_.is_open()) out_.close();
}

void DrawLogWriter::write(int chain, std::int64_t iteration, std::span<const int> items,
                          std::span<const int> ranks) {
  if (static_cast<int>(items.size()) != n_star_ || ranks.size() != items.size()) {
    throw DimensionError("draw log: record does not hold n_star items");
  }
  if (format_ == DrawFormat::kBinary) {
    put<std::int32_t>(out_, chain);
    put<std::int64_t>(out_, iteration);
    for (std::size_t k = 0; k < items.size(); ++k) {
      put<std::int32_t>(out_, items[k]);
      put<std::int32_t>(out_, ranks[k]);
    }
  } else {
    line_.clear();
    line_ += std::to_string(chain);
    line_ += ',';
    line_ += std::to_string(iteration);
    for (std::size_t k = 0; k < items.size(); ++k) {
      line_ += ',';
      line_ += item_ids_[static_cast<std::size_t>(items[k])];
      line_ += ',';
      line_ += std::to_string(ranks[k]);
    }
    line_ += '\n';
    out_ << line_;
  }
  if (!out_) throw IoError("failed writing '" + path_ + "'");
}

void DrawLogWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("failed closing '" + path_ + "'");
}

void write_draws(const std::string& path, DrawFormat format, const PosteriorSamples& samples) {
  DrawLogWriter w(path, format, samples);
  for (std::size_t d = 0; d < samples.size(); ++d) {
    w.write(samples.chain(d), samples.iteration(d), samples.items(d), samples.ranks(d));
  }
  w.close();
}

PosteriorSamples read_draws(const std::string& path) {
  const std::string buf = read_text(path);
  try {
    if (buf.size() >= sizeof kDrawMagic && std::memcmp(buf.data(), kDrawMagic, sizeof kDrawMagic) == 0) {
      std::size_t pos = sizeof kDrawMagic;
      const auto hlen = take<std::uint64_t>(buf, pos);
      if (pos + hlen > buf.size()) throw DataError("binary draw log header is truncated");
      PosteriorSamples s = samples_from_header(parse_json(buf.substr(pos, hlen), "draw log header"));
      pos += hlen;
      const auto ns = static_cast<std::size_t>(s.n_star());
      std::vector<int> items(ns), ranks(ns);
      while (pos < buf.size()) {
        const int chain = take<std::int32_t>(buf, pos);
        const auto iteration = take<std::int64_t>(buf, pos);
        for (std::size_t k = 0; k < ns; ++k) {
          items[k] = take<std::int32_t>(buf, pos);
          ranks[k] = take<std::int32_t>(buf, pos);
          if (items[k] < 0 || items[k] >= s.n_items()) throw DataError("binary draw log: item index out of range");
        }
        s.add_draw(chain, iteration, items, ranks);
      }
      return s;
    }
    const auto lines = split_lines(buf);
    const std::string prefix = kDrawCsvPrefix;
    if (lines.empty() || lines[0].rfind(prefix, 0) != 0) {
      throw DataError("not a lowbmm draw log (missing header line)");
    }
    PosteriorSamples s = samples_from_header(parse_json(lines[0].substr(prefix.size()), "draw log header"));
    const auto index = id_index(s.item_ids());
    const auto ns = static_cast<std::size_t>(s.n_star());
    std::vector<int> items(ns), ranks(ns);
    for (std::size_t l = 2; l < lines.size(); ++l) {
      const std::string where = "draw log line " + std::to_string(l + 1);
      const auto f = split_fields(lines[l]);
      if (f.size() != 2 + 2 * ns) throw DataError(where + ": wrong number of fields");
      for (std::size_t k = 0; k < ns; ++k) {
        auto it = index.find(f[2 + 2 * k]);
        if (it == index.end()) throw DataError(where + ": unknown item id '" + f[2 + 2 * k] + "'");
        items[k] = it->second;
        ranks[k] = parse_int(f[3 + 2 * k], where);
      }
      if (!is_permutation(ranks)) throw DataError(where + ": ranks are not a permutation of 1..n*");
      s.add_draw(parse_int(f[0], where), parse_int64(f[1], where), items, ranks);
    }
    return s;
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// summaries and evaluation

std::string summary_to_json(const std::string& method, const PosteriorSamples* samples,
                            const PosteriorSummary& summary,
                            const std::vector<std::string>& item_ids,
                            const std::optional<TopSelection>& top) {
  const auto id = [&](int i) { return item_ids[static_cast<std::size_t>(i)]; };
  json j;
  j["format"] = "lowbmm-summary";
  j["method"] = method;
  j["n_items"] = item_ids.size();
  j["n_star"] = summary.a_hat.size();
  if (samples) {
    const SelectionFrequencies w = selection_frequencies(*samples);
    j["draws"] = samples->size();
    j["chains"] = samples->chain_count;
    j["config_hash"] = config_hash(samples->config);
    j["acceptance"] = {{"rho", samples->acceptance_rho}, {"aset", samples->acceptance_aset}};
    json hps = json::array();
    for (int p = 0; p < summary.hps.size(); ++p) {
      hps.push_back({{"item", id(summary.hps[p])},
                     {"selection_frequency", w.w_bar[static_cast<std::size_t>(summary.hps[p])]},
                     {"mean_rank", summary.x_bar[static_cast<std::size_t>(p)]}});
    }
    j["hps"] = hps;
  }
  json sel = json::array();
  const auto ordered = summary.a_hat.order_by(summary.rho_hat);
  for (std::size_t r = 0; r < ordered.size(); ++r) {
    sel.push_back({{"item", id(ordered[r])}, {"rank", static_cast<int>(r) + 1}});
  }
  j["selected"] = sel;
  if (top) {
    json items = json::array();
    for (int i : top->items.members()) items.push_back(id(i));
    j["top_selection"] = {{"K", top->K}, {"c", top->c}, {"items", items}};
  }
  return dump(j);
}

SummaryFile summary_from_json(const std::string& text) {
  const json j = parse_json(text, "summary file");
  SummaryFile s;
  s.n_items = get_field<int>(j, "n_items", "summary file");
  s.n_star = get_field<int>(j, "n_star", "summary file");
  const json sel = get_field<json>(j, "selected", "summary file");
  if (!sel.is_array()) throw DataError("summary file: 'selected' must be an array");
  for (const auto& e : sel) {
    s.selected.emplace_back(get_field<std::string>(e, "item", "summary file"),
                            get_field<int>(e, "rank", "summary file"));
  }
  return s;
}

std::string eval_to_json(const EvalReport& r) {
  json j;
  j["format"] = "lowbmm-eval";
  j["n_corr"] = r.n_corr;
  j["coverage"] = r.coverage;
  j["d_norm"] = number_or_inf(r.d_norm);
  j["d_R"] = r.d_R;
  j["wall_time_sec"] = r.wall_time_sec;
  return dump(j);
}

std::pair<GroundTruth, PosteriorSummary> align_for_evaluation(const TruthFile& truth,
                                                              const SummaryFile& summary) {
  if (truth.n_items != summary.n_items) {
    throw DimensionError("truth has " + std::to_string(truth.n_items) + " items but summary has " +
                         std::to_string(summary.n_items));
  }
  std::map<std::string, int> index;
  auto lookup = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, static_cast<int>(index.size()));
    if (static_cast<int>(index.size()) > truth.n_items) {
      throw IndexError("more distinct item ids than n_items");
    }
    return it->second;
  };
  std::vector<int> t_items, t_ranks, s_items, s_ranks;
  for (const auto& [id, r] : truth.relevant) {
    t_items.push_back(lookup(id));
    t_ranks.push_back(r);
  }
  for (const auto& [id, r] : summary.selected) {
    s_items.push_back(lookup(id));
    s_ranks.push_back(r);
  }
  GroundTruth gt{ItemSet(std::move(t_items), truth.n_items), Ranking(std::move(t_ranks))};
  PosteriorSummary est;
  est.a_hat = ItemSet(std::move(s_items), truth.n_items);
  est.rho_hat = Ranking(std::move(s_ranks));
  est.hps = est.a_hat;
  return {std::move(gt), std::move(est)};
}

// ---------------------------------------------------------------------------
// tables

std::string heatplot_csv(const std::vector<HeatplotCell>& cells,
                         const std::vector<std::string>& item_ids) {
  std::string s = "position,item,rank,probability,selection_frequency\n";
  for (const auto& c : cells) {
    s += std::to_string(c.position) + ',' + item_ids[static_cast<std::size_t>(c.item)] + ',' +
         std::to_string(c.rank) + ',' + format_double(c.probability) + ',' +
         format_double(c.selection_frequency) + '\n';
  }
  return s;
}

std::string trace_csv(const std::vector<TracePoint>& points,
                      const std::vector<std::string>& item_ids) {
  std::string s = "chain,iteration,item,rank\n";
  for (const auto& p : points) {
    s += std::to_string(p.chain) + ',' + std::to_string(p.iteration) + ',' +
         item_ids[static_cast<std::size_t>(p.item)] + ',' + std::to_string(p.rank) + '\n';
  }
  return s;
}

std::string violin_csv(const std::vector<ViolinPoint>& points,
                       const std::vector<std::string>& item_ids) {
  std::string s = "K,item,probability\n";
  for (const auto& p : points) {
    s += std::to_string(p.K) + ',' + item_ids[static_cast<std::size_t>(p.item)] + ',' +
         format_double(p.probability) + '\n';
  }
  return s;
}

std::string alpha_grid_csv(const AlphaGridResult& r) {
  std::string s = "alpha,mean_distance,observed_mean\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    s += format_double(r.grid[i]) + ',' + format_double(r.mean_dists[i]) + ',' +
         format_double(r.observed_mean) + '\n';
  }
  return s;
}

std::string alpha_to_json(const AlphaGridResult& r, int n_items, int assessors,
                          std::optional<int> n_star, int reps, std::uint64_t seed) {
  json j;
  j["format"] = "lowbmm-alpha";
  j["n_items"] = n_items;
  j["assessors"] = assessors;
  j["reps"] = reps;
  j["seed"] = seed;
  j["observed_mean"] = r.observed_mean;
  j["alpha_hat_n"] = r.alpha_hat_n;
  if (n_star) {
    j["n_star"] = *n_star;
    j["alpha_hat_nstar"] = r.alpha_hat_nstar.value_or(0.0);
  }
  j["warning"] = r.warning ? json(*r.warning) : json(nullptr);
  json grid = json::array();
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    grid.push_back({{"alpha", r.grid[i]}, {"mean_distance", r.mean_dists[i]}});
  }
  j["grid"] = grid;
  return dump(j);
}

double alpha_from_json(const std::string& text) {
  const json j = parse_json(text, "alpha file");
  if (j.contains("alpha_hat_nstar")) return get_field<double>(j, "alpha_hat_nstar", "alpha file");
  return get_field<double>(j, "alpha_hat_n", "alpha file");
}

std::string bench_csv(const BenchmarkResult& r, bool timing) {
  std::string s =
      "scenario,rep,method,ok,n_corr,coverage,d_norm,d_R,wall_time_sec,acceptance_rho,"
      "acceptance_aset,error\n";
  for (const auto& rec : r.records) {
    std::string err = rec.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    }
    s += r.scenario.name + ',' + std::to_string(rec.rep) + ',' + to_string(rec.method) + ',' +
         (rec.ok ? "1" : "0") + ',' + std::to_string(rec.report.n_corr) + ',' +
         format_double(rec.report.coverage) + ',' + format_double(rec.report.d_norm) + ',' +
         format_double(rec.report.d_R) + ',' +
         format_double(timing ? rec.report.wall_time_sec : 0.0) + ',' +
         format_double(rec.acceptance_rho) + ',' + format_double(rec.acceptance_aset) + ',' + err +
         '\n';
  }
  return s;
}

std::string bench_to_json(const std::vector<BenchmarkResult>& results, bool timing) {
  json out;
  out["format"] = "lowbmm-bench";
  json arr = json::array();
  for (const auto& r : results) {
    const auto& sc = r.scenario;
    json j;
    j["scenario"] = sc.name;
    j["generator"] = to_string(sc.generator);
    j["n_items"] = sc.n_items;
    j["n_star"] = sc.n_star;
    j["assessors"] = sc.assessors;
    j["alpha"] = sc.alpha;
    j["fit_alpha"] = sc.fit_alpha.value_or(sc.alpha);
    j["noise_levels"] = sc.noise_levels;
    j["noise_fraction"] = sc.noise_fraction;
    j["iterations"] = sc.iterations;
    j["repetitions"] = r.repetitions;
    j["seed"] = r.seed;
    json methods = json::array();
    for (const auto& a : r.aggregates) {
      methods.push_back({{"method", to_string(a.method)},
                         {"succeeded", a.succeeded},
                         {"failed", a.failed},
                         {"coverage", {{"mean", number_or_inf(a.coverage_mean)}, {"sd", number_or_inf(a.coverage_sd)}}},
                         {"d_norm", {{"mean", number_or_inf(a.d_norm_mean)}, {"sd", number_or_inf(a.d_norm_sd)}}},
                         {"d_R", {{"mean", number_or_inf(a.d_R_mean)}, {"sd", number_or_inf(a.d_R_sd)}}},
                         {"wall_time_sec",
                          {{"mean", timing ? number_or_inf(a.wall_time_mean) : json(0.0)},
                           {"sd", timing ? number_or_inf(a.wall_time_sd) : json(0.0)}}}});
    }
    j["methods"] = methods;
    arr.push_back(j);
  }
  out["scenarios"] = arr;
  return dump(out);
}

std::vector<Scenario> scenarios_from_json(const std::string& text) {
  const json j = parse_json(text, "scenario file");
  const json list = get_field<json>(j, "scenarios", "scenario file");
  if (!list.is_array() || list.empty()) throw ConfigError("scenario file: 'scenarios' must be a non-empty array");
  for (const auto& [key, value] : j.items()) {
    if (key != "scenarios") throw ConfigError("scenario file: unknown key '" + key + "'");
  }
  static const std::vector<std::string> known = {
      "name",  "generator",      "n",          "n_star",  "assessors", "alpha", "fit_alpha",
      "noise_levels", "noise_fraction", "iterations", "burn_in", "thin",      "leap",  "swap"};
  std::vector<Scenario> out;
  for (const auto& e : list) {
    if (!e.is_object()) throw ConfigError("scenario file: every scenario must be an object");
    for (const auto& [key, value] : e.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ConfigError("scenario file: unknown key '" + key + "'");
      }
    }
    Scenario sc;
    sc.name = "scenario_" + std::to_string(out.size() + 1);
    try {
      if (e.contains("name")) sc.name = e.at("name").get<std::string>();
      if (e.contains("generator")) sc.generator = parse_generator(e.at("generator").get<std::string>());
      sc.n_items = e.value("n", sc.n_items);
      sc.n_star = e.value("n_star", sc.n_star);
      sc.assessors = e.value("assessors", sc.assessors);
      sc.alpha = e.value("alpha", sc.alpha);
      if (e.contains("fit_alpha")) sc.fit_alpha = e.at("fit_alpha").get<double>();
      sc.noise_levels = e.value("noise_levels", sc.noise_levels);
      sc.noise_fraction = e.value("noise_fraction", sc.noise_fraction);
      sc.iterations = e.value("iterations", sc.iterations);
      if (e.contains("burn_in")) sc.burn_in = e.at("burn_in").get<std::int64_t>();
      sc.thin = e.value("thin", sc.thin);
      if (e.contains("leap")) sc.leap = e.at("leap").get<int>();
      sc.swap = e.value("swap", sc.swap);
    } catch (const json::exception&) {
      throw ConfigError("scenario file: scenario '" + sc.name + "' has a value of the wrong type");
    }
    check_id(sc.name);
    sc.validate();
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace lowbmm::io
