#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexnav/corpus.hpp"
#include "lexnav/graphgen.hpp"
#include "lexnav/navigate.hpp"
#include "lexnav/parallel.hpp"
#include "lexnav/rng.hpp"
#include "lexnav/svgplot.hpp"
#include "lexnav/topology.hpp"
#include "lexnav/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Logging, controlled by LEXNAV_LOG in {error, warn, info, debug}.

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("LEXNAV_LOG");
    if (!env) return LogLevel::Warn;
    const std::string v = env;
    if (v == "error") return LogLevel::Error;
    if (v == "warn") return LogLevel::Warn;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    std::cerr << "[lexnav] warn: unknown LEXNAV_LOG value '" << v << "', using warn\n";
    return LogLevel::Warn;
  }();
  return level;
}

void log_at(LogLevel level, const std::string& msg) {
  static constexpr const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level())
    std::cerr << "[lexnav] " << names[static_cast<int>(level)] << ": " << msg << "\n";
}

void log_info(const std::string& msg) { log_at(LogLevel::Info, msg); }
void log_debug(const std::string& msg) { log_at(LogLevel::Debug, msg); }

// ---------------------------------------------------------------------------
// Run manifest: one per output directory, describing how it was produced.

class Manifest {
 public:
  Manifest(std::string command, fs::path out_dir)
      : out_dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["version"] = kVersion;
    doc_["parameters"] = json::object();
  }

  void param(const std::string& key, const json& value) { doc_["parameters"][key] = value; }
  void seed(uint64_t s) { doc_["seed"] = s; }
  void input(const fs::path& p) { doc_["inputs"].push_back(p.string()); }
  void output(const fs::path& p) { doc_["outputs"].push_back(p.string()); }

  // Writes a file into the output directory and records it.
  void emit(const std::string& name, std::string_view content) {
    const fs::path p = out_dir_ / name;
    lexnav::atomic_write_file(p, content);
    output(p);
    log_debug("wrote " + p.string());
  }

  void finish() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    doc_["duration_seconds"] = std::chrono::duration<double>(elapsed).count();
    lexnav::atomic_write_file(out_dir_ / "manifest.json", doc_.dump(2) + "\n");
  }

 private:
  fs::path out_dir_;
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Flag parsing helpers.

int parse_threads(const std::string& s) {
  if (s == "auto") return lexnav::resolve_threads(0);
  const int64_t n = lexnav::parse_int(s, "thread count");
  if (n < 1) throw std::runtime_error("thread count must be >= 1 or 'auto'");
  return static_cast<int>(n);
}

std::vector<std::string> parse_list_tokens(const std::string& s, const char* what) {
  std::vector<std::string> tokens;
  for (auto part : lexnav::split(s, ','))
    if (!part.empty()) tokens.emplace_back(part);
  if (tokens.empty()) throw std::runtime_error(std::string("empty ") + what + " list");
  return tokens;
}

std::vector<double> parse_double_list(const std::string& s, const char* what) {
  std::vector<double> values;
  for (const auto& tok : parse_list_tokens(s, what)) values.push_back(lexnav::parse_double(tok, what));
  return values;
}

std::vector<int64_t> parse_int_list(const std::string& s, const char* what) {
  std::vector<int64_t> values;
  for (const auto& tok : parse_list_tokens(s, what)) values.push_back(lexnav::parse_int(tok, what));
  return values;
}

lexnav::Weighting parse_weighting(const std::string& s) {
  if (s == "tfidf") return lexnav::Weighting::Tfidf;
  if (s == "rawtf") return lexnav::Weighting::RawTf;
  throw std::runtime_error("weighting must be tfidf or rawtf");
}

lexnav::Strategy parse_strategy(const std::string& s) {
  if (s == "lexical") return lexnav::Strategy::LexicalGreedy;
  if (s == "degree") return lexnav::Strategy::DegreeGreedy;
  throw std::runtime_error("strategy must be lexical or degree");
}

lexnav::CostModel parse_cost_model(const std::string& s) {
  if (s == "free") return lexnav::CostModel::FreeCue;
  if (s == "visit") return lexnav::CostModel::VisitToEvaluate;
  throw std::runtime_error("cost model must be free or visit");
}

lexnav::RevisitPolicy parse_revisit(const std::string& s) {
  if (s == "allow") return lexnav::RevisitPolicy::Allow;
  if (s == "tabu") return lexnav::RevisitPolicy::Tabu;
  throw std::runtime_error("revisit policy must be allow or tabu");
}

// Lambda token recovery from `dist_lambda=<token>.csv` style names.
std::optional<std::string> lambda_token_from_filename(const fs::path& p) {
  std::string name = p.filename().string();
  if (name.ends_with(".csv")) name.resize(name.size() - 4);
  const size_t pos = name.rfind("lambda=");
  if (pos == std::string::npos) return std::nullopt;
  return name.substr(pos + 7);
}

struct CorpusFlags {
  std::string pages, links, stopwords;
  std::string weighting = "tfidf";

  lexnav::WebCorpus load() const {
    lexnav::CorpusOptions opts;
    opts.weighting = parse_weighting(weighting);
    if (!stopwords.empty()) opts.stopwords = lexnav::load_stopwords(stopwords);
    auto corpus = lexnav::load_corpus(pages, links, opts);
    const auto& st = corpus.stats();
    if (st.dangling_links_dropped)
      log_at(LogLevel::Warn,
             "dropped " + std::to_string(st.dangling_links_dropped) + " dangling link(s)");
    log_info("corpus: " + std::to_string(corpus.size()) + " pages, " +
             std::to_string(st.links_kept) + " links");
    return corpus;
  }

  void record(Manifest& m) const {
    m.input(pages);
    m.input(links);
    if (!stopwords.empty()) m.input(stopwords);
    m.param("pages", pages);
    m.param("links", links);
    m.param("stopwords", stopwords);
    m.param("weighting", weighting);
  }
};

// ---------------------------------------------------------------------------
// Subcommands.

int run_ingest(const CorpusFlags& cf, const std::string& out_dir) {
  Manifest manifest("ingest", out_dir);
  cf.record(manifest);
  const auto corpus = cf.load();
  const auto& st = corpus.stats();

  json summary = {{"pages", corpus.size()},
                  {"links_kept", st.links_kept},
                  {"dangling_links_dropped", st.dangling_links_dropped},
                  {"self_links_dropped", st.self_links_dropped},
                  {"duplicate_links_dropped", st.duplicate_links_dropped},
                  {"vocabulary", corpus.lexicon().size()},
                  {"weighting", cf.weighting}};
  manifest.emit("summary.json", summary.dump(2) + "\n");
  manifest.finish();

  std::cout << "pages=" << corpus.size() << " links=" << st.links_kept
            << " dangling_dropped=" << st.dangling_links_dropped
            << " self_dropped=" << st.self_links_dropped
            << " duplicate_dropped=" << st.duplicate_links_dropped
            << " vocab=" << corpus.lexicon().size() << "\n";
  return 0;
}

int run_pairs(const CorpusFlags& cf, int64_t count, uint64_t seed, const std::string& threads,
              const std::string& out_dir) {
  Manifest manifest("pairs", out_dir);
  cf.record(manifest);
  manifest.seed(seed);
  manifest.param("count", count);
  manifest.param("threads", threads);

  const auto corpus = cf.load();
  const auto pairs = lexnav::sample_pairs(corpus, count, seed, parse_threads(threads));
  log_info("sampled " + std::to_string(pairs.size()) + " pairs");
  manifest.emit("pairs.csv", lexnav::pairs_to_csv(pairs));
  manifest.finish();
  return 0;
}

int run_estimate(const std::string& pairs_path, const std::string& lambdas, int bins,
                 double rho_min, double rho_max, const std::string& threads,
                 const std::string& out_dir) {
  Manifest manifest("estimate", out_dir);
  manifest.input(pairs_path);
  manifest.param("pairs", pairs_path);
  manifest.param("lambdas", lambdas);
  manifest.param("bins", bins);
  manifest.param("threads", threads);

  const auto pairs = lexnav::pairs_from_csv(lexnav::read_file(pairs_path), pairs_path);
  if (pairs.empty()) throw std::runtime_error(pairs_path + ": no pair records");

  if (!(rho_min > 0) || !(rho_max > 0)) {
    // Default range: smallest positive finite rho up to just past the largest.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (const auto& p : pairs) {
      if (p.rho.is_infinite() || p.rho.value <= 0) continue;
      lo = std::min(lo, p.rho.value);
      hi = std::max(hi, p.rho.value);
    }
    if (std::isinf(lo))
      throw std::runtime_error("no positive finite distances; give --rho-min/--rho-max");
    if (!(rho_min > 0)) rho_min = lo;
    if (!(rho_max > 0)) rho_max = hi > rho_min ? std::nextafter(hi, 1e308) : rho_min * 2;
  }
  lexnav::BinningConfig config{bins, rho_min, rho_max};
  config.validate();
  manifest.param("rho_min", lexnav::format_double(rho_min));
  manifest.param("rho_max", lexnav::format_double(rho_max));

  const auto tokens = parse_list_tokens(lambdas, "lambda");
  std::vector<lexnav::BinnedDistribution> dists(tokens.size());
  lexnav::parallel_for(static_cast<int64_t>(tokens.size()), parse_threads(threads),
                       [&](int64_t i) {
                         const double lambda = lexnav::parse_double(tokens[i], "lambda");
                         dists[i] = lexnav::estimate_linkage_probability(pairs, lambda, config);
                       });
  for (size_t i = 0; i < tokens.size(); ++i) {
    log_debug("lambda=" + tokens[i] +
              ": overflow below=" + std::to_string(dists[i].overflow.below_total) +
              " above=" + std::to_string(dists[i].overflow.above_total) +
              " infinite=" + std::to_string(dists[i].overflow.infinite_total));
    manifest.emit("dist_lambda=" + tokens[i] + ".csv", lexnav::distribution_to_csv(dists[i]));
  }
  manifest.finish();
  return 0;
}

int run_fit(const std::vector<std::string>& dist_paths, const std::string& lambdas,
            const std::string& tail_start, const std::string& out_dir) {
  Manifest manifest("fit", out_dir);
  manifest.param("dists", dist_paths);
  manifest.param("lambdas", lambdas);
  manifest.param("tail_start", tail_start);

  std::vector<std::string> lambda_tokens;
  if (!lambdas.empty()) {
    lambda_tokens = parse_list_tokens(lambdas, "lambda");
    if (lambda_tokens.size() != dist_paths.size())
      throw std::runtime_error("--lambdas count does not match distribution file count");
  }

  std::optional<double> cut;
  if (tail_start != "auto") cut = lexnav::parse_double(tail_start, "tail_start");

  std::vector<lexnav::FitRow> rows;
  for (size_t i = 0; i < dist_paths.size(); ++i) {
    manifest.input(dist_paths[i]);
    double lambda;
    if (!lambda_tokens.empty()) {
      lambda = lexnav::parse_double(lambda_tokens[i], "lambda");
    } else if (auto tok = lambda_token_from_filename(dist_paths[i])) {
      lambda = lexnav::parse_double(*tok, "lambda");
    } else {
      throw std::runtime_error(dist_paths[i] +
                               ": cannot infer lambda from filename; pass --lambdas");
    }
    const auto dist =
        lexnav::distribution_from_csv(lexnav::read_file(dist_paths[i]), dist_paths[i]);
    rows.push_back({lambda, lexnav::fit_power_law_tail(dist, cut)});
    log_info("lambda=" + lexnav::format_double(lambda) +
             " alpha=" + lexnav::format_double(rows.back().fit.alpha) +
             " r2=" + lexnav::format_double(rows.back().fit.r_squared));
  }
  manifest.emit("fits.csv", lexnav::fits_to_csv(rows));
  manifest.finish();
  return 0;
}

int run_alphas(const std::string& fits_path, const std::string& out_dir) {
  Manifest manifest("alphas", out_dir);
  manifest.input(fits_path);
  manifest.param("fits", fits_path);

  const auto rows = lexnav::fits_from_csv(lexnav::read_file(fits_path), fits_path);
  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) points.emplace_back(r.lambda, r.fit.alpha);
  const auto fit = lexnav::alpha_lambda_regression(points);

  std::string csv = "slope,intercept,pearson,points\n";
  csv += lexnav::format_double(fit.slope) + "," + lexnav::format_double(fit.intercept) + "," +
         lexnav::format_double(fit.pearson) + "," + std::to_string(fit.points) + "\n";
  manifest.emit("alpha_lambda.csv", csv);
  manifest.finish();

  std::cout << "slope=" << lexnav::format_double(fit.slope)
            << " intercept=" << lexnav::format_double(fit.intercept)
            << " pearson=" << lexnav::format_double(fit.pearson) << " points=" << fit.points
            << "\n";
  return 0;
}

struct GeneratorFlags {
  std::string kind = "lattice";
  int dims = 2;
  int side = 0;
  double alpha = 0;
  int q = 1;
  int vocab_block = 2;
  int64_t pa_nodes = 0;
  int m = 2;
  double gamma = 0;
  int vocab = 48;
};

int run_generate(const GeneratorFlags& gf, uint64_t seed, const std::string& out_dir) {
  Manifest manifest("generate", out_dir);
  manifest.seed(seed);
  manifest.param("kind", gf.kind);

  lexnav::NavGraph graph;
  if (gf.kind == "lattice" || gf.kind == "lexical") {
    lexnav::LatticeConfig config{gf.dims, gf.side, gf.alpha, gf.q, seed};
    manifest.param("dims", gf.dims);
    manifest.param("side", gf.side);
    manifest.param("alpha", gf.alpha);
    manifest.param("q", gf.q);
    if (gf.kind == "lexical") {
      manifest.param("vocab_block", gf.vocab_block);
      graph = lexnav::generate_lexical_graph(config, gf.vocab_block);
    } else {
      graph = lexnav::generate_kleinberg_lattice(config);
    }
  } else if (gf.kind == "pa") {
    lexnav::PaMixConfig config{gf.pa_nodes, gf.m, gf.gamma, gf.vocab, seed};
    manifest.param("nodes", gf.pa_nodes);
    manifest.param("m", gf.m);
    manifest.param("gamma", gf.gamma);
    manifest.param("vocab", gf.vocab);
    graph = lexnav::generate_pa_mixture(config);
  } else {
    throw std::runtime_error("kind must be lattice, lexical, or pa");
  }

  int64_t edges = 0;
  for (const auto& adj : graph.out) edges += static_cast<int64_t>(adj.size());
  log_info("generated " + std::string(lexnav::graph_kind_name(graph.kind)) + " graph: " +
           std::to_string(graph.num_nodes()) + " nodes, " + std::to_string(edges) + " links");
  manifest.emit("graph.txt", lexnav::graph_to_text(graph));
  manifest.finish();
  return 0;
}

int run_navigate(const std::string& graph_path, int64_t source, int64_t target,
                 const std::string& strategy, const std::string& cost_model,
                 const std::string& budget, const std::string& revisit, uint64_t seed) {
  const auto graph = lexnav::graph_from_text(lexnav::read_file(graph_path), graph_path);

  lexnav::StrategyConfig config;
  config.strategy = parse_strategy(strategy);
  config.cost_model = parse_cost_model(cost_model);
  config.revisit = parse_revisit(revisit);
  config.budget = lexnav::BudgetRule::parse(budget).resolve(graph.num_nodes());

  const auto res = lexnav::navigate(graph, static_cast<int32_t>(source),
                                    static_cast<int32_t>(target), config, seed);
  std::cout << "success=" << (res.success ? "true" : "false")
            << " links_traversed=" << res.links_traversed
            << " pages_visited=" << res.pages_visited << " budget_used=" << res.budget_used
            << " budget=" << config.budget << "\n";
  std::cout << "path=";
  for (size_t i = 0; i < res.path.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << res.path[i];
  }
  std::cout << "\n";
  return 0;
}

int run_experiment(const GeneratorFlags& gf, const std::string& sides, const std::string& alphas,
                   const std::string& pa_nodes, const std::string& strategy,
                   const std::string& cost_model, const std::string& revisit,
                   const std::string& budget, int trials, uint64_t seed,
                   const std::string& threads, const std::string& out_dir) {
  Manifest manifest("experiment", out_dir);
  manifest.seed(seed);
  manifest.param("kind", gf.kind);
  manifest.param("strategy", strategy);
  manifest.param("cost_model", cost_model);
  manifest.param("revisit", revisit);
  manifest.param("budget", budget);
  manifest.param("trials", trials);
  manifest.param("threads", threads);

  std::vector<lexnav::GeneratorSpec> sweep;
  if (gf.kind == "lattice" || gf.kind == "lexical") {
    manifest.param("sides", sides);
    manifest.param("alphas", alphas);
    manifest.param("dims", gf.dims);
    manifest.param("q", gf.q);
    if (gf.kind == "lexical") manifest.param("vocab_block", gf.vocab_block);
    for (int64_t side : parse_int_list(sides, "side")) {
      for (double alpha : parse_double_list(alphas, "alpha")) {
        lexnav::LatticeConfig config{gf.dims, static_cast<int>(side), alpha, gf.q,
                                     lexnav::derive_seed(seed, sweep.size(), UINT64_MAX)};
        if (gf.kind == "lexical")
          sweep.emplace_back(lexnav::LexicalGraphSpec{config, gf.vocab_block});
        else
          sweep.emplace_back(config);
      }
    }
  } else if (gf.kind == "pa") {
    manifest.param("nodes", pa_nodes);
    manifest.param("m", gf.m);
    manifest.param("gamma", gf.gamma);
    manifest.param("vocab", gf.vocab);
    for (int64_t n : parse_int_list(pa_nodes, "nodes"))
      sweep.emplace_back(lexnav::PaMixConfig{n, gf.m, gf.gamma, gf.vocab,
                                             lexnav::derive_seed(seed, sweep.size(), UINT64_MAX)});
  } else {
    throw std::runtime_error("kind must be lattice, lexical, or pa");
  }

  lexnav::ExperimentConfig config;
  config.strategy = parse_strategy(strategy);
  config.cost_model = parse_cost_model(cost_model);
  config.revisit = parse_revisit(revisit);
  config.budget = lexnav::BudgetRule::parse(budget);
  config.trials = trials;
  config.seed = seed;
  config.threads = parse_threads(threads);

  const auto rows = lexnav::scaling_experiment(sweep, config);
  manifest.emit("experiment.csv", lexnav::experiment_to_csv(rows));
  manifest.finish();
  return 0;
}

// Fig-1 style figure: log-log linkage probability curves with fitted tails,
// plus an alpha-vs-lambda inset. Consumes only the CSV outputs.
void plot_linkage(Manifest& manifest, const std::vector<std::string>& dist_paths,
                  const std::string& fits_path, const std::string& alphas_path) {
  lexnav::SvgPlot plot;
  plot.set_log_x(true);
  plot.set_log_y(true);
  plot.set_x_label("lexical distance rho");
  plot.set_y_label("Pr(rho | lambda)");
  plot.set_title("Linkage probability vs lexical distance");

  std::string dat;
  std::vector<std::pair<double, double>> lambda_with_max_center;  // (lambda, max center)
  double global_max_center = 0;
  for (size_t i = 0; i < dist_paths.size(); ++i) {
    manifest.input(dist_paths[i]);
    const auto dist =
        lexnav::distribution_from_csv(lexnav::read_file(dist_paths[i]), dist_paths[i]);
    const auto tok = lambda_token_from_filename(dist_paths[i]);
    lexnav::PlotSeries series;
    series.label = tok ? "lambda=" + *tok : fs::path(dist_paths[i]).stem().string();
    series.color = lexnav::plot_color(i);
    series.markers = true;
    dat += "# " + series.label + "\n";
    double max_center = 0;
    for (const auto& bin : dist.bins) {
      if (auto p = bin.probability()) {
        series.points.emplace_back(bin.center, *p);
        dat += lexnav::format_double(bin.center) + " " + lexnav::format_double(*p) + "\n";
        max_center = std::max(max_center, bin.center);
      }
    }
    dat += "\n\n";
    plot.add_series(std::move(series));
    const double lambda = tok ? lexnav::parse_double(*tok, "lambda") : -1;
    lambda_with_max_center.emplace_back(lambda, max_center);
    global_max_center = std::max(global_max_center, max_center);
  }

  if (!fits_path.empty()) {
    manifest.input(fits_path);
    const auto fits = lexnav::fits_from_csv(lexnav::read_file(fits_path), fits_path);
    for (const auto& row : fits) {
      // Match the fitted line to its curve by lambda for the color.
      size_t idx = 0;
      for (size_t i = 0; i < lambda_with_max_center.size(); ++i)
        if (std::abs(lambda_with_max_center[i].first - row.lambda) < 1e-12) idx = i;
      const double x0 = row.fit.tail_start;
      const double x1 = lambda_with_max_center.empty() ? x0 * 10
                                                       : std::max(x0 * 1.5, global_max_center);
      auto value = [&](double x) {
        return std::exp(row.fit.intercept) * std::pow(x, -row.fit.alpha);
      };
      lexnav::PlotSeries line;
      line.color = lexnav::plot_color(idx);
      line.dashed = true;
      line.points = {{x0, value(x0)}, {x1, value(x1)}};
      plot.add_series(std::move(line));
    }
  }

  std::string body = plot.render_group(0, 0, 760, 560);

  if (!alphas_path.empty() && !fits_path.empty()) {
    manifest.input(alphas_path);
    const auto fits = lexnav::fits_from_csv(lexnav::read_file(fits_path), fits_path);
    const auto reg_rows = lexnav::read_file(alphas_path);
    const auto reg = lexnav::split(reg_rows, '\n');
    if (reg.size() < 2 || !reg[0].starts_with("slope,intercept,pearson"))
      throw std::runtime_error(alphas_path + ": missing alpha_lambda CSV header");
    const auto f = lexnav::split(reg[1], ',');
    const double slope = lexnav::parse_double(f[0], "slope");
    const double intercept = lexnav::parse_double(f[1], "intercept");

    lexnav::SvgPlot inset;
    inset.set_x_label("lambda");
    inset.set_y_label("alpha");
    lexnav::PlotSeries points;
    points.line = false;
    points.markers = true;
    points.color = "#d62728";
    double lo = 0, hi = 0;
    std::string adat = "# lambda alpha\n";
    for (const auto& row : fits) {
      points.points.emplace_back(row.lambda, row.fit.alpha);
      adat += lexnav::format_double(row.lambda) + " " + lexnav::format_double(row.fit.alpha) + "\n";
      lo = std::min(lo, row.lambda);
      hi = std::max(hi, row.lambda);
    }
    inset.add_series(std::move(points));
    lexnav::PlotSeries line;
    line.color = "#333333";
    line.points = {{lo, intercept + slope * lo}, {hi, intercept + slope * hi}};
    inset.add_series(std::move(line));
    body += inset.render_group(450, 60, 280, 210);
    manifest.emit("alpha_lambda.dat", adat);
  }

  manifest.emit("linkage.svg", lexnav::svg_document(760, 560, body));
  manifest.emit("linkage.dat", dat);
}

// Experiment figure: cost vs clustering exponent, and cost vs N (log-log).
void plot_experiment(Manifest& manifest, const std::string& experiment_path) {
  manifest.input(experiment_path);
  const auto rows =
      lexnav::experiment_from_csv(lexnav::read_file(experiment_path), experiment_path);
  if (rows.empty()) throw std::runtime_error(experiment_path + ": no experiment rows");

  std::vector<int64_t> ns;
  std::vector<double> alphas;
  for (const auto& r : rows) {
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
    if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end()) alphas.push_back(r.alpha);
  }

  std::string dat;
  lexnav::SvgPlot by_alpha;
  by_alpha.set_title("Links traversed vs clustering exponent");
  by_alpha.set_x_label("alpha");
  by_alpha.set_y_label("median links traversed");
  for (size_t i = 0; i < ns.size(); ++i) {
    lexnav::PlotSeries s;
    s.label = "N=" + std::to_string(ns[i]);
    s.color = lexnav::plot_color(i);
    s.markers = true;
    dat += "# median links, N=" + std::to_string(ns[i]) + "\n";
    for (const auto& r : rows)
      if (r.n == ns[i]) {
        s.points.emplace_back(r.alpha, r.median_links);
        dat += lexnav::format_double(r.alpha) + " " + lexnav::format_double(r.median_links) + "\n";
      }
    dat += "\n\n";
    by_alpha.add_series(std::move(s));
  }

  lexnav::SvgPlot by_n;
  by_n.set_title("Pages visited vs N");
  by_n.set_log_x(true);
  by_n.set_log_y(true);
  by_n.set_x_label("N");
  by_n.set_y_label("median pages visited");
  for (size_t i = 0; i < alphas.size(); ++i) {
    lexnav::PlotSeries s;
    s.label = "alpha=" + lexnav::format_double(alphas[i]);
    s.color = lexnav::plot_color(i);
    s.markers = true;
    dat += "# median pages, alpha=" + lexnav::format_double(alphas[i]) + "\n";
    for (const auto& r : rows)
      if (r.alpha == alphas[i]) {
        s.points.emplace_back(static_cast<double>(r.n), r.median_pages);
        dat += std::to_string(r.n) + " " + lexnav::format_double(r.median_pages) + "\n";
      }
    dat += "\n\n";
    by_n.add_series(std::move(s));
  }

  std::string body = by_alpha.render_group(0, 0, 450, 420);
  body += by_n.render_group(450, 0, 450, 420);
  manifest.emit("experiment.svg", lexnav::svg_document(900, 420, body));
  manifest.emit("experiment.dat", dat);
}

int run_plot(const std::vector<std::string>& dists, const std::string& fits,
             const std::string& alphas, const std::string& experiment,
             const std::string& out_dir) {
  if (dists.empty() && experiment.empty())
    throw std::runtime_error("plot needs --dists and/or --experiment inputs");
  Manifest manifest("plot", out_dir);
  manifest.param("dists", dists);
  manifest.param("fits", fits);
  manifest.param("alphas", alphas);
  manifest.param("experiment", experiment);
  if (!dists.empty()) plot_linkage(manifest, dists, fits, alphas);
  if (!experiment.empty()) plot_experiment(manifest, experiment);
  manifest.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexnav: lexical Web topology measurements and decentralized navigation "
               "experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // ingest
  CorpusFlags ingest_cf;
  std::string ingest_out = "out";
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write a summary");
  ingest->add_option("--pages", ingest_cf.pages, "Pages file (url<TAB>title<TAB>text)")->required();
  ingest->add_option("--links", ingest_cf.links, "Links file (src_url<TAB>dst_url)")->required();
  ingest->add_option("--stopwords", ingest_cf.stopwords, "Stopword file, one term per line");
  ingest->add_option("--weighting", ingest_cf.weighting, "tfidf|rawtf");
  ingest->add_option("--out", ingest_out, "Output directory");

  // pairs
  CorpusFlags pairs_cf;
  int64_t pairs_count = 0;
  uint64_t pairs_seed = 0;
  std::string pairs_threads = "1", pairs_out = "out";
  auto* pairs = app.add_subcommand("pairs", "Sample page pairs with rho and overlap");
  pairs->add_option("--pages", pairs_cf.pages, "Pages file")->required();
  pairs->add_option("--links", pairs_cf.links, "Links file")->required();
  pairs->add_option("--stopwords", pairs_cf.stopwords, "Stopword file");
  pairs->add_option("--weighting", pairs_cf.weighting, "tfidf|rawtf");
  pairs->add_option("--count", pairs_count, "Pairs to sample")->required();
  pairs->add_option("--seed", pairs_seed, "RNG seed")->required();
  pairs->add_option("--threads", pairs_threads, "Worker threads (n|auto)");
  pairs->add_option("--out", pairs_out, "Output directory");

  // estimate
  std::string est_pairs, est_lambdas = "0", est_threads = "1", est_out = "out";
  int est_bins = 50;
  double est_rho_min = 0, est_rho_max = 0;
  auto* estimate = app.add_subcommand("estimate", "Bin pairs into linkage probability curves");
  estimate->add_option("--pairs", est_pairs, "pairs.csv input")->required();
  estimate->add_option("--lambdas", est_lambdas, "Comma-separated linkage thresholds");
  estimate->add_option("--bins", est_bins, "Number of log bins");
  estimate->add_option("--rho-min", est_rho_min, "Lower edge of the first bin (default: from data)");
  estimate->add_option("--rho-max", est_rho_max, "Upper edge of the last bin (default: from data)");
  estimate->add_option("--threads", est_threads, "Worker threads (n|auto)");
  estimate->add_option("--out", est_out, "Output directory");

  // fit
  std::vector<std::string> fit_dists;
  std::string fit_lambdas, fit_tail = "auto", fit_out = "out";
  auto* fit = app.add_subcommand("fit", "Fit power-law tails of distribution CSVs");
  fit->add_option("--dists", fit_dists, "Distribution CSV files")->required()->expected(-1);
  fit->add_option("--lambdas", fit_lambdas, "Lambda per file (default: from filenames)");
  fit->add_option("--tail-start", fit_tail, "Tail cut rho value, or 'auto'");
  fit->add_option("--out", fit_out, "Output directory");

  // alphas
  std::string alphas_fits, alphas_out = "out";
  auto* alphas = app.add_subcommand("alphas", "Regress alpha against lambda");
  alphas->add_option("--fits", alphas_fits, "fits.csv input")->required();
  alphas->add_option("--out", alphas_out, "Output directory");

  // generate
  GeneratorFlags gen_gf;
  uint64_t gen_seed = 0;
  std::string gen_out = "out";
  auto* generate = app.add_subcommand("generate", "Generate a navigable graph");
  generate->add_option("--kind", gen_gf.kind, "lattice|lexical|pa")->required();
  generate->add_option("--dims", gen_gf.dims, "Lattice dimensionality D");
  generate->add_option("--side", gen_gf.side, "Lattice side length");
  generate->add_option("--alpha", gen_gf.alpha, "Clustering exponent");
  generate->add_option("--q", gen_gf.q, "Long-range links per node");
  generate->add_option("--vocab-block", gen_gf.vocab_block, "Terms per lexical slot");
  generate->add_option("--nodes", gen_gf.pa_nodes, "Node count (pa)");
  generate->add_option("--m", gen_gf.m, "Out-links per new node (pa)");
  generate->add_option("--gamma", gen_gf.gamma, "Lexical-bias exponent (pa)");
  generate->add_option("--vocab", gen_gf.vocab, "Vocabulary size (pa)");
  generate->add_option("--seed", gen_seed, "RNG seed")->required();
  generate->add_option("--out", gen_out, "Output directory");

  // navigate
  std::string nav_graph, nav_strategy = "lexical", nav_cost = "free", nav_budget = "auto",
              nav_revisit = "allow";
  int64_t nav_source = 0, nav_target = 0;
  uint64_t nav_seed = 0;
  auto* nav = app.add_subcommand("navigate", "Run one greedy navigation on a graph file");
  nav->add_option("--graph", nav_graph, "Graph file")->required();
  nav->add_option("--source", nav_source, "Source node id")->required();
  nav->add_option("--target", nav_target, "Target node id")->required();
  nav->add_option("--strategy", nav_strategy, "lexical|degree");
  nav->add_option("--cost-model", nav_cost, "free|visit");
  nav->add_option("--budget", nav_budget, "Page budget: auto|<int>|<f>xN|<f>xsqrtN");
  nav->add_option("--revisit", nav_revisit, "allow|tabu");
  nav->add_option("--seed", nav_seed, "RNG seed (reserved; greedy runs are deterministic)");

  // experiment
  GeneratorFlags exp_gf;
  std::string exp_sides = "16,32,64", exp_alphas = "2", exp_nodes = "1000";
  std::string exp_strategy = "lexical", exp_cost = "free", exp_revisit = "allow",
              exp_budget = "auto", exp_threads = "1", exp_out = "out";
  int exp_trials = 100;
  uint64_t exp_seed = 0;
  auto* experiment = app.add_subcommand("experiment", "Navigation scaling sweep");
  experiment->add_option("--kind", exp_gf.kind, "lattice|lexical|pa")->required();
  experiment->add_option("--dims", exp_gf.dims, "Lattice dimensionality D");
  experiment->add_option("--sides", exp_sides, "Comma-separated lattice sides");
  experiment->add_option("--alphas", exp_alphas, "Comma-separated clustering exponents");
  experiment->add_option("--q", exp_gf.q, "Long-range links per node");
  experiment->add_option("--vocab-block", exp_gf.vocab_block, "Terms per lexical slot");
  experiment->add_option("--nodes", exp_nodes, "Comma-separated node counts (pa)");
  experiment->add_option("--m", exp_gf.m, "Out-links per new node (pa)");
  experiment->add_option("--gamma", exp_gf.gamma, "Lexical-bias exponent (pa)");
  experiment->add_option("--vocab", exp_gf.vocab, "Vocabulary size (pa)");
  experiment->add_option("--strategy", exp_strategy, "lexical|degree");
  experiment->add_option("--cost-model", exp_cost, "free|visit");
  experiment->add_option("--revisit", exp_revisit, "allow|tabu");
  experiment->add_option("--budget", exp_budget, "Page budget rule");
  experiment->add_option("--trials", exp_trials, "Trials per sweep cell");
  experiment->add_option("--seed", exp_seed, "RNG seed")->required();
  experiment->add_option("--threads", exp_threads, "Worker threads (n|auto)");
  experiment->add_option("--out", exp_out, "Output directory");

  // plot
  std::vector<std::string> plot_dists;
  std::string plot_fits, plot_alphas, plot_exp, plot_out = "out";
  auto* plot = app.add_subcommand("plot", "Render SVG figures from CSV outputs");
  plot->add_option("--dists", plot_dists, "Distribution CSVs")->expected(-1);
  plot->add_option("--fits", plot_fits, "fits.csv for tail overlays");
  plot->add_option("--alphas", plot_alphas, "alpha_lambda.csv for the inset");
  plot->add_option("--experiment", plot_exp, "experiment.csv");
  plot->add_option("--out", plot_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << e.what() << "\n\n" << app.help();
      return 2;
    }
    return app.exit(e);
  }

  try {
    if (*ingest) return run_ingest(ingest_cf, ingest_out);
    if (*pairs) return run_pairs(pairs_cf, pairs_count, pairs_seed, pairs_threads, pairs_out);
    if (*estimate)
      return run_estimate(est_pairs, est_lambdas, est_bins, est_rho_min, est_rho_max, est_threads,
                          est_out);
    if (*fit) return run_fit(fit_dists, fit_lambdas, fit_tail, fit_out);
    if (*alphas) return run_alphas(alphas_fits, alphas_out);
    if (*generate) return run_generate(gen_gf, gen_seed, gen_out);
    if (*nav)
      return run_navigate(nav_graph, nav_source, nav_target, nav_strategy, nav_cost, nav_budget,
                          nav_revisit, nav_seed);
    if (*experiment)
      return run_experiment(exp_gf, exp_sides, exp_alphas, exp_nodes, exp_strategy, exp_cost,
                            exp_revisit, exp_budget, exp_trials, exp_seed, exp_threads, exp_out);
    if (*plot) return run_plot(plot_dists, plot_fits, plot_alphas, plot_exp, plot_out);
  } catch (const std::exception& e) {
    log_at(LogLevel::Error, e.what());
    return 1;
  }
  return 0;
}
