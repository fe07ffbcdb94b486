#include "lexnav/navigate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "lexnav/parallel.hpp"
#include "lexnav/rng.hpp"
#include "lexnav/stats.hpp"
#include "lexnav/util.hpp"

namespace lexnav {

std::string_view strategy_name(Strategy s) {
  return s == Strategy::LexicalGreedy ? "LEXICAL_GREEDY" : "DEGREE_GREEDY";
}

Strategy strategy_from_name(std::string_view name) {
  if (name == "LEXICAL_GREEDY") return Strategy::LexicalGreedy;
  if (name == "DEGREE_GREEDY") return Strategy::DegreeGreedy;
  throw std::runtime_error("unknown strategy: " + std::string(name));
}

std::string_view cost_model_name(CostModel c) {
  return c == CostModel::FreeCue ? "FREE_CUE" : "VISIT_TO_EVALUATE";
}

CostModel cost_model_from_name(std::string_view name) {
  if (name == "FREE_CUE") return CostModel::FreeCue;
  if (name == "VISIT_TO_EVALUATE") return CostModel::VisitToEvaluate;
  throw std::runtime_error("unknown cost model: " + std::string(name));
}

int64_t default_budget(int64_t nodes) {
  return static_cast<int64_t>(std::ceil(50.0 * std::sqrt(static_cast<double>(nodes))));
}

namespace {

// Lower score wins. Lexical greedy scores by distance to the target: torus
// Manhattan on plain lattices (no vectors there), content distance
// everywhere else; infinities sort after all finite distances. Degree greedy
// scores by negated total degree.
double neighbor_score(const NavGraph& g, Strategy strategy, int32_t node, int32_t target) {
  if (strategy == Strategy::DegreeGreedy) return -static_cast<double>(g.degree(node));
  if (g.kind == GraphKind::Lattice)
    return static_cast<double>(g.lattice_distance(node, target));
  return lexical_distance(g.vectors[node], g.vectors[target]).value;
}

}  // namespace

NavigationResult navigate(const NavGraph& graph, int32_t source, int32_t target,
                          const StrategyConfig& config, uint64_t seed) {
  (void)seed;  // greedy strategies are deterministic; kept for interface stability
  graph.check_node(source);
  graph.check_node(target);
  if (source == target) throw std::invalid_argument("source and target must differ");
  if (config.budget < 1) throw std::invalid_argument("budget must be >= 1");

  NavigationResult res;
  res.source = source;
  res.target = target;
  res.path.push_back(source);

  std::unordered_set<int32_t> fetched{source};
  std::unordered_set<int32_t> on_path{source};
  int64_t pages = 1;
  int32_t current = source;

  while (true) {
    if (current == target) {
      res.success = true;
      break;
    }
    if (pages >= config.budget) break;
    const auto& neighbors = graph.out[current];
    if (neighbors.empty()) break;

    if (config.cost_model == CostModel::VisitToEvaluate) {
      for (int32_t nb : neighbors)
        if (fetched.insert(nb).second) ++pages;
    }

    int32_t next = -1;
    if (std::find(neighbors.begin(), neighbors.end(), target) != neighbors.end()) {
      next = target;
    } else {
      const bool tabu = config.revisit == RevisitPolicy::Tabu;
      bool all_visited = true;
      if (tabu) {
        for (int32_t nb : neighbors)
          if (!on_path.contains(nb)) {
            all_visited = false;
            break;
          }
      }
      double best_score = 0;
      for (int32_t nb : neighbors) {
        if (tabu && !all_visited && on_path.contains(nb)) continue;
        const double score = neighbor_score(graph, config.strategy, nb, target);
        if (next < 0 || score < best_score || (score == best_score && nb < next)) {
          next = nb;
          best_score = score;
        }
      }
    }

    ++res.links_traversed;
    ++pages;  // one page per move under both cost models
    fetched.insert(next);
    on_path.insert(next);
    res.path.push_back(next);
    current = next;
  }

  res.pages_visited = pages;
  res.budget_used = pages;
  return res;
}

int64_t BudgetRule::resolve(int64_t nodes) const {
  double v = 0;
  switch (kind) {
    case Kind::Fixed: v = factor; break;
    case Kind::SqrtN: v = factor * std::sqrt(static_cast<double>(nodes)); break;
    case Kind::LinearN: v = factor * static_cast<double>(nodes); break;
  }
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(v)));
}

std::string BudgetRule::to_string() const {
  switch (kind) {
    case Kind::Fixed: return format_double(factor);
    case Kind::SqrtN: return format_double(factor) + "xsqrtN";
    case Kind::LinearN: return format_double(factor) + "xN";
  }
  return {};
}

BudgetRule BudgetRule::parse(std::string_view spec) {
  if (spec == "auto") return BudgetRule{Kind::SqrtN, 50.0};
  auto make = [&](Kind kind, std::string_view num) {
    const double f = parse_double(num, "budget factor");
    if (!(f > 0)) throw std::runtime_error("budget factor must be > 0");
    return BudgetRule{kind, f};
  };
  if (spec.ends_with("xsqrtN")) return make(Kind::SqrtN, spec.substr(0, spec.size() - 6));
  if (spec.ends_with("xN")) return make(Kind::LinearN, spec.substr(0, spec.size() - 2));
  return make(Kind::Fixed, spec);
}

NavGraph generate_graph(const GeneratorSpec& spec) {
  if (const auto* lattice = std::get_if<LatticeConfig>(&spec))
    return generate_kleinberg_lattice(*lattice);
  if (const auto* lexical = std::get_if<LexicalGraphSpec>(&spec))
    return generate_lexical_graph(lexical->lattice, lexical->vocab_block);
  return generate_pa_mixture(std::get<PaMixConfig>(spec));
}

std::vector<ExperimentRow> scaling_experiment(std::span<const GeneratorSpec> sweep,
                                              const ExperimentConfig& config) {
  if (sweep.empty()) throw std::invalid_argument("empty sweep");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");

  std::vector<ExperimentRow> rows;
  for (size_t cell = 0; cell < sweep.size(); ++cell) {
    const NavGraph graph = generate_graph(sweep[cell]);
    const int64_t n = graph.num_nodes();
    if (n < 2) throw std::invalid_argument("sweep cell graph has fewer than 2 nodes");

    StrategyConfig scfg;
    scfg.strategy = config.strategy;
    scfg.cost_model = config.cost_model;
    scfg.revisit = config.revisit;
    scfg.budget = config.budget.resolve(n);

    std::vector<NavigationResult> results(config.trials);
    parallel_for(config.trials, config.threads, [&](int64_t trial) {
      Rng rng(derive_seed(config.seed, cell, static_cast<uint64_t>(trial)));
      const auto src = static_cast<int32_t>(rng.below(static_cast<uint64_t>(n)));
      auto dst = static_cast<int32_t>(rng.below(static_cast<uint64_t>(n) - 1));
      if (dst >= src) ++dst;
      results[trial] = navigate(graph, src, dst, scfg);
    });

    ExperimentRow row;
    row.n = n;
    row.alpha = graph.alpha;
    row.strategy = config.strategy;
    row.cost_model = config.cost_model;
    row.trials = config.trials;
    std::vector<double> pages, links;
    int successes = 0;
    for (const auto& r : results) {
      pages.push_back(static_cast<double>(r.pages_visited));
      links.push_back(static_cast<double>(r.links_traversed));
      successes += r.success;
    }
    row.success_rate = static_cast<double>(successes) / config.trials;
    row.median_pages = median(pages);
    row.median_links = median(links);
    row.p90_pages = percentile(pages, 90);
    rows.push_back(row);
  }
  return rows;
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points, ScalingModel model) {
  if (points.size() < 4) throw std::invalid_argument("scaling fit needs >= 4 points");
  std::vector<double> x, y;
  for (const auto& [n, value] : points) {
    if (!(value > 0)) throw std::invalid_argument("scaling fit needs positive values");
    if (model == ScalingModel::Polylog) {
      if (!(n > std::exp(1.0))) throw std::invalid_argument("polylog fit needs N > e");
      x.push_back(std::log(std::log(n)));
    } else {
      if (!(n > 0)) throw std::invalid_argument("power fit needs N > 0");
      x.push_back(std::log(n));
    }
    y.push_back(std::log(value));
  }
  {
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("scaling fit needs distinct N values");
  }
  const LinearFit lf = simple_linear_fit(x, y);
  return ScalingFit{model, lf.slope, lf.r_squared};
}

std::string experiment_to_csv(std::span<const ExperimentRow> rows) {
  std::string out =
      "N,alpha,strategy,cost_model,trials,success_rate,median_l,median_lprime,p90_l\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.alpha);
    out += ',';
    out += strategy_name(r.strategy);
    out += ',';
    out += cost_model_name(r.cost_model);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += format_double(r.success_rate);
    out += ',';
    out += format_double(r.median_pages);
    out += ',';
    out += format_double(r.median_links);
    out += ',';
    out += format_double(r.p90_pages);
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRow> experiment_from_csv(std::string_view csv, std::string_view context) {
  auto lines = split(csv, '\n');
  if (lines.empty() ||
      lines[0] != "N,alpha,strategy,cost_model,trials,success_rate,median_l,median_lprime,p90_l")
    throw std::runtime_error(std::string(context) + ": missing experiment CSV header");
  std::vector<ExperimentRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 9)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": expected 9 fields");
    ExperimentRow r;
    r.n = parse_int(f[0], "N");
    r.alpha = parse_double(f[1], "alpha");
    r.strategy = strategy_from_name(f[2]);
    r.cost_model = cost_model_from_name(f[3]);
    r.trials = static_cast<int>(parse_int(f[4], "trials"));
    r.success_rate = parse_double(f[5], "success_rate");
    r.median_pages = parse_double(f[6], "median_l");
    r.median_links = parse_double(f[7], "median_lprime");
    r.p90_pages = parse_double(f[8], "p90_l");
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lexnav
