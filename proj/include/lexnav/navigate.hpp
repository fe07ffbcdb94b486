#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lexnav/graphgen.hpp"

namespace lexnav {

enum class Strategy { LexicalGreedy, DegreeGreedy };
enum class CostModel { FreeCue, VisitToEvaluate };
enum class RevisitPolicy { Allow, Tabu };

std::string_view strategy_name(Strategy s);
Strategy strategy_from_name(std::string_view name);
std::string_view cost_model_name(CostModel c);
CostModel cost_model_from_name(std::string_view name);

struct StrategyConfig {
  Strategy strategy = Strategy::LexicalGreedy;
  CostModel cost_model = CostModel::FreeCue;
  int64_t budget = 0;  // max pages visited, >= 1
  RevisitPolicy revisit = RevisitPolicy::Allow;
};

// 50 * sqrt(N), rounded up.
int64_t default_budget(int64_t nodes);

struct NavigationResult {
  int32_t source = -1;
  int32_t target = -1;
  bool success = false;
  int64_t links_traversed = 0;  // moves made
  int64_t pages_visited = 0;    // pages charged under the cost model
  int64_t budget_used = 0;
  std::vector<int32_t> path;    // nodes in visit order, starts at source
};

// Greedy walk: every step evaluates all out-neighbors, jumps straight to the
// target when it is one of them, otherwise moves to the best-scoring neighbor
// (lowest content/coordinate distance to target, or highest total degree),
// ties broken by lowest node id. The walk always moves; it stops on arrival
// or when the page budget is exhausted. FreeCue charges one page per move;
// VisitToEvaluate additionally charges one page per never-before-fetched
// neighbor it evaluates. The tabu policy excludes neighbors already on the
// path unless all of them are.
NavigationResult navigate(const NavGraph& graph, int32_t source, int32_t target,
                          const StrategyConfig& config, uint64_t seed = 0);

// Per-cell page budget for sweeps over graphs of different sizes.
struct BudgetRule {
  enum class Kind { Fixed, SqrtN, LinearN };
  Kind kind = Kind::SqrtN;
  double factor = 50.0;

  int64_t resolve(int64_t nodes) const;
  std::string to_string() const;
  // "auto" | "<int>" | "<f>xN" | "<f>xsqrtN"
  static BudgetRule parse(std::string_view spec);
};

struct LexicalGraphSpec {
  LatticeConfig lattice;
  int vocab_block = 2;
};

using GeneratorSpec = std::variant<LatticeConfig, LexicalGraphSpec, PaMixConfig>;

NavGraph generate_graph(const GeneratorSpec& spec);

struct ExperimentConfig {
  Strategy strategy = Strategy::LexicalGreedy;
  CostModel cost_model = CostModel::FreeCue;
  RevisitPolicy revisit = RevisitPolicy::Allow;
  BudgetRule budget;
  int trials = 100;
  uint64_t seed = 0;
  int threads = 1;
};

struct ExperimentRow {
  int64_t n = 0;
  double alpha = 0;  // gamma for PaMix cells
  Strategy strategy = Strategy::LexicalGreedy;
  CostModel cost_model = CostModel::FreeCue;
  int trials = 0;
  double success_rate = 0;
  double median_pages = 0;   // median l
  double median_links = 0;   // median l'
  double p90_pages = 0;
};

// One row per sweep cell: generates the graph, runs `trials` navigations
// between uniform random distinct source/target pairs, and aggregates.
// Per-trial streams derive from (seed, cell, trial), so results do not
// depend on the thread schedule.
std::vector<ExperimentRow> scaling_experiment(std::span<const GeneratorSpec> sweep,
                                              const ExperimentConfig& config);

enum class ScalingModel { Polylog, Power };

struct ScalingFit {
  ScalingModel model = ScalingModel::Power;
  double exponent = 0;  // beta for Power, the polylog power for Polylog
  double r_squared = 0;
};

// Power: OLS of ln(value) on ln(N). Polylog: OLS of ln(value) on ln(ln N).
// Needs >= 4 points with distinct N and positive values.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points, ScalingModel model);

// CSV `N,alpha,strategy,cost_model,trials,success_rate,median_l,median_lprime,p90_l`.
std::string experiment_to_csv(std::span<const ExperimentRow> rows);
std::vector<ExperimentRow> experiment_from_csv(std::string_view csv, std::string_view context);

}  // namespace lexnav
