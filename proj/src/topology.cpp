#include "lexnav/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lexnav/stats.hpp"
#include "lexnav/util.hpp"

namespace lexnav {

void BinningConfig::validate() const {
  if (bins < 1) throw std::invalid_argument("bin count must be >= 1");
  if (!(rho_min > 0)) throw std::invalid_argument("rho_min edge must be > 0");
  if (!(rho_max > rho_min)) throw std::invalid_argument("rho_max edge must exceed rho_min");
  if (std::isinf(rho_max)) throw std::invalid_argument("rho_max edge must be finite");
}

std::vector<double> BinningConfig::edges() const {
  validate();
  std::vector<double> e(static_cast<size_t>(bins) + 1);
  const double ratio = rho_max / rho_min;
  for (int i = 1; i < bins; ++i)
    e[i] = rho_min * std::pow(ratio, static_cast<double>(i) / bins);
  e[0] = rho_min;  // endpoints pinned exactly
  e[bins] = rho_max;
  return e;
}

std::optional<double> Bin::probability() const {
  if (total == 0) return std::nullopt;
  return static_cast<double>(linked) / static_cast<double>(total);
}

int64_t BinnedDistribution::input_size() const {
  int64_t n = overflow.total();
  for (const auto& b : bins) n += b.total;
  return n;
}

BinnedDistribution estimate_linkage_probability(std::span<const PairRecord> pairs, double lambda,
                                                const BinningConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("cannot estimate from an empty pair set");
  if (!(lambda >= 0 && lambda < 1)) throw std::invalid_argument("lambda must be in [0,1)");
  config.validate();

  BinnedDistribution dist;
  dist.lambda = lambda;
  dist.edges = config.edges();
  dist.bins.resize(config.bins);
  for (int i = 0; i < config.bins; ++i)
    dist.bins[i].center = std::sqrt(dist.edges[i] * dist.edges[i + 1]);

  const double log_min = std::log(config.rho_min);
  const double log_span = std::log(config.rho_max) - log_min;
  for (const auto& p : pairs) {
    const bool linked = p.overlap > lambda;
    if (p.rho.is_infinite()) {
      ++dist.overflow.infinite_total;
      dist.overflow.infinite_linked += linked;
      continue;
    }
    const double rho = p.rho.value;
    if (rho < config.rho_min) {
      ++dist.overflow.below_total;
      dist.overflow.below_linked += linked;
      continue;
    }
    if (rho >= config.rho_max) {
      ++dist.overflow.above_total;
      dist.overflow.above_linked += linked;
      continue;
    }
    // Log-index guess, then fix up so assignment is exact on the edges.
    int idx = static_cast<int>((std::log(rho) - log_min) / log_span * config.bins);
    idx = std::clamp(idx, 0, config.bins - 1);
    while (idx > 0 && rho < dist.edges[idx]) --idx;
    while (idx < config.bins - 1 && rho >= dist.edges[idx + 1]) ++idx;
    ++dist.bins[idx].total;
    dist.bins[idx].linked += linked;
  }
  return dist;
}

namespace {

struct TailPoint {
  double center;
  double log_center;
  double log_prob;
};

PowerLawFit fit_from_points(std::span<const TailPoint> pts, double tail_start) {
  std::vector<double> x, y;
  x.reserve(pts.size());
  y.reserve(pts.size());
  for (const auto& p : pts) {
    x.push_back(p.log_center);
    y.push_back(p.log_prob);
  }
  const LinearFit lf = simple_linear_fit(x, y);
  PowerLawFit fit;
  fit.alpha = -lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.tail_start = tail_start;
  fit.points_used = static_cast<int>(pts.size());
  return fit;
}

}  // namespace

PowerLawFit fit_power_law_tail(const BinnedDistribution& dist, std::optional<double> tail_start) {
  // Qualifying bins: non-empty with probability > 0, in center order.
  std::vector<TailPoint> points;
  std::vector<double> cut_candidates;  // lower edge (or center) per qualifying bin
  const bool have_edges = dist.edges.size() == dist.bins.size() + 1;
  for (size_t i = 0; i < dist.bins.size(); ++i) {
    const auto p = dist.bins[i].probability();
    if (!p || *p <= 0) continue;
    points.push_back({dist.bins[i].center, std::log(dist.bins[i].center), std::log(*p)});
    cut_candidates.push_back(have_edges ? dist.edges[i] : dist.bins[i].center);
  }

  if (tail_start) {
    std::vector<TailPoint> tail;
    for (const auto& p : points)
      if (p.center >= *tail_start) tail.push_back(p);
    if (tail.size() < 3)
      throw std::invalid_argument("power-law fit needs >= 3 qualifying bins, got " +
                                  std::to_string(tail.size()));
    return fit_from_points(tail, *tail_start);
  }

  if (points.size() < 3)
    throw std::invalid_argument("power-law fit needs >= 3 qualifying bins, got " +
                                std::to_string(points.size()));

  // Auto cut: best r_squared over suffixes with at least 5 points; if no
  // suffix has 5 qualifying points, use all of them.
  constexpr size_t kMinPoints = 5;
  if (points.size() < kMinPoints) return fit_from_points(points, cut_candidates.front());

  PowerLawFit best;
  bool have_best = false;
  for (size_t start = 0; start + kMinPoints <= points.size(); ++start) {
    auto fit = fit_from_points(std::span(points).subspan(start), cut_candidates[start]);
    if (!have_best || fit.r_squared > best.r_squared ||
        (fit.r_squared == best.r_squared && fit.points_used > best.points_used)) {
      best = fit;
      have_best = true;
    }
  }
  return best;
}

AlphaLambdaFit alpha_lambda_regression(std::span<const std::pair<double, double>> points) {
  std::vector<double> x, y;
  for (const auto& [lambda, alpha] : points) {
    x.push_back(lambda);
    y.push_back(alpha);
  }
  const size_t distinct = [&] {
    std::vector<double> s = x;
    std::sort(s.begin(), s.end());
    return static_cast<size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }();
  if (distinct < 2)
    throw std::invalid_argument("alpha(lambda) regression needs >= 2 distinct lambda values");

  const LinearFit lf = simple_linear_fit(x, y);
  return AlphaLambdaFit{lf.slope, lf.intercept, lf.pearson, static_cast<int>(points.size())};
}

std::string distribution_to_csv(const BinnedDistribution& dist) {
  std::string out = "rho_center,total,linked,probability\n";
  for (const auto& b : dist.bins) {
    out += format_double(b.center);
    out += ',';
    out += std::to_string(b.total);
    out += ',';
    out += std::to_string(b.linked);
    out += ',';
    if (auto p = b.probability()) out += format_double(*p);
    out += '\n';
  }
  return out;
}

BinnedDistribution distribution_from_csv(std::string_view csv, std::string_view context) {
  auto lines = split(csv, '\n');
  if (lines.empty() || lines[0] != "rho_center,total,linked,probability")
    throw std::runtime_error(std::string(context) + ": missing distribution CSV header");
  BinnedDistribution dist;
  dist.lambda = std::nan("");
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 4)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": expected 4 fields");
    Bin b;
    b.center = parse_double(f[0], "rho_center");
    b.total = parse_int(f[1], "total");
    b.linked = parse_int(f[2], "linked");
    if (b.linked < 0 || b.linked > b.total)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": linked count exceeds total");
    if (f[3].empty()) {
      if (b.total != 0)
        throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                                 ": non-empty bin without probability");
    }
    dist.bins.push_back(b);
  }
  return dist;
}

std::string fits_to_csv(std::span<const FitRow> rows) {
  std::string out = "lambda,alpha,intercept,r_squared,tail_start,points_used\n";
  for (const auto& r : rows) {
    out += format_double(r.lambda);
    out += ',';
    out += format_double(r.fit.alpha);
    out += ',';
    out += format_double(r.fit.intercept);
    out += ',';
    out += format_double(r.fit.r_squared);
    out += ',';
    out += format_double(r.fit.tail_start);
    out += ',';
    out += std::to_string(r.fit.points_used);
    out += '\n';
  }
  return out;
}

std::vector<FitRow> fits_from_csv(std::string_view csv, std::string_view context) {
  auto lines = split(csv, '\n');
  if (lines.empty() || lines[0] != "lambda,alpha,intercept,r_squared,tail_start,points_used")
    throw std::runtime_error(std::string(context) + ": missing fit CSV header");
  std::vector<FitRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto f = split(lines[i], ',');
    if (f.size() != 6)
      throw std::runtime_error(std::string(context) + ": line " + std::to_string(i + 1) +
                               ": expected 6 fields");
    FitRow r;
    r.lambda = parse_double(f[0], "lambda");
    r.fit.alpha = parse_double(f[1], "alpha");
    r.fit.intercept = parse_double(f[2], "intercept");
    r.fit.r_squared = parse_double(f[3], "r_squared");
    r.fit.tail_start = parse_double(f[4], "tail_start");
    r.fit.points_used = static_cast<int>(parse_int(f[5], "points_used"));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lexnav
