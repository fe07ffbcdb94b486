#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexnav/corpus.hpp"

namespace lexnav {

// Logarithmic binning of the rho axis: bins+1 edges in geometric progression.
struct BinningConfig {
  int bins = 50;
  double rho_min = 0;  // lower edge of the first bin, must be > 0
  double rho_max = 0;  // upper edge of the last bin (exclusive)

  void validate() const;
  std::vector<double> edges() const;
};

struct Bin {
  double center = 0;  // geometric mean of the bin edges
  int64_t total = 0;
  int64_t linked = 0;

  bool is_empty() const { return total == 0; }
  // linked/total; nullopt for empty bins.
  std::optional<double> probability() const;
};

// Pairs whose rho falls outside the binned range. Infinite rho lands in the
// `infinite` bucket.
struct OverflowCounts {
  int64_t below_total = 0, below_linked = 0;
  int64_t above_total = 0, above_linked = 0;
  int64_t infinite_total = 0, infinite_linked = 0;

  int64_t total() const { return below_total + above_total + infinite_total; }
};

struct BinnedDistribution {
  double lambda = 0;
  std::vector<double> edges;  // bins+1; empty when loaded from CSV
  std::vector<Bin> bins;
  OverflowCounts overflow;

  int64_t input_size() const;
};

// Per bin: probability that overlap > lambda among pairs in the bin.
// Throws on empty input or lambda outside [0,1).
BinnedDistribution estimate_linkage_probability(std::span<const PairRecord> pairs, double lambda,
                                                const BinningConfig& config);

struct PowerLawFit {
  double alpha = 0;       // decay exponent, positive for decaying tails
  double intercept = 0;   // OLS intercept in log-log space
  double r_squared = 0;
  double tail_start = 0;  // rho value where the fit window begins
  int points_used = 0;
};

// OLS of ln(probability) on ln(rho center) over non-empty bins with
// probability > 0 and center >= tail_start. With no explicit tail_start the
// cut is chosen among bin edges to maximize r_squared, subject to at least
// 5 points (all qualifying points when fewer than 5 exist at every cut).
// Throws when fewer than 3 bins qualify.
PowerLawFit fit_power_law_tail(const BinnedDistribution& dist,
                               std::optional<double> tail_start = std::nullopt);

struct AlphaLambdaFit {
  double slope = 0;
  double intercept = 0;
  double pearson = 0;
  int points = 0;
};

// OLS of alpha on lambda; needs >= 2 points with distinct lambda.
AlphaLambdaFit alpha_lambda_regression(std::span<const std::pair<double, double>> points);

// CSV `rho_center,total,linked,probability`; empty probability for empty bins.
std::string distribution_to_csv(const BinnedDistribution& dist);
BinnedDistribution distribution_from_csv(std::string_view csv, std::string_view context);

struct FitRow {
  double lambda = 0;
  PowerLawFit fit;
};

// CSV `lambda,alpha,intercept,r_squared,tail_start,points_used`.
std::string fits_to_csv(std::span<const FitRow> rows);
std::vector<FitRow> fits_from_csv(std::string_view csv, std::string_view context);

}  // namespace lexnav
