#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "holder/exponent.hpp"
#include "holder/inequality.hpp"
#include "holder/positive_tuple.hpp"

namespace holder::experiments {

/// a = (1/p, ..., 1/p, 1) with n-1 copies of 1/p, b = (1, ..., 1).
/// The ratio sum is (n-1)/p + 1 while both functionals tend to 1 as p grows.
PairedTuples<double> sharpness_instance(int n, double p);

struct SharpnessRow {
  double p;
  InequalityReport<double> report;
};

/// One row per grid point. The grid must be positive and strictly ascending.
std::vector<SharpnessRow> sharpness_table(int n, const std::vector<double>& p_grid,
                                          double relative_band = kDefaultRelativeBand);

enum class FamilyVariant { Convergent, Divergent };

std::string_view to_string(FamilyVariant v) noexcept;
FamilyVariant parse_variant(std::string_view text);

/// CONVERGENT: a_1..a_{n-1} = 10^-2K, b_1..b_{n-1} = 10^-K, a_n = b_n = 1.
/// DIVERGENT swaps the roles of a and b on the first n-1 entries.
PairedTuples<double> example_family(int n, int K, FamilyVariant variant);

/// (n-1) * 10^-K + 1 for CONVERGENT, (n-1) * 10^K + 1 for DIVERGENT.
double example_family_closed_form_rhs(int n, int K, FamilyVariant variant);

struct FamilyRow {
  int K;
  InequalityReport<double> report;
};

std::vector<FamilyRow> example_family_table(int n, FamilyVariant variant, int K_first,
                                            int K_last, Exponent p,
                                            double relative_band = kDefaultRelativeBand);

/// Random paired tuples with n uniform in [n_min, n_max] and entries
/// log-uniform in [lo, hi]. Deterministic for a given seed.
class RandomPairGenerator {
 public:
  struct Config {
    std::size_t n_min = 2;
    std::size_t n_max = 10;
    double lo = 1e-6;
    double hi = 1e6;
  };

  explicit RandomPairGenerator(std::uint64_t seed);
  RandomPairGenerator(std::uint64_t seed, Config config);

  PairedTuples<double> next();
  PositiveTuple<double> next_tuple(std::size_t n);
  double next_value();
  std::size_t next_size();
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  Config config_;
  std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Campaigns check the merge identity only for |p| at or above this.
inline constexpr double kMergeMinExponent = 0.5;

/// The fifteen-point grid used by the random campaign.
std::vector<Exponent> default_campaign_grid();

struct CampaignConfig {
  std::size_t cases = 10000;
  std::uint64_t seed = kDefaultSeed;
  RandomPairGenerator::Config sampling{};
  std::vector<Exponent> grid = default_campaign_grid();
  double relative_band = kDefaultRelativeBand;
};

struct CampaignResult {
  std::size_t cases = 0;
  std::size_t checks = 0;
  /// Indexed by Verdict.
  std::array<std::size_t, 4> verdict_counts{};
  /// Checks where the sorted-pairing minimum of the ratio sum, used as rhs,
  /// was VIOLATED.
  std::size_t worst_case_violations = 0;
  /// Cases where gm <= am <= sum failed.
  std::size_t chain_failures = 0;
  /// Largest merge-identity residual over finite grid points.
  double max_merge_residual = 0.0;

  std::size_t count(Verdict v) const { return verdict_counts[static_cast<std::size_t>(v)]; }
  bool any_violation() const {
    return count(Verdict::Violated) > 0 || worst_case_violations > 0 || chain_failures > 0;
  }
};

/// Random property campaign over the main inequality, its worst-case
/// arrangement, the AM-GM chain and the merge identity.
CampaignResult run_campaign(const CampaignConfig& config);

}  // namespace holder::experiments
