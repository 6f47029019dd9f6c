#include "holder/experiments.hpp"

#include <cmath>
#include <string>

#include "holder/errors.hpp"
#include "holder/functionals.hpp"
#include "holder/rearrangement.hpp"

namespace holder::experiments {

namespace {

void require_n(int n) {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
}

PairedTuples<double> tuples_from(const ArrayX<double>& a, const ArrayX<double>& b) {
  return PairedTuples<double>(PositiveTuple<double>(a), PositiveTuple<double>(b));
}

}  // namespace

PairedTuples<double> sharpness_instance(int n, double p) {
  require_n(n);
  if (!(p > 0) || !std::isfinite(p)) throw DomainError("sharpness needs a finite p > 0");
  ArrayX<double> a = ArrayX<double>::Constant(n, 1.0 / p);
  a[n - 1] = 1.0;
  return tuples_from(a, ArrayX<double>::Ones(n));
}

std::vector<SharpnessRow> sharpness_table(int n, const std::vector<double>& p_grid,
                                          double relative_band) {
  require_n(n);
  if (p_grid.empty()) throw DomainError("sharpness grid must be nonempty");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] > 0)) throw DomainError("sharpness grid must be positive");
    if (i > 0 && !(p_grid[i] > p_grid[i - 1])) {
      throw DomainError("sharpness grid must be strictly ascending");
    }
  }
  std::vector<SharpnessRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    rows.push_back({p, check_main_inequality(sharpness_instance(n, p), Exponent::finite(p),
                                             relative_band)});
  }
  return rows;
}

std::string_view to_string(FamilyVariant v) noexcept {
  return v == FamilyVariant::Convergent ? "convergent" : "divergent";
}

FamilyVariant parse_variant(std::string_view text) {
  if (text == "convergent") return FamilyVariant::Convergent;
  if (text == "divergent") return FamilyVariant::Divergent;
  throw DomainError("unknown family variant '" + std::string(text) +
                    "' (expected convergent|divergent)");
}

PairedTuples<double> example_family(int n, int K, FamilyVariant variant) {
  require_n(n);
  if (K < 1) throw DomainError("K must be a positive integer");
  const double small = std::pow(10.0, -2.0 * K);
  const double medium = std::pow(10.0, -static_cast<double>(K));
  const bool convergent = variant == FamilyVariant::Convergent;
  ArrayX<double> a = ArrayX<double>::Constant(n, convergent ? small : medium);
  ArrayX<double> b = ArrayX<double>::Constant(n, convergent ? medium : small);
  a[n - 1] = 1.0;
  b[n - 1] = 1.0;
  return tuples_from(a, b);
}

double example_family_closed_form_rhs(int n, int K, FamilyVariant variant) {
  const double scale = variant == FamilyVariant::Convergent
                           ? std::pow(10.0, -static_cast<double>(K))
                           : std::pow(10.0, static_cast<double>(K));
  return (n - 1) * scale + 1.0;
}

std::vector<FamilyRow> example_family_table(int n, FamilyVariant variant, int K_first,
                                            int K_last, Exponent p, double relative_band) {
  require_n(n);
  if (K_first < 1 || K_last < K_first) throw DomainError("K range must satisfy 1 <= first <= last");
  if (!p.is_finite()) throw DomainError("example families need a finite exponent");
  std::vector<FamilyRow> rows;
  rows.reserve(static_cast<std::size_t>(K_last - K_first + 1));
  for (int K = K_first; K <= K_last; ++K) {
    rows.push_back({K, check_main_inequality(example_family(n, K, variant), p, relative_band)});
  }
  return rows;
}

RandomPairGenerator::RandomPairGenerator(std::uint64_t seed)
    : RandomPairGenerator(seed, Config{}) {}

RandomPairGenerator::RandomPairGenerator(std::uint64_t seed, Config config)
    : config_(config), engine_(seed) {
  if (config_.n_min < 1 || config_.n_max < config_.n_min) {
    throw DomainError("random size range must satisfy 1 <= n_min <= n_max");
  }
  if (!(config_.lo > 0) || !(config_.hi >= config_.lo)) {
    throw DomainError("random value range must satisfy 0 < lo <= hi");
  }
}

std::size_t RandomPairGenerator::next_size() {
  return std::uniform_int_distribution<std::size_t>(config_.n_min, config_.n_max)(engine_);
}

double RandomPairGenerator::next_value() {
  const double log_lo = std::log(config_.lo);
  const double log_hi = std::log(config_.hi);
  const double u = std::uniform_real_distribution<double>(log_lo, log_hi)(engine_);
  // exp may land a hair outside [lo, hi]; positivity is all that matters.
  return std::exp(u);
}

PositiveTuple<double> RandomPairGenerator::next_tuple(std::size_t n) {
  ArrayX<double> v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = next_value();
  return PositiveTuple<double>(v);
}

PairedTuples<double> RandomPairGenerator::next() {
  const std::size_t n = next_size();
  auto a = next_tuple(n);
  auto b = next_tuple(n);
  return PairedTuples<double>(std::move(a), std::move(b));
}

std::vector<Exponent> default_campaign_grid() {
  std::vector<Exponent> grid{Exponent::neg_inf()};
  for (double p : {-64.0, -8.0, -2.0, -1.0, -0.5, -1e-7}) grid.push_back(Exponent::finite(p));
  grid.push_back(Exponent::zero());
  for (double p : {1e-7, 0.5, 1.0, 2.0, 8.0, 64.0}) grid.push_back(Exponent::finite(p));
  grid.push_back(Exponent::pos_inf());
  return grid;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  RandomPairGenerator gen(config.seed, config.sampling);
  CampaignResult result;
  for (std::size_t c = 0; c < config.cases; ++c) {
    const auto pair = gen.next();
    const double worst_rhs = extremal_ratio_sums(pair).min_sum;
    for (const Exponent& p : config.grid) {
      const auto report = check_main_inequality(pair, p, config.relative_band);
      ++result.verdict_counts[static_cast<std::size_t>(report.verdict)];
      ++result.checks;
      const Verdict worst =
          classify(worst_rhs - report.lhs, worst_rhs, pair.size(), config.relative_band);
      if (worst == Verdict::Violated) ++result.worst_case_violations;
      // Near p = 0 the functional itself leaves the floating range (it grows
      // like n^(1/p)), so the identity is only exercised away from zero.
      if (p.is_finite() && std::abs(p.value()) >= kMergeMinExponent && pair.size() >= 2) {
        const double residual = merge_identity_residual(pair.a(), p);
        if (residual > result.max_merge_residual) result.max_merge_residual = residual;
      }
    }
    const auto chain = am_gm_chain(pair);
    // gm and am are computed on different paths; allow a few ulps where
    // all ratios coincide.
    const bool ordered = chain.gm <= chain.am * (1.0 + 1e-12) && chain.am <= chain.sum;
    if (!ordered) ++result.chain_failures;
    ++result.cases;
  }
  return result;
}

}  // namespace holder::experiments
