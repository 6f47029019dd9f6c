// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every tolerance below is fixed here, not calibrated.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holder/cli.hpp"
#include "holder/experiments.hpp"
#include "holder/functionals.hpp"
#include "holder/inequality.hpp"
#include "holder/rearrangement.hpp"
#include "holder/streaming.hpp"
#include "test_support.hpp"

using namespace holder;
using namespace holder::experiments;
using holder::testing::rel_err;
using holder::testing::Wide;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double ulps(double got, double want) {
  return std::abs(got - want) / (std::nextafter(want, INFINITY) - want);
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

bool all_distinct(const ArrayX<double>& v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

/// Second-largest / largest (top) or smallest / second-smallest (bottom).
double separation(const ArrayX<double>& v, bool top) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return top ? s[s.size() - 2] / s.back() : s[0] / s[1];
}

// 1. Universal verdict over the random campaign.
Outcome random_campaign() {
  const auto start = Clock::now();
  RandomPairGenerator gen(kDefaultSeed);
  const auto grid = default_campaign_grid();
  std::size_t strict = 0;
  std::size_t near = 0;
  std::size_t violated = 0;
  std::size_t other = 0;
  std::size_t total = 0;
  for (int c = 0; c < 10000; ++c) {
    const auto pair = gen.next();
    for (const Exponent& p : grid) {
      switch (check_main_inequality(pair, p).verdict) {
        case Verdict::HoldsStrict: ++strict; break;
        case Verdict::NearEquality: ++near; break;
        case Verdict::Violated: ++violated; break;
        case Verdict::EqualityN1: ++other; break;
      }
      ++total;
    }
  }
  const double elapsed = seconds_since(start);
  const double strict_fraction = double(strict) / double(total);
  const bool pass = violated == 0 && other == 0 && strict_fraction >= 0.999 && grid.size() == 15 &&
                    elapsed < 10.0;
  return {pass, fmt("checks=%.0f strict=%.6f near=%.0f violated=%.0f", double(total),
                    strict_fraction, double(near), double(violated)) +
                    fmt(" time=%.2fs", elapsed)};
}

// 2. Sorted pairings against exhaustive enumeration.
Outcome rearrangement_oracle() {
  const auto start = Clock::now();
  RandomPairGenerator gen(kDefaultSeed + 2, {2, 6, 1e-6, 1e6});
  double worst = 0.0;
  std::size_t distinct = 0;
  std::size_t mismatched = 0;
  for (int c = 0; c < 500; ++c) {
    const auto pair = gen.next();
    const auto fast = extremal_ratio_sums(pair);
    const auto oracle = brute_force_extrema(pair);
    worst = std::max({worst, rel_err(fast.min_sum, oracle.min_sum),
                      rel_err(fast.max_sum, oracle.max_sum)});
    if (all_distinct(pair.a().values()) && all_distinct(pair.b().values())) {
      ++distinct;
      if (fast.min_perm != oracle.min_perm || fast.max_perm != oracle.max_perm) ++mismatched;
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && mismatched == 0 && elapsed < 5.0,
          fmt("max_rel_err=%.3g distinct=%.0f perm_mismatch=%.0f time=%.2fs", worst,
              double(distinct), double(mismatched), elapsed)};
}

// 3. Sharpness construction on the doubling grid.
Outcome sharpness() {
  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(std::ldexp(1.0, k));
  const auto rows = sharpness_table(3, grid);
  double worst_ulps = 0.0;
  for (const auto& row : rows) worst_ulps = std::max(worst_ulps, ulps(row.report.rhs - 1.0, 2.0 / row.p));
  const double bound = (2.0 + std::log(3.0) + 1.0) / 65536.0;
  const double last_gap = rows.back().report.gap;
  bool decreasing = true;
  for (std::size_t k = 5; k < rows.size(); ++k) {
    decreasing = decreasing && rows[k].report.gap < rows[k - 1].report.gap;
  }
  return {worst_ulps <= 1.0 && last_gap <= bound && decreasing,
          fmt("max_ulps=%.1f gap(2^16)=%.6g bound=%.6g decreasing=%.0f", worst_ulps, last_gap,
              bound, decreasing ? 1.0 : 0.0)};
}

// 4. Convergent family.
Outcome convergent_family() {
  const auto rows = example_family_table(4, FamilyVariant::Convergent, 1, 8, Exponent::finite(1));
  bool ok = rows.size() == 8;
  double worst_ulps = 0.0;
  for (const auto& row : rows) {
    const double scale = std::pow(10.0, -row.K);
    worst_ulps = std::max(worst_ulps, ulps(row.report.rhs, 3.0 * scale + 1.0));
    ok = ok && std::abs(row.report.lhs - 1.0) <= 3.0 * scale;
  }
  const auto& last = rows.back().report;
  ok = ok && worst_ulps <= 1.0 && std::abs(last.lhs - 1.0) <= 1e-7 &&
       std::abs(last.rhs - 1.0) <= 1e-7;
  return {ok, fmt("max_rhs_ulps=%.1f K=8: |lhs-1|=%.3g |rhs-1|=%.3g", worst_ulps,
                  std::abs(last.lhs - 1.0), std::abs(last.rhs - 1.0))};
}

// 5. Divergent family.
Outcome divergent_family() {
  const auto rows = example_family_table(4, FamilyVariant::Divergent, 1, 8, Exponent::finite(1));
  bool ok = rows.size() == 8;
  double worst_ulps = 0.0;
  double min_ratio_margin = INFINITY;
  for (const auto& row : rows) {
    const double up = std::pow(10.0, row.K);
    worst_ulps = std::max(worst_ulps, ulps(row.report.rhs, 3.0 * up + 1.0));
    ok = ok && row.report.lhs <= 1.0 + 3.0 / up;
    min_ratio_margin = std::min(min_ratio_margin, row.report.rhs / row.report.lhs / up);
  }
  ok = ok && worst_ulps <= 1.0 && min_ratio_margin >= 1.0;
  return {ok, fmt("max_rhs_ulps=%.1f min (rhs/lhs)/10^K=%.4f", worst_ulps, min_ratio_margin)};
}

// 6. Limits at +-inf and at p -> 0.
Outcome limit_continuity() {
  RandomPairGenerator gen(kDefaultSeed + 6);
  double worst_top = 0.0;
  double worst_bottom = 0.0;
  int top = 0;
  int bottom = 0;
  while (top < 100 || bottom < 100) {
    const auto pair = gen.next();
    const auto& a = pair.a().values();
    const auto& b = pair.b().values();
    if (top < 100 && separation(a, true) <= 0.9 && separation(b, true) <= 0.9) {
      const double want = pair.a().max() / pair.b().max();
      worst_top = std::max(worst_top, rel_err(lhs_quotient(pair, Exponent::finite(1048576.0)), want));
      ++top;
    }
    if (bottom < 100 && separation(a, false) <= 0.9 && separation(b, false) <= 0.9) {
      const double want = pair.a().min() / pair.b().min();
      worst_bottom =
          std::max(worst_bottom, rel_err(lhs_quotient(pair, Exponent::finite(-1048576.0)), want));
      ++bottom;
    }
  }
  // The small-exponent property is stated for entries in [1e-3, 1e3].
  RandomPairGenerator small_gen(kDefaultSeed + 60, {2, 10, 1e-3, 1e3});
  double worst_zero = 0.0;
  double worst_oracle = 0.0;
  for (int c = 0; c < 100; ++c) {
    const auto pair = small_gen.next();
    const double q = lhs_quotient(pair, Exponent::finite(1e-7));
    worst_zero = std::max(worst_zero, rel_err(q, geometric_mean_ratio(pair)));
    // Reported only: distinguishes a numerical miss from the true O(p)
    // distance between the quotient and its limit.
    worst_oracle = std::max(
        worst_oracle, rel_err(q, static_cast<double>(holder::testing::wide_quotient(pair, 1e-7))));
  }
  return {worst_top <= 1e-6 && worst_bottom <= 1e-6 && worst_zero <= 1e-6,
          fmt("+inf=%.3g -inf=%.3g p=1e-7 vs gm=%.3g", worst_top, worst_bottom, worst_zero) +
              fmt(" (vs 50-digit oracle %.2g)", worst_oracle)};
}

// 7. Induction-step merge.
Outcome merge_identity() {
  RandomPairGenerator gen(kDefaultSeed + 7);
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const auto a = gen.next_tuple(gen.next_size());
    for (double p : {-64.0, -2.0, -0.5, 0.5, 2.0, 64.0}) {
      worst = std::max(worst, merge_identity_residual(a, Exponent::finite(p)));
    }
  }
  return {worst <= 1e-12, fmt("max_residual=%.3g", worst)};
}

// 8. Extreme magnitudes against a 50-digit oracle.
Outcome stability() {
  RandomPairGenerator gen(kDefaultSeed + 8, {2, 10, 1e-300, 1e300});
  double worst = 0.0;
  bool finite = true;
  auto with_extremes = [&gen](std::size_t n) {
    ArrayX<double> v = gen.next_tuple(n).values();
    v[0] = 1e-300;
    v[1] = 1e300;
    std::shuffle(v.begin(), v.end(), gen.engine());
    return PositiveTuple<double>(v);
  };
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = gen.next_size();
    const PairedTuples<double> pair(with_extremes(n), with_extremes(n));
    for (double p : {-8.0, -1.0, 1.0, 8.0}) {
      const Exponent e = Exponent::finite(p);
      for (const auto* t : {&pair.a(), &pair.b()}) {
        const double h = holder_functional(*t, e);
        finite = finite && std::isfinite(h) && h > 0;
        worst = std::max(worst, rel_err(h, static_cast<double>(testing::wide_holder(*t, p))));
      }
      const double q = lhs_quotient(pair, e);
      finite = finite && std::isfinite(q) && q > 0;
      worst = std::max(worst, rel_err(q, static_cast<double>(testing::wide_quotient(pair, p))));
    }
  }
  return {finite && worst <= 1e-10, fmt("max_rel_err=%.3g all_finite_positive=%.0f", worst,
                                        finite ? 1.0 : 0.0)};
}

// 9. Streaming prefix checks.
Outcome streaming() {
  RandomPairGenerator gen(kDefaultSeed + 9);
  const std::vector<double> exponents{-2.0, -1.0, 1.0, 2.0};
  std::size_t checks = 0;
  std::size_t non_strict = 0;
  double worst_batch = 0.0;
  for (int s = 0; s < 100; ++s) {
    std::vector<RatioStreamAccumulator<double>> accs;
    for (double p : exponents) accs.emplace_back(Exponent::finite(p));
    std::vector<double> a;
    std::vector<double> b;
    for (int k = 0; k < 1000; ++k) {
      a.push_back(gen.next_value());
      b.push_back(gen.next_value());
      for (auto& acc : accs) {
        acc.push(a.back(), b.back());
        const auto r = acc.prefix_check();
        if (acc.count() >= 2) {
          ++checks;
          if (r.verdict != Verdict::HoldsStrict) ++non_strict;
        }
      }
      const std::size_t count = a.size();
      if (count == 2 || count == 10 || count == 100 || count == 1000) {
        const PairedTuples<double> pair{PositiveTuple<double>(std::span<const double>(a)),
                                        PositiveTuple<double>(std::span<const double>(b))};
        for (std::size_t i = 0; i < accs.size(); ++i) {
          const auto batch = check_main_inequality(pair, Exponent::finite(exponents[i]));
          const auto streamed = accs[i].prefix_check();
          worst_batch = std::max({worst_batch, std::abs(std::log(streamed.lhs) - std::log(batch.lhs)),
                                  std::abs(std::log(streamed.rhs) - std::log(batch.rhs))});
        }
      }
    }
  }
  return {non_strict == 0 && worst_batch <= 1e-10,
          fmt("prefix_checks=%.0f non_strict=%.0f max_log_batch_diff=%.3g", double(checks),
              double(non_strict), worst_batch)};
}

// 10. Command-line contract.
Outcome cli_contract() {
  auto run = [](std::vector<std::string> args, std::string& out) {
    std::istringstream in;
    std::ostringstream o;
    std::ostringstream e;
    const int code = cli::run(std::move(args), in, o, e);
    out = o.str();
    return code;
  };
  using Json = nlohmann::json;
  std::string out;
  bool ok = true;

  int code = run({"check", "--a", "3,4", "--b", "1,1", "--p", "2", "--format", "json"}, out);
  auto j = Json::parse(out);
  ok = ok && code == 0 && j["verdict"] == "HOLDS_STRICT" && j["rhs"].get<double>() == 7.0 &&
       rel_err(j["lhs"].get<double>(), 5.0 / std::sqrt(2.0)) <= 1e-15;

  code = run({"check", "--a", "7", "--b", "2", "--p", "1", "--format", "json"}, out);
  ok = ok && code == 0 && Json::parse(out)["verdict"] == "EQUALITY_N1";

  code = run({"examples", "--variant", "divergent", "--n", "2", "--K", "1..6", "--p", "1",
              "--format", "json"},
             out);
  j = Json::parse(out);
  ok = ok && code == 0 && j["rows"].size() == 6;
  double up = 10.0;
  for (const auto& row : j["rows"]) {
    ok = ok && ulps(row["rhs"].get<double>(), up + 1.0) <= 1.0;
    up *= 10.0;
  }

  std::string first;
  std::string second;
  const std::vector<std::string> verify{"verify", "--seed", "12345", "--cases", "2000",
                                        "--format", "json"};
  const int c1 = run(verify, first);
  const int c2 = run(verify, second);
  ok = ok && c1 == 0 && c2 == 0 && first == second;

  ok = ok && run({"check", "--a", "1,0", "--b", "1,1", "--p", "1"}, out) == cli::kExitUsage;
  return {ok, std::string("verdicts and exit codes ok; verify JSON byte-identical=") +
                  (first == second ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1  random campaign (10^4 pairs x 15 exponents)", random_campaign},
      {"AC2  rearrangement vs brute-force oracle", rearrangement_oracle},
      {"AC3  sharpness construction", sharpness},
      {"AC4  convergent K-family", convergent_family},
      {"AC5  divergent K-family", divergent_family},
      {"AC6  limit continuity (+inf, -inf, p->0)", limit_continuity},
      {"AC7  merge identity (induction step)", merge_identity},
      {"AC8  stability at 1e-300..1e300", stability},
      {"AC9  streaming prefix checks", streaming},
      {"AC10 CLI contract", cli_contract},
  };
  int failures = 0;
  for (const auto& [name, criterion] : criteria) {
    Outcome outcome{false, ""};
    try {
      outcome = criterion();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << " : " << outcome.detail << '\n';
    if (!outcome.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "acceptance criteria failed: ")
            << (failures == 0 ? "" : std::to_string(failures)) << '\n';
  return failures == 0 ? 0 : 1;
}
