#include "holder/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <system_error>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "holder/errors.hpp"
#include "holder/experiments.hpp"
#include "holder/exponent.hpp"
#include "holder/functionals.hpp"
#include "holder/inequality.hpp"
#include "holder/positive_tuple.hpp"
#include "holder/rearrangement.hpp"
#include "holder/streaming.hpp"

namespace holder::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Table, Json };

struct GlobalOptions {
  std::string format = "table";
  double tolerance = kDefaultRelativeBand;

  Format output_format() const { return format == "json" ? Format::Json : Format::Table; }
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& value) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto start = text.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    const auto end = text.find_first_of(" \t", start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return parts;
}

std::string number(double x) { return fmt::format("{}", x); }

Json report_json(const InequalityReport<double>& r) {
  Json j;
  j["p"] = r.p.to_string();
  j["n"] = r.n;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["verdict"] = std::string(to_string(r.verdict));
  return j;
}

void print_report_table(std::ostream& out, const std::vector<InequalityReport<double>>& reports,
                        std::string_view lead_name = "p",
                        const std::vector<std::string>& lead = {}) {
  out << fmt::format("{:>10} {:>4} {:>24} {:>24} {:>24}  {}\n", lead_name, "n", "lhs", "rhs",
                     "gap", "verdict");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const std::string key = lead.empty() ? r.p.to_string() : lead[i];
    out << fmt::format("{:>10} {:>4} {:>24} {:>24} {:>24}  {}\n", key, r.n, number(r.lhs),
                       number(r.rhs), number(r.gap), to_string(r.verdict));
  }
}

int exit_code_for(const std::vector<InequalityReport<double>>& reports) {
  const bool violated = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.verdict == Verdict::Violated;
  });
  return violated ? kExitViolated : kExitOk;
}

PairedTuples<double> paired_from_text(const std::string& a, const std::string& b) {
  const auto av = parse_tuple(a);
  const auto bv = parse_tuple(b);
  return PairedTuples<double>(PositiveTuple<double>(std::span<const double>(av)),
                              PositiveTuple<double>(std::span<const double>(bv)));
}

std::vector<Exponent> parse_grid(const std::string& text) {
  std::vector<Exponent> grid;
  for (auto part : split(text, ',')) grid.push_back(Exponent::parse(std::string(trim(part))));
  if (grid.empty()) throw DomainError("exponent grid must be nonempty");
  return grid;
}

Json permutation_json(const Permutation& sigma) {
  // 1-based on the wire, matching the usual {1..n} notation.
  Json j = Json::array();
  for (auto s : sigma) j.push_back(s + 1);
  return j;
}

std::string permutation_text(const Permutation& sigma) {
  std::string s;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(sigma[i] + 1);
  }
  return s;
}

}  // namespace

std::vector<double> parse_tuple(const std::string& text) {
  std::vector<double> values;
  for (auto part : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(part, v)) {
      throw DomainError("cannot parse tuple entry '" + std::string(trim(part)) + "'");
    }
    if (!(v > 0) || !std::isfinite(v)) {
      throw DomainError("tuple entry '" + std::string(trim(part)) +
                        "' is not strictly positive and finite");
    }
    values.push_back(v);
  }
  return values;
}

std::pair<int, int> parse_int_range(const std::string& text) {
  auto to_int = [&text](std::string_view s) {
    s = trim(s);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw DomainError("cannot parse integer range '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const std::string_view view(text);
  return {to_int(view.substr(0, dots)), to_int(view.substr(dots + 2))};
}

std::vector<std::pair<double, double>> read_pairs(std::istream& in) {
  std::vector<std::pair<double, double>> pairs;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto body = trim(line);
    if (body.empty()) continue;

    const auto fields =
        body.find(',') != std::string_view::npos ? split(body, ',') : split_whitespace(body);

    double a = 0.0;
    double b = 0.0;
    const bool numeric = fields.size() == 2 && parse_double(fields[0], a) &&
                         parse_double(fields[1], b);
    if (!numeric) {
      // A leading row counts as a header only if some field is not a number;
      // a numeric row with the wrong column count is an error.
      const bool header = pairs.empty() && row == 1 &&
                          std::any_of(fields.begin(), fields.end(), [](std::string_view f) {
                            double ignored = 0.0;
                            return !parse_double(f, ignored);
                          });
      if (header) continue;
      throw DomainError("row " + std::to_string(row) + ": expected two numeric columns");
    }
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw DomainError("row " + std::to_string(row) +
                        ": values must be strictly positive and finite");
    }
    pairs.emplace_back(a, b);
  }
  return pairs;
}

int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hölder functionals of positive tuples and the quotient inequality"};
  app.name("holder");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}));
  app.add_option("--tolerance", global.tolerance,
                 "Near-equality band, relative to the right-hand side")
      ->check(CLI::NonNegativeNumber);

  std::string a_text;
  std::string b_text;
  std::string p_text;

  auto* eval = app.add_subcommand("eval", "Hölder functionals and their quotient");
  eval->add_option("--a", a_text, "Tuple a, comma separated")->required();
  eval->add_option("--b", b_text, "Tuple b, comma separated");
  eval->add_option("--p", p_text, "Exponent: real, 0, inf or -inf")->required();

  auto* check = app.add_subcommand("check", "Check the quotient inequality at one exponent");
  check->add_option("--a", a_text)->required();
  check->add_option("--b", b_text)->required();
  check->add_option("--p", p_text)->required();

  std::string grid_text = "-inf,-64,-8,-2,-1,-0.5,0,0.5,1,2,8,64,inf";
  auto* scan = app.add_subcommand("scan", "Check the inequality over a grid of exponents");
  scan->add_option("--a", a_text)->required();
  scan->add_option("--b", b_text)->required();
  scan->add_option("--grid", grid_text, "Comma separated exponents")->capture_default_str();

  bool with_oracle = false;
  auto* rearrange = app.add_subcommand("rearrange", "Extremal pairings of the ratio sum");
  rearrange->add_option("--a", a_text)->required();
  rearrange->add_option("--b", b_text)->required();
  rearrange->add_flag("--oracle", with_oracle, "Also run the brute-force oracle (n <= 8)");

  std::string input_path;
  bool all_prefixes = false;
  auto* stream = app.add_subcommand("stream", "Prefix checks of the power-sum form over a stream");
  stream->add_option("--p", p_text)->required();
  stream->add_option("--input", input_path, "CSV file of a,b rows (default: stdin)");
  stream->add_flag("--all-prefixes", all_prefixes, "Report every prefix");

  int n = 3;
  std::string sharp_grid = "1,2,4,8,16,32,64,128,256,512,1024,2048,4096,8192,16384,32768,65536";
  auto* sharpness = app.add_subcommand("sharpness", "Table for the sharpness construction");
  sharpness->add_option("--n", n)->capture_default_str();
  sharpness->add_option("--grid", sharp_grid, "Positive ascending exponents")
      ->capture_default_str();

  std::string variant_text = "convergent";
  std::string k_text = "1..8";
  std::string family_p = "1";
  auto* examples = app.add_subcommand("examples", "Tables for the K-parameterized families");
  examples->add_option("--variant", variant_text)
      ->check(CLI::IsMember({"convergent", "divergent"}))
      ->capture_default_str();
  examples->add_option("--n", n)->capture_default_str();
  examples->add_option("--K", k_text, "Integer range, e.g. 1..8")->capture_default_str();
  examples->add_option("--p", family_p)->capture_default_str();

  std::uint64_t seed = experiments::kDefaultSeed;
  std::size_t cases = 10000;
  auto* verify = app.add_subcommand("verify", "Random property campaign");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--cases", cases)->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Format format = global.output_format();
  const double band = global.tolerance;

  try {
    if (eval->parsed()) {
      const Exponent p = Exponent::parse(p_text);
      const auto av = parse_tuple(a_text);
      const PositiveTuple<double> a(std::span<const double>(av.data(), av.size()));
      Json j;
      j["p"] = p.to_string();
      if (!p.is_zero()) j["a_functional"] = holder_functional(a, p);
      if (!b_text.empty()) {
        const auto pair = paired_from_text(a_text, b_text);
        if (!p.is_zero()) j["b_functional"] = holder_functional(pair.b(), p);
        j["lhs"] = lhs_quotient(pair, p);
      } else if (p.is_zero()) {
        throw UndefinedExponentError();
      }
      if (format == Format::Json) {
        out << j.dump() << '\n';
      } else {
        for (const auto& [key, value] : j.items()) {
          out << fmt::format("{:<14} {}\n", key,
                             value.is_string() ? value.get<std::string>()
                                               : number(value.get<double>()));
        }
      }
      return kExitOk;
    }

    if (check->parsed()) {
      const auto report = check_main_inequality(paired_from_text(a_text, b_text),
                                                Exponent::parse(p_text), band);
      if (format == Format::Json) {
        out << report_json(report).dump() << '\n';
      } else {
        print_report_table(out, {report});
      }
      return exit_code_for({report});
    }

    if (scan->parsed()) {
      const auto pair = paired_from_text(a_text, b_text);
      const auto curve = gap_curve(pair, parse_grid(grid_text), band);
      std::vector<InequalityReport<double>> reports;
      for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const auto& pt = curve.points[i];
        reports.push_back({curve.grid[i], pt.lhs, pt.rhs, pt.gap, pt.verdict, pair.size()});
      }
      if (format == Format::Json) {
        Json j;
        j["points"] = Json::array();
        for (const auto& r : reports) j["points"].push_back(report_json(r));
        out << j.dump() << '\n';
      } else {
        print_report_table(out, reports);
      }
      return exit_code_for(reports);
    }

    if (rearrange->parsed()) {
      const auto pair = paired_from_text(a_text, b_text);
      const auto bounds = extremal_ratio_sums(pair);
      Json j;
      j["n"] = pair.size();
      j["min_sum"] = bounds.min_sum;
      j["max_sum"] = bounds.max_sum;
      j["min_perm"] = permutation_json(bounds.min_perm);
      j["max_perm"] = permutation_json(bounds.max_perm);
      if (with_oracle) {
        const auto oracle = brute_force_extrema(pair);
        j["oracle_min_sum"] = oracle.min_sum;
        j["oracle_max_sum"] = oracle.max_sum;
      }
      if (format == Format::Json) {
        out << j.dump() << '\n';
      } else {
        out << fmt::format("{:<14} {}\n", "n", pair.size());
        out << fmt::format("{:<14} {}\n", "min_sum", number(bounds.min_sum));
        out << fmt::format("{:<14} {}\n", "min_perm", permutation_text(bounds.min_perm));
        out << fmt::format("{:<14} {}\n", "max_sum", number(bounds.max_sum));
        out << fmt::format("{:<14} {}\n", "max_perm", permutation_text(bounds.max_perm));
        if (with_oracle) {
          out << fmt::format("{:<14} {}\n", "oracle_min", number(j["oracle_min_sum"].get<double>()));
          out << fmt::format("{:<14} {}\n", "oracle_max", number(j["oracle_max_sum"].get<double>()));
        }
      }
      return kExitOk;
    }

    if (stream->parsed()) {
      const Exponent p = Exponent::parse(p_text);
      std::vector<std::pair<double, double>> rows;
      if (input_path.empty()) {
        rows = read_pairs(in);
      } else {
        std::ifstream file(input_path);
        if (!file) throw DomainError("cannot open input file '" + input_path + "'");
        rows = read_pairs(file);
      }
      if (rows.empty()) throw DomainError("stream is empty");

      RatioStreamAccumulator<double> acc(p);
      std::array<std::size_t, 4> counts{};
      std::vector<InequalityReport<double>> reported;
      for (const auto& [a, b] : rows) {
        acc.push(a, b);
        const auto r = acc.prefix_check(band);
        ++counts[static_cast<std::size_t>(r.verdict)];
        if (all_prefixes || r.verdict == Verdict::Violated || acc.count() == rows.size()) {
          reported.push_back(r);
        }
      }
      const bool violated = counts[static_cast<std::size_t>(Verdict::Violated)] > 0;
      if (format == Format::Json) {
        Json j;
        j["p"] = p.to_string();
        j["direction"] = std::string(to_string(acc.direction()));
        j["count"] = acc.count();
        j["log_left"] = acc.log_sum_a_p();
        j["log_right"] = acc.log_right();
        Json c;
        for (auto v : {Verdict::HoldsStrict, Verdict::EqualityN1, Verdict::NearEquality,
                       Verdict::Violated}) {
          c[std::string(to_string(v))] = counts[static_cast<std::size_t>(v)];
        }
        j["verdicts"] = c;
        j["reports"] = Json::array();
        for (const auto& r : reported) j["reports"].push_back(report_json(r));
        out << j.dump() << '\n';
      } else {
        out << fmt::format("direction {}  count {}  log_left {}  log_right {}\n",
                           to_string(acc.direction()), acc.count(), number(acc.log_sum_a_p()),
                           number(acc.log_right()));
        std::vector<std::string> lead;
        for (const auto& r : reported) lead.push_back(std::to_string(r.n));
        print_report_table(out, reported, "prefix", lead);
      }
      return violated ? kExitViolated : kExitOk;
    }

    if (sharpness->parsed()) {
      std::vector<double> grid;
      for (auto part : split(sharp_grid, ',')) {
        double v = 0.0;
        if (!parse_double(part, v)) throw DomainError("cannot parse grid entry");
        grid.push_back(v);
      }
      const auto rows = experiments::sharpness_table(n, grid, band);
      std::vector<InequalityReport<double>> reports;
      for (const auto& row : rows) reports.push_back(row.report);
      if (format == Format::Json) {
        Json j;
        j["n"] = n;
        j["rows"] = Json::array();
        for (const auto& r : reports) j["rows"].push_back(report_json(r));
        out << j.dump() << '\n';
      } else {
        print_report_table(out, reports);
      }
      return exit_code_for(reports);
    }

    if (examples->parsed()) {
      const auto variant = experiments::parse_variant(variant_text);
      const auto [k_first, k_last] = parse_int_range(k_text);
      const auto rows = experiments::example_family_table(n, variant, k_first, k_last,
                                                          Exponent::parse(family_p), band);
      std::vector<InequalityReport<double>> reports;
      std::vector<std::string> lead;
      for (const auto& row : rows) {
        reports.push_back(row.report);
        lead.push_back(std::to_string(row.K));
      }
      if (format == Format::Json) {
        Json j;
        j["variant"] = std::string(experiments::to_string(variant));
        j["n"] = n;
        j["rows"] = Json::array();
        for (const auto& row : rows) {
          Json r = report_json(row.report);
          r["K"] = row.K;
          j["rows"].push_back(r);
        }
        out << j.dump() << '\n';
      } else {
        print_report_table(out, reports, "K", lead);
      }
      return exit_code_for(reports);
    }

    if (verify->parsed()) {
      experiments::CampaignConfig config;
      config.seed = seed;
      config.cases = cases;
      config.relative_band = band;
      const auto result = experiments::run_campaign(config);
      Json j;
      j["seed"] = seed;
      j["cases"] = result.cases;
      j["checks"] = result.checks;
      Json c;
      for (auto v : {Verdict::HoldsStrict, Verdict::EqualityN1, Verdict::NearEquality,
                     Verdict::Violated}) {
        c[std::string(to_string(v))] = result.count(v);
      }
      j["verdicts"] = c;
      j["worst_case_violations"] = result.worst_case_violations;
      j["chain_failures"] = result.chain_failures;
      j["max_merge_residual"] = result.max_merge_residual;
      if (format == Format::Json) {
        out << j.dump() << '\n';
      } else {
        out << fmt::format("{:<22} {}\n", "seed", seed);
        out << fmt::format("{:<22} {}\n", "cases", result.cases);
        out << fmt::format("{:<22} {}\n", "checks", result.checks);
        for (const auto& [key, value] : c.items()) {
          out << fmt::format("{:<22} {}\n", key, value.get<std::size_t>());
        }
        out << fmt::format("{:<22} {}\n", "worst_case_violations", result.worst_case_violations);
        out << fmt::format("{:<22} {}\n", "chain_failures", result.chain_failures);
        out << fmt::format("{:<22} {}\n", "max_merge_residual", number(result.max_merge_residual));
      }
      return result.any_violation() ? kExitViolated : kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace holder::cli
