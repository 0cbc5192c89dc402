#include "cli_app.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubelens/cube_sets.hpp"
#include "cubelens/divisor_windows.hpp"
#include "cubelens/exact_arith.hpp"
#include "cubelens/l4_analysis.hpp"
#include "cubelens/pell.hpp"
#include "cubelens/poly_json.hpp"

namespace cubelens::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "json";
  int workers = 1;
  std::size_t precision_cap = kDefaultPrecisionCap;
  std::string output_path;
  bool strict_precision = false;
};

// Rows are JSON objects; csv and table render the same values flattened.
class Emitter {
 public:
  void push(Json row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      for (const Json& row : rows_) os << row.dump() << '\n';
      return;
    }
    std::vector<const Json*> data;
    for (const Json& row : rows_) {
      if (!(row.contains("type") && row["type"] == "progress")) data.push_back(&row);
    }
    if (data.empty()) return;
    std::vector<std::string> header;
    for (const auto& item : data.front()->items()) header.push_back(item.key());
    std::vector<std::vector<std::string>> cells;
    for (const Json* row : data) {
      std::vector<std::string> line;
      for (const std::string& key : header) line.push_back(row->contains(key) ? flat((*row)[key]) : "");
      cells.push_back(std::move(line));
    }
    if (format == "csv") {
      write_csv_line(os, header);
      for (const auto& line : cells) write_csv_line(os, line);
      return;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
      width[c] = header[c].size();
      for (const auto& line : cells) width[c] = std::max(width[c], line[c].size());
    }
    auto print = [&](const std::vector<std::string>& line) {
      for (std::size_t c = 0; c < line.size(); ++c) {
        os << std::left << std::setw(static_cast<int>(width[c])) << line[c]
           << (c + 1 < line.size() ? "  " : "\n");
      }
    };
    print(header);
    for (const auto& line : cells) print(line);
  }

 private:
  static std::string flat(const Json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_null()) return "";
    if (value.is_array()) {
      std::string out;
      for (std::size_t i = 0; i < value.size(); ++i) out += (i ? ";" : "") + flat(value[i]);
      return out;
    }
    if (value.is_object()) {
      std::string out;
      bool first = true;
      for (const auto& item : value.items()) {
        out += (first ? "" : ";") + item.key() + ":" + flat(item.value());
        first = false;
      }
      return out;
    }
    return value.dump();
  }

  static void write_csv_line(std::ostream& os, const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      const std::string& cell = line[i];
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : cell) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        os << quoted << '"';
      } else {
        os << cell;
      }
      os << (i + 1 < line.size() ? "," : "\n");
    }
  }

  std::vector<Json> rows_;
};

Json strings(const std::vector<Natural>& values) {
  Json out = Json::array();
  for (const Natural& v : values) out.push_back(to_string(v));
  return out;
}

std::uint64_t parse_u64(const std::string& text, const char* name) {
  const Natural value = parse_natural(text);
  if (!value.fits_ulong_p()) throw UsageError(std::string(name) + " is too large");
  return value.get_ui();
}

// A set comes either from --start/--len (cubes of an interval) or --set.
struct SetSource {
  std::string start;
  std::string len;
  std::string list;

  void attach(CLI::App* sub) {
    sub->add_option("--start", start, "interval start N (cubes of N..N+len)");
    sub->add_option("--len", len, "interval length k");
    sub->add_option("--set", list, "explicit comma-separated integer set");
  }

  std::vector<Integer> resolve() const {
    if (!list.empty()) {
      if (!start.empty() || !len.empty()) throw UsageError("--set excludes --start/--len");
      std::vector<Integer> out;
      std::stringstream ss(list);
      for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_integer(item));
      std::sort(out.begin(), out.end());
      if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw UsageError("--set contains a repeated element");
      }
      return out;
    }
    if (start.empty() || len.empty()) throw UsageError("give --start and --len, or --set");
    return elements(CubeInterval(parse_natural(start), parse_natural(len)));
  }
};

Json sidon_json(const SidonResult& r) {
  Json row{{"is_sidon", r.is_sidon}};
  if (r.witness) {
    row["witness"] = Json::array({to_string(r.witness->a), to_string(r.witness->b),
                                  to_string(r.witness->c), to_string(r.witness->d)});
  }
  return row;
}

CoeffPoly read_poly(const std::string& path, const std::string& inline_json) {
  if (path.empty() == inline_json.empty()) throw UsageError("give exactly one of --poly, --poly-json");
  nlohmann::json doc;
  try {
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw UsageError("cannot open " + path);
      doc = nlohmann::json::parse(in);
    } else {
      doc = nlohmann::json::parse(inline_json);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad polynomial JSON: ") + e.what());
  }
  return poly_from_json(doc);
}

Json family_row(const PellSolution& sol, const RamanujanQuadruple& q,
                const std::optional<SharpnessReport>& sharp) {
  Json row{{"k", sol.index},
           {"X", to_string(sol.x)},
           {"Y", to_string(sol.y)},
           {"u", Json::array({to_string(q.u1), to_string(q.u2), to_string(q.u3), to_string(q.u4)})},
           {"N", to_string(q.start)},
           {"U", to_string(q.sum)}};
  row["ratio"] = sharp ? Json(sharp->ratio) : Json(nullptr);
  return row;
}

Json window_json(const WindowCount& w) {
  return Json{{"m", to_string(w.m)},         {"lo", w.lo_desc},
              {"hi", w.hi_desc},             {"count", w.count},
              {"divisors", strings(w.divisors)}, {"unresolved", w.unresolved}};
}

Json scan_json(const Thm22Scan& s) {
  Json hist = Json::object();
  for (const auto& [count, freq] : s.histogram) hist[std::to_string(count)] = freq;
  Json maxima = Json::array();
  for (const ScanMaximum& r : s.new_maxima) maxima.push_back(Json::array({r.m, r.count}));
  Json row{{"type", "summary"},
           {"m_from", std::to_string(s.m_from)},
           {"m_to", std::to_string(s.m_to)},
           {"alpha", to_string(s.alpha)},
           {"beta", to_string(s.beta)},
           {"regime", regime_name(s.regime)},
           {"max_count", s.max_count},
           {"argmax_m", std::to_string(s.argmax_m)},
           {"unresolved", s.unresolved},
           {"histogram", hist},
           {"maxima", maxima}};
  if (s.regime == Regime::theorem) {
    const Ratio ceiling = 1 / (s.alpha * s.alpha - s.beta);
    row["ceiling"] = to_string(Ratio(ceiling));
  }
  return row;
}

Thm22Scan scan_from_json(const Json& row) {
  Thm22Scan s;
  s.m_from = parse_u64(row.at("m_from").get<std::string>(), "m_from");
  s.m_to = parse_u64(row.at("m_to").get<std::string>(), "m_to");
  s.alpha = parse_ratio(row.at("alpha").get<std::string>());
  s.beta = parse_ratio(row.at("beta").get<std::string>());
  s.regime = classify_regime(s.alpha, s.beta);
  s.max_count = row.at("max_count").get<std::uint64_t>();
  s.argmax_m = parse_u64(row.at("argmax_m").get<std::string>(), "argmax_m");
  s.unresolved = row.at("unresolved").get<std::uint64_t>();
  for (const auto& item : row.at("histogram").items()) {
    s.histogram[parse_u64(item.key(), "histogram key")] = item.value().get<std::uint64_t>();
  }
  for (const auto& r : row.at("maxima")) {
    s.new_maxima.push_back({r.at(0).get<std::uint64_t>(), r.at(1).get<std::uint64_t>()});
  }
  return s;
}

std::size_t env_precision_cap() {
  if (const char* env = std::getenv("CUBELENS_PRECISION_CAP"); env && *env) {
    return parse_u64(env, "CUBELENS_PRECISION_CAP");
  }
  return kDefaultPrecisionCap;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cubelens: additive structure of cubes in short intervals", "cubelens"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string precision_flag;
  int workers = 0;
  app.add_option("--format", config.format, "json | csv | table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--workers", workers, "worker threads (default: OpenMP default)")
      ->check(CLI::PositiveNumber);
  app.add_option("--precision-cap", precision_flag, "MPFR precision cap in bits (>= 128)");
  app.add_option("--output", config.output_path, "write results to this file");
  app.add_flag("--strict-precision", config.strict_precision,
               "exit 3 if any comparison stays unresolved at the cap");

  Emitter emit;
  std::function<int()> action;

  // elements
  std::string start, len, m_text, k_text, count_text, lo_text, hi_text, delta_text, alpha_text,
      beta_text, m_max_text, m_from_text, m_to_text, poly_path, poly_inline;
  bool symmetric = false;
  bool progress = false;
  std::vector<std::string> merge_files;

  auto* elements_cmd = app.add_subcommand("elements", "cubes n^3 for N <= n <= N+k");
  elements_cmd->add_option("--start", start)->required();
  elements_cmd->add_option("--len", len)->required();
  elements_cmd->callback([&] {
    action = [&] {
      const CubeInterval interval(parse_natural(start), parse_natural(len));
      Natural n = interval.start;
      for (const Natural& c : elements(interval)) {
        emit.push({{"n", to_string(n)}, {"cube", to_string(c)}});
        ++n;
      }
      return kOk;
    };
  });

  SetSource rep_set, maxrep_set, energy_set, sidon_set;

  auto* rep_cmd = app.add_subcommand("rep", "ordered and unordered representation counts of m");
  rep_set.attach(rep_cmd);
  rep_cmd->add_option("--m", m_text)->required();
  rep_cmd->callback([&] {
    action = [&] {
      const auto set = rep_set.resolve();
      const Integer m = parse_integer(m_text);
      emit.push({{"m", to_string(m)},
                 {"ordered", rep_ordered(set, m)},
                 {"unordered", rep_unordered(set, m)}});
      return kOk;
    };
  });

  auto* maxrep_cmd = app.add_subcommand("maxrep", "max_m r_A^+(m), smallest m on ties");
  maxrep_set.attach(maxrep_cmd);
  maxrep_cmd->callback([&] {
    action = [&] {
      const RepProfile p = rep_profile(maxrep_set.resolve());
      emit.push({{"m", to_string(p.max_m)}, {"r", p.max_r}});
      return kOk;
    };
  });

  auto* energy_cmd = app.add_subcommand("energy", "additive energy sum_m r_A^+(m)^2");
  energy_set.attach(energy_cmd);
  energy_cmd->callback([&] {
    action = [&] {
      const auto set = energy_set.resolve();
      const RepProfile p = rep_profile(set);
      emit.push({{"size", set.size()},
                 {"energy", to_string(p.energy)},
                 {"distinct_sums", p.counts.size()},
                 {"max_m", to_string(p.max_m)},
                 {"max_r", p.max_r}});
      return kOk;
    };
  });

  auto* sidon_cmd = app.add_subcommand("sidon-check", "is the set Sidon (B2)?");
  sidon_set.attach(sidon_cmd);
  sidon_cmd->callback([&] {
    action = [&] {
      const SidonResult r = is_sidon(sidon_set.resolve());
      emit.push(sidon_json(r));
      return r.is_sidon ? kOk : kPropertyViolated;
    };
  });

  auto* threshold_cmd =
      app.add_subcommand("sidon-threshold", "smallest k <= k-max with elements(N,k) not Sidon");
  std::string k_max_text;
  threshold_cmd->add_option("--start", start)->required();
  threshold_cmd->add_option("--k-max", k_max_text)->required();
  threshold_cmd->callback([&] {
    action = [&] {
      const Natural n = parse_natural(start);
      const auto t = sidon_threshold(n, parse_u64(k_max_text, "--k-max"));
      Json row{{"start", to_string(n)},
               {"k_max", k_max_text},
               {"guaranteed", to_string(guaranteed_sidon_length(n))}};
      row["threshold"] = t ? Json(*t) : Json(nullptr);
      emit.push(row);
      return kOk;
    };
  });

  auto* l4_cmd = app.add_subcommand("l4", "exact ||f||_2^2 and ||f||_4^4");
  l4_cmd->add_option("--poly", poly_path, "JSON file with {\"terms\": [...]}");
  l4_cmd->add_option("--poly-json", poly_inline, "inline polynomial JSON");
  l4_cmd->callback([&] {
    action = [&] {
      const CoeffPoly f = read_poly(poly_path, poly_inline);
      Json row{{"terms", f.size()}, {"l2_sq", to_string(l2_sq(f))}, {"l4_4", to_string(l4_fourth(f))}};
      row["ratio"] = f.empty() ? Json(nullptr) : Json(ratio_l4_l2(f));
      emit.push(row);
      return kOk;
    };
  });

  auto* lemma_cmd = app.add_subcommand("lemma21", "check ||f||_4^4 <= max r * ||f||_2^4");
  lemma_cmd->add_option("--poly", poly_path);
  lemma_cmd->add_option("--poly-json", poly_inline);
  lemma_cmd->callback([&] {
    action = [&] {
      const NormReport r = lemma21_check(read_poly(poly_path, poly_inline));
      emit.push({{"l2_sq", to_string(r.l2_sq)},
                 {"l4_4", to_string(r.l4_4)},
                 {"max_rep", r.max_rep},
                 {"bound_rhs", to_string(r.bound_rhs)},
                 {"holds", r.holds}});
      return r.holds ? kOk : kPropertyViolated;
    };
  });

  auto* factor_cmd = app.add_subcommand("factor", "prime factorization");
  factor_cmd->add_option("--m", m_text)->required();
  factor_cmd->callback([&] {
    action = [&] {
      const Natural m = parse_natural(m_text);
      const Factorization f = factor(m);
      Json primes = Json::array();
      for (const auto& [p, e] : f.factors) primes.push_back(to_string(p) + "^" + std::to_string(e));
      emit.push({{"m", to_string(m)}, {"factors", primes}, {"tau", to_string(f.divisor_count())}});
      return kOk;
    };
  });

  auto* divisors_cmd = app.add_subcommand("divisors", "divisors of m in [lo, hi]");
  divisors_cmd->add_option("--m", m_text)->required();
  divisors_cmd->add_option("--lo", lo_text)->required();
  divisors_cmd->add_option("--hi", hi_text)->required();
  divisors_cmd->callback([&] {
    action = [&] {
      const Natural m = parse_natural(m_text);
      const auto ds = divisors_in(m, parse_natural(lo_text), parse_natural(hi_text));
      emit.push({{"m", to_string(m)},
                 {"lo", lo_text},
                 {"hi", hi_text},
                 {"count", ds.size()},
                 {"divisors", strings(ds)}});
      return kOk;
    };
  });

  auto* cuberoot_cmd = app.add_subcommand(
      "divwindow-cuberoot", "#{d | M : M^(1/3) - delta <= d <= M^(1/3)}");
  cuberoot_cmd->add_option("--M", m_text)->required();
  cuberoot_cmd->add_option("--delta", delta_text)->required();
  cuberoot_cmd->add_flag("--symmetric", symmetric, "use [M^(1/3) - delta, M^(1/3) + delta]");
  cuberoot_cmd->callback([&] {
    action = [&] {
      const WindowCount w = window_count_below_cuberoot(
          parse_natural(m_text), parse_ratio(delta_text),
          symmetric ? WindowSide::symmetric : WindowSide::below);
      emit.push(window_json(w));
      return kOk;
    };
  });

  auto* exp_cmd = app.add_subcommand("divwindow-exp", "#{d | m : m^alpha <= d <= m^alpha + m^beta}");
  exp_cmd->add_option("--m", m_text)->required();
  exp_cmd->add_option("--alpha", alpha_text)->required();
  exp_cmd->add_option("--beta", beta_text)->required();
  exp_cmd->callback([&] {
    action = [&] {
      const WindowCount w = window_count_exponent(parse_natural(m_text), parse_ratio(alpha_text),
                                                  parse_ratio(beta_text), config.precision_cap);
      emit.push(window_json(w));
      return (config.strict_precision && w.unresolved > 0) ? kUnresolved : kOk;
    };
  });

  auto* scan_cmd = app.add_subcommand("thm22-scan", "max window count over a range of m");
  scan_cmd->add_option("--alpha", alpha_text)->required();
  scan_cmd->add_option("--beta", beta_text)->required();
  scan_cmd->add_option("--m-max", m_max_text, "scan 2..m-max");
  scan_cmd->add_option("--m-from", m_from_text, "shard start");
  scan_cmd->add_option("--m-to", m_to_text, "shard end");
  scan_cmd->add_flag("--progress", progress, "emit a JSON line for every new maximum");
  scan_cmd->callback([&] {
    action = [&] {
      std::uint64_t from = 2;
      std::uint64_t to = 0;
      if (!m_max_text.empty()) {
        if (!m_from_text.empty() || !m_to_text.empty()) throw UsageError("--m-max excludes --m-from/--m-to");
        to = parse_u64(m_max_text, "--m-max");
      } else {
        if (m_from_text.empty() || m_to_text.empty()) throw UsageError("give --m-max or --m-from and --m-to");
        from = parse_u64(m_from_text, "--m-from");
        to = parse_u64(m_to_text, "--m-to");
      }
      const Thm22Scan s = thm22_scan(from, to, parse_ratio(alpha_text), parse_ratio(beta_text),
                                     config.precision_cap);
      if (progress) {
        for (const ScanMaximum& r : s.new_maxima) {
          emit.push({{"type", "progress"}, {"m", std::to_string(r.m)}, {"count", r.count}});
        }
      }
      emit.push(scan_json(s));
      return (config.strict_precision && s.unresolved > 0) ? kUnresolved : kOk;
    };
  });

  auto* merge_cmd = app.add_subcommand("merge", "fold thm22-scan shard outputs");
  merge_cmd->add_option("files", merge_files, "JSON-lines scan outputs")->required();
  merge_cmd->callback([&] {
    action = [&] {
      std::vector<Thm22Scan> parts;
      for (const std::string& path : merge_files) {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open " + path);
        for (std::string line; std::getline(in, line);) {
          if (line.empty()) continue;
          Json row;
          try {
            row = Json::parse(line);
          } catch (const Json::exception& e) {
            throw UsageError(path + ": " + e.what());
          }
          if (row.value("type", "") == "summary") parts.push_back(scan_from_json(row));
        }
      }
      if (parts.empty()) throw UsageError("no scan summaries found");
      const Thm22Scan merged = merge_scans(parts);
      emit.push(scan_json(merged));
      return (config.strict_precision && merged.unresolved > 0) ? kUnresolved : kOk;
    };
  });

  auto* repbound_cmd = app.add_subcommand(
      "repbound-check", "r(m) <= #{d | 4m in the cube-root window of width k^2/N}");
  repbound_cmd->add_option("--start", start)->required();
  repbound_cmd->add_option("--len", len)->required();
  repbound_cmd->callback([&] {
    action = [&] {
      const RepBoundReport r = rep_bound_check(parse_natural(start), parse_natural(len));
      Json violations = Json::array();
      for (const auto& v : r.violations) {
        violations.push_back({{"m", to_string(v.m)}, {"reps", v.reps}, {"window", v.window}});
      }
      emit.push({{"N", to_string(r.start)},
                 {"k", to_string(r.length)},
                 {"delta", to_string(r.delta)},
                 {"sums_checked", r.sums_checked},
                 {"representations", r.representations},
                 {"max_ratio", to_string(r.max_ratio)},
                 {"max_ratio_m", to_string(r.max_ratio_m)},
                 {"violations", violations},
                 {"reconstruction_failures", strings(r.reconstruction_failures)},
                 {"above_root_failures", strings(r.above_root_failures)},
                 {"ok", r.ok()}});
      return r.ok() ? kOk : kPropertyViolated;
    };
  });

  auto* pell_cmd = app.add_subcommand("pell", "solutions of 7X^2 + 114 = Y^2");
  pell_cmd->add_option("--count", count_text)->required();
  pell_cmd->callback([&] {
    action = [&] {
      for (const PellSolution& sol : pell_family(parse_u64(count_text, "--count"))) {
        const RamanujanQuadruple q = quadruple(sol);
        std::optional<SharpnessReport> sharp;
        if (sol.index > 0) sharp = sharpness_report(sol);
        emit.push(family_row(sol, q, sharp));
      }
      return kOk;
    };
  });

  auto* quad_cmd = app.add_subcommand("quadruple", "u1^3 + u2^3 = u3^3 + u4^3 from solution k");
  quad_cmd->add_option("--k", k_text)->required();
  quad_cmd->callback([&] {
    action = [&] {
      const std::uint64_t k = parse_u64(k_text, "--k");
      const PellSolution sol = pell_family(k + 1).back();
      const RamanujanQuadruple q = quadruple(sol);
      emit.push({{"k", k},
                 {"X", to_string(sol.x)},
                 {"Y", to_string(sol.y)},
                 {"u", Json::array({to_string(q.u1), to_string(q.u2), to_string(q.u3), to_string(q.u4)})},
                 {"v", to_string(q.v)},
                 {"N", to_string(q.start)},
                 {"U", to_string(q.sum)}});
      return kOk;
    };
  });

  auto* sharp_cmd = app.add_subcommand("sharpness", "spread / sqrt(N) of quadruple k (k >= 1)");
  sharp_cmd->add_option("--k", k_text)->required();
  sharp_cmd->callback([&] {
    action = [&] {
      const std::uint64_t k = parse_u64(k_text, "--k");
      const SharpnessReport r = sharpness_report(pell_family(k + 1).back());
      emit.push({{"k", k}, {"N", to_string(r.start)}, {"spread", to_string(r.spread)}, {"ratio", r.ratio}});
      return kOk;
    };
  });

  auto* verify_cmd = app.add_subcommand("verify-family", "re-verify the first count quadruples");
  verify_cmd->add_option("--count", count_text)->required();
  verify_cmd->callback([&] {
    action = [&] {
      try {
        const FamilyReport report = verify_family(parse_u64(count_text, "--count"));
        for (const FamilyRow& row : report.rows) {
          Json line = family_row(row.solution, row.quad, row.sharpness);
          line["witness_verified"] = true;
          emit.push(line);
        }
        return kOk;
      } catch (const FamilyCheckError& e) {
        err << e.what() << '\n';
        return kPropertyViolated;
      }
    };
  });

  std::vector<std::string> argv_store{"cubelens"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "cubelens: " << e.what() << '\n';
    return kUsage;
  }

  int code = kOk;
  try {
    config.precision_cap = precision_flag.empty() ? env_precision_cap()
                                                  : parse_u64(precision_flag, "--precision-cap");
    if (config.precision_cap < kInitialPrecision) throw UsageError("--precision-cap must be >= 128");
    if (workers < 0) throw UsageError("--workers must be positive");
    if (workers > 0) omp_set_num_threads(workers);
    code = action();
  } catch (const UsageError& e) {
    err << "cubelens: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "cubelens: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "cubelens: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "cubelens: internal error: " << e.what() << '\n';
    return kPropertyViolated;
  }

  if (config.output_path.empty()) {
    emit.write(out, config.format);
  } else {
    std::ofstream file(config.output_path);
    if (!file) {
      err << "cubelens: cannot write " << config.output_path << '\n';
      return kUsage;
    }
    emit.write(file, config.format);
  }
  return code;
}

}  // namespace cubelens::cli
