#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cgt/bounds.hpp"
#include "cgt/enumerate.hpp"
#include "cgt/notation.hpp"
#include "cgt/poset.hpp"
#include "json.hpp"

namespace {

using cgt::Arena;
using cgt::BigCount;
using cgt::GameId;
using cgt::GameSet;
using cgt::Printer;
using json = nlohmann::json;

struct Options {
  int threads = 1;
  bool as_json = false;
  std::string fixtures_dir = "fixtures";
};

json bound_entry(const std::string& id, const BigCount& exact,
                 const std::string& provenance, const std::string& note = "") {
  json entry;
  entry["id"] = id;
  entry["exact"] = exact.str();
  entry["log10"] = cgt::log10_exact(exact);
  entry["provenance"] = provenance;
  if (!note.empty()) entry["note"] = note;
  return entry;
}

void print_entry_line(const json& entry) {
  std::cout << "  " << entry["id"].get<std::string>() << " = "
            << entry["exact"].get<std::string>() << "  (10^"
            << entry["log10"].get<double>() << ")";
  if (entry.contains("note"))
    std::cout << "  [" << entry["note"].get<std::string>() << "]";
  std::cout << "\n";
}

int run_gen(const Options& opt, int day, int max_day,
            const std::string& out_path) {
  if (max_day > 3)
    std::cerr << "warning: sets beyond day 3 hold at least 2^94 > 10^28 "
                 "canonical forms; enumeration will not complete\n";
  Arena arena;
  Printer printer(arena);
  cgt::EnumerateOptions eopt;
  eopt.threads = opt.threads;
  eopt.day_cap = max_day;
  GameSet set = cgt::enumerate_day(arena, printer, day, eopt);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw cgt::IoError("cannot open output file: " + out_path);
    cgt::write_game_set(set, out);
    if (!out) throw cgt::IoError("write failed: " + out_path);
  }
  if (opt.as_json) {
    json doc;
    doc["command"] = "gen";
    doc["day"] = set.day;
    doc["count"] = set.size();
    if (!out_path.empty())
      doc["out"] = out_path;
    else
      doc["games"] = set.names;
    std::cout << doc.dump(2) << "\n";
  } else if (out_path.empty()) {
    cgt::write_game_set(set, std::cout);
  } else {
    std::cout << "day " << set.day << ": " << set.size() << " games -> "
              << out_path << "\n";
  }
  return 0;
}

int run_stratify(const Options& opt, const std::string& in_path) {
  Arena arena;
  Printer printer(arena);
  GameSet set = cgt::load_game_set_file(arena, printer, in_path);
  cgt::Poset poset = set.to_poset();
  cgt::Stratification strat = cgt::stratify(poset);
  bool symmetric = cgt::check_symmetry(arena, set, strat);
  if (opt.as_json) {
    json doc;
    doc["command"] = "stratify";
    doc["day"] = set.day;
    doc["count"] = set.size();
    doc["layer_count"] = strat.layer_count();
    doc["symmetric"] = symmetric;
    doc["middle_layer"] = strat.middle_layer() + 1;
    json layers = json::array();
    for (int i = 0; i < strat.layer_count(); ++i) {
      json layer;
      layer["index"] = i + 1;
      layer["size"] = strat.layers[i].size();
      json games = json::array();
      for (int s : strat.layers[i]) games.push_back(set.names[s]);
      layer["games"] = games;
      layers.push_back(layer);
    }
    doc["layers"] = layers;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "stratification of " << set.size() << " games (day "
              << set.day << "): " << strat.layer_count() << " layers\n";
    for (int i = 0; i < strat.layer_count(); ++i)
      std::cout << "  U" << i + 1 << ": " << strat.layers[i].size() << "\n";
    std::cout << "symmetric: " << (symmetric ? "yes" : "no") << "\n";
  }
  if (!symmetric)
    throw cgt::InvariantViolation("stratification not symmetric");
  return 0;
}

int run_chains(const Options& opt, const std::string& in_path) {
  Arena arena;
  Printer printer(arena);
  GameSet set = cgt::load_game_set_file(arena, printer, in_path);
  cgt::Poset poset = set.to_poset();
  cgt::Stratification strat = cgt::stratify(poset);
  cgt::ChainDivisionResult result = cgt::chain_division(poset, strat);
  const cgt::ChainDivision& division = result.value();  // throws on failure
  cgt::WidthCertificate cert = cgt::width_certificate(poset, strat, division);
  std::vector<int> lengths = division.lengths();
  std::vector<int> multiset = lengths;
  std::sort(multiset.begin(), multiset.end(), std::greater<int>());
  if (opt.as_json) {
    json doc;
    doc["command"] = "chains";
    doc["day"] = set.day;
    doc["count"] = set.size();
    doc["chain_count"] = division.chain_count();
    doc["width"] = cert.width;
    doc["lengths"] = lengths;
    doc["length_multiset"] = multiset;
    json matching_sizes = json::array();
    for (const cgt::Matching& matching : result.matchings)
      matching_sizes.push_back(matching.size());
    doc["matching_sizes"] = matching_sizes;
    json chains = json::array();
    for (int i = 0; i < division.chain_count(); ++i) {
      json chain;
      chain["index"] = i + 1;
      chain["length"] = division.chains[i].size();
      json games = json::array();
      for (int s : division.chains[i]) games.push_back(set.names[s]);
      chain["games"] = games;
      chains.push_back(chain);
    }
    doc["chains"] = chains;
    json antichain = json::array();
    for (int s : cert.antichain) antichain.push_back(set.names[s]);
    doc["width_antichain"] = antichain;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "chain division of " << set.size() << " games (day "
              << set.day << "): " << division.chain_count()
              << " chains, width " << cert.width << "\n";
    std::cout << "lengths:";
    for (int l : lengths) std::cout << " " << l;
    std::cout << "\nsorted: ";
    for (int l : multiset) std::cout << " " << l;
    std::cout << "\n";
  }
  return 0;
}

int run_bounds_day4(const Options& opt, const std::string& chain_source,
                    bool fixtures) {
  Arena arena;
  Printer printer(arena);
  cgt::EnumerateOptions eopt;
  eopt.threads = opt.threads;
  GameSet g3 = cgt::enumerate_day(arena, printer, 3, eopt);
  cgt::Poset poset = g3.to_poset();
  cgt::Stratification strat = cgt::stratify(poset);

  std::vector<std::vector<int>> chains;
  std::string chain_provenance;
  if (chain_source == "auto") {
    cgt::ChainDivisionResult result = cgt::chain_division(poset, strat);
    chains = result.value().chains;
    chain_provenance = "chain division computed from this run";
  } else {
    chains = cgt::resolve_division(arena, g3,
                                   cgt::load_division_fixture(chain_source));
    chain_provenance = "chain division loaded from " + chain_source;
  }
  cgt::WidthCertificate cert =
      cgt::width_certificate(poset, strat, cgt::ChainDivision{chains});

  json entries = json::array();

  cgt::MiddleLowerReport middle = cgt::middle_lower(g3, strat);
  entries.push_back(bound_entry(
      "lower/width", cgt::width_lower_bound(cert.width), "width certificate",
      "4*2^" + std::to_string(cert.width)));
  entries.push_back(bound_entry("lower/middle-singles", middle.singles_above,
                                "stratification",
                                "one element beside the widest layer"));
  entries.push_back(bound_entry("lower/middle-pairs-grouped",
                                middle.pairs_above_grouped, "stratification",
                                "two elements, degree-grouped"));
  entries.push_back(bound_entry("lower/middle-grouped", middle.bound_grouped,
                                "stratification",
                                "4*(2^w + 2*singles + 2*grouped pairs)"));
  entries.push_back(bound_entry("lower/middle-exact", middle.bound_exact,
                                "stratification", "exact pair counts"));
  entries.push_back(bound_entry("lower/headline", middle.headline,
                                "stratification",
                                "2^" + std::to_string(middle.headline_log2)));

  std::vector<int> own_lengths;
  for (const auto& chain : chains)
    own_lengths.push_back(static_cast<int>(chain.size()));
  BigCount simple_own = cgt::chain_product_upper(own_lengths);
  cgt::RefinedUpperReport refined_own =
      cgt::refined_upper(poset, chains, std::nullopt);
  entries.push_back(bound_entry("upper/simple", simple_own, chain_provenance,
                                "squared product of (length+1)"));
  entries.push_back(bound_entry(
      "upper/refined", refined_own.bound, chain_provenance,
      "hybrid prefix K=" + std::to_string(refined_own.prefix) + " (auto)"));

  std::optional<BigCount> fixture_simple;
  if (fixtures) {
    std::vector<int> table2 =
        cgt::load_length_fixture(opt.fixtures_dir + "/table2.json");
    fixture_simple = cgt::chain_product_upper(table2);
    entries.push_back(bound_entry("upper/simple-fixture", *fixture_simple,
                                  "fixture:table2",
                                  "squared product of (length+1)"));
    BigCount tail = cgt::tail_product(table2, 7);
    entries.push_back(bound_entry("upper/fixture-tail-after-7", tail,
                                  "fixture:table2",
                                  "product over chains 8..86"));
    auto caps = cgt::load_cap_fixture(opt.fixtures_dir + "/table3.json");
    BigCount cap_sum = 0;
    for (auto [mantissa, exp] : caps)
      cap_sum += BigCount(mantissa) * cgt::pow10(exp);
    BigCount hybrid = (cap_sum + tail) * (cap_sum + tail);
    entries.push_back(bound_entry("upper/refined-fixture", hybrid,
                                  "fixture:table3 + fixture:table2 tail",
                                  "(sum of prefix caps + tail)^2"));
  }

  cgt::ClassicalUpperBounds cu = cgt::classical_upper(1474, 22);
  cgt::ClassicalLowerBounds cl = cgt::classical_lower(1474, 22);
  entries.push_back(
      bound_entry("classical/upper-third", cu.third, "set sizes 1474, 22",
                  "coarse log10 " + std::to_string(cu.third_log10_coarse)));
  entries.push_back(bound_entry("classical/lower-second", cl.second,
                                "set sizes 1474, 22", "floored exponent"));

  json headline;
  headline["lower"] = "2^" + std::to_string(middle.headline_log2) + " = " +
                      middle.headline.str() + " (exceeds 10^28.2)";
  headline["upper_own_division"] =
      refined_own.bound.str() + " (10^" +
      std::to_string(cgt::log10_exact(refined_own.bound)) + ")";
  if (fixture_simple)
    headline["upper_fixture"] =
        fixture_simple->str() + " (10^" +
        std::to_string(cgt::log10_exact(*fixture_simple)) + ")";

  if (opt.as_json) {
    json doc;
    doc["command"] = "bounds";
    doc["mode"] = "day4";
    doc["entries"] = entries;
    doc["headline"] = headline;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "bounds on the number of canonical forms born by day 4\n";
    for (const auto& entry : entries) print_entry_line(entry);
    std::cout << "headline:\n  lower  " << headline["lower"].get<std::string>()
              << "\n";
    if (headline.contains("upper_fixture"))
      std::cout << "  upper (fixture division arithmetic)  "
                << headline["upper_fixture"].get<std::string>() << "\n";
    std::cout << "  upper (this run's division)          "
              << headline["upper_own_division"].get<std::string>() << "\n";
  }
  return 0;
}

int run_bounds_classical(const Options& opt, unsigned gn, unsigned gn1) {
  cgt::ClassicalUpperBounds upper = cgt::classical_upper(gn, gn1);
  cgt::ClassicalLowerBounds lower = cgt::classical_lower(gn, gn1);
  json entries = json::array();
  std::string prov =
      "set sizes " + std::to_string(gn) + ", " + std::to_string(gn1);
  entries.push_back(bound_entry("upper/first", upper.first, prov));
  entries.push_back(bound_entry("upper/second", upper.second, prov));
  if (upper.has_third)
    entries.push_back(
        bound_entry("upper/third", upper.third, prov,
                    "coarse log10 " +
                        std::to_string(upper.third_log10_coarse)));
  entries.push_back(
      bound_entry("lower/first", lower.first, prov, "floored exponent"));
  entries.push_back(
      bound_entry("lower/second", lower.second, prov, "floored exponent"));
  if (opt.as_json) {
    json doc;
    doc["command"] = "bounds";
    doc["mode"] = "classical";
    doc["gn"] = gn;
    doc["gn1"] = gn1;
    doc["entries"] = entries;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "classical recurrence bounds at (" << gn << ", " << gn1
              << ")\n";
    for (const auto& entry : entries) print_entry_line(entry);
  }
  return 0;
}

int run_verify(const Options& opt) {
  Arena arena;
  Printer printer(arena);
  auto fig4 =
      cgt::load_division_fixture(opt.fixtures_dir + "/fig4_chains.json");
  cgt::VerificationReport report =
      cgt::verify_day3(arena, printer, fig4, opt.threads);
  json entries = json::array();
  entries.push_back(bound_entry("lower/width", report.lower_width,
                                "day-2 stratification", "4*2^4"));
  entries.push_back(bound_entry("lower/middle-exact",
                                report.lower_middle_exact,
                                "day-2 stratification"));
  entries.push_back(bound_entry("lower/middle-grouped",
                                report.lower_middle_grouped,
                                "day-2 stratification"));
  entries.push_back(bound_entry("upper/simple-fixture",
                                report.upper_simple_fixture,
                                "fixture:fig4_chains"));
  entries.push_back(bound_entry("upper/refined-fixture",
                                report.upper_refined_fixture,
                                "fixture:fig4_chains", "full prefix"));
  entries.push_back(bound_entry("upper/simple-own", report.upper_simple_own,
                                "own day-2 division"));
  entries.push_back(bound_entry("upper/refined-own", report.upper_refined_own,
                                "own day-2 division", "auto prefix"));
  entries.push_back(bound_entry("truth", report.truth, "day-3 enumeration"));
  if (opt.as_json) {
    json doc;
    doc["command"] = "verify";
    doc["mode"] = "day3";
    doc["entries"] = entries;
    doc["ordered"] = report.ordered;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "day-3 verification of the bound pipeline\n";
    for (const auto& entry : entries) print_entry_line(entry);
    std::cout << "ordering lower <= truth <= upper: "
              << (report.ordered ? "ok" : "VIOLATED") << "\n";
  }
  if (!report.ordered)
    throw cgt::InvariantViolation("verification ordering failed");
  return 0;
}

int run_canon(const Options& opt, const std::string& expr) {
  Arena arena;
  GameId id = cgt::read_game(expr, arena);
  Printer printer(arena);
  const std::string& name = printer.name(id);
  if (opt.as_json) {
    json doc;
    doc["command"] = "canon";
    doc["input"] = expr;
    doc["canonical"] = name;
    doc["birthday"] = arena.birthday(id);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << name << "\n";
  }
  return 0;
}

int run_cmp(const Options& opt, const std::string& left,
            const std::string& right) {
  Arena arena;
  GameId a = cgt::read_game(left, arena);
  GameId b = cgt::read_game(right, arena);
  const char* relation = cgt::to_string(arena.compare(a, b));
  if (opt.as_json) {
    Printer printer(arena);
    json doc;
    doc["command"] = "cmp";
    doc["left"] = printer.name(a);
    doc["right"] = printer.name(b);
    doc["relation"] = relation;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << relation << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for canonical game forms born by day n"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--threads", opt.threads,
                 "worker threads (results identical for any value)")
      ->check(CLI::Range(1, 256));
  app.add_flag("--json", opt.as_json, "machine-readable JSON output");
  app.add_option("--fixtures-dir", opt.fixtures_dir,
                 "directory holding the reference fixtures");

  auto* gen = app.add_subcommand("gen", "enumerate the games born by day N");
  int gen_day = 0;
  int gen_max_day = 3;
  std::string gen_out;
  gen->add_option("--day", gen_day, "day to enumerate")->required();
  gen->add_option("--out", gen_out, "output game-set file (default: stdout)");
  gen->add_option("--max-day", gen_max_day,
                  "enumeration cap override (days past 3 cannot complete)");

  auto* stratify_cmd =
      app.add_subcommand("stratify", "layer a game-set file into antichains");
  std::string stratify_in;
  stratify_cmd->add_option("--in", stratify_in, "game-set file")->required();

  auto* chains_cmd =
      app.add_subcommand("chains", "chain division of a game-set file");
  std::string chains_in;
  chains_cmd->add_option("--in", chains_in, "game-set file")->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "bound computations");
  bounds_cmd->require_subcommand(1);
  auto* day4 =
      bounds_cmd->add_subcommand("day4", "all bounds on the day-4 census");
  std::string day4_chains = "auto";
  bool day4_fixtures = true;
  day4->add_option("--chains", day4_chains,
                   "'auto' or a division fixture file for day 3");
  day4->add_flag("--fixtures,!--no-fixtures", day4_fixtures,
                 "include fixture-based reference arithmetic");
  auto* classical = bounds_cmd->add_subcommand(
      "classical", "recurrence bounds from (|G_n|, |G_{n-1}|)");
  unsigned cl_gn = 0, cl_gn1 = 0;
  classical->add_option("--gn", cl_gn, "|G_n|")->required();
  classical->add_option("--gn1", cl_gn1, "|G_{n-1}|")->required();

  auto* verify_cmd = app.add_subcommand(
      "verify", "re-run the bound pipeline where the truth is known");
  std::string verify_what;
  verify_cmd->add_option("what", verify_what, "only 'day3' is defined")
      ->required()
      ->check(CLI::IsMember({"day3"}));

  auto* canon_cmd =
      app.add_subcommand("canon", "canonical form of an expression");
  std::string canon_expr;
  canon_cmd->add_option("expr", canon_expr, "game expression")->required();

  auto* cmp_cmd = app.add_subcommand("cmp", "order relation of two games");
  std::string cmp_left, cmp_right;
  cmp_cmd->add_option("left", cmp_left, "game expression")->required();
  cmp_cmd->add_option("right", cmp_right, "game expression")->required();

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(opt, gen_day, gen_max_day, gen_out);
    if (stratify_cmd->parsed()) return run_stratify(opt, stratify_in);
    if (chains_cmd->parsed()) return run_chains(opt, chains_in);
    if (bounds_cmd->parsed()) {
      if (day4->parsed())
        return run_bounds_day4(opt, day4_chains, day4_fixtures);
      return run_bounds_classical(opt, cl_gn, cl_gn1);
    }
    if (verify_cmd->parsed()) return run_verify(opt);
    if (canon_cmd->parsed()) return run_canon(opt, canon_expr);
    if (cmp_cmd->parsed()) return run_cmp(opt, cmp_left, cmp_right);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const cgt::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cgt::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cgt::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cgt::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const cgt::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
