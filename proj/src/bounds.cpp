#include "cgt/bounds.hpp"

#include <algorithm>
#include <bit>
#include <fstream>

#include "json.hpp"

namespace cgt {

namespace {

using boost::multiprecision::msb;
using boost::multiprecision::pow;

int decimal_digits(BigCount v) { return static_cast<int>(v.str().size()); }

}  // namespace

ClassicalUpperBounds classical_upper(unsigned gn, unsigned gn1) {
  if (gn < 1 || gn1 < 1)
    throw UsageError("classical_upper: set sizes must be positive");
  ClassicalUpperBounds out;
  out.first = pow2(gn + 1) + gn;
  out.second = BigCount(gn) + pow2(gn) + 2;
  if (gn >= 2 * gn1 + 1) {
    // gn1^2 + (5/2)gn1 + 2 need not be integral; absorb the half into the
    // power of two.
    BigCount doubled = BigCount(2) * gn1 * gn1 + BigCount(5) * gn1 + 4;
    unsigned exponent = gn - 2 * gn1 - 1;
    out.third = BigCount(gn) + doubled * pow2(exponent);
    unsigned shift = 0;
    BigCount odd = doubled;
    while (odd % 2 == 0) {
      odd /= 2;
      ++shift;
    }
    out.third_log10_coarse = decimal_digits(odd) +
                             0.3011 * static_cast<double>(exponent + shift);
    out.has_third = true;
  }
  return out;
}

ClassicalLowerBounds classical_lower(unsigned gn, unsigned gn1) {
  if (gn1 < 1 || gn < 2)
    throw UsageError("classical_lower: needs gn >= 2 and gn1 >= 1");
  ClassicalLowerBounds out;
  out.first = pow2(gn / (2 * gn1));
  out.second = BigCount(8 * gn1 - 4) * (pow2((gn - 2) / (2 * gn1 - 1)) - 1);
  return out;
}

bool classical_lower_second_exceeds(unsigned gn, unsigned gn1,
                                    const BigCount& threshold) {
  if (gn1 < 1 || gn < 2)
    throw UsageError("classical_lower_second_exceeds: bad arguments");
  unsigned p = gn - 2;
  unsigned q = 2 * gn1 - 1;
  BigCount m = 8 * gn1 - 4;
  // m * (2^{p/q} - 1) > B  <=>  m^q * 2^p > (B + m)^q
  return pow(m, q) * pow2(p) > pow(threshold + m, q);
}

BigCount width_lower_bound(int width) {
  if (width < 0) throw UsageError("width_lower_bound: negative width");
  return pow2(static_cast<unsigned long>(width) + 2);
}

namespace {

// Comparable-in-middle bitmask for each element of an adjacent layer, plus
// the check that no middle element sits on the wrong side of it.
std::vector<std::vector<std::uint64_t>> comparability_masks(
    const GameSet& set, const std::vector<int>& layer,
    const std::vector<int>& middle, bool layer_is_above) {
  std::size_t words = (middle.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(
      layer.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < layer.size(); ++i) {
    for (std::size_t j = 0; j < middle.size(); ++j) {
      OrderRelation r = set.relation(layer[i], middle[j]);
      OrderRelation expect =
          layer_is_above ? OrderRelation::Greater : OrderRelation::Less;
      OrderRelation wrong =
          layer_is_above ? OrderRelation::Less : OrderRelation::Greater;
      if (r == wrong)
        throw InvariantViolation(
            "middle layer element on the wrong side of an adjacent layer");
      if (r == expect) masks[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  return masks;
}

int mask_popcount(const std::vector<std::uint64_t>& mask) {
  int total = 0;
  for (std::uint64_t w : mask) total += std::popcount(w);
  return total;
}

int union_popcount(const std::vector<std::uint64_t>& a,
                   const std::vector<std::uint64_t>& b) {
  int total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] | b[i]);
  return total;
}

struct SideTerms {
  BigCount singles = 0;
  BigCount pairs_exact = 0;
  BigCount pairs_grouped = 0;
};

SideTerms side_terms(const GameSet& set, const std::vector<int>& layer,
                     const std::vector<int>& middle, bool layer_is_above) {
  SideTerms terms;
  auto masks = comparability_masks(set, layer, middle, layer_is_above);
  int w = static_cast<int>(middle.size());
  std::vector<int> degree(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    degree[i] = mask_popcount(masks[i]);
    terms.singles += pow2(static_cast<unsigned long>(w - degree[i]));
  }
  for (std::size_t i = 0; i < layer.size(); ++i) {
    for (std::size_t j = i + 1; j < layer.size(); ++j) {
      terms.pairs_exact +=
          pow2(static_cast<unsigned long>(w - union_popcount(masks[i], masks[j])));
      int grouped_exp = w - degree[i] - degree[j];
      // The grouped form assumes the two comparable sets are disjoint; when
      // they cannot be, fall back to counting the bare pair, which keeps the
      // term a lower bound.
      terms.pairs_grouped +=
          grouped_exp >= 0 ? pow2(static_cast<unsigned long>(grouped_exp))
                           : BigCount(1);
    }
  }
  return terms;
}

}  // namespace

DegreeProfile middle_degree_profile(const GameSet& set,
                                    const Stratification& strat, int layer) {
  int c = strat.middle_layer();
  if (layer != c - 1 && layer != c + 1)
    throw UsageError("middle_degree_profile: layer must be adjacent to the middle");
  DegreeProfile profile;
  profile.layer = layer;
  auto masks = comparability_masks(
      set, strat.layers[static_cast<std::size_t>(layer)],
      strat.layers[static_cast<std::size_t>(c)], layer < c);
  for (const auto& mask : masks) ++profile.histogram[mask_popcount(mask)];
  return profile;
}

MiddleLowerReport middle_lower(const GameSet& set,
                               const Stratification& strat) {
  int c = strat.middle_layer();
  int m = strat.layer_count();
  std::size_t widest = strat.layers[static_cast<std::size_t>(c)].size();
  for (int i = 0; i < m; ++i)
    if (i != c && strat.layers[static_cast<std::size_t>(i)].size() == widest)
      throw UsageError("middle_lower: widest layer is not unique");

  MiddleLowerReport report;
  report.middle_layer = c;
  report.width = static_cast<int>(widest);
  report.middle_subsets = pow2(widest);

  const std::vector<int>& middle = strat.layers[static_cast<std::size_t>(c)];
  if (c > 0) {
    SideTerms above =
        side_terms(set, strat.layers[static_cast<std::size_t>(c - 1)], middle,
                   /*layer_is_above=*/true);
    report.singles_above = above.singles;
    report.pairs_above_exact = above.pairs_exact;
    report.pairs_above_grouped = above.pairs_grouped;
  }
  if (c + 1 < m) {
    SideTerms below =
        side_terms(set, strat.layers[static_cast<std::size_t>(c + 1)], middle,
                   /*layer_is_above=*/false);
    report.singles_below = below.singles;
    report.pairs_below_exact = below.pairs_exact;
    report.pairs_below_grouped = below.pairs_grouped;
  }

  report.antichains_exact = report.middle_subsets + report.singles_above +
                            report.singles_below + report.pairs_above_exact +
                            report.pairs_below_exact;
  report.antichains_grouped = report.middle_subsets + report.singles_above +
                              report.singles_below +
                              report.pairs_above_grouped +
                              report.pairs_below_grouped;
  report.bound_exact = 4 * report.antichains_exact;
  report.bound_grouped = 4 * report.antichains_grouped;
  report.headline_log2 = msb(report.antichains_grouped) + 2;
  report.headline = pow2(report.headline_log2);
  return report;
}

BigCount chain_product_upper(const std::vector<int>& lengths) {
  BigCount product = 1;
  for (int len : lengths) {
    if (len < 0) throw UsageError("chain_product_upper: negative length");
    product *= BigCount(len) + 1;
  }
  return product * product;
}

BigCount tail_product(const std::vector<int>& lengths, int k) {
  if (k < 0 || k > static_cast<int>(lengths.size()))
    throw UsageError("tail_product: prefix out of range");
  BigCount product = 1;
  for (std::size_t j = static_cast<std::size_t>(k); j < lengths.size(); ++j)
    product *= BigCount(lengths[j]) + 1;
  return product;
}

RefinedUpperReport refined_upper(const Poset& poset,
                                 const std::vector<std::vector<int>>& chains,
                                 std::optional<int> prefix) {
  int w = static_cast<int>(chains.size());
  if (prefix && (*prefix < 0 || *prefix > w))
    throw UsageError("refined_upper: prefix out of range");

  std::vector<int> lengths;
  lengths.reserve(chains.size());
  for (const auto& chain : chains) lengths.push_back(static_cast<int>(chain.size()));

  // t(i,j) = max over elements of chain i of the number of incomparable
  // elements in chain j (j > i).
  std::vector<BigCount> s_values(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) {
    BigCount s = lengths[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < w; ++j) {
      int best = 0;
      for (int a : chains[static_cast<std::size_t>(i)]) {
        int count = 0;
        for (int b : chains[static_cast<std::size_t>(j)])
          if (poset.incomparable(a, b)) ++count;
        best = std::max(best, count);
      }
      s *= BigCount(best) + 1;
    }
    s_values[static_cast<std::size_t>(i)] = s;
  }

  auto bound_for = [&](int k) {
    BigCount inner = tail_product(lengths, k);
    for (int i = 0; i < k; ++i) inner += s_values[static_cast<std::size_t>(i)];
    return inner;
  };

  RefinedUpperReport report;
  report.s_values = s_values;
  if (prefix) {
    report.prefix = *prefix;
  } else {
    report.auto_prefix = true;
    int best_k = 0;
    BigCount best = bound_for(0);
    for (int k = 1; k <= w; ++k) {
      BigCount inner = bound_for(k);
      if (inner < best) {
        best = inner;
        best_k = k;
      }
    }
    report.prefix = best_k;
  }
  report.tail = tail_product(lengths, report.prefix);
  report.inner_sum = bound_for(report.prefix);
  report.bound = report.inner_sum * report.inner_sum;
  return report;
}

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad fixture " + path + ": " + e.what());
  }
}

}  // namespace

std::vector<int> load_length_fixture(const std::string& path) {
  auto doc = load_json(path);
  if (!doc.contains("lengths"))
    throw IoError("fixture " + path + " has no 'lengths'");
  return doc["lengths"].get<std::vector<int>>();
}

std::vector<int> load_layer_size_fixture(const std::string& path) {
  auto doc = load_json(path);
  if (!doc.contains("layer_sizes"))
    throw IoError("fixture " + path + " has no 'layer_sizes'");
  return doc["layer_sizes"].get<std::vector<int>>();
}

std::vector<std::vector<std::string>> load_division_fixture(
    const std::string& path) {
  auto doc = load_json(path);
  if (!doc.contains("chains"))
    throw IoError("fixture " + path + " has no 'chains'");
  return doc["chains"].get<std::vector<std::vector<std::string>>>();
}

std::vector<std::pair<int, int>> load_cap_fixture(const std::string& path) {
  auto doc = load_json(path);
  if (!doc.contains("caps")) throw IoError("fixture " + path + " has no 'caps'");
  std::vector<std::pair<int, int>> out;
  for (const auto& entry : doc["caps"])
    out.emplace_back(entry.at(0).get<int>(), entry.at(1).get<int>());
  return out;
}

std::vector<std::vector<int>> resolve_division(
    Arena& arena, const GameSet& set,
    const std::vector<std::vector<std::string>>& chains) {
  std::vector<std::vector<int>> resolved;
  std::vector<char> used(static_cast<std::size_t>(set.size()), 0);
  for (const auto& chain : chains) {
    std::vector<int> indices;
    for (const std::string& name : chain) {
      GameId id = read_game(name, arena);
      int idx = set.find(id);
      if (idx < 0)
        throw InvariantViolation("division fixture: '" + name +
                                 "' is not in the game set");
      if (used[static_cast<std::size_t>(idx)])
        throw InvariantViolation("division fixture: '" + name +
                                 "' appears twice");
      used[static_cast<std::size_t>(idx)] = 1;
      indices.push_back(idx);
    }
    // Descending in the game order, then verify it is a chain.
    std::sort(indices.begin(), indices.end(), [&](int a, int b) {
      return set.relation(a, b) == OrderRelation::Greater;
    });
    for (std::size_t i = 0; i + 1 < indices.size(); ++i)
      if (set.relation(indices[i], indices[i + 1]) != OrderRelation::Greater)
        throw InvariantViolation("division fixture: a chain is not a chain");
    resolved.push_back(std::move(indices));
  }
  for (char u : used)
    if (!u)
      throw InvariantViolation("division fixture: does not cover the set");
  return resolved;
}

VerificationReport verify_day3(
    Arena& arena, Printer& printer,
    const std::vector<std::vector<std::string>>& day2_division, int threads) {
  EnumerateOptions options;
  options.threads = threads;
  GameSet g2 = enumerate_day(arena, printer, 2, options);
  Poset poset = g2.to_poset();
  Stratification strat = stratify(poset);

  ChainDivisionResult own = chain_division(poset, strat);
  WidthCertificate cert = width_certificate(poset, strat, own.value());

  VerificationReport report;
  report.lower_width = width_lower_bound(cert.width);
  MiddleLowerReport middle = middle_lower(g2, strat);
  report.lower_middle_exact = middle.bound_exact;
  report.lower_middle_grouped = middle.bound_grouped;

  std::vector<std::vector<int>> fixture =
      resolve_division(arena, g2, day2_division);
  std::vector<int> fixture_lengths;
  for (const auto& chain : fixture)
    fixture_lengths.push_back(static_cast<int>(chain.size()));
  report.upper_simple_fixture = chain_product_upper(fixture_lengths);
  report.upper_refined_fixture =
      refined_upper(poset, fixture, static_cast<int>(fixture.size())).bound;

  report.upper_simple_own = chain_product_upper(own.value().lengths());
  report.upper_refined_own =
      refined_upper(poset, own.value().chains, std::nullopt).bound;

  GameSet g3 = enumerate_day(arena, printer, 3, options);
  report.truth = g3.size();

  report.ordered = report.lower_width <= report.lower_middle_exact &&
                   report.lower_middle_exact <= report.truth &&
                   report.truth <= report.upper_refined_fixture &&
                   report.upper_refined_fixture <= report.upper_simple_fixture;
  return report;
}

}  // namespace cgt
