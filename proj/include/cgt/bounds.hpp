#ifndef CGT_BOUNDS_HPP
#define CGT_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgt/big_count.hpp"
#include "cgt/enumerate.hpp"
#include "cgt/poset.hpp"

namespace cgt {

// ---- Classical recurrences on |G_{n+1}| from (|G_n|, |G_{n-1}|) ----

struct ClassicalUpperBounds {
  BigCount first;   // 2^{gn+1} + gn
  BigCount second;  // gn + 2^{gn} + 2
  // Third form needs gn >= 2*gn1 + 1; has_third says whether it applies.
  BigCount third;  // gn + (gn1^2 + (5/2)gn1 + 2) * 2^{gn - 2*gn1}
  bool has_third = false;
  // Decimal-digit overestimate of log10(third): digits of the odd multiplier
  // plus 0.3011 per power of two. Always >= the exact log10.
  double third_log10_coarse = 0.0;
};

ClassicalUpperBounds classical_upper(unsigned gn, unsigned gn1);

struct ClassicalLowerBounds {
  // Fractional exponents are floored, which keeps both values valid lower
  // bounds but understates them; see classical_lower_second_exceeds for the
  // exact comparison against a threshold.
  BigCount first;   // 2^{floor(gn / (2*gn1))}
  BigCount second;  // (8*gn1 - 4) * (2^{floor((gn-2)/(2*gn1-1))} - 1)
};

ClassicalLowerBounds classical_lower(unsigned gn, unsigned gn1);

// Exact test of (8*gn1-4) * (2^{(gn-2)/(2*gn1-1)} - 1) > threshold with the
// true fractional exponent p/q: equivalent to m^q * 2^p > (threshold + m)^q
// for m = 8*gn1 - 4. No rounding anywhere.
bool classical_lower_second_exceeds(unsigned gn, unsigned gn1,
                                    const BigCount& threshold);

// ---- Lower bounds from the day-3 poset ----

// Four extreme forms per antichain of the widest layer: 4 * 2^width.
BigCount width_lower_bound(int width);

struct DegreeProfile {
  int layer = 0;                    // 0-based layer index
  std::map<int, int> histogram;     // #middle-layer comparables -> #elements
};

// For a layer adjacent to the widest one: how many middle-layer elements are
// below (layer above the middle) or above (layer below) each element.
DegreeProfile middle_degree_profile(const GameSet& set,
                                    const Stratification& strat, int layer);

struct MiddleLowerReport {
  int middle_layer = 0;  // 0-based
  int width = 0;
  BigCount middle_subsets;  // 2^width
  BigCount singles_above, singles_below;
  BigCount pairs_above_exact, pairs_below_exact;
  BigCount pairs_above_grouped, pairs_below_grouped;
  BigCount antichains_exact;    // middle + singles + exact pairs
  BigCount antichains_grouped;  // grouped pair variant (a lower bound)
  BigCount bound_exact;         // 4 * antichains_exact
  BigCount bound_grouped;       // 4 * antichains_grouped
  unsigned headline_log2 = 0;   // bound_grouped >= 2^headline_log2
  BigCount headline;            // 2^headline_log2
};

// Counts antichains with at most two elements drawn from the layers adjacent
// to the widest layer, exactly and in the degree-grouped form (the grouped
// pair term treats the comparables of the two elements as disjoint, so it
// can only undercount). Requires a unique widest layer.
MiddleLowerReport middle_lower(const GameSet& set, const Stratification& strat);

// ---- Upper bounds from a chain division ----

// (prod (len_i + 1))^2: option sets pick at most one element per chain.
BigCount chain_product_upper(const std::vector<int>& lengths);

// prod_{j > k} (len_j + 1), with k counted in chains (k=0 keeps everything).
BigCount tail_product(const std::vector<int>& lengths, int k);

struct RefinedUpperReport {
  std::vector<BigCount> s_values;  // S_i per chain (1-based position i)
  int prefix = 0;                  // chosen K
  bool auto_prefix = false;
  BigCount tail;       // prod_{j>K} (len_j + 1)
  BigCount inner_sum;  // sum_{i<=K} S_i + tail
  BigCount bound;      // inner_sum^2
};

// S_i = |T_i| * prod_{j>i} (t_{i,j} + 1) where t_{i,j} is the largest number
// of chain-j elements incomparable to one chain-i element. Bound for a given
// prefix K is (sum_{i<=K} S_i + tail_product(K))^2; AUTO scans every K and
// keeps the smallest bound (ties to the smaller K).
RefinedUpperReport refined_upper(const Poset& poset,
                                 const std::vector<std::vector<int>>& chains,
                                 std::optional<int> prefix);

// ---- Fixtures ----

std::vector<int> load_length_fixture(const std::string& path);
std::vector<int> load_layer_size_fixture(const std::string& path);
std::vector<std::vector<std::string>> load_division_fixture(
    const std::string& path);
// Pairs (mantissa, exp10): value = mantissa * 10^exp10.
std::vector<std::pair<int, int>> load_cap_fixture(const std::string& path);

// Resolves printed chains against a game set and checks they partition it
// into totally ordered, descending sequences.
std::vector<std::vector<int>> resolve_division(Arena& arena,
                                               const GameSet& set,
                                               const std::vector<std::vector<std::string>>& chains);

// ---- Day-3 verification pipeline ----

struct VerificationReport {
  BigCount lower_width;            // 64
  BigCount lower_middle_exact;     // 208
  BigCount lower_middle_grouped;   // grouped variant, for reference
  BigCount upper_simple_fixture;   // 921600
  BigCount upper_refined_fixture;  // 451584
  BigCount upper_simple_own;
  BigCount upper_refined_own;
  BigCount truth;  // |G_3| by enumeration
  bool ordered = false;
};

VerificationReport verify_day3(
    Arena& arena, Printer& printer,
    const std::vector<std::vector<std::string>>& day2_division, int threads);

}  // namespace cgt

#endif  // CGT_BOUNDS_HPP
