#ifndef CGT_POSET_HPP
#define CGT_POSET_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgt/game.hpp"

namespace cgt {

struct GameSet;  // enumerate.hpp

// A finite poset as a dense relation matrix. Indices are positions in some
// fixed element order; the analyses below are pure functions of the matrix.
struct Poset {
  int n = 0;
  std::vector<OrderRelation> rel;  // n*n, row-major

  OrderRelation at(int i, int j) const {
    return rel[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j];
  }
  bool less(int i, int j) const { return at(i, j) == OrderRelation::Less; }
  bool greater(int i, int j) const {
    return at(i, j) == OrderRelation::Greater;
  }
  bool incomparable(int i, int j) const {
    return at(i, j) == OrderRelation::Incomparable;
  }

  // Test helpers.
  static Poset total_order(int n);  // 0 > 1 > ... > n-1
  static Poset antichain(int n);

  void validate() const;  // order axioms; throws InvariantViolation
};

// Layers U_1..U_m: U_i is the set of maximal elements of what remains after
// removing U_1..U_{i-1}. Every layer is an antichain and the layers
// partition the poset.
struct Stratification {
  std::vector<std::vector<int>> layers;

  int layer_count() const { return static_cast<int>(layers.size()); }
  std::vector<int> layer_sizes() const;
  // Index of the largest layer; ties go to the smaller index.
  int middle_layer() const;
};

Stratification stratify(const Poset& poset);

// Bipartite graph between consecutive layers: left vertices are positions in
// U_i, right vertices positions in U_{i+1}, with an edge wherever the upper
// element is greater. `layer` is 0-based (graph i sits between layers[i] and
// layers[i+1]).
struct LayerGraph {
  int layer = 0;
  int left_size = 0;
  int right_size = 0;
  std::vector<std::vector<int>> adj;  // left position -> right positions
};

LayerGraph layer_graph(const Poset& poset, const Stratification& strat,
                       int layer);

struct Matching {
  int layer = 0;
  std::vector<std::pair<int, int>> pairs;  // (left position, right position)
  int size() const { return static_cast<int>(pairs.size()); }
};

// Maximum matching by augmenting paths, vertices scanned in index order
// after an initial greedy pass. Deterministic.
Matching maximum_matching(const LayerGraph& graph);

// Independent maximality check: true iff an augmenting path exists (so a
// maximum matching must make this false). Uses BFS layering, not the
// DFS search the solver uses.
bool has_augmenting_path(const LayerGraph& graph, const Matching& matching);

// Disjoint chains covering the poset, each listed in descending order.
struct ChainDivision {
  std::vector<std::vector<int>> chains;
  int chain_count() const { return static_cast<int>(chains.size()); }
  std::vector<int> lengths() const;
};

// Builds the chain division by keeping only matched edges between layers and
// reading off the paths through the widest layer. Fails (with a certificate)
// when some layer matching does not saturate the side nearer the middle.
struct ChainDivisionResult {
  std::optional<ChainDivision> division;
  std::vector<Matching> matchings;  // one per adjacent layer pair
  int failed_layer = -1;            // 0-based graph index when !ok()
  int matching_size = 0;
  int required_size = 0;
  std::string message;

  bool ok() const { return division.has_value(); }
  const ChainDivision& value() const;
};

ChainDivisionResult chain_division(const Poset& poset,
                                   const Stratification& strat);

// Dilworth certificate: an antichain (the widest layer) whose size equals
// the number of chains in the cover.
struct WidthCertificate {
  int width = 0;
  std::vector<int> antichain;
};

WidthCertificate width_certificate(const Poset& poset,
                                   const Stratification& strat,
                                   const ChainDivision& division);

// True iff negation maps layer i onto layer m+1-i elementwise. The set must
// be closed under negation.
bool check_symmetry(Arena& arena, const GameSet& set,
                    const Stratification& strat);

}  // namespace cgt

#endif  // CGT_POSET_HPP
