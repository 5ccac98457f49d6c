#include "cgt/poset.hpp"

#include <algorithm>
#include <deque>

#include "cgt/enumerate.hpp"

namespace cgt {

Poset Poset::total_order(int n) {
  Poset p;
  p.n = n;
  p.rel.assign(static_cast<std::size_t>(n) * n, OrderRelation::Incomparable);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j)
        p.rel[static_cast<std::size_t>(i) * n + j] = OrderRelation::Equal;
      else
        p.rel[static_cast<std::size_t>(i) * n + j] =
            i < j ? OrderRelation::Greater : OrderRelation::Less;
    }
  }
  return p;
}

Poset Poset::antichain(int n) {
  Poset p;
  p.n = n;
  p.rel.assign(static_cast<std::size_t>(n) * n, OrderRelation::Incomparable);
  for (int i = 0; i < n; ++i)
    p.rel[static_cast<std::size_t>(i) * n + i] = OrderRelation::Equal;
  return p;
}

void Poset::validate() const {
  for (int i = 0; i < n; ++i) {
    if (at(i, i) != OrderRelation::Equal)
      throw InvariantViolation("poset: diagonal must be Equal");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      OrderRelation ij = at(i, j);
      OrderRelation ji = at(j, i);
      if (ij == OrderRelation::Equal)
        throw InvariantViolation("poset: Equal off the diagonal");
      bool consistent =
          (ij == OrderRelation::Less && ji == OrderRelation::Greater) ||
          (ij == OrderRelation::Greater && ji == OrderRelation::Less) ||
          (ij == OrderRelation::Incomparable &&
           ji == OrderRelation::Incomparable);
      if (!consistent) throw InvariantViolation("poset: asymmetric relation");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (less(i, j))
        for (int k = 0; k < n; ++k)
          if (less(j, k) && !less(i, k))
            throw InvariantViolation("poset: transitivity failed");
}

std::vector<int> Stratification::layer_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(layers.size());
  for (const auto& layer : layers) sizes.push_back(static_cast<int>(layer.size()));
  return sizes;
}

int Stratification::middle_layer() const {
  if (layers.empty()) throw UsageError("middle_layer: empty stratification");
  int best = 0;
  for (int i = 1; i < layer_count(); ++i)
    if (layers[i].size() > layers[best].size()) best = i;
  return best;
}

Stratification stratify(const Poset& poset) {
  Stratification out;
  std::vector<char> removed(static_cast<std::size_t>(poset.n), 0);
  int remaining = poset.n;
  while (remaining > 0) {
    std::vector<int> layer;
    for (int s = 0; s < poset.n; ++s) {
      if (removed[s]) continue;
      bool maximal = true;
      for (int t = 0; t < poset.n; ++t) {
        if (removed[t] || t == s) continue;
        if (poset.less(s, t)) {
          maximal = false;
          break;
        }
      }
      if (maximal) layer.push_back(s);
    }
    if (layer.empty())
      throw InvariantViolation("stratify: no maximal element (cyclic order?)");
    for (int s : layer) removed[s] = 1;
    remaining -= static_cast<int>(layer.size());
    out.layers.push_back(std::move(layer));
  }
  return out;
}

LayerGraph layer_graph(const Poset& poset, const Stratification& strat,
                       int layer) {
  if (layer < 0 || layer + 1 >= strat.layer_count())
    throw UsageError("layer_graph: layer out of range");
  const std::vector<int>& upper = strat.layers[layer];
  const std::vector<int>& lower = strat.layers[layer + 1];
  LayerGraph g;
  g.layer = layer;
  g.left_size = static_cast<int>(upper.size());
  g.right_size = static_cast<int>(lower.size());
  g.adj.resize(upper.size());
  for (std::size_t j = 0; j < upper.size(); ++j)
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (poset.greater(upper[j], lower[k]))
        g.adj[j].push_back(static_cast<int>(k));
  return g;
}

namespace {

bool try_augment(const LayerGraph& g, int u, std::vector<int>& match_left,
                 std::vector<int>& match_right, std::vector<char>& visited) {
  for (int v : g.adj[static_cast<std::size_t>(u)]) {
    if (visited[static_cast<std::size_t>(v)]) continue;
    visited[static_cast<std::size_t>(v)] = 1;
    if (match_right[static_cast<std::size_t>(v)] < 0 ||
        try_augment(g, match_right[static_cast<std::size_t>(v)], match_left,
                    match_right, visited)) {
      match_left[static_cast<std::size_t>(u)] = v;
      match_right[static_cast<std::size_t>(v)] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching maximum_matching(const LayerGraph& graph) {
  std::vector<int> match_left(static_cast<std::size_t>(graph.left_size), -1);
  std::vector<int> match_right(static_cast<std::size_t>(graph.right_size), -1);
  // Greedy seed in index order.
  for (int u = 0; u < graph.left_size; ++u) {
    for (int v : graph.adj[static_cast<std::size_t>(u)]) {
      if (match_right[static_cast<std::size_t>(v)] < 0) {
        match_left[static_cast<std::size_t>(u)] = v;
        match_right[static_cast<std::size_t>(v)] = u;
        break;
      }
    }
  }
  for (int u = 0; u < graph.left_size; ++u) {
    if (match_left[static_cast<std::size_t>(u)] >= 0) continue;
    std::vector<char> visited(static_cast<std::size_t>(graph.right_size), 0);
    try_augment(graph, u, match_left, match_right, visited);
  }
  Matching m;
  m.layer = graph.layer;
  for (int u = 0; u < graph.left_size; ++u)
    if (match_left[static_cast<std::size_t>(u)] >= 0)
      m.pairs.emplace_back(u, match_left[static_cast<std::size_t>(u)]);
  return m;
}

bool has_augmenting_path(const LayerGraph& graph, const Matching& matching) {
  std::vector<int> match_left(static_cast<std::size_t>(graph.left_size), -1);
  std::vector<int> match_right(static_cast<std::size_t>(graph.right_size), -1);
  for (auto [u, v] : matching.pairs) {
    match_left[static_cast<std::size_t>(u)] = v;
    match_right[static_cast<std::size_t>(v)] = u;
  }
  // BFS over alternating paths from every unmatched left vertex.
  std::deque<int> queue;
  std::vector<char> seen_left(static_cast<std::size_t>(graph.left_size), 0);
  for (int u = 0; u < graph.left_size; ++u) {
    if (match_left[static_cast<std::size_t>(u)] < 0) {
      queue.push_back(u);
      seen_left[static_cast<std::size_t>(u)] = 1;
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : graph.adj[static_cast<std::size_t>(u)]) {
      int w = match_right[static_cast<std::size_t>(v)];
      if (w < 0) return true;  // free right vertex reached
      if (!seen_left[static_cast<std::size_t>(w)]) {
        seen_left[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

const ChainDivision& ChainDivisionResult::value() const {
  if (!division)
    throw InvariantViolation("chain division failed: " + message);
  return *division;
}

std::vector<int> ChainDivision::lengths() const {
  std::vector<int> out;
  out.reserve(chains.size());
  for (const auto& c : chains) out.push_back(static_cast<int>(c.size()));
  return out;
}

ChainDivisionResult chain_division(const Poset& poset,
                                   const Stratification& strat) {
  ChainDivisionResult result;
  int m = strat.layer_count();
  if (m == 0) {
    result.division = ChainDivision{};
    return result;
  }
  int c = strat.middle_layer();

  std::vector<LayerGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(std::max(0, m - 1)));
  for (int i = 0; i + 1 < m; ++i) graphs.push_back(layer_graph(poset, strat, i));
  for (const LayerGraph& g : graphs)
    result.matchings.push_back(maximum_matching(g));

  // Above the middle every element of U_i must be matched downward; below it
  // every element of U_{i+1} must be matched upward.
  for (int i = 0; i + 1 < m; ++i) {
    int required = i < c ? static_cast<int>(strat.layers[i].size())
                         : static_cast<int>(strat.layers[i + 1].size());
    if (result.matchings[static_cast<std::size_t>(i)].size() < required) {
      result.failed_layer = i;
      result.matching_size =
          result.matchings[static_cast<std::size_t>(i)].size();
      result.required_size = required;
      result.message =
          "matching between layers " + std::to_string(i + 1) + " and " +
          std::to_string(i + 2) + " has size " +
          std::to_string(result.matching_size) + ", needs " +
          std::to_string(required);
      return result;
    }
  }

  // chain_of, by element index.
  std::vector<int> chain_of(static_cast<std::size_t>(poset.n), -1);
  ChainDivision division;
  division.chains.resize(strat.layers[static_cast<std::size_t>(c)].size());
  for (std::size_t pos = 0; pos < strat.layers[static_cast<std::size_t>(c)].size();
       ++pos)
    chain_of[static_cast<std::size_t>(
        strat.layers[static_cast<std::size_t>(c)][pos])] =
        static_cast<int>(pos);

  // Upward: match U_i into U_{i+1}, walking from the middle out.
  for (int i = c - 1; i >= 0; --i) {
    const Matching& match = result.matchings[static_cast<std::size_t>(i)];
    for (auto [u, v] : match.pairs) {
      int upper = strat.layers[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)];
      int lower =
          strat.layers[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(v)];
      chain_of[static_cast<std::size_t>(upper)] =
          chain_of[static_cast<std::size_t>(lower)];
    }
  }
  // Downward: match U_{i+1} into U_i.
  for (int i = c; i + 1 < m; ++i) {
    const Matching& match = result.matchings[static_cast<std::size_t>(i)];
    for (auto [u, v] : match.pairs) {
      int upper = strat.layers[static_cast<std::size_t>(i)][static_cast<std::size_t>(u)];
      int lower =
          strat.layers[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(v)];
      chain_of[static_cast<std::size_t>(lower)] =
          chain_of[static_cast<std::size_t>(upper)];
    }
  }

  // Collect, scanning layers top to bottom so chains come out descending.
  for (int i = 0; i < m; ++i) {
    for (int s : strat.layers[static_cast<std::size_t>(i)]) {
      int chain = chain_of[static_cast<std::size_t>(s)];
      if (chain < 0)
        throw InvariantViolation(
            "chain division: element missed by every matched path");
      division.chains[static_cast<std::size_t>(chain)].push_back(s);
    }
  }
  result.division = std::move(division);
  return result;
}

WidthCertificate width_certificate(const Poset& poset,
                                   const Stratification& strat,
                                   const ChainDivision& division) {
  if (strat.layers.empty()) {
    if (division.chain_count() != 0)
      throw InvariantViolation("width certificate: chains cover nothing");
    return WidthCertificate{};
  }
  int c = strat.middle_layer();
  const std::vector<int>& antichain = strat.layers[static_cast<std::size_t>(c)];
  for (std::size_t i = 0; i < antichain.size(); ++i)
    for (std::size_t j = i + 1; j < antichain.size(); ++j)
      if (!poset.incomparable(antichain[i], antichain[j]))
        throw InvariantViolation("width certificate: witness not an antichain");
  if (static_cast<int>(antichain.size()) != division.chain_count())
    throw InvariantViolation(
        "width certificate: antichain size differs from chain count");
  WidthCertificate cert;
  cert.width = division.chain_count();
  cert.antichain = antichain;
  return cert;
}

bool check_symmetry(Arena& arena, const GameSet& set,
                    const Stratification& strat) {
  int m = strat.layer_count();
  for (int i = 0; i < m; ++i) {
    for (int s : strat.layers[static_cast<std::size_t>(i)]) {
      GameId neg = arena.negate(set.elements[static_cast<std::size_t>(s)]);
      int pos = set.find(neg);
      if (pos < 0) return false;
      const std::vector<int>& mirror =
          strat.layers[static_cast<std::size_t>(m - 1 - i)];
      if (std::find(mirror.begin(), mirror.end(), pos) == mirror.end())
        return false;
    }
  }
  return true;
}

}  // namespace cgt
