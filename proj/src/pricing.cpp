#include "marketclear/pricing.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "marketclear/errors.hpp"

namespace marketclear {

ConstraintDigraph build_constraint_digraph(const ValuationMatrix& V,
                                           const Matching& M) {
  const int n = V.size();
  std::vector<int> sigma = M.to_permutation(n);  // throws if not perfect

  // relabeled(i, k) = V(i, sigma[k]); the matching sits on the diagonal.
  auto relabeled = [&](int i, int k) -> const Rational& {
    return V.value(i, sigma[k]);
  };

  ConstraintDigraph D;
  D.n = n;
  D.edges.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i) D.edges.push_back({0, i, Rational(0)});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      D.edges.push_back({j, i, relabeled(i - 1, i - 1) - relabeled(i - 1, j - 1)});
    }
  return D;
}

namespace {

// Looks for a cycle of predecessor links reachable backwards from `head`.
// Any such cycle has strictly negative total length, because every stored
// link (u -> v) still satisfies dist[v] >= dist[u] + length(u, v).
std::optional<std::vector<int>> pred_cycle_from(const std::vector<int>& pred,
                                                int head) {
  std::vector<int> order;
  std::vector<int> position(pred.size(), -1);
  int walk = head;
  while (walk >= 0 && position[walk] < 0) {
    position[walk] = static_cast<int>(order.size());
    order.push_back(walk);
    walk = pred[walk];
  }
  if (walk < 0) return std::nullopt;  // chain ended at the source
  // order[position[walk]..] walks the cycle backwards; reverse it so
  // consecutive nodes follow edge direction.
  std::vector<int> cycle(order.begin() + position[walk], order.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

ShortestPathResult shortest_paths_or_cycle(const ConstraintDigraph& D) {
  const int node_count = D.n + 1;
  std::vector<std::optional<Rational>> dist(node_count);
  std::vector<int> pred(node_count, -1);
  dist[0] = Rational(0);

  std::vector<int> relaxed_heads;
  auto relax_all = [&]() {
    relaxed_heads.clear();
    for (const ConstraintEdge& e : D.edges) {
      if (!dist[e.from]) continue;
      Rational candidate = *dist[e.from] + e.length;
      if (!dist[e.to] || candidate < *dist[e.to]) {
        dist[e.to] = std::move(candidate);
        pred[e.to] = e.from;
        relaxed_heads.push_back(e.to);
      }
    }
    return !relaxed_heads.empty();
  };

  bool changed = true;
  for (int round = 0; round < D.n && changed; ++round) changed = relax_all();
  if (!changed || !relax_all()) {
    std::vector<Rational> L;
    L.reserve(D.n);
    for (int i = 1; i <= D.n; ++i) {
      if (!dist[i]) throw Error("node " + std::to_string(i) + " unreachable");
      L.push_back(*dist[i]);
    }
    return L;
  }

  // A relaxation in round n+1 proves a negative cycle exists. Keep sweeping
  // until one closes inside the predecessor links (usually immediate).
  for (int sweep = 0; sweep < 4 * node_count + 16; ++sweep) {
    for (int head : relaxed_heads) {
      auto cycle = pred_cycle_from(pred, head);
      if (!cycle) continue;

      std::vector<std::vector<std::optional<Rational>>> length(
          node_count, std::vector<std::optional<Rational>>(node_count));
      for (const ConstraintEdge& e : D.edges)
        if (!length[e.from][e.to] || e.length < *length[e.from][e.to])
          length[e.from][e.to] = e.length;

      NegativeCycleWitness witness;
      witness.nodes = std::move(*cycle);
      witness.total = 0;
      const int m = static_cast<int>(witness.nodes.size());
      for (int k = 0; k < m; ++k) {
        int a = witness.nodes[k];
        int b = witness.nodes[(k + 1) % m];
        witness.lengths.push_back(*length[a][b]);
        witness.total += witness.lengths.back();
      }
      if (witness.total >= 0)
        throw Error("predecessor walk produced a non-negative cycle");
      return witness;
    }
    relax_all();
  }
  throw Error("negative cycle detected but never closed in predecessor links");
}

PricesFromMatchingResult prices_from_matching(const ValuationMatrix& V,
                                              const Matching& M) {
  const int n = V.size();
  std::vector<int> sigma = M.to_permutation(n);

  ShortestPathResult sp = shortest_paths_or_cycle(build_constraint_digraph(V, M));
  if (auto* witness = std::get_if<NegativeCycleWitness>(&sp)) {
    // Digraph node i stands for buyer i-1; buyers keep their labels under
    // the product relabeling, so the cycle translates directly.
    NotMaximum fail;
    fail.cycle_buyers.reserve(witness->nodes.size());
    for (int node : witness->nodes) fail.cycle_buyers.push_back(node - 1);
    fail.edge_lengths = std::move(witness->lengths);
    fail.total = std::move(witness->total);
    return fail;
  }

  // L(i) is the price of the product matched to buyer i-1; undo the
  // relabeling to address products by their original indices.
  const auto& L = std::get<std::vector<Rational>>(sp);
  PriceVector p(n);
  for (int i = 0; i < n; ++i) p[sigma[i]] = L[i];
  return p;
}

Matching rotate_cycle(const Matching& M, const std::vector<int>& cycle_buyers) {
  if (cycle_buyers.size() < 2)
    throw Error("a rotation cycle needs at least two buyers");
  std::vector<std::pair<int, int>> pairs = M.pairs();
  auto product_of = [&](int buyer) {
    for (auto [b, p] : pairs)
      if (b == buyer) return p;
    throw Error("cycle buyer " + std::to_string(buyer + 1) +
                " is unmatched in the matching being rotated");
  };
  const int m = static_cast<int>(cycle_buyers.size());
  std::vector<int> shifted(m);
  for (int k = 0; k < m; ++k)
    shifted[(k + 1) % m] = product_of(cycle_buyers[k]);
  std::vector<std::pair<int, int>> rotated;
  rotated.reserve(pairs.size());
  for (auto [b, p] : pairs) {
    auto it = std::find(cycle_buyers.begin(), cycle_buyers.end(), b);
    if (it == cycle_buyers.end())
      rotated.emplace_back(b, p);
    else
      rotated.emplace_back(b, shifted[it - cycle_buyers.begin()]);
  }
  return Matching(std::move(rotated));
}

namespace {

void require_same_length(const PriceVector& p, const PriceVector& q) {
  if (p.size() != q.size())
    throw DimensionMismatchError("price vectors have lengths " +
                                 std::to_string(p.size()) + " and " +
                                 std::to_string(q.size()));
}

}  // namespace

PriceVector diagonal_shift(const PriceVector& p, const Rational& t) {
  PriceVector r;
  r.reserve(p.size());
  for (const Rational& pj : p) r.push_back(pj + t);
  return r;
}

PriceVector convex_combine(const PriceVector& p, const PriceVector& q,
                           const Rational& alpha) {
  require_same_length(p, q);
  if (alpha < 0 || alpha > 1)
    throw AlphaOutOfRangeError("alpha must lie in [0, 1], got " +
                               to_string(alpha));
  PriceVector r;
  r.reserve(p.size());
  const Rational beta = Rational(1) - alpha;
  for (std::size_t j = 0; j < p.size(); ++j)
    r.push_back(alpha * p[j] + beta * q[j]);
  return r;
}

PriceVector elementwise_max(const PriceVector& p, const PriceVector& q) {
  require_same_length(p, q);
  PriceVector r;
  r.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r.push_back(std::max(p[j], q[j]));
  return r;
}

PriceVector elementwise_min(const PriceVector& p, const PriceVector& q) {
  require_same_length(p, q);
  PriceVector r;
  r.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r.push_back(std::min(p[j], q[j]));
  return r;
}

PriceVector normalize(const PriceVector& p) {
  if (p.empty()) return {};
  return diagonal_shift(p, -*std::min_element(p.begin(), p.end()));
}

}  // namespace marketclear
