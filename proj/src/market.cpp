#include "marketclear/market.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "marketclear/errors.hpp"

namespace marketclear {

ValuationMatrix::ValuationMatrix(int n, std::vector<Rational> values)
    : n_(n), values_(std::move(values)) {
  if (n_ < 1)
    throw DimensionMismatchError("market size must be at least 1, got " +
                                 std::to_string(n_));
  if (values_.size() != static_cast<std::size_t>(n_) * n_)
    throw DimensionMismatchError("expected " + std::to_string(n_) + "x" +
                                 std::to_string(n_) + " values, got " +
                                 std::to_string(values_.size()));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (value(i, j) < 0)
        throw InvalidMarketError("valuation of buyer " + std::to_string(i + 1) +
                                 " for product " + std::to_string(j + 1) +
                                 " is negative: " + to_string(value(i, j)));
}

ValuationMatrix ValuationMatrix::from_rows(
    const std::vector<std::vector<Rational>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Rational> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatchError(
          "matrix is not square: " + std::to_string(n) + " rows but a row of " +
          std::to_string(row.size()) + " values");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ValuationMatrix(n, std::move(flat));
}

Rational ValuationMatrix::max_value() const {
  Rational best = 0;
  for (const Rational& v : values_) best = std::max(best, v);
  return best;
}

Matching::Matching(std::vector<std::pair<int, int>> pairs)
    : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    auto [b, p] = pairs_[k];
    if (b < 0 || p < 0)
      throw InvalidMarketError("matching pair has a negative index");
    if (k > 0 && pairs_[k - 1].first == b)
      throw InvalidMarketError("buyer " + std::to_string(b + 1) +
                               " appears twice in the matching");
  }
  std::vector<int> products;
  products.reserve(pairs_.size());
  for (auto [b, p] : pairs_) products.push_back(p);
  std::sort(products.begin(), products.end());
  if (std::adjacent_find(products.begin(), products.end()) != products.end())
    throw InvalidMarketError("a product appears twice in the matching");
}

Matching Matching::from_permutation(const std::vector<int>& product_of_buyer) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(product_of_buyer.size());
  for (int i = 0; i < static_cast<int>(product_of_buyer.size()); ++i)
    pairs.emplace_back(i, product_of_buyer[i]);
  return Matching(std::move(pairs));
}

bool Matching::is_perfect(int n) const {
  if (size() != n) return false;
  for (auto [b, p] : pairs_)
    if (b >= n || p >= n) return false;
  return true;
}

std::vector<int> Matching::to_permutation(int n) const {
  if (!is_perfect(n))
    throw NotPerfectError("matching covers " + std::to_string(size()) +
                          " of " + std::to_string(n) + " buyers");
  std::vector<int> perm(n);
  for (auto [b, p] : pairs_) perm[b] = p;
  return perm;
}

int Matching::product_of(int buyer) const {
  for (auto [b, p] : pairs_)
    if (b == buyer) return p;
  return -1;
}

bool PreferredProductGraph::has_edge(int buyer, int product) const {
  const auto& row = preferred[buyer];
  return std::binary_search(row.begin(), row.end(), product);
}

Rational social_welfare(const ValuationMatrix& V, const Matching& M) {
  const int n = V.size();
  Rational total = 0;
  for (auto [b, p] : M.pairs()) {
    if (b >= n || p >= n)
      throw IndexOutOfRangeError("matching pair (" + std::to_string(b + 1) +
                                 ", " + std::to_string(p + 1) +
                                 ") is outside a market of size " +
                                 std::to_string(n));
    total += V.value(b, p);
  }
  return total;
}

namespace {

void require_price_length(const ValuationMatrix& V, const PriceVector& p) {
  if (static_cast<int>(p.size()) != V.size())
    throw DimensionMismatchError("price vector has length " +
                                 std::to_string(p.size()) +
                                 " but the market has size " +
                                 std::to_string(V.size()));
}

}  // namespace

PreferredProductGraph preferred_graph(const ValuationMatrix& V,
                                      const PriceVector& p) {
  require_price_length(V, p);
  const int n = V.size();
  PreferredProductGraph G;
  G.n = n;
  G.preferred.resize(n);
  for (int i = 0; i < n; ++i) {
    Rational best = V.value(i, 0) - p[0];
    for (int j = 1; j < n; ++j) {
      Rational payoff = V.value(i, j) - p[j];
      if (payoff > best) best = std::move(payoff);
    }
    for (int j = 0; j < n; ++j)
      if (V.value(i, j) - p[j] == best) G.preferred[i].push_back(j);
  }
  return G;
}

std::vector<Rational> buyer_payoffs(const ValuationMatrix& V,
                                    const PriceVector& p) {
  require_price_length(V, p);
  const int n = V.size();
  std::vector<Rational> u;
  u.reserve(n);
  for (int i = 0; i < n; ++i) {
    Rational best = V.value(i, 0) - p[0];
    for (int j = 1; j < n; ++j) {
      Rational payoff = V.value(i, j) - p[j];
      if (payoff > best) best = std::move(payoff);
    }
    u.push_back(std::move(best));
  }
  return u;
}

PerfectMatchingResult find_perfect_matching(const PreferredProductGraph& G) {
  const int n = G.n;
  std::vector<int> buyer_of_product(n, -1);
  std::vector<char> buyer_seen(n, 0), product_seen(n, 0);

  std::function<bool(int)> augment = [&](int buyer) {
    buyer_seen[buyer] = 1;
    for (int j : G.preferred[buyer]) {
      if (product_seen[j]) continue;
      product_seen[j] = 1;
      if (buyer_of_product[j] < 0 || augment(buyer_of_product[j])) {
        buyer_of_product[j] = buyer;
        return true;
      }
    }
    return false;
  };

  for (int start = 0; start < n; ++start) {
    std::fill(buyer_seen.begin(), buyer_seen.end(), 0);
    std::fill(product_seen.begin(), product_seen.end(), 0);
    if (!augment(start)) {
      // The failed search visited exactly the buyers reachable from `start`
      // by alternating paths; their joint neighborhood is the visited
      // products, one fewer than the visited buyers.
      ConstrictedSet witness;
      for (int i = 0; i < n; ++i)
        if (buyer_seen[i]) witness.buyers.push_back(i);
      for (int j = 0; j < n; ++j)
        if (product_seen[j]) witness.neighborhood.push_back(j);
      return witness;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n);
  for (int j = 0; j < n; ++j) pairs.emplace_back(buyer_of_product[j], j);
  return Matching(std::move(pairs));
}

bool is_market_clearing(const ValuationMatrix& V, const PriceVector& p) {
  return std::holds_alternative<Matching>(
      find_perfect_matching(preferred_graph(V, p)));
}

}  // namespace marketclear
