#pragma once

// Reference computations for the tests. Each one avoids the routine it is
// used to check: ranks come from component counts or minors, kernels from
// enumeration, monodromy from the cycle pairing, series products from the
// schoolbook formula.

#include "skelcoh/graph.hpp"
#include "skelcoh/patron.hpp"
#include "skelcoh/series.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using namespace skelcoh;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

struct GraphRanks {
  Index h0 = 0, h1 = 0, h0c = 0, h1c = 0, h1c_dual = 0;
};

// Incidence matrices are totally unimodular, so every group is free and the
// ranks follow from counting components.
inline GraphRanks graph_ranks(const Graph& g) {
  const std::size_t nv = g.vertices().size();
  UnionFind uf(nv);
  std::vector<bool> anchored(nv, false);
  Index compact = 0;
  for (const auto& e : g.edges()) {
    if (e.is_compact()) {
      ++compact;
      uf.unite(static_cast<std::size_t>(g.vertex_index(*e.tail)),
               static_cast<std::size_t>(g.vertex_index(*e.head)));
    }
  }
  for (const auto& e : g.edges()) {
    if (e.is_compact()) continue;
    const auto& end = e.tail ? *e.tail : *e.head;
    anchored[uf.find(static_cast<std::size_t>(g.vertex_index(end)))] = true;
  }
  GraphRanks r;
  for (std::size_t v = 0; v < nv; ++v) {
    if (uf.find(v) != v) continue;
    ++r.h0;
    if (!anchored[v]) ++r.h0c;
  }
  const auto nvi = static_cast<Index>(nv);
  const auto ne = static_cast<Index>(g.edges().size());
  r.h1 = compact - nvi + r.h0;
  r.h1c = ne - nvi + r.h0c;
  r.h1c_dual = r.h1c;
  return r;
}

// Determinant by cofactor expansion; fine up to 7x7.
inline Rational det_cofactor(const RatMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational total(0);
  for (Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    RatMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rational term = m(0, j) * det_cofactor(minor);
    total += (j % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

// Largest k with a nonzero k x k minor.
inline Index rank_by_minors(const RatMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  for (Index k = std::min(rows, cols); k > 0; --k) {
    std::vector<Index> ri(static_cast<std::size_t>(k)), ci(static_cast<std::size_t>(k));
    std::function<bool(Index, Index)> pick_cols;
    std::function<bool(Index, Index)> pick_rows = [&](Index start, Index depth) -> bool {
      if (depth == k) return pick_cols(0, 0);
      for (Index r = start; r < rows; ++r) {
        ri[static_cast<std::size_t>(depth)] = r;
        if (pick_rows(r + 1, depth + 1)) return true;
      }
      return false;
    };
    pick_cols = [&](Index start, Index depth) -> bool {
      if (depth == k) {
        RatMatrix sub(k, k);
        for (Index a = 0; a < k; ++a)
          for (Index b = 0; b < k; ++b) sub(a, b) = m(ri[static_cast<std::size_t>(a)], ci[static_cast<std::size_t>(b)]);
        return det_cofactor(sub) != 0;
      }
      for (Index c = start; c < cols; ++c) {
        ci[static_cast<std::size_t>(depth)] = c;
        if (pick_cols(c + 1, depth + 1)) return true;
      }
      return false;
    };
    if (pick_rows(0, 0)) return k;
  }
  return 0;
}

// Number of x in (Z/n)^cols with a x = 0 mod n.
inline std::int64_t count_kernel_mod(const IntMatrix& a, std::int64_t n) {
  const auto cols = static_cast<std::size_t>(a.cols());
  std::vector<std::int64_t> x(cols, 0);
  std::int64_t count = 0;
  while (true) {
    bool zero = true;
    for (Index i = 0; i < a.rows() && zero; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += a(i, static_cast<Index>(j)).convert_to<std::int64_t>() * x[j];
      zero = ((s % n) + n) % n == 0;
    }
    if (zero) ++count;
    std::size_t j = 0;
    while (j < cols && ++x[j] == n) x[j++] = 0;
    if (j == cols) break;
  }
  return count;
}

// Fundamental cycles of the compact part, as vectors on the compact edges
// (in Graph::compact_edges() order).
inline std::vector<RatVector> fundamental_cycles(const Graph& g) {
  const auto& compact = g.compact_edges();
  const auto nv = g.vertices().size();
  UnionFind uf(nv);
  // adjacency of the spanning forest: (neighbor, compact position, sign)
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, int>>> tree(nv);
  std::vector<std::size_t> extra;
  for (std::size_t r = 0; r < compact.size(); ++r) {
    const Edge& e = g.edges()[static_cast<std::size_t>(compact[r])];
    const auto t = static_cast<std::size_t>(g.vertex_index(*e.tail));
    const auto h = static_cast<std::size_t>(g.vertex_index(*e.head));
    if (uf.unite(t, h)) {
      tree[t].emplace_back(h, r, +1);
      tree[h].emplace_back(t, r, -1);
    } else {
      extra.push_back(r);
    }
  }
  // tree path from a to b as a signed edge vector
  auto path = [&](std::size_t a, std::size_t b) {
    RatVector v = RatVector::Zero(static_cast<Index>(compact.size()));
    std::vector<int> seen(nv, 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t x) -> bool {
      if (x == b) return true;
      seen[x] = 1;
      for (const auto& [y, r, s] : tree[x]) {
        if (seen[y]) continue;
        if (dfs(y)) {
          v(static_cast<Index>(r)) += s;
          return true;
        }
      }
      return false;
    };
    dfs(a);
    return v;
  };
  std::vector<RatVector> out;
  for (std::size_t r : extra) {
    const Edge& e = g.edges()[static_cast<std::size_t>(compact[r])];
    RatVector c = path(static_cast<std::size_t>(g.vertex_index(*e.head)),
                       static_cast<std::size_t>(g.vertex_index(*e.tail)));
    c(static_cast<Index>(r)) += 1;
    out.push_back(c);
  }
  return out;
}

inline std::int64_t patron_genus(const Patron& pat) {
  std::int64_t g = 0;
  for (const auto& s : pat.shorts) g += s.genus;
  return g + static_cast<std::int64_t>(pat.legs.size()) - static_cast<std::int64_t>(pat.shorts.size()) + 1;
}

// ----------------------------------------------------------------- series

using Poly = std::map<std::int64_t, ValuedScalar>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto [it, fresh] = out.emplace(i + j, x * y);
      if (!fresh) it->second += x * y;
    }
  return out;
}

inline Poly poly_sub(Poly a, const Poly& b) {
  for (const auto& [n, y] : b) {
    auto [it, fresh] = a.emplace(n, -y);
    if (!fresh) it->second -= y;
  }
  return a;
}

inline Poly poly_pow(const Poly& a, int k, const ScalarContext& sc) {
  Poly out{{0, ValuedScalar(sc, Rational(1))}};
  for (int i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

inline Poly poly_of(const LaurentSeries& f) { return Poly(f.coeffs().begin(), f.coeffs().end()); }

inline Poly shift(const Poly& a, std::int64_t k) {
  Poly out;
  for (const auto& [n, c] : a) out.emplace(n + k, c);
  return out;
}

inline Poly scale(const Poly& a, const ValuedScalar& s) {
  Poly out;
  for (const auto& [n, c] : a) out.emplace(n, c * s);
  return out;
}

// Every coefficient with exponent in [lo, hi] has valuation >= m.
inline bool vanishes(const Poly& a, const Rational& m, std::int64_t lo, std::int64_t hi) {
  for (const auto& [n, c] : a)
    if (n >= lo && n <= hi && c.valuation() < Valuation(m)) return false;
  return true;
}

inline bool vanishes(const Poly& a, const Rational& m) {
  return vanishes(a, m, std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max());
}

// (v, v') by direct scan.
inline std::pair<Rational, std::int64_t> newton_scan(const Poly& a, const Rational& prec) {
  std::optional<Rational> best;
  std::int64_t at = 0;
  for (const auto& [n, c] : a) {
    const Valuation v = c.valuation();
    if (v.is_infinite() || v >= Valuation(prec)) continue;
    if (!best || v.value() < *best) {
      best = v.value();
      at = n;
    }
  }
  return {best.value_or(Rational(-1)), at};
}

}  // namespace oracle
