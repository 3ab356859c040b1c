#pragma once
// Convex orderings of metric spaces, the derived linear orders of balls, the
// ordered ball-vertex expansion and order completion.

#include <random>

#include "expansion.hpp"

namespace smv {

// ≤^B for B ∈ I as strict pairs (u, v) meaning u <^B v.
struct ConvexOrderedSpace {
  Graph space;
  std::map<int, std::set<std::pair<int, int>>> orders;

  explicit ConvexOrderedSpace(Graph g) : space(std::move(g)) {}
  bool operator==(const ConvexOrderedSpace& o) const { return space == o.space && orders == o.orders; }
};

// The unique least block strictly above B.
inline int block_plus(const BlockLattice& L, int B) {
  std::vector<int> above;
  for (int C = 0; C < L.size(); ++C)
    if (L.lt(B, C)) above.push_back(C);
  std::vector<int> minimal;
  for (int C : above)
    if (std::none_of(above.begin(), above.end(), [&](int D) { return L.lt(D, C); })) minimal.push_back(C);
  if (minimal.size() != 1)
    throw PreconditionError("block " + std::to_string(B) + " has no unique least larger block");
  return minimal[0];
}

inline bool same_ball(const Semigroup& S, const BlockLattice& L, const Graph& G, int u, int v, int B) {
  if (u == v) return true;
  if (B == 0) return false;
  return below_block(S, L, G.label(u, v), B);
}

// ---------------------------------------------------------------------------
// Tie-break order of blocks.

struct BlockTieBreak {
  std::vector<int> order;  // blocks in ⊴ order
  std::vector<int> rank;   // block -> position

  static BlockTieBreak from_order(std::vector<int> order, const BlockLattice& L) {
    BlockTieBreak t;
    t.order = std::move(order);
    if (static_cast<int>(t.order.size()) != L.size()) throw InputError("tie-break must list every block once");
    t.rank.assign(L.size(), -1);
    for (size_t i = 0; i < t.order.size(); ++i) {
      int b = t.order[i];
      if (b < 0 || b >= L.size() || t.rank[b] >= 0) throw InputError("tie-break must list every block once");
      t.rank[b] = static_cast<int>(i);
    }
    for (int a = 0; a < L.size(); ++a)
      for (int b = 0; b < L.size(); ++b)
        if (L.lt(b, a) && t.rank[a] > t.rank[b]) throw InputError("tie-break must put larger blocks first");
    return t;
  }
};

inline std::vector<int> block_heights(const BlockLattice& L) {
  std::vector<int> h(L.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < L.size(); ++a)
      for (int b = 0; b < L.size(); ++b)
        if (L.lt(a, b) && h[b] < h[a] + 1) {
          h[b] = h[a] + 1;
          changed = true;
        }
  }
  return h;
}

// Decreasing height, ties by least member index, 𝟎 last.
inline BlockTieBreak default_tie_break(const BlockLattice& L) {
  auto h = block_heights(L);
  std::vector<int> order(L.size());
  std::iota(order.begin(), order.end(), 0);
  auto least = [&](int b) { return L.blocks[b].members.empty() ? INT32_MAX : L.blocks[b].members[0]; };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (h[a] != h[b]) return h[a] > h[b];
    return least(a) < least(b);
  });
  return BlockTieBreak::from_order(order, L);
}

// U(B) for a meet-reducible block: the ⊴-lexicographically smallest pair meeting to B.
inline std::pair<int, int> block_split(const BlockLattice& L, const BlockTieBreak& tb, int B) {
  if (L.irreducible(B)) return {B, B};
  std::optional<std::pair<int, int>> best;
  for (int x : tb.order)
    for (int y : tb.order) {
      if (x == B || y == B || L.meet_of(x, y) != B) continue;
      if (!best) best = {x, y};
    }
  if (!best) throw PreconditionError("reducible block without a meet decomposition");
  return *best;
}

// ---------------------------------------------------------------------------
// Validation.

struct BlockVerdict {
  int block = 0;
  bool ok = true;
  std::string witness;
};

struct ConvexReport {
  bool valid = true;
  std::vector<BlockVerdict> blocks;
};

inline ConvexReport validate_convex_order(const ConvexOrderedSpace& A) {
  const Graph& G = A.space;
  const Semigroup& S = G.semigroup();
  BlockLattice L = compute_blocks(S);
  const int n = G.size();
  ConvexReport rep;
  if (n > 0 && !G.complete()) {
    rep.valid = false;
    rep.blocks.push_back({-1, false, "space is not complete"});
    return rep;
  }
  for (auto& [B, rel] : A.orders)
    if (B < 0 || B >= L.size() || !L.irreducible(B)) {
      rep.valid = false;
      rep.blocks.push_back({B, false, "order given for a block outside I"});
    }
  static const std::set<std::pair<int, int>> none;
  for (int B : L.meet_irreducibles) {
    BlockVerdict v{B, true, ""};
    auto it = A.orders.find(B);
    const auto& rel = it == A.orders.end() ? none : it->second;
    auto lt = [&](int x, int y) { return rel.count({x, y}) > 0; };
    const int plus = block_plus(L, B);
    auto fail = [&](const std::string& w) {
      if (v.ok) v.witness = w;
      v.ok = false;
    };
    for (auto& [x, y] : rel)
      if (x < 0 || y < 0 || x >= n || y >= n || x == y) fail("pair outside the vertex set");
    if (!v.ok) {
      rep.valid = false;
      rep.blocks.push_back(v);
      continue;
    }
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        const bool want = !same_ball(S, L, G, x, y, B) && same_ball(S, L, G, x, y, plus);
        const int have = lt(x, y) + lt(y, x);
        if (want && have != 1)
          fail(G.name(x) + "," + G.name(y) + ": exactly one direction required");
        if (!want && have != 0) fail(G.name(x) + "," + G.name(y) + ": order defined outside its domain");
      }
    for (auto& [x, y] : rel)
      for (int w = 0; w < n; ++w)
        if (w != x && same_ball(S, L, G, x, w, B) && !lt(w, y))
          fail(G.name(w) + " ~ " + G.name(x) + " but not below " + G.name(y));
    for (auto& [x, y] : rel)
      for (int z = 0; z < n; ++z)
        if (lt(y, z) && !lt(x, z)) fail("not transitive at " + G.name(x) + "," + G.name(y) + "," + G.name(z));
    if (!v.ok) rep.valid = false;
    rep.blocks.push_back(v);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Generation.

// A convex order is a choice, for every B ∈ I and every B⁺-ball, of a linear
// order of the B-balls inside it. `perm(B, k)` returns a permutation of 0..k-1.
inline ConvexOrderedSpace convex_order_from(const Graph& G, const BlockLattice& L,
                                            const std::function<std::vector<int>(int, int)>& perm) {
  ConvexOrderedSpace A(G);
  for (int B : L.meet_irreducibles) {
    const int plus = block_plus(L, B);
    auto inner = ball_partition(G, L, B);
    std::vector<int> ball_of(G.size());
    for (size_t i = 0; i < inner.size(); ++i)
      for (int v : inner[i]) ball_of[v] = static_cast<int>(i);
    auto& rel = A.orders[B];
    for (auto& outer : ball_partition(G, L, plus)) {
      std::vector<int> balls;
      for (int v : outer)
        if (std::find(balls.begin(), balls.end(), ball_of[v]) == balls.end()) balls.push_back(ball_of[v]);
      auto p = perm(B, static_cast<int>(balls.size()));
      std::map<int, int> rank;
      for (size_t i = 0; i < balls.size(); ++i) rank[balls[p[i]]] = static_cast<int>(i);
      for (int x : outer)
        for (int y : outer)
          if (ball_of[x] != ball_of[y] && rank[ball_of[x]] < rank[ball_of[y]]) rel.insert({x, y});
    }
    if (rel.empty()) A.orders.erase(B);
  }
  return A;
}

inline ConvexOrderedSpace random_convex_order(const Graph& G, const BlockLattice& L, std::mt19937& rng) {
  return convex_order_from(G, L, [&](int, int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  });
}

// Number of convex orders of G (product of factorials), saturating at cap.
inline long long count_convex_orders(const Graph& G, const BlockLattice& L, long long cap) {
  long long total = 1;
  for (int B : L.meet_irreducibles) {
    const int plus = block_plus(L, B);
    auto inner = ball_partition(G, L, B);
    for (auto& outer : ball_partition(G, L, plus)) {
      int k = 0;
      for (auto& ball : inner)
        if (std::find(outer.begin(), outer.end(), ball[0]) != outer.end()) ++k;
      for (int i = 2; i <= k; ++i) {
        total *= i;
        if (total > cap) return cap + 1;
      }
    }
  }
  return total;
}

// Every convex order of G, in a fixed enumeration order.
inline void for_each_convex_order(const Graph& G, const BlockLattice& L,
                                  const std::function<void(const ConvexOrderedSpace&)>& fn) {
  // groups: (B, k) in the order convex_order_from consumes them
  std::vector<int> sizes;
  convex_order_from(G, L, [&](int, int k) {
    sizes.push_back(k);
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    return p;
  });
  std::vector<std::vector<int>> perms;
  for (int k : sizes) {
    perms.emplace_back(k);
    std::iota(perms.back().begin(), perms.back().end(), 0);
  }
  while (true) {
    size_t g = 0;
    fn(convex_order_from(G, L, [&](int, int) { return perms[g++]; }));
    size_t i = 0;
    while (i < perms.size() && !std::next_permutation(perms[i].begin(), perms[i].end())) ++i;
    if (i == perms.size()) break;
  }
}

// ---------------------------------------------------------------------------
// Derived orders of balls.

struct DerivedOrders {
  std::vector<std::vector<std::vector<int>>> balls;  // block -> balls in ≪^B order
  std::vector<std::vector<int>> rank;                // block -> vertex -> rank of its ball
};

inline DerivedOrders derived_ball_orders(const ConvexOrderedSpace& A, const BlockLattice& L, const BlockTieBreak& tb) {
  auto rep = validate_convex_order(A);
  if (!rep.valid) {
    for (auto& b : rep.blocks)
      if (!b.ok) throw InputError("invalid convex order at block " + std::to_string(b.block) + ": " + b.witness);
  }
  const Graph& G = A.space;
  const int n = G.size();
  if (!L.maximum_block) throw PreconditionError("derived orders need a maximum block");
  DerivedOrders D;
  D.balls.resize(L.size());
  D.rank.assign(L.size(), std::vector<int>(n, 0));
  std::vector<char> done(L.size(), 0);
  auto h = block_heights(L);
  std::vector<int> todo(L.size());
  std::iota(todo.begin(), todo.end(), 0);
  std::stable_sort(todo.begin(), todo.end(), [&](int a, int b) { return h[a] > h[b]; });
  static const std::set<std::pair<int, int>> none;
  for (int B : todo) {
    auto balls = ball_partition(G, L, B);
    const int k = static_cast<int>(balls.size());
    std::vector<int> ball_of(n, 0);
    for (int i = 0; i < k; ++i)
      for (int v : balls[i]) ball_of[v] = i;
    // before[i][j]: ball i ≪ ball j
    std::vector<std::vector<char>> before(k, std::vector<char>(k, 0));
    if (L.is_max(B)) {
      if (k > 1) throw InternalError("more than one ball of the largest block");
    } else if (L.reducible(B)) {
      auto [B1, B2] = block_split(L, tb, B);
      if (!done[B1] || !done[B2]) throw InternalError("meet components ordered after their meet");
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          int x = balls[i][0], y = balls[j][0];
          auto kx = std::make_pair(D.rank[B1][x], D.rank[B2][x]);
          auto ky = std::make_pair(D.rank[B1][y], D.rank[B2][y]);
          before[i][j] = kx < ky;
        }
    } else {
      const int plus = block_plus(L, B);
      if (!done[plus]) throw InternalError("B⁺ ordered after B");
      auto it = A.orders.find(B);
      const auto& rel = it == A.orders.end() ? none : it->second;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          if (i == j) continue;
          int x = balls[i][0], y = balls[j][0];
          if (D.rank[plus][x] == D.rank[plus][y]) {
            bool r = false;
            for (int u : balls[i])
              for (int v : balls[j]) r = r || rel.count({u, v});
            before[i][j] = r;
          } else {
            before[i][j] = D.rank[plus][x] < D.rank[plus][y];
          }
        }
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (i != j && before[i][j] == before[j][i])
          throw InternalError("derived order of block " + std::to_string(B) + " is not total and antisymmetric");
        for (int l = 0; l < k; ++l)
          if (before[i][j] && before[j][l] && !before[i][l])
            throw InternalError("derived order of block " + std::to_string(B) + " is not transitive");
      }
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return before[i][j] != 0; });
    for (int r = 0; r < k; ++r) {
      D.balls[B].push_back(balls[idx[r]]);
      for (int v : balls[idx[r]]) D.rank[B][v] = r;
    }
    done[B] = 1;
  }
  return D;
}

// ---------------------------------------------------------------------------
// Ordered expansion.

inline StarStructure lift_ordered(const ConvexOrderedSpace& A, TypeOracle& oracle, const BlockTieBreak& tb) {
  const BlockLattice& L = oracle.lattice();
  StarStructure X = lift_star(A.space, oracle);
  auto D = derived_ball_orders(A, L, tb);
  std::vector<int> orig = X.originals();
  std::sort(orig.begin(), orig.end(), [&](int u, int v) { return D.rank[0][u] < D.rank[0][v]; });
  std::vector<int> balls = X.balls();
  auto key = [&](int b) {
    const int B = X.vertices[b].block;
    for (auto& [k, t] : X.fB)
      if (t == b) return std::make_pair(tb.rank[B], D.rank[B][k.first]);
    throw InternalError("lifted ball without an original");
  };
  std::sort(balls.begin(), balls.end(), [&](int a, int b) { return key(a) < key(b); });
  X.order = orig;
  X.order.insert(X.order.end(), balls.begin(), balls.end());
  return X;
}

inline ConvexOrderedSpace drop_ordered(const StarStructure& X) {
  const BlockLattice& L = *X.L;
  const Semigroup& S = *X.S;
  if (static_cast<int>(X.order.size()) != X.size()) throw InputError("ordered structure needs a linear order of all vertices");
  std::vector<int> pos(X.size(), -1);
  for (size_t i = 0; i < X.order.size(); ++i) {
    int v = X.order[i];
    if (v < 0 || v >= X.size() || pos[v] >= 0) throw InputError("order is not a permutation of the vertices");
    pos[v] = static_cast<int>(i);
  }
  Graph G = drop_star(X);
  auto orig = X.originals();
  ConvexOrderedSpace A(G);
  for (int B : L.meet_irreducibles) {
    const int plus = block_plus(L, B);
    std::set<std::pair<int, int>> rel;
    for (size_t i = 0; i < orig.size(); ++i)
      for (size_t j = 0; j < orig.size(); ++j) {
        if (i == j) continue;
        const int u = orig[i], v = orig[j];
        const int fu = B == 0 ? u : X.ball(u, B), fv = B == 0 ? v : X.ball(v, B);
        if (fu == fv) continue;
        if (!same_ball(S, L, G, static_cast<int>(i), static_cast<int>(j), plus)) continue;
        if (pos[fu] < pos[fv]) rel.insert({static_cast<int>(i), static_cast<int>(j)});
      }
    if (!rel.empty()) A.orders[B] = std::move(rel);
  }
  return A;
}

// ---------------------------------------------------------------------------
// Order completion.

struct PartialOrderStar {
  StarStructure structure;
  std::set<std::pair<int, int>> less;  // strict pairs
};

inline std::set<std::pair<int, int>> order_pairs(const std::vector<int>& order, const std::vector<int>& map) {
  std::set<std::pair<int, int>> r;
  for (size_t i = 0; i < order.size(); ++i)
    for (size_t j = i + 1; j < order.size(); ++j) r.insert({map[order[i]], map[order[j]]});
  return r;
}

inline PartialOrderStar ordered_free_amalgam(const StarStructure& B1, const StarStructure& B2,
                                             const std::vector<int>& shared1, const std::vector<int>& shared2) {
  auto am = free_amalgam_star(B1, B2, shared1, shared2);
  PartialOrderStar P{am.structure, order_pairs(B1.order, am.map1)};
  for (auto& p : order_pairs(B2.order, am.map2)) P.less.insert(p);
  P.structure.order.clear();
  return P;
}

struct LinearExtension {
  bool ok = false;
  std::vector<int> order;  // when ok
  std::vector<int> cycle;  // otherwise
};

// A linear extension of the pairs over n vertices, or the vertices of a cycle.
inline LinearExtension linear_extension(int n, const std::set<std::pair<int, int>>& less) {
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (auto& [a, b] : less) {
    out[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> order;
  std::set<int> ready;
  for (int v = 0; v < n; ++v)
    if (!indeg[v]) ready.insert(v);
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    for (int w : out[v])
      if (--indeg[w] == 0) ready.insert(w);
  }
  if (static_cast<int>(order.size()) == n) return {true, order, {}};
  // walk backwards along remaining edges to find a cycle
  std::vector<int> state(n, 0), stack, cyc;
  std::function<bool(int)> dfs = [&](int v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (int w : out[v]) {
      if (indeg[w] == 0) continue;
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cyc.assign(it, stack.end());
        return true;
      }
      if (state[w] == 0 && dfs(w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (int v = 0; v < n && cyc.empty(); ++v)
    if (indeg[v] > 0 && state[v] == 0) dfs(v);
  return {false, {}, cyc};
}

struct OrderCycle : InputError {
  OrderCycle(const std::string& what, std::vector<int> c) : InputError(what), cycle(std::move(c)) {}
  std::vector<int> cycle;
};

struct OrderedCompletion {
  StarStructure result;
  std::vector<int> embedding;
};

inline OrderedCompletion complete_ordered(const PartialOrderStar& C0, TypeOracle& oracle, const BlockTieBreak& tb,
                                          std::optional<std::vector<int>> ext = std::nullopt,
                                          const CompleteStarOptions& opt = {}) {
  const BlockLattice& L = oracle.lattice();
  const int n0 = C0.structure.size();
  if (ext) {
    if (static_cast<int>(ext->size()) != n0) throw InputError("linear extension must list every vertex");
    std::vector<int> pos(n0, -1);
    for (size_t i = 0; i < ext->size(); ++i) {
      int v = (*ext)[i];
      if (v < 0 || v >= n0 || pos[v] >= 0) throw InputError("linear extension is not a permutation");
      pos[v] = static_cast<int>(i);
    }
    for (auto& [a, b] : C0.less)
      if (pos[a] > pos[b]) throw InputError("given order does not extend the structure's order");
  } else {
    auto r = linear_extension(n0, C0.less);
    if (!r.ok) {
      std::string names;
      for (int v : r.cycle) names += (names.empty() ? "" : " < ") + C0.structure.vertices[v].name;
      throw OrderCycle("order has no linear extension: " + names, r.cycle);
    }
    ext = r.order;
  }
  auto sc = complete_star(C0.structure, oracle, opt);
  StarStructure C = sc.result;
  // deorphaned vertices extend the input; the embedding is defined on them
  const StarStructure& D = sc.deorphaned;
  std::vector<int> pos0(C.size(), -1);
  int next = 0;
  for (int v : *ext) pos0[sc.embedding[v]] = next++;
  for (int v = n0; v < D.size(); ++v)
    if (pos0[sc.embedding[v]] < 0) pos0[sc.embedding[v]] = next++;
  for (int v = 0; v < C.size(); ++v)
    if (pos0[v] < 0) pos0[v] = next++;

  std::vector<int> I;
  for (int B : tb.order)
    if (B != 0 && L.irreducible(B)) I.push_back(B);
  auto key = [&](int v) {
    std::vector<int> k;
    if (C.is_original(v)) {
      k.push_back(0);
      for (int B : I) k.push_back(pos0[C.ball(v, B)]);
      k.push_back(pos0[v]);
    } else {
      const int B = C.vertices[v].block;
      const int i = static_cast<int>(std::find(I.begin(), I.end(), B) - I.begin());
      k.push_back(1);
      k.push_back(i);
      for (int j = 0; j < i; ++j)
        if (L.lt(B, I[j])) k.push_back(pos0[C.up(v, I[j])]);
      k.push_back(pos0[v]);
    }
    return k;
  };
  std::vector<int> order(C.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> keys(C.size());
  for (int v = 0; v < C.size(); ++v) keys[v] = key(v);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
  C.order = order;

  std::vector<int> pos(C.size());
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  for (auto& [a, b] : C0.less)
    if (pos[sc.embedding[a]] > pos[sc.embedding[b]])
      throw InternalError("completed order reverses " + C0.structure.vertices[a].name + " < " +
                          C0.structure.vertices[b].name);
  return {C, sc.embedding};
}

}  // namespace smv
