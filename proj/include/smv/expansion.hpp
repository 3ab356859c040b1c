#pragma once
// Ball-vertex expansion of metric spaces: types of ball pairs, the lift and
// its inverse, block-distances, ⋆-cycles, orphan removal, mus, important
// summands, witness gadgets and completion of expanded structures.

#include <cstdint>
#include <memory>

#include "families.hpp"

namespace smv {

using LatticePtr = std::shared_ptr<const BlockLattice>;

// ---------------------------------------------------------------------------
// Balls.

inline bool below_block(const Semigroup& S, const BlockLattice& L, int x, int B) {
  for (int b : L.blocks[B].members)
    if (S.leq(x, b)) return true;
  return false;
}

// Classes of ∼_B on a complete space, each sorted, ordered by least member.
inline std::vector<std::vector<int>> ball_partition(const Graph& M, const BlockLattice& L, int B) {
  const int n = M.size();
  const Semigroup& S = M.semigroup();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> out;
  for (int u = 0; u < n; ++u) {
    if (cls[u] >= 0) continue;
    cls[u] = static_cast<int>(out.size());
    out.push_back({u});
    if (B == 0) continue;
    for (int v = u + 1; v < n; ++v) {
      if (cls[v] >= 0) continue;
      const int d = M.label(u, v);
      if (d < 0) throw InputError("ball partition needs a complete space");
      if (below_block(S, L, d, B)) {
        cls[v] = cls[u];
        out.back().push_back(v);
      }
    }
  }
  return out;
}

// Intersection of a B1-ball and a B2-ball, checked to be empty or a ball of B1 ∧ B2.
inline std::vector<int> intersect_balls(const Graph& M, const BlockLattice& L, int B1, const std::vector<int>& ball1,
                                        int B2, const std::vector<int>& ball2) {
  const int m = L.meet_of(B1, B2);
  if (B1 == 0 || B2 == 0 || m < 0 || m == 0) throw PreconditionError("ball intersection needs a defined non-𝟎 meet");
  std::vector<int> a = ball1, b = ball2, out;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.empty()) return out;
  for (auto& cls : ball_partition(M, L, m))
    if (std::find(cls.begin(), cls.end(), out[0]) != cls.end()) {
      if (cls != out) throw InternalError("ball intersection is not a ball of the meet");
      return out;
    }
  throw InternalError("vertex missing from the meet partition");
}

// ---------------------------------------------------------------------------
// Types t(B, ℓ).

struct DistanceType {
  int block = 0;
  int rep = 0;
  std::vector<int> members;  // sorted element indices
};

namespace detail {

inline bool tri(const Semigroup& S, int x, int y, int z) {
  return S.leq(x, S.op(y, z)) && S.leq(y, S.op(x, z)) && S.leq(z, S.op(x, y));
}

// mask of z with (x, y, z) metric, per ordered pair (x, y).
struct TriTable {
  int n = 0, W = 0;
  std::vector<uint64_t> mask;

  explicit TriTable(const Semigroup& S) : n(S.size()), W((S.size() + 63) / 64) {
    mask.assign(static_cast<size_t>(n) * n * W, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (tri(S, x, y, z)) mask[(static_cast<size_t>(x) * n + y) * W + z / 64] |= 1ULL << (z % 64);
  }
  bool meets(int x1, int y1, int x2, int y2) const {
    const uint64_t* p = &mask[(static_cast<size_t>(x1) * n + y1) * W];
    const uint64_t* q = &mask[(static_cast<size_t>(x2) * n + y2) * W];
    for (int w = 0; w < W; ++w)
      if (p[w] & q[w]) return true;
    return false;
  }
};

}  // namespace detail

// Closed form for F = ∅. Four points u, u′, v, v′ with u ∼_B u′, v ∼_B v′,
// d(u,v) = a, d(u′,v′) = ℓ; the two cross distances meet disjoint triangles,
// so each can be chosen independently. Identified points are handled case by case.
inline std::vector<int> type_members_free(const Semigroup& S, const BlockLattice& L, int B, int ell,
                                          const detail::TriTable* table = nullptr) {
  const int n = S.size();
  if (B == 0) return {ell};
  if (L.is_max(B)) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> down;
  for (int x = 0; x < n; ++x)
    if (below_block(S, L, x, B)) down.push_back(x);
  std::optional<detail::TriTable> own;
  if (!table) table = &own.emplace(S);
  auto meets = [&](int x1, int y1, int x2, int y2) { return table->meets(x1, y1, x2, y2); };
  auto any = [&](int x, int y) { return meets(x, y, x, y); };
  std::vector<char> in_down(n, 0);
  for (int x : down) in_down[x] = 1;
  std::vector<int> out;
  for (int a = 0; a < n; ++a) {
    bool ok = a == ell;
    for (int beta : down)
      if (!ok && detail::tri(S, a, beta, ell)) ok = true;  // u = u′
    for (int alpha : down)
      if (!ok && detail::tri(S, alpha, a, ell)) ok = true;  // v = v′
    if (!ok && in_down[a] && in_down[ell] && any(a, ell)) ok = true;  // u = v′ or u′ = v
    for (size_t i = 0; i < down.size() && !ok; ++i)
      for (size_t j = 0; j < down.size() && !ok; ++j) {
        const int alpha = down[i], beta = down[j];
        if (meets(alpha, ell, a, beta) && meets(alpha, a, beta, ell)) ok = true;
      }
    if (ok) out.push_back(a);
  }
  return out;
}

// Direct search over complete labellings of the four-point configurations,
// rejecting those with a homomorphic image of a member of F.
inline std::vector<int> type_members_search(const SemigroupPtr& Sp, const BlockLattice& L, const CycleFamily& F, int B,
                                            int ell) {
  const Semigroup& S = *Sp;
  const int n = S.size();
  if (B == 0) return {ell};
  std::vector<char> down(n, 0);
  for (int x = 0; x < n; ++x) down[x] = L.is_max(B) || below_block(S, L, x, B);
  // slots: 0=u 1=u′ 2=v 3=v′; patterns identify slots
  const std::vector<std::vector<int>> patterns = {
      {0, 1, 2, 3}, {0, 0, 1, 2}, {0, 1, 2, 2}, {0, 0, 1, 1}, {0, 1, 2, 0}, {0, 1, 1, 2}, {0, 1, 1, 0}};
  std::vector<int> out;
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (auto& pat : patterns) {
      if (found) break;
      const int k = *std::max_element(pat.begin(), pat.end()) + 1;
      if (pat[0] == pat[2] || pat[1] == pat[3]) continue;
      Graph G(Sp, k);
      // required labels
      std::map<std::pair<int, int>, int> fixed;
      bool clash = false;
      auto need = [&](int s, int t, int d) {
        int x = pat[s], y = pat[t];
        if (x == y) return;
        auto key = std::minmax(x, y);
        auto it = fixed.find(key);
        if (it != fixed.end() && it->second != d) clash = true;
        fixed[key] = d;
      };
      need(0, 2, a);
      need(1, 3, ell);
      if (clash) continue;
      // ball constraints: pairs that must lie below B
      std::set<std::pair<int, int>> ballpairs;
      if (pat[0] != pat[1]) ballpairs.insert(std::minmax(pat[0], pat[1]));
      if (pat[2] != pat[3]) ballpairs.insert(std::minmax(pat[2], pat[3]));
      std::vector<std::pair<int, int>> all;
      for (int x = 0; x < k; ++x)
        for (int y = x + 1; y < k; ++y) all.emplace_back(x, y);
      std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == all.size()) {
          for (int x = 0; x < k; ++x)
            for (int y = 0; y < k; ++y)
              for (int z = 0; z < k; ++z)
                if (x != y && y != z && x != z && !S.leq(G.label(x, z), S.op(G.label(x, y), G.label(y, z))))
                  return false;
          return F.empty() || check_forb(G, F).omits;
        }
        auto [x, y] = all[i];
        auto it = fixed.find({x, y});
        for (int d = 0; d < n; ++d) {
          if (it != fixed.end() && d != it->second) continue;
          if (ballpairs.count({x, y}) && !down[d]) continue;
          G.set_edge(x, y, d);
          if (rec(i + 1)) return true;
        }
        G.set_edge(x, y, -1);
        return false;
      };
      found = rec(0);
    }
    if (found) out.push_back(a);
  }
  return out;
}

// Memoised types for one semigroup and family.
class TypeOracle {
 public:
  explicit TypeOracle(SemigroupPtr S, CycleFamily F = {})
      : S_(std::move(S)), L_(std::make_shared<const BlockLattice>(compute_blocks(*S_))), F_(std::move(F)) {}

  const Semigroup& semigroup() const { return *S_; }
  const SemigroupPtr& semigroup_ptr() const { return S_; }
  const BlockLattice& lattice() const { return *L_; }
  const LatticePtr& lattice_ptr() const { return L_; }
  const CycleFamily& family() const { return F_; }

  const std::vector<int>& members(int B, int ell) {
    auto key = std::make_pair(B, ell);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<int> m;
    if (F_.empty()) {
      if (!tri_) tri_.emplace(*S_);
      m = type_members_free(*S_, *L_, B, ell, &*tri_);
    } else {
      m = type_members_search(S_, *L_, F_, B, ell);
    }
    return cache_.emplace(key, std::move(m)).first->second;
  }

  DistanceType type_of(int B, int ell) {
    if (B < 0 || B >= L_->size()) throw InputError("block id out of range");
    if (L_->is_max(B)) throw PreconditionError("types are defined for non-maximal blocks");
    return {B, ell, members(B, ell)};
  }

 private:
  SemigroupPtr S_;
  LatticePtr L_;
  CycleFamily F_;
  std::map<std::pair<int, int>, std::vector<int>> cache_;
  std::optional<detail::TriTable> tri_;
};

// ---------------------------------------------------------------------------
// Structures with ball vertices.

struct StarVertex {
  std::string name;
  int block = -1;  // -1 for original vertices, else the ball's block
  bool operator==(const StarVertex&) const = default;
};

struct TypeRel {
  std::vector<int> blocks;  // distinct ball blocks, ascending
  std::vector<int> type;    // member set of the type
  std::vector<int> xs, ys;  // ball vertices
  auto operator<=>(const TypeRel&) const = default;
};

class StarStructure {
 public:
  StarStructure() = default;
  StarStructure(SemigroupPtr S, LatticePtr L) : S(std::move(S)), L(std::move(L)) {}

  SemigroupPtr S;
  LatticePtr L;
  std::vector<StarVertex> vertices;
  std::map<std::pair<int, int>, int> dist;  // (u<v) original pairs
  std::map<std::pair<int, int>, int> fB;    // (original, block) -> ball
  std::map<std::pair<int, int>, int> fBB;   // (ball, larger block) -> ball
  std::set<TypeRel> rels;
  std::vector<int> order;  // optional linear order of all vertices

  int size() const { return static_cast<int>(vertices.size()); }
  bool is_original(int v) const { return vertices.at(v).block < 0; }
  int add_original(std::string nm) {
    vertices.push_back({std::move(nm), -1});
    return size() - 1;
  }
  int add_ball(std::string nm, int block) {
    vertices.push_back({std::move(nm), block});
    return size() - 1;
  }
  std::vector<int> originals() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (is_original(v)) r.push_back(v);
    return r;
  }
  std::vector<int> balls() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (!is_original(v)) r.push_back(v);
    return r;
  }
  int distance(int u, int v) const {
    if (u == v) return -1;
    auto it = dist.find(std::minmax(u, v));
    return it == dist.end() ? -1 : it->second;
  }
  void set_distance(int u, int v, int d) {
    if (u == v) throw InputError("no distance from a vertex to itself");
    if (!is_original(u) || !is_original(v)) throw InputError("distances join original vertices only");
    dist[std::minmax(u, v)] = d;
  }
  int ball(int v, int block) const {
    auto it = fB.find({v, block});
    return it == fB.end() ? -1 : it->second;
  }
  int up(int b, int block) const {
    auto it = fBB.find({b, block});
    return it == fBB.end() ? -1 : it->second;
  }
  int index(const std::string& nm) const {
    for (int v = 0; v < size(); ++v)
      if (vertices[v].name == nm) return v;
    throw InputError("unknown vertex '" + nm + "'");
  }

  bool operator==(const StarStructure& o) const {
    return vertices == o.vertices && dist == o.dist && fB == o.fB && fBB == o.fBB && rels == o.rels &&
           order == o.order;
  }
};

// Ball blocks strictly above B, in id order.
inline std::vector<int> ball_blocks_above(const BlockLattice& L, int B) {
  std::vector<int> r;
  for (int C : L.ball_blocks())
    if (L.lt(B, C)) r.push_back(C);
  return r;
}

inline void require_star_lattice(const BlockLattice& L) {
  for (int a = 1; a < L.size(); ++a)
    for (int b = 1; b < L.size(); ++b) {
      int m = L.meet_of(a, b);
      if (m <= 0) throw InputError("ball expansion needs every meet of non-𝟎 blocks to be defined and non-𝟎");
    }
}

// Non-maximal, non-𝟎 blocks with every set of distinct ball blocks meeting to them.
inline std::vector<std::pair<int, std::vector<int>>> type_tuples(const BlockLattice& L) {
  auto I = L.ball_blocks();
  std::vector<std::pair<int, std::vector<int>>> out;
  const int k = static_cast<int>(I.size());
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<int> bs;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) bs.push_back(I[i]);
    int m = L.meet_all(bs);
    if (m == 0 || L.is_max(m)) continue;
    out.emplace_back(m, bs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline StarStructure lift_star(const Graph& M, TypeOracle& oracle) {
  const BlockLattice& L = oracle.lattice();
  require_star_lattice(L);
  if (!M.complete()) throw InputError("lift needs a complete metric space");
  StarStructure A(oracle.semigroup_ptr(), oracle.lattice_ptr());
  const int n = M.size();
  for (int v = 0; v < n; ++v) A.add_original(M.name(v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) A.set_distance(u, v, M.label(u, v));
  for (int B : L.ball_blocks()) {
    auto parts = ball_partition(M, L, B);
    for (size_t i = 0; i < parts.size(); ++i) {
      int b = A.add_ball("b" + std::to_string(B) + "." + std::to_string(i), B);
      for (int v : parts[i]) A.fB[{v, B}] = b;
    }
  }
  for (int B : L.ball_blocks())
    for (int C : ball_blocks_above(L, B))
      for (int v = 0; v < n; ++v) A.fBB[{A.ball(v, B), C}] = A.ball(v, C);
  for (auto& [B, bs] : type_tuples(L))
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        TypeRel r;
        r.blocks = bs;
        for (int C : bs) {
          r.xs.push_back(A.ball(u, C));
          r.ys.push_back(A.ball(v, C));
        }
        if (r.xs == r.ys) continue;
        r.type = oracle.members(B, M.label(u, v));
        A.rels.insert(std::move(r));
      }
  return A;
}

// Problems with respect to the local consistency conditions; empty if none.
inline std::vector<std::string> star_problems(const StarStructure& A) {
  std::vector<std::string> out;
  const BlockLattice& L = *A.L;
  const Semigroup& S = *A.S;
  auto I = L.ball_blocks();
  for (int v = 0; v < A.size(); ++v) {
    const auto& vx = A.vertices[v];
    if (vx.block < 0) {
      for (int B : I) {
        int b = A.ball(v, B);
        if (b < 0) out.push_back(vx.name + " lacks its ball for block " + std::to_string(B));
        else if (A.vertices[b].block != B) out.push_back(vx.name + " points to a ball of the wrong block");
      }
      for (int B : I)
        for (int C : ball_blocks_above(L, B)) {
          int b = A.ball(v, B), c = A.ball(v, C);
          if (b >= 0 && c >= 0 && A.up(b, C) != c)
            out.push_back(vx.name + " has inconsistent balls for blocks " + std::to_string(B) + " and " +
                          std::to_string(C));
        }
    } else {
      if (std::find(I.begin(), I.end(), vx.block) == I.end()) out.push_back(vx.name + " has a non-ball block");
      for (int C : ball_blocks_above(L, vx.block)) {
        int c = A.up(v, C);
        if (c < 0) out.push_back(vx.name + " lacks its superball for block " + std::to_string(C));
        else if (A.vertices[c].block != C) out.push_back(vx.name + " superball has the wrong block");
      }
    }
  }
  for (auto& [k, b] : A.fB)
    if (!A.is_original(k.first)) out.push_back("ball function defined on a ball vertex");
  for (auto& [k, b] : A.fBB) {
    if (A.is_original(k.first)) out.push_back("superball function defined on an original vertex");
    if (A.vertices[b].block != k.second) out.push_back("superball function lands in the wrong block");
  }
  for (auto& [uv, d] : A.dist) {
    if (d < 0 || d >= S.size()) out.push_back("distance out of range");
    const int bd = L.block_of[d];
    for (int B : I) {
      bool same = A.ball(uv.first, B) == A.ball(uv.second, B);
      if (same != L.le(bd, B))
        out.push_back("distance " + S.name(d) + " between " + A.vertices[uv.first].name + " and " +
                      A.vertices[uv.second].name + " disagrees with their balls for block " + std::to_string(B));
    }
  }
  for (auto& r : A.rels) {
    if (r.blocks.size() != r.xs.size() || r.xs.size() != r.ys.size() || r.blocks.empty()) {
      out.push_back("malformed type relation");
      continue;
    }
    for (size_t i = 0; i < r.blocks.size(); ++i)
      if (A.vertices[r.xs[i]].block != r.blocks[i] || A.vertices[r.ys[i]].block != r.blocks[i])
        out.push_back("type relation on balls of the wrong block");
    if (r.xs == r.ys) out.push_back("type relation on equal tuples");
  }
  return out;
}

inline Graph drop_star(const StarStructure& A) {
  Graph G(A.S);
  std::vector<int> idx(A.size(), -1);
  for (int v : A.originals()) idx[v] = G.add_vertex(A.vertices[v].name);
  std::set<int> pointed;
  for (auto& [k, b] : A.fB) pointed.insert(b);
  for (int b : A.balls())
    if (!pointed.count(b)) throw InputError("orphaned ball vertex " + A.vertices[b].name);
  auto orig = A.originals();
  for (size_t i = 0; i < orig.size(); ++i)
    for (size_t j = i + 1; j < orig.size(); ++j) {
      int d = A.distance(orig[i], orig[j]);
      if (d < 0)
        throw InputError("missing distance between " + A.vertices[orig[i]].name + " and " + A.vertices[orig[j]].name);
      G.set_edge(idx[orig[i]], idx[orig[j]], d);
    }
  return G;
}

// ---------------------------------------------------------------------------
// Block-distances and ⋆-cycles.

struct BlockDistance {
  int block = 0;              // block forced by the shared balls
  int type_block = -1;        // meet of the blocks of the applicable types, -1 if none applies
  std::vector<int> type;      // intersection of the applicable types, or all of M
  std::vector<int> members;   // type ∩ block
};

inline BlockDistance block_distance_full(const StarStructure& A, int u, int v) {
  if (u == v) throw InputError("block-distance needs distinct vertices");
  if (!A.is_original(u) || !A.is_original(v)) throw InputError("block-distance is defined on original vertices");
  const BlockLattice& L = *A.L;
  const Semigroup& S = *A.S;
  BlockDistance r;
  std::vector<int> shared;
  for (int B : L.ball_blocks()) {
    int x = A.ball(u, B), y = A.ball(v, B);
    if (x >= 0 && x == y) shared.push_back(B);
  }
  r.block = L.meet_all(shared);
  r.type.resize(S.size());
  std::iota(r.type.begin(), r.type.end(), 0);
  std::vector<int> tblocks;
  for (auto& rel : A.rels) {
    bool match = true;
    for (size_t i = 0; i < rel.blocks.size() && match; ++i)
      match = A.ball(u, rel.blocks[i]) == rel.xs[i] && A.ball(v, rel.blocks[i]) == rel.ys[i];
    if (!match) continue;
    // types applying along a chain intersect to the inclusion-minimal one
    std::vector<int> both;
    std::set_intersection(r.type.begin(), r.type.end(), rel.type.begin(), rel.type.end(), std::back_inserter(both));
    r.type = std::move(both);
    tblocks.push_back(L.meet_all(rel.blocks));
  }
  if (!tblocks.empty()) r.type_block = L.meet_all(tblocks);
  for (int x : r.type)
    if (L.block_of[x] == r.block) r.members.push_back(x);
  if (r.members.empty())
    throw InputError("empty block-distance between " + A.vertices[u].name + " and " + A.vertices[v].name);
  return r;
}

inline std::vector<int> block_distance(const StarStructure& A, int u, int v) {
  return block_distance_full(A, u, v).members;
}

struct StarCycleWitness {
  std::vector<int> vertices;  // originals in cyclic order
  std::vector<std::vector<int>> options;  // allowed labels per consecutive pair
};

struct StarCycleFound : InputError {
  StarCycleFound(const std::string& what, StarCycleWitness w) : InputError(what), witness(std::move(w)) {}
  StarCycleWitness witness;
};

// A cyclic sequence of originals whose pair options admit no metric choice.
// Two-vertex cycles catch a defined distance outside its block-distance.
inline std::optional<StarCycleWitness> find_star_cycle(const StarStructure& A, int max_len = 5,
                                                       long long choice_budget = 5000000) {
  const Semigroup& S = *A.S;
  auto orig = A.originals();
  const int n = static_cast<int>(orig.size());
  std::vector<std::vector<std::vector<int>>> opt(n, std::vector<std::vector<int>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int d = A.distance(orig[i], orig[j]);
      auto bd = block_distance(A, orig[i], orig[j]);
      if (d >= 0) {
        if (!std::binary_search(bd.begin(), bd.end(), d)) {
          std::sort(bd.begin(), bd.end());
          if (!std::binary_search(bd.begin(), bd.end(), d))
            return StarCycleWitness{{orig[i], orig[j]}, {{d}, bd}};
        }
        opt[i][j] = {d};
      } else {
        opt[i][j] = bd;
      }
    }
  long long spent = 0;
  std::vector<int> seq, labels;
  std::vector<char> used(n, 0);
  auto metric_choice_exists = [&](const std::vector<int>& cyc) {
    const int k = static_cast<int>(cyc.size());
    labels.assign(k, 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
      if (i == k) {
        if (++spent > choice_budget) throw ResourceError("⋆-cycle choice budget exhausted");
        return cycle_is_metric(S, labels);
      }
      for (int x : opt[cyc[i]][cyc[(i + 1) % k]]) {
        labels[i] = x;
        if (rec(i + 1)) return true;
      }
      return false;
    };
    return rec(0);
  };
  std::optional<StarCycleWitness> found;
  std::function<void()> dfs = [&]() {
    if (found) return;
    const int k = static_cast<int>(seq.size());
    if (k >= 3 && seq[1] < seq.back() && !metric_choice_exists(seq)) {
      StarCycleWitness w;
      for (int i = 0; i < k; ++i) {
        w.vertices.push_back(orig[seq[i]]);
        w.options.push_back(opt[seq[i]][seq[(i + 1) % k]]);
      }
      found = w;
      return;
    }
    if (k == max_len) return;
    for (int j = seq[0] + 1; j < n; ++j)
      if (!used[j]) {
        used[j] = 1;
        seq.push_back(j);
        dfs();
        seq.pop_back();
        used[j] = 0;
      }
  };
  for (int s = 0; s < n && !found; ++s) {
    seq = {s};
    used.assign(n, 0);
    used[s] = 1;
    dfs();
  }
  return found;
}

// ---------------------------------------------------------------------------
// Orphans.

inline std::vector<int> orphans(const StarStructure& A) {
  std::set<int> pointed;
  for (auto& [k, b] : A.fB) pointed.insert(b);
  std::vector<int> r;
  for (int b : A.balls())
    if (!pointed.count(b)) r.push_back(b);
  return r;
}

// Adds one original per orphan (smaller blocks first) together with fresh
// balls for the blocks not above the orphan's block.
inline StarStructure deorphan(const StarStructure& A0) {
  StarStructure A = A0;
  const BlockLattice& L = *A.L;
  auto I = L.ball_blocks();
  auto height = [&](int B) {
    int h = 0;
    for (int C : I)
      if (L.lt(C, B)) ++h;
    return h;
  };
  auto list = orphans(A);
  std::stable_sort(list.begin(), list.end(),
                   [&](int x, int y) { return height(A.vertices[x].block) < height(A.vertices[y].block); });
  int fresh = 0;
  for (int b : list) {
    bool still = true;
    for (auto& [k, t] : A.fB)
      if (t == b) { still = false; break; }
    if (!still) continue;
    const int B = A.vertices[b].block;
    const int o = A.add_original("o" + std::to_string(fresh++));
    std::map<int, int> ballof;
    for (int C : I) {
      if (C == B) ballof[C] = b;
      else if (L.lt(B, C)) {
        int c = A.up(b, C);
        if (c < 0) throw InputError("orphan " + A.vertices[b].name + " lacks a superball");
        ballof[C] = c;
      }
    }
    for (int C : I)
      if (!ballof.count(C)) ballof[C] = A.add_ball(A.vertices[o].name + ".b" + std::to_string(C), C);
    for (int C : I) A.fB[{o, C}] = ballof[C];
    for (int C : I) {
      if (C == B || L.lt(B, C)) continue;  // existing balls keep their links
      for (int D : ball_blocks_above(L, C)) A.fBB[{ballof[C], D}] = ballof[D];
    }
  }
  return A;
}

// ---------------------------------------------------------------------------
// mus and important summands.

namespace detail {

// For every e ∈ S^⊕ plus the empty sum (-1): does some b ∈ B reach ℓ?
inline bool dichotomy_ok(const Semigroup& S, const BlockLattice& L, int B, const std::vector<int>& Sset,
                         const std::vector<int>& gen, int m, bool with_empty) {
  std::vector<int> es = gen;
  if (with_empty) es.push_back(-1);
  for (int ell : Sset)
    for (int e : es) {
      auto plus = [&](int x) { return e < 0 ? x : S.op(e, x); };
      if (S.leq(ell, plus(m))) continue;
      for (int b : L.blocks[B].members)
        if (S.leq(ell, plus(b))) return false;
    }
  return true;
}

}  // namespace detail

inline bool validate_mus(const Semigroup& S, const BlockLattice& L, int B, const std::vector<int>& Sset, int m) {
  if (B <= 0 || B >= L.size()) return false;
  if (L.block_of[m] != B) return false;
  return detail::dichotomy_ok(S, L, B, Sset, generated_set(S, Sset), m, false);
}

// Prefers elements of B ∩ S^⊕ that also satisfy the dichotomy for the empty
// sum, as the accumulator argument of the important-summand selection needs.
inline int compute_mus(const Semigroup& S, const BlockLattice& L, int B, const std::vector<int>& Sset) {
  if (B <= 0 || B >= L.size()) throw InputError("mus needs a non-𝟎 block");
  if (Sset.empty()) throw InputError("mus needs a nonempty distance set");
  auto gen = generated_set(S, Sset);
  std::vector<int> pref, rest;
  for (int b : L.blocks[B].members)
    (std::binary_search(gen.begin(), gen.end(), b) ? pref : rest).push_back(b);
  const std::vector<int>& pool = pref.empty() ? rest : pref;
  for (bool with_empty : {true, false})
    for (int m : pool)
      if (detail::dichotomy_ok(S, L, B, Sset, gen, m, with_empty)) return m;
  throw InternalError("no valid mus in block " + std::to_string(B));
}

struct ImportantResult {
  std::vector<int> kept;   // indices into the input sequence
  std::vector<int> values; // the kept elements
  long long bound = 0;     // n(S)
};

inline long long important_bound(const Semigroup& S, const BlockLattice& L, const std::vector<int>& Sset) {
  long long n = 0;
  for (int s : Sset) {
    const int m = compute_mus(S, L, L.block_of[s], Sset);
    int x = s;
    long long k = 1;
    while (!S.leq(m, x)) {
      x = S.op(x, s);
      if (++k > S.size() + 1) throw InternalError("multiples never reach mus");
    }
    n += k;
  }
  return n;
}

inline ImportantResult important_subsequence(const Semigroup& S, const BlockLattice& L, int ell,
                                             const std::vector<int>& e, const std::vector<int>& Sset) {
  auto inS = [&](int x) { return std::find(Sset.begin(), Sset.end(), x) != Sset.end(); };
  if (!inS(ell)) throw InputError("ℓ must belong to the distance set");
  for (int x : e)
    if (!inS(x)) throw InputError("every summand must belong to the distance set");
  if (e.empty()) throw InputError("empty sequence");
  if (S.leq(ell, S.fold(e))) throw InputError("ℓ is below the sum of the sequence");
  ImportantResult r;
  r.bound = important_bound(S, L, Sset);
  std::map<int, int> acc;  // block -> accumulator (absent = neutral)
  std::map<int, int> mus;
  for (size_t i = 0; i < e.size(); ++i) {
    const int B = L.block_of[e[i]];
    if (!mus.count(B)) mus[B] = compute_mus(S, L, B, Sset);
    auto it = acc.find(B);
    if (it != acc.end() && S.leq(mus[B], it->second)) continue;
    acc[B] = it == acc.end() ? e[i] : S.op(it->second, e[i]);
    r.kept.push_back(static_cast<int>(i));
    r.values.push_back(e[i]);
  }
  return r;
}

// Original vertices sufficient for a shortest non-metric ⋆-cycle: every kept
// summand and the long edge touch at most two originals each.
inline long long star_cycle_bound(const Semigroup& S, const BlockLattice& L) {
  std::vector<int> all(S.size());
  std::iota(all.begin(), all.end(), 0);
  return 2 * (important_bound(S, L, all) + 1);
}

// ---------------------------------------------------------------------------
// Witness gadgets.

struct Gadget {
  int a = -1;  // -1: the gadget is the single edge b
  int b = -1;
};

// t ⊆ Bprime is t(type_block, ·) ∩ Bprime.
inline Gadget witness_gadget(const Semigroup& S, const BlockLattice& L, const CycleFamily& F, int type_block,
                             const std::vector<int>& t, int Bprime, const std::vector<int>& Sset,
                             const std::vector<int>& avoid = {}) {
  std::vector<std::string> missing;
  for (int B = 1; B < L.size(); ++B) {
    bool hit = false;
    for (int s : Sset) hit = hit || L.block_of[s] == B;
    if (!hit) missing.push_back("block " + std::to_string(B));
  }
  bool hit_t = false;
  for (int s : Sset) hit_t = hit_t || std::find(t.begin(), t.end(), s) != t.end();
  if (!hit_t) missing.push_back("type");
  if (!missing.empty()) {
    std::string msg = "gadget hypothesis fails; distance set misses:";
    for (auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }
  auto gen = generated_set(S, Sset);
  auto avoided = [&](int x) { return std::find(avoid.begin(), avoid.end(), x) != avoid.end(); };
  Gadget g;
  const int mb = compute_mus(S, L, Bprime, Sset);
  std::vector<int> cands;
  for (int x : t)
    if (std::binary_search(gen.begin(), gen.end(), x) && S.leq(mb, x)) cands.push_back(x);
  for (int x : cands)
    if (!avoided(x)) { g.b = x; break; }
  if (g.b < 0 && !cands.empty()) g.b = cands[0];
  if (g.b < 0) {
    auto top = supremum(S, t);
    if (!top || std::find(t.begin(), t.end(), *top) == t.end())
      throw InputError("type has no largest element for the gadget");
    g.b = *top;
  }
  if (type_block == 0) return g;
  std::vector<int> S2 = Sset;
  if (std::find(S2.begin(), S2.end(), g.b) == S2.end()) S2.push_back(g.b);
  long long q = 1;
  if (F.finite()) {
    for (auto& c : F.cycles)
      if (std::all_of(c.begin(), c.end(), [&](int x) { return std::find(S2.begin(), S2.end(), x) != S2.end(); }))
        q = std::max<long long>(q, static_cast<long long>(c.size()));
  } else {
    auto conf = is_confined(S, F, S2);
    if (conf.divergent) throw InputError("gadgets need a confined family");
    for (auto& c : family_members(S, F, 64, S2)) q = std::max<long long>(q, static_cast<long long>(c.size()));
  }
  const int m = compute_mus(S, L, type_block, S2);
  g.a = scalar_multiple(S, m, q);
  if (avoided(g.a)) g.a = scalar_multiple(S, m, 2 * q);
  return g;
}

// ---------------------------------------------------------------------------
// Completion.

namespace detail {

// Complete graph on n vertices whose edges carry label sequences.
struct SequenceGraph {
  int n = 0;
  std::vector<std::vector<int>> seq;  // n*n, empty = no edge

  const std::vector<int>& at(int u, int v) const { return seq[u * n + v]; }
};

inline std::optional<std::vector<int>> nonmetric_cycle(const Semigroup& S, const SequenceGraph& K) {
  std::vector<int> path, labels;
  std::vector<char> used(K.n, 0);
  std::optional<std::vector<int>> bad;
  std::function<void()> dfs = [&]() {
    if (bad) return;
    const int s = path[0], x = path.back();
    if (path.size() >= 3 && !K.at(x, s).empty() && path[1] < x) {
      auto c = labels;
      c.insert(c.end(), K.at(x, s).begin(), K.at(x, s).end());
      if (!cycle_is_metric(S, c)) {
        bad = path;
        return;
      }
    }
    for (int y = s + 1; y < K.n; ++y) {
      if (used[y] || K.at(x, y).empty()) continue;
      used[y] = 1;
      path.push_back(y);
      const size_t mark = labels.size();
      labels.insert(labels.end(), K.at(x, y).begin(), K.at(x, y).end());
      dfs();
      labels.resize(mark);
      path.pop_back();
      used[y] = 0;
    }
  };
  for (int s = 0; s < K.n && !bad; ++s) {
    path = {s};
    labels.clear();
    used.assign(K.n, 0);
    used[s] = 1;
    dfs();
  }
  // a single edge whose own sequence is non-metric as a path is fine; only cycles matter
  return bad;
}

inline std::vector<std::vector<char>> reachable_lengths(const Semigroup& S, const SequenceGraph& K, int src,
                                                        long long budget) {
  std::vector<std::vector<char>> seen(K.n, std::vector<char>(S.size(), 0));
  std::vector<char> used(K.n, 0);
  used[src] = 1;
  long long count = 0;
  std::function<void(int, int)> dfs = [&](int x, int len) {
    for (int y = 0; y < K.n; ++y) {
      if (used[y] || K.at(x, y).empty()) continue;
      int l = len;
      for (int c : K.at(x, y)) l = l < 0 ? c : S.op(l, c);
      seen[y][l] = 1;
      if (++count > budget) throw PathBudgetExceeded("too many paths in the gadget graph");
      used[y] = 1;
      dfs(y, l);
      used[y] = 0;
    }
  };
  dfs(src, -1);
  return seen;
}

}  // namespace detail

// Does A map into B by the identity on shared vertex names, preserving
// distances, functions and type relations? Returns the vertex map.
inline std::optional<std::vector<int>> star_homomorphism(const StarStructure& A, const StarStructure& B) {
  std::vector<int> f(A.size(), -1);
  for (int v : A.originals()) {
    int w = -1;
    for (int x : B.originals())
      if (B.vertices[x].name == A.vertices[v].name) w = x;
    if (w < 0) return std::nullopt;
    f[v] = w;
  }
  for (auto& [k, b] : A.fB) {
    int img = B.ball(f[k.first], k.second);
    if (img < 0) return std::nullopt;
    if (f[b] >= 0 && f[b] != img) return std::nullopt;
    f[b] = img;
  }
  for (int v = 0; v < A.size(); ++v)
    if (f[v] < 0) return std::nullopt;
  for (auto& [uv, d] : A.dist)
    if (B.distance(f[uv.first], f[uv.second]) != d) return std::nullopt;
  for (auto& [k, c] : A.fBB)
    if (B.up(f[k.first], k.second) != f[c]) return std::nullopt;
  for (auto& r : A.rels) {
    TypeRel im = r;
    for (auto& x : im.xs) x = f[x];
    for (auto& y : im.ys) y = f[y];
    if (!B.rels.count(im)) return std::nullopt;
  }
  return f;
}

struct StarCompletion {
  StarStructure result;        // lift of the completed original space
  std::vector<int> embedding;  // input (after orphan removal) -> result
  StarStructure deorphaned;
  Graph space;                 // completed original space
};

struct CompleteStarOptions {
  int star_cycle_len = 5;
  long long path_budget = 2000000;
  std::vector<int> avoid;  // distances to keep out of gadgets (Henson constraints)
};

inline StarCompletion complete_star(const StarStructure& A0, TypeOracle& oracle,
                                    const CompleteStarOptions& opt = {}) {
  const Semigroup& S = oracle.semigroup();
  const BlockLattice& L = oracle.lattice();
  const CycleFamily& F = oracle.family();
  require_star_lattice(L);
  auto probs = star_problems(A0);
  if (!probs.empty()) throw InputError("inconsistent ball structure: " + probs.front());
  StarStructure A = deorphan(A0);
  if (auto w = find_star_cycle(A, opt.star_cycle_len)) throw StarCycleFound("non-metric ⋆-cycle", *w);

  auto orig = A.originals();
  const int n = static_cast<int>(orig.size());
  std::vector<int> all(S.size());
  std::iota(all.begin(), all.end(), 0);
  detail::SequenceGraph K;
  K.n = n;
  K.seq.assign(n * n, {});
  Graph base(oracle.semigroup_ptr());
  for (int v : orig) base.add_vertex(A.vertices[v].name);
  std::map<std::pair<int, int>, BlockDistance> bds;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int d = A.distance(orig[i], orig[j]);
      if (d >= 0) {
        K.seq[i * n + j] = K.seq[j * n + i] = {d};
        base.set_edge(i, j, d);
        continue;
      }
      auto bd = block_distance_full(A, orig[i], orig[j]);
      const int tb = bd.type_block < 0 ? bd.block : bd.type_block;
      Gadget g = witness_gadget(S, L, F, tb, bd.members, bd.block, all, opt.avoid);
      std::vector<int> s = g.a < 0 ? std::vector<int>{g.b} : std::vector<int>{g.a, g.b, g.a};
      K.seq[i * n + j] = s;
      std::reverse(s.begin(), s.end());
      K.seq[j * n + i] = s;
      bds[{i, j}] = bd;
    }
  if (!F.empty()) {
    auto fr = check_forb(base, F);
    if (!fr.omits) throw ForbViolationInput("original vertices contain a forbidden cycle", fr.cycle, fr.image);
    Graph G = base;
    for (auto& [ij, bd] : bds) {
      const auto& s = K.seq[ij.first * n + ij.second];
      int prev = ij.first;
      for (size_t k = 0; k < s.size(); ++k) {
        int nxt = k + 1 == s.size() ? ij.second : G.add_vertex();
        G.set_edge(prev, nxt, s[k]);
        prev = nxt;
      }
    }
    auto gr = check_forb(G, F);
    if (!gr.omits) throw ForbViolationInput("gadget graph contains a forbidden cycle", gr.cycle, gr.image);
  }
  if (auto bad = detail::nonmetric_cycle(S, K)) {
    StarCycleWitness w;
    for (int i : *bad) w.vertices.push_back(orig[i]);
    throw StarCycleFound("gadget graph is not metric", w);
  }
  Graph space = base;
  for (int i = 0; i < n; ++i) {
    auto seen = detail::reachable_lengths(S, K, i, opt.path_budget);
    for (int j = i + 1; j < n; ++j) {
      if (base.has_edge(i, j)) continue;
      std::vector<int> ls;
      for (int x = 0; x < S.size(); ++x)
        if (seen[j][x]) ls.push_back(x);
      auto inf = infimum(S, ls);
      if (!inf) throw UndefinedInfimum("undefined infimum in the gadget graph", i, j, {});
      space.set_edge(i, j, *inf);
      const auto& bd = bds[{i, j}];
      if (!std::binary_search(bd.members.begin(), bd.members.end(), *inf))
        throw InternalError("completed distance " + S.name(*inf) + " leaves the block-distance of " +
                            base.name(i) + ", " + base.name(j));
    }
  }
  StarCompletion out{lift_star(space, oracle), {}, A, space};
  auto f = star_homomorphism(A, out.result);
  if (!f) throw InternalError("the lifted completion does not extend the input");
  out.embedding = *f;
  return out;
}

// ---------------------------------------------------------------------------
// Substructures and free amalgams.

// Originals plus everything reachable from them by the functions.
inline std::vector<int> star_closure(const StarStructure& A, const std::vector<int>& originals) {
  std::set<int> out(originals.begin(), originals.end());
  std::vector<int> stack(originals.begin(), originals.end());
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    auto visit = [&](const std::map<std::pair<int, int>, int>& fn) {
      for (auto it = fn.lower_bound({x, INT32_MIN}); it != fn.end() && it->first.first == x; ++it)
        if (out.insert(it->second).second) stack.push_back(it->second);
    };
    visit(A.fB);
    visit(A.fBB);
  }
  return {out.begin(), out.end()};
}

inline StarStructure induced_star(const StarStructure& A, const std::vector<int>& keep) {
  StarStructure B(A.S, A.L);
  std::vector<int> idx(A.size(), -1);
  for (int v : keep) {
    idx[v] = B.size();
    B.vertices.push_back(A.vertices[v]);
  }
  for (auto& [uv, d] : A.dist)
    if (idx[uv.first] >= 0 && idx[uv.second] >= 0) B.dist[std::minmax(idx[uv.first], idx[uv.second])] = d;
  for (auto& [k, b] : A.fB)
    if (idx[k.first] >= 0 && idx[b] >= 0) B.fB[{idx[k.first], k.second}] = idx[b];
  for (auto& [k, b] : A.fBB)
    if (idx[k.first] >= 0 && idx[b] >= 0) B.fBB[{idx[k.first], k.second}] = idx[b];
  for (auto& r : A.rels) {
    TypeRel t = r;
    bool ok = true;
    for (auto& x : t.xs) ok = ok && (x = idx[x]) >= 0;
    for (auto& y : t.ys) ok = ok && (y = idx[y]) >= 0;
    if (ok) B.rels.insert(t);
  }
  for (int v : A.order)
    if (idx[v] >= 0) B.order.push_back(idx[v]);
  return B;
}

struct StarAmalgam {
  StarStructure structure;
  std::vector<int> map1, map2;
};

// Free amalgam of B1 and B2 over the vertex correspondence shared1[i] ~ shared2[i].
inline StarAmalgam free_amalgam_star(const StarStructure& B1, const StarStructure& B2, const std::vector<int>& shared1,
                                     const std::vector<int>& shared2) {
  if (shared1.size() != shared2.size()) throw InputError("shared vertex lists differ in length");
  StarAmalgam am{StarStructure(B1.S, B1.L), {}, {}};
  StarStructure& C = am.structure;
  for (int v = 0; v < B1.size(); ++v) {
    am.map1.push_back(C.size());
    C.vertices.push_back(B1.vertices[v]);
  }
  am.map2.assign(B2.size(), -1);
  for (size_t i = 0; i < shared1.size(); ++i) {
    if (B1.vertices[shared1[i]].block != B2.vertices[shared2[i]].block)
      throw InputError("shared vertices of different kinds");
    am.map2[shared2[i]] = am.map1[shared1[i]];
  }
  std::set<std::string> names;
  for (auto& v : C.vertices) names.insert(v.name);
  for (int v = 0; v < B2.size(); ++v)
    if (am.map2[v] < 0) {
      StarVertex x = B2.vertices[v];
      while (names.count(x.name)) x.name += "'";
      names.insert(x.name);
      am.map2[v] = C.size();
      C.vertices.push_back(x);
    }
  auto merge = [&](const StarStructure& B, const std::vector<int>& m) {
    for (auto& [uv, d] : B.dist) {
      auto key = std::minmax(m[uv.first], m[uv.second]);
      auto it = C.dist.find(key);
      if (it != C.dist.end() && it->second != d) throw InputError("amalgam sides disagree on a distance");
      C.dist[key] = d;
    }
    auto mergef = [&](const std::map<std::pair<int, int>, int>& src, std::map<std::pair<int, int>, int>& dst) {
      for (auto& [k, b] : src) {
        std::pair<int, int> key{m[k.first], k.second};
        auto it = dst.find(key);
        if (it != dst.end() && it->second != m[b]) throw InputError("amalgam sides disagree on a function");
        dst[key] = m[b];
      }
    };
    mergef(B.fB, C.fB);
    mergef(B.fBB, C.fBB);
    for (auto& r : B.rels) {
      TypeRel t = r;
      for (auto& x : t.xs) x = m[x];
      for (auto& y : t.ys) y = m[y];
      C.rels.insert(t);
    }
  };
  merge(B1, am.map1);
  merge(B2, am.map2);
  return am;
}

}  // namespace smv
