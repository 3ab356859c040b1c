#pragma once
// Edge-labelled graphs over a semigroup, shortest path completion,
// Forb(F) membership, amalgamation and stationary independence.

#include <functional>
#include <memory>
#include <numeric>

#include "semigroup.hpp"

namespace smv {

using SemigroupPtr = std::shared_ptr<const Semigroup>;

inline SemigroupPtr share(Semigroup S) { return std::make_shared<const Semigroup>(std::move(S)); }

class Graph {
 public:
  Graph() = default;
  explicit Graph(SemigroupPtr S, int n = 0) : S_(std::move(S)) {
    for (int i = 0; i < n; ++i) add_vertex();
  }
  Graph(SemigroupPtr S, std::vector<std::string> names) : S_(std::move(S)) {
    for (auto& nm : names) add_vertex(nm);
  }

  int add_vertex(std::string nm = "") {
    const int old = size();
    if (nm.empty()) nm = "v" + std::to_string(old);
    names_.push_back(std::move(nm));
    std::vector<int> d((old + 1) * (old + 1), -1);
    for (int i = 0; i < old; ++i)
      for (int j = 0; j < old; ++j) d[i * (old + 1) + j] = d_[i * old + j];
    d_ = std::move(d);
    return old;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const Semigroup& semigroup() const { return *S_; }
  const SemigroupPtr& semigroup_ptr() const { return S_; }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& nm) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == nm) return i;
    throw InputError("unknown vertex '" + nm + "'");
  }

  int label(int u, int v) const { return d_[u * size() + v]; }
  bool has_edge(int u, int v) const { return label(u, v) >= 0; }
  void set_edge(int u, int v, int d) {
    if (u == v) throw InputError("self-loops are not allowed");
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw InputError("vertex out of range");
    if (d < -1 || d >= S_->size()) throw InputError("edge label is not a semigroup element");
    d_[u * size() + v] = d;
    d_[v * size() + u] = d;
  }
  void remove_edge(int u, int v) { set_edge(u, v, -1); }

  bool complete() const {
    for (int u = 0; u < size(); ++u)
      for (int v = u + 1; v < size(); ++v)
        if (!has_edge(u, v)) return false;
    return true;
  }
  int edge_count() const {
    int c = 0;
    for (int u = 0; u < size(); ++u)
      for (int v = u + 1; v < size(); ++v) c += has_edge(u, v);
    return c;
  }

  Graph induced(const std::vector<int>& verts) const {
    Graph H(S_);
    for (int v : verts) H.add_vertex(names_[v]);
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        H.set_edge(static_cast<int>(i), static_cast<int>(j), label(verts[i], verts[j]));
    return H;
  }

  // Same labels on the same index pairs (names ignored).
  bool same_labels(const Graph& o) const { return size() == o.size() && d_ == o.d_; }
  bool operator==(const Graph& o) const { return names_ == o.names_ && d_ == o.d_; }

 private:
  SemigroupPtr S_;
  std::vector<std::string> names_;
  std::vector<int> d_;
};

// ---------------------------------------------------------------------------
// Cycles and cycle families.

// Lexicographically least rotation/reflection.
inline std::vector<int> canonical_cycle(const std::vector<int>& c) {
  std::vector<int> best = c;
  const size_t k = c.size();
  std::vector<int> r(k);
  for (int dir = 0; dir < 2; ++dir)
    for (size_t s = 0; s < k; ++s) {
      for (size_t i = 0; i < k; ++i) r[i] = dir == 0 ? c[(s + i) % k] : c[(s + k - i) % k];
      if (r < best) best = r;
    }
  return best;
}

// a_i ⪯ ⊕_{j≠i} a_j for every i.
// Two-edge cycles are metric exactly when both labels agree.
inline bool cycle_is_metric(const Semigroup& S, const std::vector<int>& c) {
  if (c.size() == 2) return c[0] == c[1];
  for (size_t i = 0; i < c.size(); ++i) {
    int s = -1;
    for (size_t j = 0; j < c.size(); ++j)
      if (j != i) s = s < 0 ? c[j] : S.op(s, c[j]);
    if (!S.leq(c[i], s)) return false;
  }
  return true;
}

struct CycleFamily {
  enum class Kind { Finite, OddPerimeterBelow, All };
  Kind kind = Kind::Finite;
  long long p = 0;
  std::set<std::vector<int>> cycles;  // canonical forms, finite kind only

  static CycleFamily odd_perimeter_below(long long p) {
    CycleFamily F;
    F.kind = Kind::OddPerimeterBelow;
    F.p = p;
    return F;
  }
  static CycleFamily all() {
    CycleFamily F;
    F.kind = Kind::All;
    return F;
  }

  void add(const std::vector<int>& c) {
    if (c.size() < 2) throw InputError("cycles need at least two edges");
    if (kind != Kind::Finite) throw InputError("cannot add cycles to a parametric family");
    cycles.insert(canonical_cycle(c));
  }
  bool empty() const { return kind == Kind::Finite && cycles.empty(); }
  bool finite() const { return kind == Kind::Finite; }
  size_t max_length() const {
    size_t m = 0;
    for (auto& c : cycles) m = std::max(m, c.size());
    return m;
  }

  bool contains(const Semigroup& S, const std::vector<int>& c) const {
    switch (kind) {
      case Kind::Finite:
        return cycles.count(canonical_cycle(c)) > 0;
      case Kind::All:
        return c.size() >= 2;
      case Kind::OddPerimeterBelow: {
        if (c.size() < 2) return false;
        std::vector<long long> v;
        long long per = 0;
        for (int x : c) {
          v.push_back(std::stoll(S.name(x)));
          per += v.back();
        }
        if (per % 2 == 0 || per >= p) return false;
        for (long long x : v)
          if (2 * x > per) return false;
        return true;
      }
    }
    return false;
  }
};

// ---------------------------------------------------------------------------

inline int walk_length(const Graph& G, const std::vector<int>& walk) {
  if (walk.size() < 2) throw InputError("a walk needs at least one edge");
  int s = -1;
  for (size_t i = 0; i + 1 < walk.size(); ++i) {
    int d = G.label(walk[i], walk[i + 1]);
    if (d < 0)
      throw InputError("walk uses missing edge " + G.name(walk[i]) + "-" + G.name(walk[i + 1]));
    s = s < 0 ? d : G.semigroup().op(s, d);
  }
  return s;
}

inline std::optional<int> family_infimum(const Semigroup& S, const std::vector<int>& lengths) {
  if (lengths.empty()) throw InputError("infimum of an empty family");
  return infimum(S, lengths);
}

struct ForbResult {
  bool omits = true;            // true iff no member maps homomorphically into G
  std::vector<int> cycle;       // offending member's labels
  std::vector<int> image;       // image of its vertices
};

namespace detail {

inline bool closed_walk_with_labels(const Graph& G, const std::vector<int>& c, std::vector<int>& walk) {
  const int n = G.size();
  const size_t k = c.size();
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    int cur = walk[i];
    if (i + 1 == k) return G.label(cur, walk[0]) == c[k - 1];
    for (int w = 0; w < n; ++w)
      if (G.label(cur, w) == c[i]) {
        walk[i + 1] = w;
        if (rec(i + 1)) return true;
      }
    return false;
  };
  walk.assign(k, -1);
  for (int v = 0; v < n; ++v) {
    walk[0] = v;
    if (rec(0)) return true;
  }
  return false;
}

}  // namespace detail

// Parametric families are tested on closed walks up to max_len edges.
inline ForbResult check_forb(const Graph& G, const CycleFamily& F, int max_len = 8) {
  ForbResult r;
  if (F.finite()) {
    for (auto& c : F.cycles) {
      std::vector<int> walk;
      if (detail::closed_walk_with_labels(G, c, walk)) {
        r.omits = false;
        r.cycle = c;
        r.image = walk;
        return r;
      }
    }
    return r;
  }
  const int n = G.size();
  std::vector<int> walk, labels;
  const Semigroup& S = G.semigroup();
  std::function<bool()> rec = [&]() -> bool {
    int cur = walk.back();
    if (walk.size() >= 2 && G.has_edge(cur, walk[0])) {
      labels.push_back(G.label(cur, walk[0]));
      bool hit = F.contains(S, labels);
      if (hit) return true;
      labels.pop_back();
    }
    if (static_cast<int>(walk.size()) >= max_len) return false;
    for (int w = 0; w < n; ++w)
      if (G.has_edge(cur, w)) {
        walk.push_back(w);
        labels.push_back(G.label(cur, w));
        if (rec()) return true;
        walk.pop_back();
        labels.pop_back();
      }
    return false;
  };
  for (int v = 0; v < n; ++v) {
    walk = {v};
    labels.clear();
    if (rec()) {
      r.omits = false;
      r.cycle = labels;
      r.image = walk;
      return r;
    }
  }
  return r;
}

struct PathBudget {
  int max_vertices = 12;
  long long max_paths_per_pair = 200000;
  int forb_max_len = 8;  // closed-walk bound for parametric families
};

inline std::vector<std::vector<int>> components(const Graph& G) {
  const int n = G.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      out.back().push_back(x);
      for (int y = 0; y < n; ++y)
        if (G.has_edge(x, y) && comp[y] < 0) {
          comp[y] = comp[s];
          stack.push_back(y);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

// A cycle subgraph with some edge not below the sum of the others, or none.
// Among violations on the first offending edge, the one with fewest edges.
inline std::optional<CycleWitness> find_nonmetric_witness(const Graph& G, const PathBudget& budget = {}) {
  const int n = G.size();
  if (n > budget.max_vertices) throw PathBudgetExceeded("graph exceeds the path-enumeration vertex cap");
  const Semigroup& S = G.semigroup();
  std::vector<int> path;
  std::vector<char> used(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int d = G.label(u, v);
      if (d < 0) continue;
      long long count = 0;
      std::vector<int> best;
      std::function<void(int, int)> dfs = [&](int x, int len) {
        for (int y = 0; y < n; ++y) {
          int e = G.label(x, y);
          if (e < 0 || used[y]) continue;
          if (x == u && y == v) continue;
          int l = len < 0 ? e : S.op(len, e);
          if (y == v) {
            if (++count > budget.max_paths_per_pair) throw PathBudgetExceeded("too many paths between a pair");
            if (!S.leq(d, l) && (best.empty() || path.size() + 1 < best.size())) {
              best = path;
              best.push_back(v);
            }
            continue;
          }
          used[y] = 1;
          path.push_back(y);
          dfs(y, l);
          path.pop_back();
          used[y] = 0;
        }
      };
      path = {u};
      used[u] = 1;
      dfs(u, -1);
      used[u] = 0;
      if (!best.empty()) {
        CycleWitness w;
        w.vertices = best;
        for (size_t i = 0; i + 1 < best.size(); ++i) w.labels.push_back(G.label(best[i], best[i + 1]));
        w.labels.push_back(d);
        return w;
      }
    }
  return std::nullopt;
}

namespace detail {

// For every simple path from src, mark its length at its endpoint.
inline void path_lengths_from(const Graph& G, int src, std::vector<std::vector<char>>& seen,
                              std::vector<long long>& count, const PathBudget& budget) {
  const int n = G.size();
  const Semigroup& S = G.semigroup();
  std::vector<char> used(n, 0);
  used[src] = 1;
  std::function<void(int, int)> dfs = [&](int x, int len) {
    for (int y = 0; y < n; ++y) {
      int e = G.label(x, y);
      if (e < 0 || used[y]) continue;
      int l = len < 0 ? e : S.op(len, e);
      seen[y][l] = 1;
      if (++count[y] > budget.max_paths_per_pair) throw PathBudgetExceeded("too many paths between a pair");
      used[y] = 1;
      dfs(y, l);
      used[y] = 0;
    }
  };
  dfs(src, -1);
}

inline std::vector<std::vector<int>> paths_between(const Graph& G, int u, int v, size_t limit) {
  const int n = G.size();
  std::vector<std::vector<int>> out;
  std::vector<int> path{u};
  std::vector<char> used(n, 0);
  used[u] = 1;
  std::function<void(int)> dfs = [&](int x) {
    for (int y = 0; y < n && out.size() < limit; ++y) {
      if (!G.has_edge(x, y) || used[y]) continue;
      path.push_back(y);
      if (y == v) out.push_back(path);
      else {
        used[y] = 1;
        dfs(y);
        used[y] = 0;
      }
      path.pop_back();
    }
  };
  dfs(u);
  return out;
}

}  // namespace detail

// Joins the components of G to the first one by edges labelled with the
// ⪯-maximum. Returns G unchanged when it is connected.
inline Graph connect_components(const Graph& G) {
  auto comps = components(G);
  if (comps.size() <= 1) return G;
  auto m = G.semigroup().maximum();
  if (!m) throw NoMaximumElement("disconnected input over a semigroup without a maximum element");
  Graph H = G;
  for (size_t i = 1; i < comps.size(); ++i) H.set_edge(comps[0][0], comps[i][0], *m);
  return H;
}

inline Graph shortest_path_completion(const Graph& G0, const CycleFamily& F = {}, const PathBudget& budget = {}) {
  const int n = G0.size();
  if (n > budget.max_vertices) throw PathBudgetExceeded("graph exceeds the path-enumeration vertex cap");
  if (!F.empty()) {
    auto fr = check_forb(G0, F, budget.forb_max_len);
    if (!fr.omits) throw ForbViolationInput("input contains a homomorphic image of a forbidden cycle", fr.cycle, fr.image);
  }
  const Graph G = connect_components(G0);
  if (auto w = find_nonmetric_witness(G, budget)) throw NonMetricInput("input graph is not metric", *w);
  const Semigroup& S = G.semigroup();
  Graph out = G0;
  for (int u = 0; u < n; ++u) {
    std::vector<std::vector<char>> seen(n, std::vector<char>(S.size(), 0));
    std::vector<long long> count(n, 0);
    bool need = false;
    for (int v = u + 1; v < n; ++v) need |= !G0.has_edge(u, v);
    if (!need) continue;
    detail::path_lengths_from(G, u, seen, count, budget);
    for (int v = u + 1; v < n; ++v) {
      if (G0.has_edge(u, v)) continue;
      std::vector<int> lens;
      for (int x = 0; x < S.size(); ++x)
        if (seen[v][x]) lens.push_back(x);
      auto inf = infimum(S, lens);
      if (!inf) {
        auto paths = detail::paths_between(G, u, v, static_cast<size_t>(budget.max_paths_per_pair));
        // Keep one path per length, then drop paths while the infimum stays undefined.
        std::map<int, std::vector<int>> rep;
        for (auto& p : paths) rep.emplace(walk_length(G, p), p);
        std::vector<std::vector<int>> fam;
        for (auto& [l, p] : rep) fam.push_back(p);
        for (size_t i = 0; i < fam.size();) {
          std::vector<int> ls;
          for (size_t j = 0; j < fam.size(); ++j)
            if (j != i) ls.push_back(walk_length(G, fam[j]));
          if (!ls.empty() && !infimum(S, ls)) fam.erase(fam.begin() + static_cast<long>(i));
          else ++i;
        }
        throw UndefinedInfimum("path lengths between " + G.name(u) + " and " + G.name(v) + " have no infimum",
                               u, v, fam);
      }
      out.set_edge(u, v, *inf);
    }
  }
  return out;
}

inline bool is_metric_space(const Graph& G) {
  if (!G.complete()) return false;
  const Semigroup& S = G.semigroup();
  const int n = G.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && b != c && a != c && !S.leq(G.label(a, c), S.op(G.label(a, b), G.label(b, c)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Amalgamation.

struct Amalgam {
  Graph graph;
  std::vector<int> map1;  // B1 vertex -> amalgam vertex
  std::vector<int> map2;  // B2 vertex -> amalgam vertex
};

inline Amalgam free_amalgam(const Graph& B1, const Graph& B2, const Graph& A, const std::vector<int>& emb1,
                            const std::vector<int>& emb2) {
  const int a = A.size();
  if (static_cast<int>(emb1.size()) != a || static_cast<int>(emb2.size()) != a)
    throw InputError("embedding size differs from the shared substructure");
  auto check = [&](const Graph& B, const std::vector<int>& e, const char* which) {
    std::set<int> img(e.begin(), e.end());
    if (static_cast<int>(img.size()) != a) throw InputError(std::string("embedding into ") + which + " is not injective");
    for (int x : e)
      if (x < 0 || x >= B.size()) throw InputError(std::string("embedding into ") + which + " out of range");
    for (int i = 0; i < a; ++i)
      for (int j = i + 1; j < a; ++j)
        if (A.label(i, j) != B.label(e[i], e[j]))
          throw InputError(std::string("embedding into ") + which + " disagrees with the shared structure");
  };
  check(B1, emb1, "B1");
  check(B2, emb2, "B2");
  Amalgam am;
  am.graph = Graph(B1.semigroup_ptr());
  for (int v = 0; v < B1.size(); ++v) am.map1.push_back(am.graph.add_vertex(B1.name(v)));
  am.map2.assign(B2.size(), -1);
  for (int i = 0; i < a; ++i) am.map2[emb2[i]] = am.map1[emb1[i]];
  std::set<std::string> used(B1.names().begin(), B1.names().end());
  for (int v = 0; v < B2.size(); ++v)
    if (am.map2[v] < 0) {
      std::string nm = B2.name(v);
      while (used.count(nm)) nm += "'";
      used.insert(nm);
      am.map2[v] = am.graph.add_vertex(nm);
    }
  for (int u = 0; u < B1.size(); ++u)
    for (int v = u + 1; v < B1.size(); ++v)
      if (B1.has_edge(u, v)) am.graph.set_edge(am.map1[u], am.map1[v], B1.label(u, v));
  for (int u = 0; u < B2.size(); ++u)
    for (int v = u + 1; v < B2.size(); ++v)
      if (B2.has_edge(u, v)) am.graph.set_edge(am.map2[u], am.map2[v], B2.label(u, v));
  return am;
}

inline Amalgam strong_amalgam(const Graph& B1, const Graph& B2, const Graph& A, const std::vector<int>& emb1,
                              const std::vector<int>& emb2, const CycleFamily& F = {}, const PathBudget& budget = {}) {
  for (const Graph* B : {&B1, &B2}) {
    if (!is_metric_space(*B)) throw InputError("amalgamation inputs must be complete metric spaces");
    if (!F.empty() && !check_forb(*B, F, budget.forb_max_len).omits)
      throw InputError("amalgamation input contains a forbidden cycle");
  }
  Amalgam am = free_amalgam(B1, B2, A, emb1, emb2);
  am.graph = shortest_path_completion(am.graph, F, budget);
  return am;
}

// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> automorphisms(const Graph& G, int cap = 8) {
  const int n = G.size();
  if (n > cap) throw ResourceError("automorphism search above the vertex cap");
  std::vector<std::vector<int>> out;
  std::vector<int> img(n, -1);
  std::vector<char> taken(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) { out.push_back(img); return; }
    for (int c = 0; c < n; ++c) {
      if (taken[c]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = G.label(i, j) == G.label(c, img[j]);
      if (!ok) continue;
      taken[c] = 1;
      img[i] = c;
      rec(i + 1);
      taken[c] = 0;
    }
  };
  rec(0);
  return out;
}

// A ⊥_C B: d(a,b) = inf{d(a,c) ⊕ d(b,c) : c ∈ C} for every a ∈ A, b ∈ B, a ≠ b.
// A term with c equal to a or b reduces to the remaining distance.
inline bool sir_independent(const Graph& Msp, const std::vector<int>& A, const std::vector<int>& B,
                            const std::vector<int>& C) {
  const Semigroup& S = Msp.semigroup();
  std::optional<int> top;
  if (C.empty()) {
    top = S.maximum();
    if (!top) throw InputError("empty base needs a semigroup with a maximum element");
  }
  for (int a : A)
    for (int b : B) {
      if (a == b) continue;
      const int dab = Msp.label(a, b);
      if (dab < 0) throw InputError("sir_independent needs a complete space");
      if (C.empty()) {
        if (dab != *top) return false;
        continue;
      }
      std::vector<int> terms;
      for (int c : C) {
        if (c == a) terms.push_back(Msp.label(b, c));
        else if (c == b) terms.push_back(Msp.label(a, c));
        else terms.push_back(S.op(Msp.label(a, c), Msp.label(b, c)));
      }
      auto inf = infimum(S, terms);
      if (!inf || *inf != dab) return false;
    }
  return true;
}

}  // namespace smv
