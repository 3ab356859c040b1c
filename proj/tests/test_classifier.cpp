#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "smv/classifier.hpp"
#include "smv/fixtures.hpp"
#include "smv/magic.hpp"

using namespace smv;

namespace {

// Every complete labelled graph on k vertices, as upper-triangle label vectors.
template <class Fn>
void for_each_labelling(int k, int n, Fn&& fn) {
  const int edges = k * (k - 1) / 2;
  std::vector<int> lab(edges, 0);
  while (true) {
    fn(lab);
    int i = 0;
    while (i < edges && lab[i] == n - 1) lab[i++] = 0;
    if (i == edges) return;
    ++lab[i];
  }
}

int edge_id(int a, int b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

bool admits(const TriangleIndex& T, const TriangleClass& C, int k, const std::vector<int>& lab) {
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        if (!C.allowed(T, lab[edge_id(a, b)], lab[edge_id(b, c)], lab[edge_id(a, c)])) return false;
  return true;
}

// Two-point amalgamation over bases of exactly k vertices, by enumerating
// whole graphs: base vertices 0..k-1, x = k, y = k+1.
bool amalgamation_fails_at(const TriangleIndex& T, const TriangleClass& C, int k) {
  const int n = C.labels;
  bool fails = false;
  const int full = k + 2;
  for_each_labelling(full, n, [&](const std::vector<int>& lab) {
    if (fails || lab[edge_id(k, k + 1)] != 0) return;
    std::vector<int> bx, by;
    for (int v = 0; v <= k; ++v) bx.push_back(v);
    for (int v = 0; v < k; ++v) by.push_back(v);
    by.push_back(k + 1);
    auto sub_ok = [&](const std::vector<int>& vs) {
      std::vector<int> sub;
      for (size_t j = 1; j < vs.size(); ++j)
        for (size_t i = 0; i < j; ++i) sub.push_back(lab[edge_id(vs[i], vs[j])]);
      return admits(T, C, static_cast<int>(vs.size()), sub);
    };
    if (!sub_ok(bx) || !sub_ok(by)) return;
    auto l = lab;
    for (int e = 0; e < n; ++e) {
      l[edge_id(k, k + 1)] = e;
      if (admits(T, C, full, l)) return;
    }
    fails = true;
  });
  return fails;
}

TriangleClass all_triangles(const TriangleIndex& T) { return {T.labels(), T.full()}; }

TriangleClass from_forbidden(const TriangleIndex& T, const std::vector<std::array<int, 3>>& forb) {
  TriangleClass c = all_triangles(T);
  for (auto& t : forb) c.mask &= ~(uint64_t{1} << T.index(t[0], t[1], t[2]));
  return c;
}

TriangleClass magic_class(const TriangleIndex& T, const MagicParams& p, const SemigroupPtr& S) {
  TriangleClass c{T.labels(), 0};
  for (int t = 0; t < T.size(); ++t) {
    auto tri = T.triangle(t);
    Graph G(S, 3);
    G.set_edge(0, 1, tri[0]);
    G.set_edge(1, 2, tri[1]);
    G.set_edge(0, 2, tri[2]);
    if (magic_membership(G, p)) c.mask |= uint64_t{1} << t;
  }
  return c;
}

Graph simple_graph(const SemigroupPtr& S, int n, const std::vector<std::pair<int, int>>& edges) {
  Graph G(S, n);
  for (auto [a, b] : edges) G.set_edge(a, b, 0);
  return G;
}

}  // namespace

TEST_CASE("triangle indexing is symmetric and dense", "[classifier]") {
  for (int n = 1; n <= 5; ++n) {
    TriangleIndex T(n);
    CHECK(T.size() == n * (n + 1) * (n + 2) / 6);
    std::set<int> seen;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          CHECK(T.index(a, b, c) == T.index(c, a, b));
          CHECK(T.index(a, b, c) == T.index(b, a, c));
          seen.insert(T.index(a, b, c));
        }
    CHECK(static_cast<int>(seen.size()) == T.size());
  }
  CHECK_THROWS_AS(TriangleIndex(6), InputError);
}

TEST_CASE("canonical form is a normal form for label permutations", "[classifier]") {
  for (int n = 1; n <= 3; ++n) {
    TriangleIndex T(n);
    for (uint64_t m = 0; m <= T.full(); ++m) {
      const uint64_t c = T.canonical(m);
      CHECK(c <= m);
      CHECK(T.is_canonical(c));
      CHECK(T.is_canonical(m) == (c == m));
      // relabel triangle by triangle, independently of the lookup tables
      for (auto& perm : T.perms()) {
        uint64_t img = 0;
        for (int t = 0; t < T.size(); ++t)
          if (m >> t & 1) {
            auto tri = T.triangle(t);
            img |= uint64_t{1} << T.index(perm[tri[0]], perm[tri[1]], perm[tri[2]]);
          }
        REQUIRE(T.canonical(img) == c);
      }
    }
  }
}

TEST_CASE("single label census", "[classifier]") {
  CensusOptions opt;
  opt.filters.non_free = false;
  auto c = enumerate_triangle_classes(1, opt);
  REQUIRE(c.classes.size() == 1);
  CHECK(c.classes[0].mask == 1);
  CHECK(c.classes[0].strong);
  CHECK(c.classes[0].primitive);
  CHECK(c.complete);
}

TEST_CASE("strong amalgamation examples", "[classifier]") {
  TriangleIndex T2(2);
  CHECK(check_strong_amalgamation_bounded(T2, all_triangles(T2)).verdict == Verdict::Pass);

  // label 0 an equivalence: forbid (0,0,1); two cliques joined by label 1
  auto cliques = from_forbidden(T2, {{0, 0, 1}});
  CHECK(check_strong_amalgamation_bounded(T2, cliques).verdict == Verdict::Pass);
  auto prim = check_primitive(T2, cliques);
  CHECK_FALSE(prim.primitive);
  CHECK(prim.closed_subset == std::vector<int>{0});

  // (0,0,0) and (0,0,1) forbidden: the base edge 0 from x and y cannot be closed
  auto bad = from_forbidden(T2, {{0, 0, 0}, {0, 0, 1}});
  auto v = check_strong_amalgamation_bounded(T2, bad);
  REQUIRE(v.verdict == Verdict::Fail);
  REQUIRE(v.witness);
  CHECK(v.witness->base.size() == 1);
  CHECK(v.witness->x == std::vector<int>{0});
  CHECK(v.witness->y == std::vector<int>{0});

  // a cap below the label count is only a bound
  TriangleIndex T3(3);
  CHECK(check_strong_amalgamation_bounded(T3, all_triangles(T3), 2).verdict == Verdict::PassUpToBound);
  CHECK(check_strong_amalgamation_bounded(T3, all_triangles(T3)).verdict == Verdict::Pass);
}

TEST_CASE("strong amalgamation witnesses replay", "[classifier]") {
  TriangleIndex T(3);
  for (uint64_t m = 0; m <= T.full(); ++m) {
    TriangleClass C{3, m};
    auto v = check_strong_amalgamation_bounded(T, C);
    if (v.verdict != Verdict::Fail) continue;
    const auto& w = *v.witness;
    const int k = static_cast<int>(w.base.size());
    std::vector<int> lab((k + 2) * (k + 1) / 2, 0);
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) lab[edge_id(a, b)] = w.base[a][b];
    for (int a = 0; a < k; ++a) {
      lab[edge_id(a, k)] = w.x[a];
      lab[edge_id(a, k + 1)] = w.y[a];
    }
    bool closable = false;
    for (int e = 0; e < 3; ++e) {
      lab[edge_id(k, k + 1)] = e;
      closable = closable || admits(T, C, k + 2, lab);
    }
    REQUIRE_FALSE(closable);
    // both one-point extensions lie in the class
    std::vector<int> bx, by;
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i) {
        bx.push_back(j < k ? w.base[i][j] : w.x[i]);
        by.push_back(j < k ? w.base[i][j] : w.y[i]);
      }
    REQUIRE(admits(T, C, k + 1, bx));
    REQUIRE(admits(T, C, k + 1, by));
  }
}

TEST_CASE("strong amalgamation agrees with whole-graph enumeration", "[classifier]") {
  for (int n = 1; n <= 3; ++n) {
    TriangleIndex T(n);
    for (uint64_t m = 0; m <= T.full(); ++m) {
      if (!T.is_canonical(m)) continue;
      TriangleClass C{n, m};
      for (int k = 0; k <= n; ++k) {
        bool oracle = false;
        for (int j = 0; j <= k && !oracle; ++j) oracle = amalgamation_fails_at(T, C, j);
        INFO("n=" << n << " mask=" << m << " k=" << k);
        REQUIRE((check_strong_amalgamation_bounded(T, C, k).verdict == Verdict::Fail) == oracle);
      }
    }
  }
  // one larger base on two labels, past the exact depth
  TriangleIndex T(2);
  for (uint64_t m = 0; m <= T.full(); ++m) {
    TriangleClass C{2, m};
    const bool exact = check_strong_amalgamation_bounded(T, C).verdict == Verdict::Fail;
    bool deep = false;
    for (int j = 0; j <= 4 && !deep; ++j) deep = amalgamation_fails_at(T, C, j);
    REQUIRE(exact == deep);
  }
}

TEST_CASE("primitivity examples", "[classifier]") {
  TriangleIndex T3(3);
  CHECK(check_primitive(T3, all_triangles(T3)).primitive);
  TriangleIndex T1(1);
  CHECK(check_primitive(T1, all_triangles(T1)).primitive);

  auto p = MagicParams{3, 1, 3, 8, magic_M_range(3, 8, 1, 3).front()};
  REQUIRE(check_relevant(p).relevant);
  auto S = share(magic_semigroup(p).semigroup);
  auto mag = magic_class(T3, p, S);
  CHECK(check_primitive(T3, mag).primitive);
  CHECK(check_strong_amalgamation_bounded(T3, mag).verdict == Verdict::Pass);
}

TEST_CASE("primitivity witnesses give transitive relations", "[classifier]") {
  for (int n = 2; n <= 3; ++n) {
    TriangleIndex T(n);
    for (uint64_t m = 0; m <= T.full(); ++m) {
      if (!T.is_canonical(m)) continue;
      TriangleClass C{n, m};
      auto pv = check_primitive(T, C);
      if (pv.primitive) continue;
      std::set<int> S(pv.closed_subset.begin(), pv.closed_subset.end());
      REQUIRE(!S.empty());
      REQUIRE(static_cast<int>(S.size()) < n);
      const int max_k = n == 2 ? 5 : 4;
      for (int k = 3; k <= max_k; ++k)
        for_each_labelling(k, n, [&](const std::vector<int>& lab) {
          if (!admits(T, C, k, lab)) return;
          for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
              for (int c = 0; c < k; ++c) {
                if (a == b || b == c || a == c) continue;
                if (S.count(lab[edge_id(a, b)]) && S.count(lab[edge_id(b, c)])) REQUIRE(S.count(lab[edge_id(a, c)]));
              }
        });
    }
  }
}

TEST_CASE("primitivity agrees with a direct subset scan", "[classifier]") {
  TriangleIndex T(3);
  for (uint64_t m = 0; m <= T.full(); ++m) {
    TriangleClass C{3, m};
    bool some_closed = false;
    for (int S = 1; S < 7; ++S) {
      bool closed = true;
      for (int t = 0; t < T.size(); ++t) {
        if (!(m >> t & 1)) continue;
        auto tri = T.triangle(t);
        int inside = (S >> tri[0] & 1) + (S >> tri[1] & 1) + (S >> tri[2] & 1);
        if (inside == 2) closed = false;
      }
      some_closed = some_closed || closed;
    }
    REQUIRE(check_primitive(T, C).primitive == !some_closed);
  }
}

TEST_CASE("free flags", "[classifier]") {
  TriangleIndex T(3);
  CHECK(is_free_like(T, all_triangles(T)));
  CHECK(free_label(T, all_triangles(T)) == 0);
  auto c = from_forbidden(T, {{0, 0, 1}});
  CHECK_FALSE(is_free_like(T, c));
  CHECK(free_label(T, c) == 2);
  auto d = from_forbidden(T, {{0, 0, 2}, {0, 1, 1}, {1, 2, 2}});
  CHECK_FALSE(free_label(T, d).has_value());
}

TEST_CASE("census is independent of sharding and resumes from checkpoints", "[classifier]") {
  CensusOptions a;
  a.shards = 1;
  a.threads = 1;
  auto one = enumerate_triangle_classes(3, a);
  CensusOptions b;
  b.shards = 37;
  b.threads = 3;
  auto many = enumerate_triangle_classes(3, b);
  REQUIRE(one.classes.size() == many.classes.size());
  for (size_t i = 0; i < one.classes.size(); ++i) CHECK(one.classes[i].mask == many.classes[i].mask);
  CHECK(one.strong_primitive == many.strong_primitive);
  CHECK(std::is_sorted(one.classes.begin(), one.classes.end()));

  const std::string path = "census_checkpoint_test.txt";
  std::remove(path.c_str());
  CensusOptions c = b;
  c.checkpoint = path;
  auto first = enumerate_triangle_classes(3, c);
  auto resumed = enumerate_triangle_classes(3, c);
  CHECK(resumed.classes.size() == first.classes.size());
  CHECK(resumed.canonical_total == first.canonical_total);
  CHECK(resumed.strong_primitive_no_free_label == first.strong_primitive_no_free_label);
  c.shards = 5;
  CHECK_THROWS_AS(enumerate_triangle_classes(3, c), InputError);
  std::remove(path.c_str());
}

TEST_CASE("census listings match the per-class checks", "[classifier]") {
  CensusOptions opt;
  opt.filters = {false, false, false};
  auto c = enumerate_triangle_classes(3, opt);
  TriangleIndex T(3);
  long long canonical = 0;
  for (uint64_t m = 0; m <= T.full(); ++m) canonical += T.is_canonical(m);
  CHECK(c.canonical_total == canonical);
  CHECK(static_cast<long long>(c.classes.size()) == canonical);
  long long sp = 0;
  for (auto& e : c.classes) {
    TriangleClass C{3, e.mask};
    CHECK(e.strong == (check_strong_amalgamation_bounded(T, C).verdict != Verdict::Fail));
    CHECK(e.primitive == check_primitive(T, C).primitive);
    sp += e.strong && e.primitive;
  }
  CHECK(sp == c.strong_primitive);
}

TEST_CASE("n=4 census reports both freeness readings", "[classifier][census]") {
  auto c = enumerate_triangle_classes(4);
  CHECK(c.complete);
  CHECK(static_cast<long long>(c.classes.size()) == c.strong_primitive_non_free);
  CHECK(c.strong_primitive_no_free_label <= c.strong_primitive_non_free);
  CHECK(c.strong_primitive == c.strong_primitive_non_free + 1);  // only the all-triangles class is free_like
  TriangleIndex T(4);
  for (auto& e : c.classes) {
    CHECK(T.is_canonical(e.mask));
    CHECK(e.has_free_label == free_label(T, {4, e.mask}).has_value());
  }
}

TEST_CASE("semigroup fitting", "[classifier]") {
  TriangleIndex T1(1);
  auto one = fit_semigroup(T1, all_triangles(T1));
  REQUIRE(one.fits.size() == 1);
  CHECK(one.fits[0].family.empty());
  CHECK(one.fits[0].semigroup.size() == 1);

  TriangleIndex T3(3);
  auto p = MagicParams{3, 1, 3, 8, magic_M_range(3, 8, 1, 3).front()};
  auto ms = magic_semigroup(p).semigroup;
  auto mag = magic_class(T3, p, share(ms));
  auto fit = fit_semigroup(T3, mag);
  CHECK(fit.primitive_hypothesis);
  bool found = false;
  for (auto& f : fit.fits)
    if (f.semigroup.op_table() == ms.op_table() && f.semigroup.leq_table() == ms.leq_table()) {
      found = true;
      // the magic family up to the same length
      auto fam = build_forbidden_family(p, FitOptions{}.family_len).family;
      std::set<std::vector<int>> metric_members;
      for (auto& c : fam.cycles)
        if (cycle_is_metric(ms, c)) metric_members.insert(c);
      CHECK(f.family.cycles == metric_members);
    }
  CHECK(found);

  auto cliques = from_forbidden(TriangleIndex(2), {{0, 0, 1}});
  CHECK_FALSE(fit_semigroup(TriangleIndex(2), cliques).primitive_hypothesis);
  CHECK_THROWS_AS(fit_semigroup(TriangleIndex(5), {5, 1}), ResourceError);
}

TEST_CASE("fitted semigroups reproduce the triangle set", "[classifier]") {
  for (int n = 1; n <= 3; ++n) {
    TriangleIndex T(n);
    CensusOptions opt;
    opt.filters.non_free = false;
    for (auto& e : enumerate_triangle_classes(n, opt).classes) {
      TriangleClass C{n, e.mask};
      auto fit = fit_semigroup(T, C);
      for (auto& f : fit.fits) {
        REQUIRE(verify_semigroup(f.semigroup).empty());
        REQUIRE(is_archimedean(f.semigroup).archimedean);
        REQUIRE(check_omissible(f.semigroup, f.family).ok());
        auto S = share(f.semigroup);
        uint64_t rebuilt = 0;
        for (int t = 0; t < T.size(); ++t) {
          auto tri = T.triangle(t);
          Graph G(S, 3);
          G.set_edge(0, 1, tri[0]);
          G.set_edge(1, 2, tri[1]);
          G.set_edge(0, 2, tri[2]);
          if (is_metric_space(G) && check_forb(G, f.family).omits) rebuilt |= uint64_t{1} << t;
        }
        REQUIRE(rebuilt == C.mask);
      }
    }
  }
}

TEST_CASE("arrow examples", "[classifier]") {
  auto S = share(make_U(1));
  Graph edge = simple_graph(S, 2, {{0, 1}});
  Graph vertex(S, 1);
  Graph empty(S, 0);

  Graph tri = simple_graph(S, 3, {{0, 1}, {1, 2}, {0, 2}});
  auto v = brute_force_arrow(tri, edge, edge, 2);
  REQUIRE(v.result == ArrowVerdict::Result::Fails);
  CHECK(v.embeddings.size() == 6);

  CHECK(brute_force_arrow(tri, tri, empty, 2).result == ArrowVerdict::Result::Holds);
  CHECK(brute_force_arrow(tri, tri, vertex, 1).result == ArrowVerdict::Result::Holds);
  // two colours on the vertices of a triangle: some edge is monochromatic
  CHECK(brute_force_arrow(tri, edge, vertex, 2).result == ArrowVerdict::Result::Holds);
  Graph path = simple_graph(S, 3, {{0, 1}, {1, 2}});
  CHECK(brute_force_arrow(path, edge, vertex, 2).result == ArrowVerdict::Result::Fails);

  Graph k5(S, 5);
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.set_edge(a, b, 0);
  CHECK_THROWS_AS(brute_force_arrow(k5, edge, edge, 2), ResourceError);
  auto adv = brute_force_arrow(k5, edge, edge, 2, 16, true);
  CHECK(adv.result == ArrowVerdict::Result::Fails);
}

TEST_CASE("arrow witnesses have no monochromatic copy", "[classifier]") {
  auto S = share(make_U(1));
  Graph edge = simple_graph(S, 2, {{0, 1}});
  for (int n = 2; n <= 4; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
    for (int m = 0; m < (1 << pairs.size()); ++m) {
      std::vector<std::pair<int, int>> es;
      for (size_t i = 0; i < pairs.size(); ++i)
        if (m >> i & 1) es.push_back(pairs[i]);
      Graph C = simple_graph(S, n, es);
      auto v = brute_force_arrow(C, edge, edge, 2, 20);
      REQUIRE(v.result == ArrowVerdict::Result::Fails);
      // each edge carries both of its embeddings with different colours
      std::map<std::pair<int, int>, std::set<int>> colours;
      for (size_t i = 0; i < v.embeddings.size(); ++i) {
        auto f = v.embeddings[i];
        colours[{std::min(f[0], f[1]), std::max(f[0], f[1])}].insert(v.colouring[i]);
      }
      for (auto& [e, cs] : colours) CHECK(cs.size() == 2);
    }
  }
}
