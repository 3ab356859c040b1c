#pragma once
// Census of triangle-constrained classes of complete edge-labelled graphs,
// semigroup fitting and a brute-force partition arrow check.

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "families.hpp"

namespace smv {

// ---------------------------------------------------------------------------
// Triangle indexing.

class TriangleIndex {
 public:
  explicit TriangleIndex(int n) : n_(n) {
    if (n < 1 || n > 5) throw InputError("triangle classes support 1 to 5 labels");
    idx_.assign(n * n * n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        for (int c = b; c < n; ++c) {
          const int k = static_cast<int>(tris_.size());
          tris_.push_back({a, b, c});
          int v[3] = {a, b, c};
          std::sort(v, v + 3);
          do idx_[(v[0] * n + v[1]) * n + v[2]] = k;
          while (std::next_permutation(v, v + 3));
        }
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (auto& perm : perms_) {
      std::vector<int> img(tris_.size());
      for (size_t t = 0; t < tris_.size(); ++t) img[t] = index(perm[tris_[t][0]], perm[tris_[t][1]], perm[tris_[t][2]]);
      // byte-wise lookup tables for fast mask permutation
      std::vector<std::array<uint64_t, 256>> tab((tris_.size() + 7) / 8);
      for (size_t byte = 0; byte < tab.size(); ++byte)
        for (int v = 0; v < 256; ++v) {
          uint64_t m = 0;
          for (int bit = 0; bit < 8; ++bit) {
            const size_t t = byte * 8 + bit;
            if (t < tris_.size() && (v >> bit & 1)) m |= uint64_t{1} << img[t];
          }
          tab[byte][v] = m;
        }
      tables_.push_back(std::move(tab));
    }
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) pair_masks_.push_back(pair_mask(p, q));
  }

  // triangles containing both p and q
  uint64_t pair_mask(int p, int q) const {
    uint64_t m = 0;
    for (int e = 0; e < n_; ++e) m |= uint64_t{1} << index(p, q, e);
    return m;
  }
  // every label pair lies in some allowed triangle (one-vertex bases amalgamate)
  bool pairs_completable(uint64_t mask) const {
    for (uint64_t pm : pair_masks_)
      if (!(mask & pm)) return false;
    return true;
  }

  int labels() const { return n_; }
  int size() const { return static_cast<int>(tris_.size()); }
  int index(int a, int b, int c) const { return idx_[(a * n_ + b) * n_ + c]; }
  const std::array<int, 3>& triangle(int t) const { return tris_[t]; }
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  uint64_t full() const { return size() == 64 ? ~uint64_t{0} : (uint64_t{1} << size()) - 1; }

  uint64_t permute(uint64_t mask, size_t perm) const {
    uint64_t r = 0;
    const auto& tab = tables_[perm];
    for (size_t byte = 0; byte < tab.size(); ++byte) r |= tab[byte][(mask >> (8 * byte)) & 0xff];
    return r;
  }
  uint64_t canonical(uint64_t mask) const {
    uint64_t best = mask;
    for (size_t p = 1; p < perms_.size(); ++p) best = std::min(best, permute(mask, p));
    return best;
  }
  bool is_canonical(uint64_t mask) const {
    for (size_t p = 1; p < perms_.size(); ++p)
      if (permute(mask, p) < mask) return false;
    return true;
  }

 private:
  int n_;
  std::vector<int> idx_;
  std::vector<std::array<int, 3>> tris_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<std::array<uint64_t, 256>>> tables_;
  std::vector<uint64_t> pair_masks_;
};

struct TriangleClass {
  int labels = 0;
  uint64_t mask = 0;  // bit t set iff triangle t is allowed

  bool allowed(const TriangleIndex& T, int a, int b, int c) const { return mask >> T.index(a, b, c) & 1; }
  // labels e with (p, q, e) allowed, as a bitmask
  int third(const TriangleIndex& T, int p, int q) const {
    int r = 0;
    for (int e = 0; e < labels; ++e)
      if (allowed(T, p, q, e)) r |= 1 << e;
    return r;
  }
  bool admits(const TriangleIndex& T, const Graph& G) const {
    for (int a = 0; a < G.size(); ++a)
      for (int b = a + 1; b < G.size(); ++b)
        for (int c = b + 1; c < G.size(); ++c)
          if (!allowed(T, G.label(a, b), G.label(b, c), G.label(a, c))) return false;
    return true;
  }
};

inline TriangleClass triangle_class_from(const TriangleIndex& T, const std::vector<std::array<int, 3>>& tris) {
  TriangleClass c{T.labels(), 0};
  for (auto& t : tris) {
    for (int x : t)
      if (x < 0 || x >= T.labels()) throw InputError("triangle label out of range");
    c.mask |= uint64_t{1} << T.index(t[0], t[1], t[2]);
  }
  return c;
}

inline std::vector<std::array<int, 3>> triangles_of(const TriangleIndex& T, const TriangleClass& c) {
  std::vector<std::array<int, 3>> r;
  for (int t = 0; t < T.size(); ++t)
    if (c.mask >> t & 1) r.push_back(T.triangle(t));
  return r;
}

// ---------------------------------------------------------------------------
// Strong amalgamation.

struct AmalgamationWitness {
  std::vector<std::vector<int>> base;  // base labels, -1 on the diagonal
  std::vector<int> x, y;               // labels from the two new points to the base
};

struct AmalgamationVerdict {
  Verdict verdict = Verdict::Pass;
  int depth = 0;  // largest base size examined
  std::optional<AmalgamationWitness> witness;
};

namespace detail {

struct AmalgamationSearch {
  const TriangleIndex& T;
  const TriangleClass& C;
  int n, cap;
  std::vector<std::vector<int>> al;
  std::vector<int> P, Q;
  std::vector<std::vector<int>> R;
  std::optional<AmalgamationWitness> found;

  AmalgamationSearch(const TriangleIndex& T_, const TriangleClass& C_, int cap_)
      : T(T_), C(C_), n(C_.labels), cap(cap_), al(n, std::vector<int>(n)) {
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) al[p][q] = C.third(T, p, q);
    R.assign(cap + 1, std::vector<int>(cap + 1, -1));
  }

  bool place_edges(int k, int j, int I, int pq) {
    if (j == k) {
      P.push_back(pq / n);
      Q.push_back(pq % n);
      const bool r = dfs(k + 1, I, pq + 1);
      P.pop_back();
      Q.pop_back();
      return r;
    }
    int opts = al[P[j]][pq / n] & al[Q[j]][pq % n];
    for (int r = 0; r < n; ++r) {
      if (!(opts >> r & 1)) continue;
      bool ok = true;
      for (int l = 0; l < j && ok; ++l) ok = C.allowed(T, R[l][k], r, R[l][j]);
      if (!ok) continue;
      R[j][k] = R[k][j] = r;
      if (place_edges(k, j + 1, I, pq)) return true;
    }
    R[j][k] = R[k][j] = -1;
    return false;
  }

  // base vertices carry strictly increasing (p, q) codes; every step strictly
  // shrinks the set of labels available for the new edge
  bool dfs(int k, int I, int next_pq) {
    if (I == 0) {
      AmalgamationWitness w;
      w.base.assign(k, std::vector<int>(k, -1));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (a != b) w.base[a][b] = R[a][b];
      w.x = P;
      w.y = Q;
      found = w;
      return true;
    }
    if (k == cap) return false;
    for (int pq = next_pq; pq < n * n; ++pq) {
      const int J = I & al[pq / n][pq % n];
      if (J == I) continue;
      if (place_edges(k, 0, J, pq)) return true;
    }
    return false;
  }
};

}  // namespace detail

// Two-point amalgamation over every base of up to base_cap vertices. A failing
// base can be shrunk to at most n_labels vertices, so caps >= n_labels are exact.
inline AmalgamationVerdict check_strong_amalgamation_bounded(const TriangleIndex& T, const TriangleClass& C,
                                                             int base_cap = -1) {
  const int n = C.labels;
  if (base_cap < 0) base_cap = n * n;
  const int depth = std::min(base_cap, n);
  detail::AmalgamationSearch s(T, C, depth);
  AmalgamationVerdict v;
  v.depth = depth;
  if (s.dfs(0, (1 << n) - 1, 0)) {
    v.verdict = Verdict::Fail;
    v.witness = s.found;
  } else {
    v.verdict = depth >= n ? Verdict::Pass : Verdict::PassUpToBound;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Primitivity and freeness.

struct PrimitivityVerdict {
  bool primitive = true;
  std::vector<int> closed_subset;  // labels whose distance relation is an equivalence
};

inline PrimitivityVerdict check_primitive(const TriangleIndex& T, const TriangleClass& C) {
  const int n = C.labels;
  PrimitivityVerdict v;
  for (int S = 1; S < (1 << n) - 1; ++S) {
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        if ((S >> a & 1) && (S >> b & 1))
          for (int c = 0; c < n && closed; ++c)
            if (!(S >> c & 1) && C.allowed(T, a, b, c)) closed = false;
    if (closed) {
      v.primitive = false;
      for (int a = 0; a < n; ++a)
        if (S >> a & 1) v.closed_subset.push_back(a);
      return v;
    }
  }
  return v;
}

// Every two-point amalgamation admits every label.
inline bool is_free_like(const TriangleIndex& T, const TriangleClass& C) { return C.mask == T.full(); }

// Some label closes every two-point amalgamation (all triangles through it are allowed).
inline std::optional<int> free_label(const TriangleIndex& T, const TriangleClass& C) {
  for (int e = 0; e < C.labels; ++e) {
    bool all = true;
    for (int p = 0; p < C.labels && all; ++p)
      for (int q = 0; q < C.labels && all; ++q) all = C.allowed(T, p, q, e);
    if (all) return e;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Census.

struct CensusFilters {
  bool strong = true;
  bool primitive = true;
  bool non_free = true;  // drop free_like classes
};

struct CensusOptions {
  CensusFilters filters;
  int base_cap = -1;
  int shards = 64;
  int threads = 0;                 // 0: hardware concurrency
  std::string checkpoint;          // empty: none
  double time_budget_seconds = 0;  // 0: unlimited
};

struct CatalogEntry {
  uint64_t mask = 0;
  bool strong = false, primitive = false, free_like = false, has_free_label = false;
  bool operator<(const CatalogEntry& o) const { return mask < o.mask; }
};

struct Census {
  int labels = 0;
  std::vector<CatalogEntry> classes;  // passing the filters, sorted by canonical mask
  long long canonical_total = 0;      // canonical triangle sets classified (strong filter skips
                                      // sets with an uncompletable label pair beforehand)
  long long strong = 0, strong_primitive = 0;
  long long strong_primitive_non_free = 0;        // free_like removed
  long long strong_primitive_no_free_label = 0;   // classes with a free label removed too
  int shards_total = 0, shards_done = 0;
  bool complete = true;
};

namespace detail {

struct ShardResult {
  long long canonical = 0;            // canonical triangle sets classified
  std::vector<CatalogEntry> entries;  // those kept (all, or the strong ones under the strong filter)
};

// checkpoint line: "shard <index> <classified> <count>" then one "<mask>:<strong><primitive><free_like><free_label>" per class
inline std::string encode_shard(int shard, const ShardResult& r) {
  std::ostringstream o;
  o << "shard " << shard << ' ' << r.canonical << ' ' << r.entries.size();
  for (auto& e : r.entries)
    o << ' ' << e.mask << ':' << e.strong << e.primitive << e.free_like << e.has_free_label;
  return o.str();
}

inline std::optional<std::pair<int, ShardResult>> decode_shard(const std::string& line) {
  std::istringstream in(line);
  std::string w;
  int shard = 0;
  size_t k = 0;
  ShardResult r;
  if (!(in >> w >> shard >> r.canonical >> k) || w != "shard") return std::nullopt;
  for (size_t i = 0; i < k; ++i) {
    std::string tok;
    if (!(in >> tok)) return std::nullopt;
    auto colon = tok.find(':');
    if (colon == std::string::npos || tok.size() != colon + 5) return std::nullopt;
    CatalogEntry e;
    e.mask = std::stoull(tok.substr(0, colon));
    e.strong = tok[colon + 1] == '1';
    e.primitive = tok[colon + 2] == '1';
    e.free_like = tok[colon + 3] == '1';
    e.has_free_label = tok[colon + 4] == '1';
    r.entries.push_back(e);
  }
  return std::make_pair(shard, r);
}

}  // namespace detail

inline CatalogEntry classify_triangle_class(const TriangleIndex& T, const TriangleClass& c, int base_cap = -1) {
  CatalogEntry e;
  e.mask = c.mask;
  e.strong = check_strong_amalgamation_bounded(T, c, base_cap).verdict != Verdict::Fail;
  e.primitive = check_primitive(T, c).primitive;
  e.free_like = is_free_like(T, c);
  e.has_free_label = free_label(T, c).has_value();
  return e;
}

// Exhaustive census over all canonical triangle sets on n labels. Shards are
// contiguous mask ranges; completed shards are appended to the checkpoint file
// and skipped on resume.
inline Census enumerate_triangle_classes(int n, const CensusOptions& opt = {}) {
  TriangleIndex T(n);
  const uint64_t total = uint64_t{1} << T.size();
  const int shards = static_cast<int>(std::min<uint64_t>(std::max(1, opt.shards), total));
  std::vector<std::optional<detail::ShardResult>> done(shards);
  if (!opt.checkpoint.empty()) {
    std::ifstream in(opt.checkpoint);
    std::string line;
    int header_n = -1, header_shards = -1, header_strong = -1;
    if (std::getline(in, line)) {
      std::istringstream h(line);
      std::string w;
      h >> w >> header_n >> header_shards >> header_strong;
      if (w != "census" || header_n != n || header_shards != shards || header_strong != opt.filters.strong)
        throw InputError("checkpoint file belongs to a different census");
      while (std::getline(in, line))
        if (auto d = detail::decode_shard(line); d && d->first >= 0 && d->first < shards) done[d->first] = d->second;
    } else {
      std::ofstream out(opt.checkpoint);
      out << "census " << n << ' ' << shards << ' ' << opt.filters.strong << '\n';
    }
  }
  std::mutex mu;
  std::atomic<int> next{0};
  const auto start = std::chrono::steady_clock::now();
  auto worker = [&] {
    while (true) {
      const int s = next++;
      if (s >= shards) return;
      if (done[s]) continue;
      const uint64_t lo = total / shards * s + std::min<uint64_t>(s, total % shards);
      const uint64_t hi = lo + total / shards + (static_cast<uint64_t>(s) < total % shards ? 1 : 0);
      detail::ShardResult r;
      bool aborted = false;
      for (uint64_t m = lo; m < hi; ++m) {
        if (opt.time_budget_seconds > 0 && (m & 0xfff) == 0) {
          std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
          if (el.count() > opt.time_budget_seconds) {
            aborted = true;
            break;
          }
        }
        if (opt.filters.strong && !T.pairs_completable(m)) continue;
        if (!T.is_canonical(m)) continue;
        ++r.canonical;
        auto e = classify_triangle_class(T, TriangleClass{n, m}, opt.base_cap);
        if (opt.filters.strong && !e.strong) continue;
        r.entries.push_back(e);
      }
      if (aborted) return;
      std::lock_guard<std::mutex> lock(mu);
      if (!opt.checkpoint.empty()) {
        std::ofstream out(opt.checkpoint, std::ios::app);
        out << detail::encode_shard(s, r) << '\n';
      }
      done[s] = std::move(r);
    }
  };
  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Census c;
  c.labels = n;
  c.shards_total = shards;
  for (auto& d : done) {
    if (!d) {
      c.complete = false;
      continue;
    }
    ++c.shards_done;
    c.canonical_total += d->canonical;
    for (auto& e : d->entries) {
      if (e.strong) {
        ++c.strong;
        if (e.primitive) {
          ++c.strong_primitive;
          if (!e.free_like) ++c.strong_primitive_non_free;
          if (!e.free_like && !e.has_free_label) ++c.strong_primitive_no_free_label;
        }
      }
      if (opt.filters.strong && !e.strong) continue;
      if (opt.filters.primitive && !e.primitive) continue;
      if (opt.filters.non_free && e.free_like) continue;
      c.classes.push_back(e);
    }
  }
  std::sort(c.classes.begin(), c.classes.end());
  return c;
}

// ---------------------------------------------------------------------------
// Semigroup fitting.

struct SemigroupFit {
  Semigroup semigroup;
  CycleFamily family;  // forbidden triangles, over label indices
};

struct FitResult {
  std::vector<SemigroupFit> fits;
  bool primitive_hypothesis = true;  // false: the conjecture's hypothesis is unmet
  long long semigroups_examined = 0;
};

namespace detail {

// All commutative associative tables on n elements.
inline void for_each_commutative_semigroup(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(n * n, -1);
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) cells.push_back({a, b});
  auto assoc_ok = [&]() {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int ab = t[a * n + b];
        if (ab < 0) continue;
        for (int c = 0; c < n; ++c) {
          const int bc = t[b * n + c];
          if (bc < 0) continue;
          const int l = t[ab * n + c], r = t[a * n + bc];
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  };
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == cells.size()) {
      fn(t);
      return;
    }
    auto [a, b] = cells[i];
    for (int v = 0; v < n; ++v) {
      t[a * n + b] = t[b * n + a] = v;
      if (assoc_ok()) rec(i + 1);
    }
    t[a * n + b] = t[b * n + a] = -1;
  };
  rec(0);
}

// All partial orders on n elements containing the given relation (as a matrix).
inline void for_each_order_extending(int n, const std::vector<char>& base,
                                     const std::function<void(const std::vector<char>&)>& fn) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  std::vector<char> le = base;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == pairs.size()) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (le[a * n + b])
            for (int c = 0; c < n; ++c)
              if (le[b * n + c] && !le[a * n + c]) return;
      fn(le);
      return;
    }
    auto [a, b] = pairs[i];
    const char ab = le[a * n + b], ba = le[b * n + a];
    if (ab && ba) return;
    if (ab || ba) {
      rec(i + 1);
      return;
    }
    rec(i + 1);
    le[a * n + b] = 1;
    rec(i + 1);
    le[a * n + b] = 0;
    le[b * n + a] = 1;
    rec(i + 1);
    le[b * n + a] = 0;
  };
  rec(0);
}

}  // namespace detail

inline std::vector<int> metric_triangle_set(const TriangleIndex& T, const Semigroup& S) {
  std::vector<int> r;
  for (int t = 0; t < T.size(); ++t) {
    auto [a, b, c] = T.triangle(t);
    if (cycle_is_metric(S, {a, b, c})) r.push_back(t);
  }
  return r;
}

// Does the labelled cycle c extend to a complete graph whose triangles all lie in C?
inline bool cycle_completable(const TriangleIndex& T, const TriangleClass& C, const std::vector<int>& c) {
  const int k = static_cast<int>(c.size());
  std::vector<int> d(k * k, -1);
  for (int i = 0; i < k; ++i) {
    const int j = (i + 1) % k;
    if (d[i * k + j] >= 0 && d[i * k + j] != c[i]) return false;  // two-edge cycles
    d[i * k + j] = d[j * k + i] = c[i];
  }
  std::vector<std::pair<int, int>> chords;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (d[a * k + b] < 0) chords.push_back({a, b});
  auto ok_at = [&](int a, int b) {
    for (int x = 0; x < k; ++x) {
      if (x == a || x == b || d[a * k + x] < 0 || d[b * k + x] < 0) continue;
      if (!C.allowed(T, d[a * k + b], d[a * k + x], d[b * k + x])) return false;
    }
    return true;
  };
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (d[a * k + b] >= 0 && !ok_at(a, b)) return false;
  std::function<bool(size_t)> rec = [&](size_t i) {
    if (i == chords.size()) return true;
    auto [a, b] = chords[i];
    for (int l = 0; l < C.labels; ++l) {
      d[a * k + b] = d[b * k + a] = l;
      if (ok_at(a, b) && rec(i + 1)) return true;
    }
    d[a * k + b] = d[b * k + a] = -1;
    return false;
  };
  return rec(0);
}

// Canonical cycles of 3..max_len edges with no completion inside C.
inline std::vector<std::vector<int>> uncompletable_cycles(const TriangleIndex& T, const TriangleClass& C, int max_len) {
  std::vector<std::vector<int>> out;
  for (int len = 3; len <= max_len; ++len) {
    std::vector<int> c(len, 0);
    while (true) {
      if (canonical_cycle(c) == c && !cycle_completable(T, C, c)) out.push_back(c);
      int i = len - 1;
      while (i >= 0 && c[i] == C.labels - 1) c[i--] = 0;
      if (i < 0) break;
      ++c[i];
    }
  }
  return out;
}

struct FitOptions {
  int family_len = 6;  // longest cycle placed in a candidate family
  BoundedCheckConfig omissible{};
};

// Candidate families are the metric cycles (up to family_len edges) that have
// no completion inside C; their triangles are exactly the metric triangles C omits.
inline FitResult fit_semigroup(const TriangleIndex& T, const TriangleClass& C, const FitOptions& opt = {}) {
  const int n = C.labels;
  if (n > 4) throw ResourceError("exhaustive semigroup fitting supports at most 4 labels");
  if (opt.family_len < 3 || opt.family_len > 8) throw InputError("family_len must lie in 3..8");
  FitResult out;
  out.primitive_hypothesis = check_primitive(T, C).primitive;
  const auto blocked = uncompletable_cycles(T, C, opt.family_len);
  BoundedCheckConfig cfg = opt.omissible;
  cfg.max_cycle_len = opt.family_len;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  detail::for_each_commutative_semigroup(n, [&](const std::vector<int>& op) {
    std::vector<char> base(n * n, 0);
    for (int a = 0; a < n; ++a) {
      base[a * n + a] = 1;
      for (int b = 0; b < n; ++b) base[a * n + op[a * n + b]] = 1;
    }
    detail::for_each_order_extending(n, base, [&](const std::vector<char>& le) {
      Semigroup S(names, op, le);
      ++out.semigroups_examined;
      if (!verify_semigroup(S).empty()) return;
      if (!is_archimedean(S).archimedean) return;
      uint64_t mm = 0;
      for (int t : metric_triangle_set(T, S)) mm |= uint64_t{1} << t;
      if ((C.mask & ~mm) != 0) return;
      CycleFamily F;
      for (auto& c : blocked)
        if (cycle_is_metric(S, c)) F.add(c);
      if (!check_omissible(S, F, cfg).ok()) return;
      out.fits.push_back({S, F});
    });
  });
  return out;
}

// ---------------------------------------------------------------------------
// Partition arrows.

// Induced embeddings of A into C (labels, including absent edges, preserved).
inline std::vector<std::vector<int>> embeddings(const Graph& A, const Graph& C) {
  std::vector<std::vector<int>> out;
  std::vector<int> f;
  std::vector<char> used(C.size(), 0);
  std::function<void()> rec = [&] {
    const int i = static_cast<int>(f.size());
    if (i == A.size()) {
      out.push_back(f);
      return;
    }
    for (int v = 0; v < C.size(); ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = A.label(i, j) == C.label(v, f[j]);
      if (!ok) continue;
      used[v] = 1;
      f.push_back(v);
      rec();
      f.pop_back();
      used[v] = 0;
    }
  };
  rec();
  return out;
}

struct ArrowVerdict {
  enum class Result { Holds, Fails, Unknown } result = Result::Unknown;
  std::vector<std::vector<int>> embeddings;  // of A into C
  std::vector<int> colouring;                // bad colouring when the arrow fails
};

// C → (B)^A_k by exhaustive search over colourings of Emb(A, C).
inline ArrowVerdict brute_force_arrow(const Graph& C, const Graph& B, const Graph& A, int k, int budget = 16,
                                      bool adversarial = false, long long node_budget = 5000000) {
  if (k < 1) throw InputError("need at least one colour");
  ArrowVerdict v;
  v.embeddings = embeddings(A, C);
  const int m = static_cast<int>(v.embeddings.size());
  if (!adversarial && m > budget)
    throw ResourceError("exhaustive arrow check needs " + std::to_string(m) + " embeddings, budget " +
                        std::to_string(budget));
  std::map<std::vector<int>, int> id;
  for (int i = 0; i < m; ++i) id[v.embeddings[i]] = i;
  // each copy of B, as the set of A-embeddings inside it
  std::vector<std::vector<int>> copies;
  auto AB = embeddings(A, B);
  for (auto& g : embeddings(B, C)) {
    std::vector<int> inside;
    for (auto& h : AB) {
      std::vector<int> comp;
      for (int x : h) comp.push_back(g[x]);
      inside.push_back(id.at(comp));
    }
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    copies.push_back(inside);
  }
  // copies whose last embedding (in index order) is i
  std::vector<std::vector<int>> closing(m + 1);
  for (size_t c = 0; c < copies.size(); ++c) closing[copies[c].empty() ? 0 : copies[c].back() + 1].push_back(c);
  std::vector<int> col(m, -1);
  long long nodes = 0;
  bool exhausted = false;
  auto mono = [&](int c) {
    const auto& s = copies[c];
    for (int e : s)
      if (col[e] != col[s[0]]) return false;
    return true;
  };
  for (int c : closing[0])
    if (copies[c].empty()) {
      v.result = ArrowVerdict::Result::Holds;
      return v;
    }
  if (adversarial && m > 0) {
    // orientation colouring: the parity of the permutation sorting the image
    for (int i = 0; i < m; ++i) {
      auto& f = v.embeddings[i];
      int inv = 0;
      for (size_t a = 0; a < f.size(); ++a)
        for (size_t b = a + 1; b < f.size(); ++b) inv += f[a] > f[b];
      col[i] = inv % std::min(k, 2);
    }
    bool bad = true;
    for (size_t c = 0; c < copies.size() && bad; ++c) bad = !mono(static_cast<int>(c));
    if (bad) {
      v.result = ArrowVerdict::Result::Fails;
      v.colouring = col;
      return v;
    }
    std::fill(col.begin(), col.end(), -1);
  }
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (++nodes > node_budget) {
      exhausted = true;
      return false;
    }
    if (i == m) return true;
    for (int c = 0; c < k; ++c) {
      if (i == 0 && c > 0) break;  // colour symmetry
      col[i] = c;
      bool ok = true;
      for (int cp : closing[i + 1])
        if (mono(cp)) {
          ok = false;
          break;
        }
      if (ok && rec(i + 1)) return true;
      if (exhausted) break;
    }
    col[i] = -1;
    return false;
  };
  if (m == 0 ? copies.empty() : rec(0)) {
    v.result = ArrowVerdict::Result::Fails;
    v.colouring = col;
  } else if (m == 0 || !exhausted) {
    v.result = ArrowVerdict::Result::Holds;
  } else {
    if (!adversarial) throw ResourceError("arrow search exceeded its node budget");
    v.result = ArrowVerdict::Result::Unknown;
  }
  return v;
}

}  // namespace smv
