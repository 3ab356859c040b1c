#pragma once
// Bounded verification of forbidden-cycle family properties.

#include "graphs.hpp"

namespace smv {

struct BoundedCheckConfig {
  int max_cycle_len = 8;
  int max_path_len = 4;
  int max_family_size = 3;
  int max_space_vertices = 6;
  long long max_label_paths = 2000000;  // cap on enumerated label sequences
  long long node_budget = 2000000;      // completion search nodes per query

  void validate() const {
    if (max_cycle_len < 1 || max_path_len < 1 || max_family_size < 1 || max_space_vertices < 1)
      throw InputError("bounded-check parameters must be >= 1");
  }
};

enum class Verdict { Pass, Fail, PassUpToBound };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::PassUpToBound: return "pass-up-to-bound";
  }
  return "?";
}

struct FamilyReport {
  std::string property;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  std::vector<std::vector<int>> witness;  // label sequences
  std::vector<FamilyReport> parts;

  bool ok() const { return verdict != Verdict::Fail; }
};

// Members of F whose labels lie in `alphabet`, up to max_len edges.
inline std::vector<std::vector<int>> family_members(const Semigroup& S, const CycleFamily& F, int max_len,
                                                    const std::vector<int>& alphabet, long long cap = 2000000) {
  std::vector<std::vector<int>> out;
  std::vector<char> allowed(S.size(), 0);
  for (int a : alphabet) allowed[a] = 1;
  if (F.finite()) {
    for (auto& c : F.cycles)
      if (static_cast<int>(c.size()) <= max_len &&
          std::all_of(c.begin(), c.end(), [&](int x) { return allowed[x] != 0; }))
        out.push_back(c);
    return out;
  }
  std::set<std::vector<int>> found;
  std::vector<int> seq;
  long long visited = 0;
  std::vector<long long> val(S.size(), 0);
  if (F.kind == CycleFamily::Kind::OddPerimeterBelow)
    for (int a : alphabet) val[a] = std::stoll(S.name(a));
  std::function<void(long long)> rec = [&](long long per) {
    if (++visited > cap) throw ResourceError("family enumeration exceeds cap");
    if (seq.size() >= 2 && F.contains(S, seq)) found.insert(canonical_cycle(seq));
    if (static_cast<int>(seq.size()) == max_len) return;
    for (int a : alphabet) {
      if (F.kind == CycleFamily::Kind::OddPerimeterBelow && (val[a] < 1 || per + val[a] >= F.p)) continue;
      // rotations are collapsed by requiring the first label to be minimal
      if (!seq.empty() && a < seq[0]) continue;
      seq.push_back(a);
      rec(per + val[a]);
      seq.pop_back();
    }
  };
  rec(0);
  out.assign(found.begin(), found.end());
  return out;
}

inline std::vector<int> all_elements(const Semigroup& S) {
  std::vector<int> v(S.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Longest path length in [lo, hi] whose label-sequence count stays within cap.
inline int affordable_path_len(const Semigroup& S, int lo, int hi, long long cap) {
  long long total = 0, layer = 1;
  int best = lo;
  for (int k = 1; k <= hi; ++k) {
    layer *= S.size();
    if (k >= lo) total += layer;
    if (total > cap || layer > cap) break;
    if (k >= lo) best = k;
  }
  return best;
}

// Infima through lower-set bitsets.
class InfimumOracle {
 public:
  explicit InfimumOracle(const Semigroup& S) : n_(S.size()), words_((S.size() + 63) / 64) {
    lower_.assign(static_cast<size_t>(n_) * words_, 0);
    for (int x = 0; x < n_; ++x)
      for (int c = 0; c < n_; ++c)
        if (S.leq(c, x)) lower_[x * words_ + c / 64] |= 1ULL << (c % 64);
    for (int x = 0; x < n_; ++x) by_set_.emplace(row(x), x);
  }

  std::optional<int> operator()(const std::vector<int>& xs) const {
    if (xs.empty()) return std::nullopt;
    std::vector<uint64_t> acc = row(xs[0]);
    for (size_t i = 1; i < xs.size(); ++i)
      for (int w = 0; w < words_; ++w) acc[w] &= lower_[xs[i] * words_ + w];
    auto it = by_set_.find(acc);
    if (it == by_set_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<uint64_t> row(int x) const {
    return std::vector<uint64_t>(lower_.begin() + x * words_, lower_.begin() + (x + 1) * words_);
  }
  int n_, words_;
  std::vector<uint64_t> lower_;
  std::map<std::vector<uint64_t>, int> by_set_;
};

// Label sequences of min_len..max_len edges grouped by their ⊕-length.
struct PathCatalog {
  int min_len = 0, max_len = 0;
  std::vector<std::vector<std::vector<int>>> by_length;  // element -> sequences

  PathCatalog(const Semigroup& S, int lo, int hi, long long cap) : min_len(lo), max_len(hi) {
    by_length.assign(S.size(), {});
    long long count = 0;
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int len) {
      if (static_cast<int>(seq.size()) >= lo) {
        if (++count > cap) throw ResourceError("path catalog exceeds cap");
        by_length[len].push_back(seq);
      }
      if (static_cast<int>(seq.size()) == hi) return;
      for (int a = 0; a < S.size(); ++a) {
        seq.push_back(a);
        rec(len < 0 ? a : S.op(len, a));
        seq.pop_back();
      }
    };
    rec(-1);
  }
};

// Graph made of internally disjoint paths between vertices 0 and 1.
inline Graph theta_graph(const SemigroupPtr& S, const std::vector<std::vector<int>>& paths) {
  Graph G(S, 2);
  for (auto& p : paths) {
    int prev = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      int nxt = i + 1 == p.size() ? 1 : G.add_vertex();
      G.set_edge(prev, nxt, p[i]);
      prev = nxt;
    }
  }
  return G;
}

// Backtracking search for a completion of G into an F-omitting metric space.
// Returns nullopt when none exists; throws ResourceError on budget exhaustion.
inline std::optional<Graph> find_completion(const Graph& G, const CycleFamily& F, long long node_budget,
                                            int forb_len = 8) {
  const int n = G.size();
  const Semigroup& S = G.semigroup();
  std::vector<std::pair<int, int>> holes;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!G.has_edge(u, v)) holes.emplace_back(u, v);
  Graph H = G;
  long long nodes = 0;
  auto tri_ok = [&](int u, int v) {
    int d = H.label(u, v);
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      int a = H.label(u, w), b = H.label(w, v);
      if (a < 0 || b < 0) continue;
      if (!S.leq(d, S.op(a, b)) || !S.leq(a, S.op(d, b)) || !S.leq(b, S.op(d, a))) return false;
    }
    return true;
  };
  // Existing edges must already satisfy the complete triangles.
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (G.has_edge(u, v) && !tri_ok(u, v)) return std::nullopt;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (++nodes > node_budget) throw ResourceError("completion search budget exhausted");
    if (i == holes.size()) return F.empty() || check_forb(H, F, forb_len).omits;
    auto [u, v] = holes[i];
    for (int d = 0; d < S.size(); ++d) {
      H.set_edge(u, v, d);
      if (tri_ok(u, v) && rec(i + 1)) return true;
    }
    H.set_edge(u, v, -1);
    return false;
  };
  if (rec(0)) return H;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Omissibility.

inline FamilyReport check_omissible(const Semigroup& S, const CycleFamily& F, const BoundedCheckConfig& cfg = {}) {
  cfg.validate();
  FamilyReport rep;
  rep.property = "omissible";
  auto members = family_members(S, F, cfg.max_cycle_len, all_elements(S), cfg.max_label_paths);
  const bool bounded = !F.finite() || static_cast<int>(F.max_length()) > cfg.max_cycle_len;

  FamilyReport strict{"no_geodesic", bounded ? Verdict::PassUpToBound : Verdict::Pass, "", {}, {}};
  for (auto& c : members) {
    for (size_t i = 0; i < c.size() && strict.ok(); ++i) {
      int s = -1;
      for (size_t j = 0; j < c.size(); ++j)
        if (j != i) s = s < 0 ? c[j] : S.op(s, c[j]);
      if (!S.lt(c[i], s)) {
        strict.verdict = Verdict::Fail;
        strict.detail = "edge " + std::to_string(i) + " is not strictly below the sum of the others";
        strict.witness = {c};
      }
    }
    if (!strict.ok()) break;
  }

  auto in_or_bad = [&](const std::vector<int>& c) { return F.contains(S, c) || !cycle_is_metric(S, c); };
  FamilyReport down{"downward_closed", bounded ? Verdict::PassUpToBound : Verdict::Pass, "", {}, {}};
  for (auto& c : members) {
    const int k = static_cast<int>(c.size());
    for (int i = 0; i < k && down.ok(); ++i)
      for (int j = i + 2; j < k && down.ok(); ++j) {
        if (j - i > k - 3) continue;
        std::vector<int> X(c.begin() + i, c.begin() + j + 1), Y(c.begin(), c.begin() + i);
        Y.insert(Y.end(), c.begin() + j + 1, c.end());
        if (!in_or_bad(X) && !in_or_bad(Y)) {
          down.verdict = Verdict::Fail;
          down.detail = "split without a forbidden or non-metric part";
          down.witness = {c, X, Y};
          break;
        }
        for (int x = 0; x < S.size(); ++x) {
          std::vector<int> Xc{x}, Yc(c.begin(), c.begin() + i);
          Xc.insert(Xc.end(), c.begin() + i, c.begin() + j + 1);
          Yc.push_back(x);
          Yc.insert(Yc.end(), c.begin() + j + 1, c.end());
          if (!in_or_bad(Xc) && !in_or_bad(Yc)) {
            down.verdict = Verdict::Fail;
            down.detail = "chord split without a forbidden or non-metric part";
            down.witness = {c, Xc, Yc};
            break;
          }
        }
      }
    if (!down.ok()) break;
  }

  FamilyReport up{"upward_closed", Verdict::PassUpToBound, "", {}, {}};
  if (!members.empty()) {
    PathCatalog cat(S, 1, affordable_path_len(S, 1, cfg.max_path_len, cfg.max_label_paths), cfg.max_label_paths);
    auto joined = [](const std::vector<int>& P, const std::vector<int>& Q) {
      std::vector<int> c = P;
      c.insert(c.end(), Q.rbegin(), Q.rend());
      return c;
    };
    auto compatible = [&](const std::vector<int>& P, const std::vector<int>& Q) {
      auto c = joined(P, Q);
      return cycle_is_metric(S, c) && !F.contains(S, c);
    };
    for (auto& c : members) {
      const int k = static_cast<int>(c.size());
      for (int i = 0; i < k && up.ok(); ++i) {
        auto replaced = [&](const std::vector<int>& P) {
          std::vector<int> r(c.begin(), c.begin() + i);
          r.insert(r.end(), P.begin(), P.end());
          r.insert(r.end(), c.begin() + i + 1, c.end());
          return r;
        };
        // Bad paths: replacing a_i by them leaves F.
        std::vector<std::vector<const std::vector<int>*>> bad(S.size());
        for (int x = 0; x < S.size(); ++x)
          for (auto& P : cat.by_length[x])
            if (!F.contains(S, replaced(P))) bad[x].push_back(&P);
        const int a = c[i];
        if (!bad[a].empty()) {
          up.verdict = Verdict::Fail;
          up.detail = "a path of the same length leaves the family";
          up.witness = {c, *bad[a][0]};
          break;
        }
        if (cfg.max_family_size < 2) continue;
        std::vector<int> above;
        for (int x = 0; x < S.size(); ++x)
          if (x != a && S.leq(a, x) && !bad[x].empty()) above.push_back(x);
        for (size_t p = 0; p < above.size() && up.ok(); ++p)
          for (size_t q = p + 1; q < above.size() && up.ok(); ++q) {
            int x = above[p], y = above[q];
            auto inf = infimum(S, {x, y});
            if (!inf || *inf != a) continue;
            for (auto* P : bad[x]) {
              for (auto* Q : bad[y])
                if (compatible(*P, *Q)) {
                  up.verdict = Verdict::Fail;
                  up.detail = "a two-path family with infimum a_i leaves the family";
                  up.witness = {c, *P, *Q};
                  break;
                }
              if (!up.ok()) break;
            }
          }
        if (cfg.max_family_size < 3) continue;
        for (size_t p = 0; p < above.size() && up.ok(); ++p)
          for (size_t q = p + 1; q < above.size() && up.ok(); ++q)
            for (size_t r = q + 1; r < above.size() && up.ok(); ++r) {
              int x = above[p], y = above[q], z = above[r];
              auto inf = infimum(S, {x, y, z});
              if (!inf || *inf != a) continue;
              auto i1 = infimum(S, {x, y}), i2 = infimum(S, {x, z}), i3 = infimum(S, {y, z});
              if ((i1 && *i1 == a) || (i2 && *i2 == a) || (i3 && *i3 == a)) continue;  // covered by pairs
              for (auto* P : bad[x])
                for (auto* Q : bad[y]) {
                  if (!compatible(*P, *Q)) continue;
                  for (auto* R : bad[z])
                    if (compatible(*P, *R) && compatible(*Q, *R)) {
                      up.verdict = Verdict::Fail;
                      up.detail = "a three-path family with infimum a_i leaves the family";
                      up.witness = {c, *P, *Q, *R};
                      goto done3;
                    }
                }
            done3:;
            }
      }
      if (!up.ok()) break;
    }
  }

  rep.parts = {strict, down, up};
  rep.verdict = Verdict::Pass;
  for (auto& p : rep.parts) {
    if (p.verdict == Verdict::Fail) {
      rep.verdict = Verdict::Fail;
      rep.detail = p.property;
      rep.witness = p.witness;
      break;
    }
    if (p.verdict == Verdict::PassUpToBound) rep.verdict = Verdict::PassUpToBound;
  }
  if (members.empty() && F.finite()) rep.verdict = Verdict::Pass;
  if (members.empty() && F.finite())
    for (auto& p : rep.parts) p.verdict = Verdict::Pass;
  return rep;
}

// ---------------------------------------------------------------------------
// Disobedient configurations.

struct DisobedientWitness {
  std::string kind;  // "undefined_infimum" or "distributivity"
  std::vector<std::vector<int>> left;   // paths from u to v
  std::vector<std::vector<int>> right;  // paths from v to w (distributivity only)
  std::vector<int> cycle;               // the cycle formed by two paths of one side
};

namespace detail {

inline std::vector<std::vector<int>> subsets_up_to(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<int> join_paths(const std::vector<int>& P, const std::vector<int>& Q) {
  std::vector<int> c = P;
  c.insert(c.end(), Q.rbegin(), Q.rend());
  return c;
}

// Realises the lengths xs by paths of >= 2 edges between two vertices so that
// the resulting theta graph has a completion omitting F.
inline std::optional<std::vector<std::vector<int>>> realise_theta(const SemigroupPtr& S, const CycleFamily& F,
                                                                  const PathCatalog& cat,
                                                                  const std::vector<int>& xs,
                                                                  const BoundedCheckConfig& cfg,
                                                                  std::vector<std::vector<int>> prefix = {},
                                                                  int extra_vertices = 0) {
  std::vector<std::vector<int>> chosen = prefix;
  long long tries = 0;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == xs.size()) {
      Graph G = theta_graph(S, chosen);
      if (G.size() + extra_vertices > cfg.max_space_vertices) return false;
      if (find_nonmetric_witness(G)) return false;
      if (!F.empty() && !check_forb(G, F, cfg.max_cycle_len).omits) return false;
      try {
        return find_completion(G, F, cfg.node_budget, cfg.max_cycle_len).has_value();
      } catch (const ResourceError&) {
        return false;
      }
    }
    for (auto& P : cat.by_length[xs[i]]) {
      if (++tries > 200000) return false;
      bool ok = true;
      for (auto& Q : chosen)
        if (!cycle_is_metric(*S, join_paths(P, Q))) { ok = false; break; }
      if (!ok) continue;
      chosen.push_back(P);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(0)) return chosen;
  return std::nullopt;
}

}  // namespace detail

inline std::vector<DisobedientWitness> find_disobedient_configurations(const SemigroupPtr& Sp, const CycleFamily& F,
                                                                        const BoundedCheckConfig& cfg = {},
                                                                        size_t max_witnesses = 16) {
  cfg.validate();
  const Semigroup& S = *Sp;
  std::vector<DisobedientWitness> out;
  const int L = affordable_path_len(S, 2, std::max(2, std::min(cfg.max_path_len, cfg.max_space_vertices - 1)),
                                    cfg.max_label_paths);
  PathCatalog cat(S, 2, L, cfg.max_label_paths);
  InfimumOracle inf_of(S);
  std::vector<int> lengths;
  for (int x = 0; x < S.size(); ++x)
    if (!cat.by_length[x].empty()) lengths.push_back(x);
  auto sets = detail::subsets_up_to(static_cast<int>(lengths.size()), cfg.max_family_size);
  std::set<std::vector<int>> seen_cycles;

  // Undefined infima.
  for (auto& idx : sets) {
    if (idx.size() < 2 || out.size() >= max_witnesses) continue;
    std::vector<int> xs;
    for (int i : idx) xs.push_back(lengths[i]);
    if (inf_of(xs)) continue;
    bool minimal = true;
    for (size_t drop = 0; drop < xs.size() && minimal && xs.size() > 2; ++drop) {
      std::vector<int> ys;
      for (size_t j = 0; j < xs.size(); ++j)
        if (j != drop) ys.push_back(xs[j]);
      if (!inf_of(ys)) minimal = false;
    }
    if (!minimal) continue;
    auto paths = detail::realise_theta(Sp, F, cat, xs, cfg);
    if (!paths) continue;
    DisobedientWitness w{"undefined_infimum", *paths, {}, detail::join_paths((*paths)[0], (*paths)[1])};
    if (seen_cycles.insert(canonical_cycle(w.cycle)).second) out.push_back(w);
  }

  // Distributivity failures: inf(X ⊕ Y) vs inf X ⊕ inf Y.
  std::vector<std::optional<int>> set_inf;
  for (auto& ix : sets) {
    std::vector<int> xs;
    for (int i : ix) xs.push_back(lengths[i]);
    set_inf.push_back(inf_of(xs));
  }
  std::vector<int> sums;
  for (size_t p = 0; p < sets.size(); ++p) {
    if (!set_inf[p]) continue;
    for (size_t q = p; q < sets.size(); ++q) {
      if (out.size() >= max_witnesses) return out;
      auto& ix = sets[p];
      auto& iy = sets[q];
      if (ix.size() + iy.size() < 3 || !set_inf[q]) continue;
      const int a = *set_inf[p], b = *set_inf[q];
      sums.clear();
      for (int i : ix)
        for (int j : iy) sums.push_back(S.op(lengths[i], lengths[j]));
      auto c = inf_of(sums);
      if (c && *c == S.op(a, b)) continue;
      std::vector<int> xs, ys;
      for (int i : ix) xs.push_back(lengths[i]);
      for (int i : iy) ys.push_back(lengths[i]);
      // Realise both sides; the two thetas share vertex v, so vertex counts add.
      auto left = detail::realise_theta(Sp, F, cat, xs, cfg);
      if (!left) continue;
      const int lv = theta_graph(Sp, *left).size();
      auto right = detail::realise_theta(Sp, F, cat, ys, cfg, {}, lv - 1);
      if (!right) continue;
      DisobedientWitness w{"distributivity", *left, *right, {}};
      w.cycle = left->size() >= 2 ? detail::join_paths((*left)[0], (*left)[1])
                                  : detail::join_paths((*right)[0], (*right)[1]);
      if (seen_cycles.insert(canonical_cycle(w.cycle)).second) out.push_back(w);
    }
  }
  return out;
}

inline std::vector<std::vector<int>> find_disobedient(const SemigroupPtr& Sp, const CycleFamily& F,
                                                      const BoundedCheckConfig& cfg = {}) {
  std::vector<std::vector<int>> out;
  for (auto& w : find_disobedient_configurations(Sp, F, cfg)) out.push_back(w.cycle);
  return out;
}

// ---------------------------------------------------------------------------

inline FamilyReport check_meet_sync(const SemigroupPtr& Sp, const CycleFamily& F, const BoundedCheckConfig& cfg = {}) {
  cfg.validate();
  const Semigroup& S = *Sp;
  const BlockLattice Lb = compute_blocks(S);
  FamilyReport rep{"meet_sync", Verdict::PassUpToBound, "", {}, {}};
  const int L = affordable_path_len(S, 2, std::max(2, cfg.max_path_len), cfg.max_label_paths);
  PathCatalog cat(S, 2, L, cfg.max_label_paths);
  InfimumOracle inf_of(S);
  std::vector<int> lengths;
  for (int x = 0; x < S.size(); ++x)
    if (!cat.by_length[x].empty()) lengths.push_back(x);
  auto sets = detail::subsets_up_to(static_cast<int>(lengths.size()), cfg.max_family_size);
  const bool meets = std::none_of(Lb.meet.begin(), Lb.meet.end(), [](int v) { return v < 0; });
  // signature (sorted blocks) -> (block of infimum, realising paths)
  std::map<std::vector<int>, std::pair<int, std::vector<std::vector<int>>>> seen;
  for (auto& idx : sets) {
    if (idx.size() < 2) continue;
    std::vector<int> xs;
    for (int i : idx) xs.push_back(lengths[i]);
    auto inf = inf_of(xs);
    if (!inf) continue;
    std::vector<int> sig;
    for (int x : xs) sig.push_back(Lb.block_of[x]);
    std::sort(sig.begin(), sig.end());
    const int binf = Lb.block_of[*inf];
    if (meets) {
      if (binf == Lb.meet_all(sig)) continue;
      auto paths = detail::realise_theta(Sp, F, cat, xs, cfg);
      if (!paths) continue;
      rep.verdict = Verdict::Fail;
      rep.detail = "block of the infimum differs from the meet of the blocks";
      rep.witness = *paths;
      return rep;
    }
    auto it = seen.find(sig);
    if (it != seen.end() && it->second.first == binf) continue;
    auto paths = detail::realise_theta(Sp, F, cat, xs, cfg);
    if (!paths) continue;
    if (it == seen.end()) {
      seen.emplace(sig, std::make_pair(binf, *paths));
      continue;
    }
    rep.verdict = Verdict::Fail;
    rep.detail = "families with the same blocks have infima in different blocks";
    rep.witness = it->second.second;
    rep.witness.insert(rep.witness.end(), paths->begin(), paths->end());
    return rep;
  }
  return rep;
}

// ---------------------------------------------------------------------------

struct ConfinedResult {
  bool confined = true;
  long long count = 0;
  bool divergent = false;
};

inline ConfinedResult is_confined(const Semigroup& S, const CycleFamily& F, const std::vector<int>& labels) {
  ConfinedResult r;
  switch (F.kind) {
    case CycleFamily::Kind::Finite:
      for (auto& c : F.cycles)
        if (std::all_of(c.begin(), c.end(),
                        [&](int x) { return std::find(labels.begin(), labels.end(), x) != labels.end(); }))
          ++r.count;
      return r;
    case CycleFamily::Kind::All:
      r.confined = labels.empty();
      r.divergent = !labels.empty();
      return r;
    case CycleFamily::Kind::OddPerimeterBelow: {
      // every label is at least 1, so perimeter < p bounds the length
      const int max_len = static_cast<int>(std::max<long long>(2, F.p));
      r.count = static_cast<long long>(family_members(S, F, max_len, labels).size());
      return r;
    }
  }
  return r;
}

// Elements that no shortest path completion of a small metric F-omitting theta
// graph introduces on its non-edge.
inline std::vector<int> irreducible_wrt_family(const SemigroupPtr& Sp, const CycleFamily& F,
                                               const BoundedCheckConfig& cfg = {}) {
  cfg.validate();
  const Semigroup& S = *Sp;
  std::vector<char> red(S.size(), 0);
  PathCatalog cat(S, 2, affordable_path_len(S, 2, std::max(2, cfg.max_path_len), cfg.max_label_paths),
                  cfg.max_label_paths);
  auto usable = [&](const std::vector<std::vector<int>>& paths) {
    Graph G = theta_graph(Sp, paths);
    if (G.size() > cfg.max_space_vertices) return false;
    if (find_nonmetric_witness(G)) return false;
    return F.empty() || check_forb(G, F, cfg.max_cycle_len).omits;
  };
  for (int x = 0; x < S.size(); ++x)
    for (auto& P : cat.by_length[x])
      if (usable({P})) { red[x] = 1; break; }
  std::vector<int> lengths;
  for (int x = 0; x < S.size(); ++x)
    if (!cat.by_length[x].empty()) lengths.push_back(x);
  for (auto& idx : detail::subsets_up_to(static_cast<int>(lengths.size()), cfg.max_family_size)) {
    if (idx.size() < 2) continue;
    std::vector<int> xs;
    for (int i : idx) xs.push_back(lengths[i]);
    auto inf = infimum(S, xs);
    if (!inf || red[*inf]) continue;
    if (std::find(xs.begin(), xs.end(), *inf) != xs.end()) continue;
    std::vector<std::vector<int>> chosen;
    long long tries = 0;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
      if (i == xs.size()) return usable(chosen);
      for (auto& P : cat.by_length[xs[i]]) {
        if (++tries > 100000) return false;
        chosen.push_back(P);
        if (rec(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (rec(0)) red[*inf] = 1;
  }
  std::vector<int> out;
  for (int a = 0; a < S.size(); ++a)
    if (!red[a]) out.push_back(a);
  return out;
}

struct HensonResult {
  bool omits = true;
  int member = -1;             // index into H
  std::vector<int> embedding;  // H-member vertex -> G vertex
};

inline HensonResult check_henson(const Graph& G, const std::vector<Graph>& H, const CycleFamily& F,
                                 const BoundedCheckConfig& cfg = {}) {
  HensonResult r;
  if (H.empty()) return r;
  auto irr = irreducible_wrt_family(G.semigroup_ptr(), F, cfg);
  std::vector<char> ok(G.semigroup().size(), 0);
  for (int a : irr) ok[a] = 1;
  for (auto& K : H)
    for (int u = 0; u < K.size(); ++u)
      for (int v = u + 1; v < K.size(); ++v)
        if (K.has_edge(u, v) && !ok[K.label(u, v)])
          throw InputError("Henson constraint uses distance " + K.semigroup().name(K.label(u, v)) +
                           ", which is reducible with respect to the family");
  for (size_t h = 0; h < H.size(); ++h) {
    const Graph& K = H[h];
    std::vector<int> img(K.size(), -1);
    std::vector<char> used(G.size(), 0);
    std::function<bool(int)> rec = [&](int i) -> bool {
      if (i == K.size()) return true;
      for (int c = 0; c < G.size(); ++c) {
        if (used[c]) continue;
        bool fit = true;
        for (int j = 0; j < i && fit; ++j) fit = K.label(i, j) == G.label(c, img[j]);
        if (!fit) continue;
        used[c] = 1;
        img[i] = c;
        if (rec(i + 1)) return true;
        used[c] = 0;
      }
      return false;
    };
    if (rec(0)) {
      r.omits = false;
      r.member = static_cast<int>(h);
      r.embedding = img;
      return r;
    }
  }
  return r;
}

}  // namespace smv
