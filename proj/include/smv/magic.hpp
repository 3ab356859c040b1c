#pragma once
// Magic semigroups of primitive 3-constrained metrically homogeneous graphs,
// the C/K1/K2 cycle taxonomy and the forbidden family.

#include <cmath>

#include "graphs.hpp"

namespace smv {

struct MagicParams {
  int delta = 0, K1 = 0, K2 = 0, C = 0, M = 0;
};

struct RelevanceReport {
  bool relevant = false;
  std::string case_used;              // "II", "III" or ""
  std::vector<std::string> failed;    // clauses that do not hold
};

inline RelevanceReport check_relevant(const MagicParams& p) {
  RelevanceReport r;
  const int d = p.delta, K1 = p.K1, K2 = p.K2, C = p.C;
  auto need = [&](bool ok, const std::string& clause) {
    if (!ok) r.failed.push_back(clause);
    return ok;
  };
  bool base = need(3 <= d, "3 <= delta");
  base = need(1 <= K1 && K1 <= K2 && K2 <= d, "1 <= K1 <= K2 <= delta") && base;
  base = need(2 * d + 2 <= C && C <= 3 * d + 2, "2delta+2 <= C <= 3delta+2") && base;
  std::vector<std::string> f2, f3;
  auto two = [&](bool ok, const std::string& c) { if (!ok) f2.push_back(c); };
  auto three = [&](bool ok, const std::string& c) { if (!ok) f3.push_back(c); };
  two(C <= 2 * d + K1, "II: C <= 2delta+K1");
  two(C == 2 * K1 + 2 * K2 + 1, "II: C = 2K1+2K2+1");
  two(K1 + K2 >= d, "II: K1+K2 >= delta");
  two(K1 + 2 * K2 <= 2 * d - 1, "II: K1+2K2 <= 2delta-1");
  three(C >= 2 * d + K1 + 1, "III: C >= 2delta+K1+1");
  three(K1 + 2 * K2 >= 2 * d - 1, "III: K1+2K2 >= 2delta-1");
  three(3 * K2 >= 2 * d, "III: 3K2 >= 2delta");
  three(K1 + 2 * K2 != 2 * d - 1 || C >= 2 * d + K1 + 2, "III: K1+2K2 = 2delta-1 implies C >= 2delta+K1+2");
  if (f2.empty()) r.case_used = "II";
  else if (f3.empty()) r.case_used = "III";
  else {
    r.failed.insert(r.failed.end(), f2.begin(), f2.end());
    r.failed.insert(r.failed.end(), f3.begin(), f3.end());
  }
  r.relevant = base && !r.case_used.empty();
  return r;
}

// Admissible values of M for (delta, C), optionally also K1 <= M <= K2.
inline std::vector<int> magic_M_range(int delta, int C, int K1 = 0, int K2 = INT32_MAX) {
  std::vector<int> out;
  for (int M = (delta + 1) / 2; M <= delta; ++M)
    if (2 * M <= C - delta - 1 && K1 <= M && M <= K2) out.push_back(M);
  return out;
}

// Five-parameter form; only |C0 - C1| <= 1 is covered, where the forbidden
// triangles are those of perimeter at least min(C0, C1).
inline MagicParams params_from_cherlin(int delta, int K1, int K2, int C0, int C1) {
  if (std::abs(C0 - C1) > 1)
    throw InputError("parameters with |C0 - C1| > 1 are not covered by the magic semigroup construction");
  MagicParams p{delta, K1, K2, std::min(C0, C1), 0};
  auto Ms = magic_M_range(delta, p.C, K1, K2);
  if (Ms.empty()) throw InputError("no admissible M for these parameters");
  p.M = Ms.front();
  return p;
}

inline int magic_op(int delta, int M, int C, int x, int y) {
  (void)delta;
  if (std::abs(x - y) > M) return std::abs(x - y);
  const int m = std::min(x + y, C - 1 - x - y);
  if (m < M) return m;
  return M;
}

// Closed-form order.
inline bool magic_leq_closed(int delta, int M, int C, int a, int b) {
  return (a <= b && b <= M) || (a >= b && b >= M) || (a >= M && C - 1 - delta - a <= b && b <= M);
}

struct MagicSemigroup {
  Semigroup semigroup;
  // pairs (a, b), as labels, where the closed form and the natural order differ
  std::vector<std::pair<int, int>> order_disagreements;
  bool orders_agree() const { return order_disagreements.empty(); }
};

inline void require_magic_range(int delta, int M, int C) {
  if (delta < 3) throw PreconditionError("magic semigroup needs delta >= 3");
  if (C < 2 * delta + 2 || C > 3 * delta + 2) throw PreconditionError("magic semigroup needs 2delta+2 <= C <= 3delta+2");
  if (M < (delta + 1) / 2 || 2 * M > C - delta - 1)
    throw PreconditionError("magic semigroup needs ceil(delta/2) <= M <= (C-delta-1)/2");
}

inline MagicSemigroup magic_semigroup(int delta, int M, int C) {
  require_magic_range(delta, M, C);
  const int n = delta;
  std::vector<std::string> names;
  for (int a = 1; a <= n; ++a) names.push_back(std::to_string(a));
  std::vector<int> op(n * n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const int s = magic_op(delta, M, C, a, b);
      if (s < 1 || s > n) throw InternalError("magic sum out of range");
      op[(a - 1) * n + (b - 1)] = s - 1;
    }
  // natural order: a ⪯ b iff a = b or b = a ⊕ c
  std::vector<char> leq(n * n, 0);
  for (int a = 0; a < n; ++a) {
    leq[a * n + a] = 1;
    for (int c = 0; c < n; ++c) leq[a * n + op[a * n + c]] = 1;
  }
  MagicSemigroup out{Semigroup(names, op, leq), {}};
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      if (static_cast<bool>(leq[(a - 1) * n + (b - 1)]) != magic_leq_closed(delta, M, C, a, b))
        out.order_disagreements.push_back({a, b});
  auto rep = verify_semigroup(out.semigroup);
  if (!rep.empty()) throw InternalError("magic table is not a partially ordered commutative semigroup: " + rep.front().axiom);
  return out;
}

inline MagicSemigroup magic_semigroup(const MagicParams& p) { return magic_semigroup(p.delta, p.M, p.C); }

// ---------------------------------------------------------------------------
// Cycle taxonomy.

enum class CycleKind { CCycle, K1Cycle, K2Cycle, Metric, Other };

inline const char* cycle_kind_name(CycleKind k) {
  switch (k) {
    case CycleKind::CCycle: return "C-cycle";
    case CycleKind::K1Cycle: return "K1-cycle";
    case CycleKind::K2Cycle: return "K2-cycle";
    case CycleKind::Metric: return "metric";
    case CycleKind::Other: return "other";
  }
  return "?";
}

struct CycleClass {
  CycleKind kind = CycleKind::Other;
  bool metric = false;    // every edge ⪯ the ⊕-length of the rest
  bool geodesic = false;  // some edge equals the ⊕-length of the rest
};

inline bool is_C_cycle(const std::vector<int>& labels, int C) {
  const int k = static_cast<int>(labels.size());
  for (int mask = 1; mask < (1 << k); ++mask) {
    const int nd = __builtin_popcount(mask);
    if (nd % 2 == 0) continue;
    long long sd = 0, sx = 0;
    for (int i = 0; i < k; ++i) (mask >> i & 1 ? sd : sx) += labels[i];
    if (sd > static_cast<long long>((nd - 1) / 2) * (C - 1) + sx) return true;
  }
  return false;
}

inline bool is_K2_inequality(const std::vector<int>& labels, int K2, int C) {
  const int k = static_cast<int>(labels.size());
  for (int mask = 1; mask < (1 << k); ++mask) {
    const int nd = __builtin_popcount(mask);
    if (nd % 2 == 1) continue;
    long long sd = 0, sx = 0;
    for (int i = 0; i < k; ++i) (mask >> i & 1 ? sd : sx) += labels[i];
    if (sd > 2LL * K2 + static_cast<long long>((nd - 2) / 2) * (C - 1) + sx) return true;
  }
  return false;
}

// Labels are integers 1..delta.
inline CycleClass classify_cycle(const std::vector<int>& labels, const MagicParams& p,
                                 const Semigroup* magic = nullptr) {
  if (labels.size() < 2 || labels.size() > 10) throw InputError("cycles of 2 to 10 edges are classified");
  for (int x : labels)
    if (x < 1 || x > p.delta) throw InputError("cycle label out of range 1..delta");
  std::optional<MagicSemigroup> own;
  if (!magic) {
    own = magic_semigroup(p);
    magic = &own->semigroup;
  }
  const Semigroup& S = *magic;
  CycleClass r;
  std::vector<int> idx;
  for (int x : labels) idx.push_back(x - 1);
  r.metric = cycle_is_metric(S, idx);
  if (labels.size() >= 3)
    for (size_t i = 0; i < idx.size(); ++i) {
      int s = -1;
      for (size_t j = 0; j < idx.size(); ++j)
        if (j != i) s = s < 0 ? idx[j] : S.op(s, idx[j]);
      if (s == idx[i]) r.geodesic = true;
    }
  long long per = 0;
  for (int x : labels) per += x;
  if (is_C_cycle(labels, p.C)) r.kind = CycleKind::CCycle;
  else if (per % 2 == 1 && 2LL * p.K1 > per) r.kind = CycleKind::K1Cycle;
  else if (per % 2 == 1 && is_K2_inequality(labels, p.K2, p.C)) r.kind = CycleKind::K2Cycle;
  else r.kind = r.metric ? CycleKind::Metric : CycleKind::Other;
  return r;
}

// ---------------------------------------------------------------------------
// Closed-form sums.

struct MagicSumResult {
  int value = 0;
  int case_used = 0;  // 1: S = M, 2: S < M with n even, 3: S > M with n odd
};

inline MagicSumResult magic_sum(const std::vector<int>& xs, const std::vector<int>& ds, const MagicParams& p) {
  if (xs.empty() && ds.empty()) throw InputError("magic_sum needs at least one summand");
  for (int x : xs)
    if (x < 1 || x >= p.M) throw InputError("x summands must satisfy 1 <= x < M");
  for (int d : ds)
    if (d <= p.M || d > p.delta) throw InputError("d summands must satisfy M < d <= delta");
  long long sx = 0, sd = 0;
  for (int x : xs) sx += x;
  for (int d : ds) sd += d;
  const long long n = static_cast<long long>(ds.size());
  MagicSumResult r{p.M, 1};
  if (n % 2 == 0) {
    const long long v = n / 2 * (p.C - 1) + sx - sd;
    if (v < p.M) r = {static_cast<int>(v), 2};
  } else {
    const long long v = sd - (n - 1) / 2 * (p.C - 1) - sx;
    if (v > p.M) r = {static_cast<int>(v), 3};
  }
  int fold = -1;
  for (int x : xs) fold = fold < 0 ? x : magic_op(p.delta, p.M, p.C, fold, x);
  for (int d : ds) fold = fold < 0 ? d : magic_op(p.delta, p.M, p.C, fold, d);
  if (fold != r.value)
    throw InternalError("closed-form magic sum " + std::to_string(r.value) + " differs from the table fold " +
                        std::to_string(fold));
  return r;
}

// ---------------------------------------------------------------------------
// Forbidden family.

struct MagicFamily {
  CycleFamily family;                  // over semigroup indices (label - 1)
  std::vector<int> count_by_length;    // index = number of edges
  int stable_from = 0;                 // no members longer than this up to max_len
};

inline MagicFamily build_forbidden_family(const MagicParams& p, int max_len) {
  if (max_len < 3 || max_len > 10) throw InputError("max_len must lie in 3..10");
  if (!check_relevant(p).relevant) throw PreconditionError("parameters are not relevant");
  auto ms = magic_semigroup(p);
  MagicFamily out;
  out.count_by_length.assign(max_len + 1, 0);
  for (int len = 3; len <= max_len; ++len) {
    std::vector<int> c(len, 1);
    while (true) {
      if (canonical_cycle(c) == c) {
        auto k = classify_cycle(c, p, &ms.semigroup);
        const bool member = (k.kind == CycleKind::CCycle && k.metric) || k.kind == CycleKind::K1Cycle ||
                            k.kind == CycleKind::K2Cycle;
        if (member) {
          std::vector<int> idx;
          for (int x : c) idx.push_back(x - 1);
          out.family.add(idx);
          ++out.count_by_length[len];
          out.stable_from = len;
        }
      }
      int i = len - 1;
      while (i >= 0 && c[i] == p.delta) c[i--] = 1;
      if (i < 0) break;
      ++c[i];
    }
  }
  return out;
}

// Triangle test on a complete graph over a magic semigroup (labels are indices).
inline bool magic_membership(const Graph& G, const MagicParams& p) {
  const int n = G.size();
  if (!G.complete()) throw InputError("membership needs a complete graph");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        std::vector<int> t{G.label(a, b) + 1, G.label(b, c) + 1, G.label(a, c) + 1};
        auto k = classify_cycle(t, p, &G.semigroup());
        if (k.kind == CycleKind::CCycle || k.kind == CycleKind::K1Cycle || k.kind == CycleKind::K2Cycle) return false;
      }
  return true;
}

}  // namespace smv
