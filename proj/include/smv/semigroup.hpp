#pragma once
// Finite partially ordered commutative semigroups and their block lattices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace smv {

class Semigroup {
 public:
  Semigroup() = default;

  // Tables are row-major n*n. No validation beyond shape; see verify_semigroup.
  Semigroup(std::vector<std::string> names, std::vector<int> oplus, std::vector<char> leq)
      : names_(std::move(names)), op_(std::move(oplus)), le_(std::move(leq)) {
    n_ = static_cast<int>(names_.size());
    if (op_.size() != static_cast<size_t>(n_) * n_ || le_.size() != static_cast<size_t>(n_) * n_)
      throw InputError("semigroup tables do not match element count");
    for (int x : op_)
      if (x < 0 || x >= n_) throw InputError("operation table entry out of range");
    for (int i = 0; i < n_; ++i) index_.emplace(names_[i], i);
    if (index_.size() != names_.size()) throw InputError("duplicate element names");
  }

  int size() const { return n_; }
  int op(int a, int b) const { return op_[a * n_ + b]; }
  bool leq(int a, int b) const { return le_[a * n_ + b] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  const std::string& name(int a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& op_table() const { return op_; }
  const std::vector<char>& leq_table() const { return le_; }

  std::optional<int> find(std::string_view nm) const {
    auto it = index_.find(std::string(nm));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index(std::string_view nm) const {
    auto r = find(nm);
    if (!r) throw InputError("unknown element '" + std::string(nm) + "'");
    return *r;
  }

  int fold(const std::vector<int>& xs) const {
    if (xs.empty()) throw InputError("empty sum has no value (no neutral element)");
    int s = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) s = op(s, xs[i]);
    return s;
  }

  // The ⪯-maximum element, if any.
  std::optional<int> maximum() const {
    for (int m = 0; m < n_; ++m) {
      bool top = true;
      for (int a = 0; a < n_ && top; ++a) top = leq(a, m);
      if (top) return m;
    }
    return std::nullopt;
  }

  bool operator==(const Semigroup& o) const {
    return names_ == o.names_ && op_ == o.op_ && le_ == o.le_;
  }

 private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<int> op_;
  std::vector<char> le_;
  std::map<std::string, int> index_;
};

struct AxiomViolation {
  std::string axiom;
  std::vector<int> witness;
};

using VerificationReport = std::vector<AxiomViolation>;

// Scans every axiom of a partially ordered commutative semigroup and reports
// the first witness for each violated one.
inline VerificationReport verify_semigroup(const std::vector<std::vector<int>>& table,
                                           const std::vector<std::vector<bool>>& leq) {
  const size_t n = table.size();
  if (leq.size() != n) throw InputError("order matrix dimension differs from table dimension");
  for (auto& row : table)
    if (row.size() != n) throw InputError("operation table is not square");
  for (auto& row : leq)
    if (row.size() != n) throw InputError("order matrix is not square");
  for (auto& row : table)
    for (int x : row)
      if (x < 0 || static_cast<size_t>(x) >= n) throw InputError("operation table entry out of range");

  VerificationReport rep;
  auto report = [&](const char* ax, std::vector<int> w) {
    for (auto& v : rep)
      if (v.axiom == ax) return;
    rep.push_back({ax, std::move(w)});
  };
  const int N = static_cast<int>(n);
  auto op = [&](int a, int b) { return table[a][b]; };
  auto le = [&](int a, int b) { return static_cast<bool>(leq[a][b]); };

  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (op(a, b) != op(b, a)) report("commutativity", {a, b});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        if (op(op(a, b), c) != op(a, op(b, c))) report("associativity", {a, b, c});
  for (int a = 0; a < N; ++a)
    if (!le(a, a)) report("reflexivity", {a});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (a != b && le(a, b) && le(b, a)) report("antisymmetry", {a, b});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (le(a, b))
        for (int c = 0; c < N; ++c)
          if (le(b, c) && !le(a, c)) report("transitivity", {a, b, c});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (!le(a, op(a, b))) report("a_below_sum", {a, b});
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c)
        if (le(b, c) && !le(op(a, b), op(a, c))) report("monotonicity", {a, b, c});
  return rep;
}

inline VerificationReport verify_semigroup(const Semigroup& S) {
  const int n = S.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::vector<bool>> l(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t[a][b] = S.op(a, b);
      l[a][b] = S.leq(a, b);
    }
  return verify_semigroup(t, l);
}

// Throws InputError listing the violated axioms.
inline void require_valid(const Semigroup& S) {
  auto rep = verify_semigroup(S);
  if (rep.empty()) return;
  std::string msg = "invalid semigroup:";
  for (auto& v : rep) msg += " " + v.axiom;
  throw InputError(msg);
}

inline int scalar_multiple(const Semigroup& S, int a, long long n) {
  if (n <= 0) throw InputError("scalar multiple needs n >= 1");
  // a, 2a, 3a, ... is eventually periodic; detect the cycle to handle large n.
  std::vector<int> seen(S.size(), -1);
  std::vector<int> orbit;
  int x = a;
  while (seen[x] < 0) {
    seen[x] = static_cast<int>(orbit.size());
    orbit.push_back(x);
    if (static_cast<long long>(orbit.size()) == n) return x;
    x = S.op(x, a);
  }
  const long long start = seen[x];
  const long long period = static_cast<long long>(orbit.size()) - start;
  return orbit[start + (n - 1 - start) % period];
}

// Greatest lower bound of a nonempty set, if it exists.
inline std::optional<int> infimum(const Semigroup& S, const std::vector<int>& xs) {
  if (xs.empty()) return std::nullopt;
  std::vector<int> lower;
  for (int c = 0; c < S.size(); ++c) {
    bool ok = true;
    for (int x : xs)
      if (!S.leq(c, x)) { ok = false; break; }
    if (ok) lower.push_back(c);
  }
  for (int c : lower) {
    bool top = true;
    for (int d : lower)
      if (!S.leq(d, c)) { top = false; break; }
    if (top) return c;
  }
  return std::nullopt;
}

inline std::optional<int> supremum(const Semigroup& S, const std::vector<int>& xs) {
  if (xs.empty()) return std::nullopt;
  std::vector<int> upper;
  for (int c = 0; c < S.size(); ++c) {
    bool ok = true;
    for (int x : xs)
      if (!S.leq(x, c)) { ok = false; break; }
    if (ok) upper.push_back(c);
  }
  for (int c : upper) {
    bool bottom = true;
    for (int d : upper)
      if (!S.leq(c, d)) { bottom = false; break; }
    if (bottom) return c;
  }
  return std::nullopt;
}

// reach[a][b] iff n×a ⪰ b for some n ≥ 1.
inline std::vector<std::vector<char>> reachability(const Semigroup& S) {
  const int n = S.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    std::vector<char> inorbit(n, 0);
    int x = a;
    while (!inorbit[x]) {
      inorbit[x] = 1;
      x = S.op(x, a);
    }
    for (int y = 0; y < n; ++y)
      if (inorbit[y])
        for (int b = 0; b < n; ++b)
          if (S.leq(b, y)) reach[a][b] = 1;
  }
  return reach;
}

struct Block {
  int id = 0;
  std::vector<int> members;  // empty exactly for 𝟎
};

struct BlockLattice {
  std::vector<Block> blocks;  // blocks[0] is 𝟎
  std::vector<int> block_of;  // element -> block id
  std::vector<char> leq;      // nb*nb
  std::vector<int> meet;      // nb*nb, -1 where undefined
  std::vector<int> join;      // nb*nb, -1 where undefined
  std::vector<int> meet_irreducibles;
  std::vector<int> meet_reducibles;
  std::optional<int> maximum_block;
  bool is_lattice = false;
  bool is_distributive = false;

  int size() const { return static_cast<int>(blocks.size()); }
  bool le(int a, int b) const { return leq[a * size() + b] != 0; }
  bool lt(int a, int b) const { return a != b && le(a, b); }
  int meet_of(int a, int b) const { return meet[a * size() + b]; }
  int join_of(int a, int b) const { return join[a * size() + b]; }
  bool irreducible(int b) const {
    return std::binary_search(meet_irreducibles.begin(), meet_irreducibles.end(), b);
  }
  bool reducible(int b) const {
    return std::binary_search(meet_reducibles.begin(), meet_reducibles.end(), b);
  }
  bool is_max(int b) const { return maximum_block && *maximum_block == b; }
  // I \ {𝟎}: the blocks that get ball vertices.
  std::vector<int> ball_blocks() const {
    std::vector<int> r;
    for (int b : meet_irreducibles)
      if (b != 0) r.push_back(b);
    return r;
  }
  // Meet of a set of blocks; the maximum block for the empty set.
  int meet_all(const std::vector<int>& bs) const {
    if (bs.empty()) {
      if (!maximum_block) throw PreconditionError("empty meet without a maximum block");
      return *maximum_block;
    }
    int m = bs[0];
    for (size_t i = 1; i < bs.size(); ++i) {
      m = meet_of(m, bs[i]);
      if (m < 0) throw PreconditionError("meet of blocks undefined");
    }
    return m;
  }
};

inline BlockLattice compute_blocks(const Semigroup& S) {
  const int n = S.size();
  auto reach = reachability(S);
  BlockLattice L;
  L.blocks.push_back({0, {}});
  L.block_of.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (L.block_of[a] >= 0) continue;
    Block B{static_cast<int>(L.blocks.size()), {}};
    for (int b = a; b < n; ++b)
      if (L.block_of[b] < 0 && reach[a][b] && reach[b][a]) {
        L.block_of[b] = B.id;
        B.members.push_back(b);
      }
    L.blocks.push_back(std::move(B));
  }
  const int nb = L.size();
  L.leq.assign(nb * nb, 0);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      if (i == 0) { L.leq[i * nb + j] = 1; continue; }
      bool all = true;
      for (int a : L.blocks[i].members) {
        bool found = false;
        for (int b : L.blocks[j].members)
          if (S.leq(a, b)) { found = true; break; }
        if (!found) { all = false; break; }
      }
      L.leq[i * nb + j] = all;
    }

  L.meet.assign(nb * nb, -1);
  L.join.assign(nb * nb, -1);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      std::vector<int> lower, upper;
      for (int k = 0; k < nb; ++k) {
        if (L.le(k, i) && L.le(k, j)) lower.push_back(k);
        if (L.le(i, k) && L.le(j, k)) upper.push_back(k);
      }
      for (int c : lower)
        if (std::all_of(lower.begin(), lower.end(), [&](int d) { return L.le(d, c); })) {
          L.meet[i * nb + j] = c;
          break;
        }
      for (int c : upper)
        if (std::all_of(upper.begin(), upper.end(), [&](int d) { return L.le(c, d); })) {
          L.join[i * nb + j] = c;
          break;
        }
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (L.join_of(L.block_of[a], L.block_of[b]) != L.block_of[S.op(a, b)])
        throw InternalError("block join differs from B(a⊕b) for " + S.name(a) + ", " + S.name(b));

  for (int k = 0; k < nb; ++k) {
    bool top = true;
    for (int j = 0; j < nb && top; ++j) top = L.le(j, k);
    if (top) { L.maximum_block = k; break; }
  }
  for (int b = 0; b < nb; ++b) {
    if (L.is_max(b)) continue;
    bool red = false;
    for (int x = 0; x < nb && !red; ++x)
      for (int y = 0; y < nb && !red; ++y)
        if (x != b && y != b && L.meet_of(x, y) == b) red = true;
    (red ? L.meet_reducibles : L.meet_irreducibles).push_back(b);
  }
  L.is_lattice = std::none_of(L.meet.begin(), L.meet.end(), [](int v) { return v < 0; }) &&
                 std::none_of(L.join.begin(), L.join.end(), [](int v) { return v < 0; });
  if (L.is_lattice) {
    L.is_distributive = true;
    for (int x = 0; x < nb && L.is_distributive; ++x)
      for (int y = 0; y < nb && L.is_distributive; ++y)
        for (int z = 0; z < nb; ++z)
          if (L.meet_of(x, L.join_of(y, z)) != L.join_of(L.meet_of(x, y), L.meet_of(x, z))) {
            L.is_distributive = false;
            break;
          }
  }
  return L;
}

struct ArchimedeanResult {
  bool archimedean = true;
  std::optional<std::pair<int, int>> counterexample;  // (a, b): no n with n×a ⪰ b
};

inline ArchimedeanResult is_archimedean(const Semigroup& S) {
  auto reach = reachability(S);
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (!reach[a][b]) return {false, std::make_pair(a, b)};
  return {};
}

// A set of meet-irreducible blocks whose meet is B (empty for the maximum).
inline std::vector<int> meet_decompose(const BlockLattice& L, int B) {
  if (B < 0 || B >= L.size()) throw InputError("block id out of range");
  if (std::any_of(L.meet.begin(), L.meet.end(), [](int v) { return v < 0; }))
    throw PreconditionError("meet_decompose needs every pairwise meet");
  if (L.is_max(B)) return {};
  std::vector<int> out;
  for (int I : L.meet_irreducibles)
    if (L.le(B, I)) out.push_back(I);
  if (out.empty() || L.meet_all(out) != B)
    throw InternalError("meet-irreducible blocks above B do not meet to B");
  return out;
}

inline std::vector<int> irreducible_elements(const Semigroup& S) {
  const int n = S.size();
  std::vector<char> red(n, 0);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      red[S.op(b, c)] = 1;
      if (auto m = infimum(S, {b, c}); m && *m != b && *m != c) red[*m] = 1;
    }
  std::vector<int> out;
  for (int a = 0; a < n; ++a)
    if (!red[a]) out.push_back(a);
  return out;
}

// Elements of the subsemigroup generated by S (all nonempty sums).
inline std::vector<int> generated_set(const Semigroup& G, const std::vector<int>& gens) {
  std::vector<char> in(G.size(), 0);
  std::vector<int> out;
  for (int g : gens)
    if (!in[g]) { in[g] = 1; out.push_back(g); }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      int s = G.op(out[i], out[j]);
      if (!in[s]) { in[s] = 1; out.push_back(s); }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace smv
