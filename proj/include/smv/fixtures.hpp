#pragma once
// Built-in semigroups and the parametric ambient families used for
// generated subsemigroups.

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <sstream>

#include "semigroup.hpp"

namespace smv {

inline Semigroup build_semigroup(std::vector<std::string> names, const std::function<int(int, int)>& op,
                                 const std::function<bool(int, int)>& le) {
  const int n = static_cast<int>(names.size());
  std::vector<int> t(n * n);
  std::vector<char> l(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t[a * n + b] = op(a, b);
      l[a * n + b] = le(a, b);
    }
  return Semigroup(std::move(names), std::move(t), std::move(l));
}

inline std::vector<std::string> number_names(int from, int to) {
  std::vector<std::string> v;
  for (int i = from; i <= to; ++i) v.push_back(std::to_string(i));
  return v;
}

// {1..n} with max: an ultrametric semigroup.
inline Semigroup make_U(int n) {
  if (n < 1) throw InputError("U needs n >= 1");
  return build_semigroup(number_names(1, n), [](int a, int b) { return std::max(a, b); },
                         [](int a, int b) { return a <= b; });
}

// {1..k} with addition capped at k.
inline Semigroup make_Z(int k) {
  if (k < 1) throw InputError("Z needs k >= 1");
  return build_semigroup(number_names(1, k), [k](int a, int b) { return std::min(a + b + 2, k) - 1; },
                         [](int a, int b) { return a <= b; });
}

inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// a ⊕ b = sup{c ∈ S : c ≤ a + b} over a finite set of positive reals.
inline Semigroup make_sauer(std::vector<double> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  if (S.empty() || S[0] <= 0) throw InputError("Sauer set must be nonempty and positive");
  std::vector<std::string> names;
  for (double x : S) names.push_back(format_real(x));
  const int n = static_cast<int>(S.size());
  return build_semigroup(
      names,
      [&](int a, int b) {
        double s = S[a] + S[b];
        int best = 0;
        for (int c = 0; c < n; ++c)
          if (S[c] <= s + 1e-12) best = c;
        return best;
      },
      [](int a, int b) { return a <= b; });
}

inline Semigroup make_sauer_example() { return make_sauer({1, 3, 4, 6, 7}); }

inline std::string tuple_name(const std::vector<long long>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// {0..k}^d with coordinate-wise addition saturating at k and the product order.
inline Semigroup make_DT(int k, int d = 3) {
  if (k < 1 || d < 1) throw InputError("DT needs k >= 1 and d >= 1");
  std::vector<std::vector<long long>> vals;
  std::vector<long long> cur(d, 0);
  while (true) {
    vals.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == k) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  std::map<std::vector<long long>, int> idx;
  std::vector<std::string> names;
  for (size_t i = 0; i < vals.size(); ++i) {
    idx[vals[i]] = static_cast<int>(i);
    names.push_back(tuple_name(vals[i]));
  }
  return build_semigroup(
      names,
      [&](int a, int b) {
        std::vector<long long> s(d);
        for (int i = 0; i < d; ++i) s[i] = std::min<long long>(vals[a][i] + vals[b][i], k);
        return idx.at(s);
      },
      [&](int a, int b) {
        for (int i = 0; i < d; ++i)
          if (vals[a][i] > vals[b][i]) return false;
        return true;
      });
}

// Divisors of n under lcm, ordered by divisibility.
inline Semigroup make_DIV(long long n) {
  if (n < 1) throw InputError("DIV needs n >= 1");
  std::vector<long long> ds;
  for (long long i = 1; i <= n; ++i)
    if (n % i == 0) ds.push_back(i);
  std::vector<std::string> names;
  for (auto x : ds) names.push_back(std::to_string(x));
  return build_semigroup(
      names,
      [&](int a, int b) {
        long long l = std::lcm(ds[a], ds[b]);
        return static_cast<int>(std::find(ds.begin(), ds.end(), l) - ds.begin());
      },
      [&](int a, int b) { return ds[b] % ds[a] == 0; });
}

// {a, b, c, M} with x ⊕ y = M and x ⪯ M.
inline Semigroup make_flat(int k = 3) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  names.push_back("M");
  return build_semigroup(names, [k](int, int) { return k; }, [k](int a, int b) { return a == b || b == k; });
}

// {p, q, r, M}: p and q idempotent, every other sum M; p and q have no
// common lower bound.
inline Semigroup make_vee() {
  return build_semigroup({"p", "q", "r", "M"}, [](int a, int b) { return a == b && a < 2 ? a : 3; },
                         [](int a, int b) { return a == b || b == 3; });
}

// Crown {a, b, x, y, M} with a, b ≺ x, y ≺ M: a⊕a = a⊕b = x, b⊕b = y, other
// sums M. The lengths x and y have two maximal common lower bounds.
inline Semigroup make_crown() {
  return build_semigroup(
      {"a", "b", "x", "y", "M"},
      [](int i, int j) {
        if (i < 2 && j < 2) return i == 1 && j == 1 ? 3 : 2;
        return 4;
      },
      [](int i, int j) { return i == j || j == 4 || (i < 2 && (j == 2 || j == 3)); });
}

// ---------------------------------------------------------------------------
// Ambient families for generated subsemigroups.

using Value = std::vector<long long>;

class Ambient {
 public:
  virtual ~Ambient() = default;
  virtual Value op(const Value& a, const Value& b) const = 0;
  virtual bool leq(const Value& a, const Value& b) const = 0;
  virtual std::string name(const Value& a) const = 0;
  virtual Value parse(const std::string& s) const = 0;
};

class TableAmbient : public Ambient {
 public:
  explicit TableAmbient(Semigroup S) : S_(std::move(S)) {}
  Value op(const Value& a, const Value& b) const override { return {S_.op(a[0], b[0])}; }
  bool leq(const Value& a, const Value& b) const override { return S_.leq(a[0], b[0]); }
  std::string name(const Value& a) const override { return S_.name(static_cast<int>(a[0])); }
  Value parse(const std::string& s) const override { return {S_.index(s)}; }

 private:
  Semigroup S_;
};

// Positive integers under addition; cap == 0 means unbounded.
class CappedAdditionAmbient : public Ambient {
 public:
  explicit CappedAdditionAmbient(long long cap) : cap_(cap) {}
  Value op(const Value& a, const Value& b) const override {
    long long s = a[0] + b[0];
    return {cap_ > 0 ? std::min(s, cap_) : s};
  }
  bool leq(const Value& a, const Value& b) const override { return a[0] <= b[0]; }
  std::string name(const Value& a) const override { return std::to_string(a[0]); }
  Value parse(const std::string& s) const override {
    long long x = std::stoll(s);
    if (x < 1 || (cap_ > 0 && x > cap_)) throw InputError("value outside capped addition range: " + s);
    return {x};
  }

 private:
  long long cap_;
};

// ℕ^d with coordinate-wise addition saturating at cap.
class TruncatedNdAmbient : public Ambient {
 public:
  TruncatedNdAmbient(int d, long long cap) : d_(d), cap_(cap) {}
  Value op(const Value& a, const Value& b) const override {
    Value s(d_);
    for (int i = 0; i < d_; ++i) s[i] = std::min(a[i] + b[i], cap_);
    return s;
  }
  bool leq(const Value& a, const Value& b) const override {
    for (int i = 0; i < d_; ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  std::string name(const Value& a) const override { return tuple_name(a); }
  Value parse(const std::string& s) const override {
    Value v;
    std::string t;
    for (char c : s) {
      if (c == '(' || c == ')' || c == ' ') continue;
      if (c == ',') { v.push_back(std::stoll(t)); t.clear(); }
      else t += c;
    }
    if (!t.empty()) v.push_back(std::stoll(t));
    if (static_cast<int>(v.size()) != d_) throw InputError("wrong tuple arity: " + s);
    for (auto x : v)
      if (x < 0 || x > cap_) throw InputError("tuple coordinate out of range: " + s);
    return v;
  }

 private:
  int d_;
  long long cap_;
};

// Sauer's ⊕_S over a finite list of positive reals; values are list indices.
class SauerAmbient : public Ambient {
 public:
  explicit SauerAmbient(std::vector<double> S) : S_(std::move(S)) {
    std::sort(S_.begin(), S_.end());
    S_.erase(std::unique(S_.begin(), S_.end()), S_.end());
  }
  Value op(const Value& a, const Value& b) const override {
    double s = S_[a[0]] + S_[b[0]];
    long long best = 0;
    for (size_t c = 0; c < S_.size(); ++c)
      if (S_[c] <= s + 1e-12) best = static_cast<long long>(c);
    return {best};
  }
  bool leq(const Value& a, const Value& b) const override { return a[0] <= b[0]; }
  std::string name(const Value& a) const override { return format_real(S_[a[0]]); }
  Value parse(const std::string& s) const override {
    double x = std::stod(s);
    for (size_t c = 0; c < S_.size(); ++c)
      if (std::fabs(S_[c] - x) < 1e-9) return {static_cast<long long>(c)};
    throw InputError("value not in Sauer set: " + s);
  }

 private:
  std::vector<double> S_;
};

// Positive integers under lcm, ordered by divisibility.
class DivisorAmbient : public Ambient {
 public:
  Value op(const Value& a, const Value& b) const override {
    long long g = std::gcd(a[0], b[0]);
    long long q = a[0] / g;
    if (q > (1LL << 62) / std::max(1LL, b[0])) throw ResourceError("lcm overflow");
    return {q * b[0]};
  }
  bool leq(const Value& a, const Value& b) const override { return b[0] % a[0] == 0; }
  std::string name(const Value& a) const override { return std::to_string(a[0]); }
  Value parse(const std::string& s) const override {
    long long x = std::stoll(s);
    if (x < 1) throw InputError("divisor lattice needs positive integers");
    return {x};
  }
};

// Closure of gens under ⊕ inside the ambient, as a standalone Semigroup.
inline Semigroup generated_subsemigroup(const Ambient& amb, const std::vector<Value>& gens, size_t cap) {
  if (gens.empty()) throw InputError("generating set must be nonempty");
  std::set<Value> seen;
  std::vector<Value> elems;
  for (auto& g : gens)
    if (seen.insert(g).second) elems.push_back(g);
  if (elems.size() > cap) throw ResourceError("closure exceeds cap", static_cast<long long>(elems.size()));
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      Value s = amb.op(elems[i], elems[j]);
      if (seen.insert(s).second) {
        elems.push_back(s);
        if (elems.size() > cap) throw ResourceError("closure exceeds cap", static_cast<long long>(elems.size()));
      }
    }
  std::sort(elems.begin(), elems.end());
  std::map<Value, int> idx;
  std::vector<std::string> names;
  for (size_t i = 0; i < elems.size(); ++i) {
    idx[elems[i]] = static_cast<int>(i);
    names.push_back(amb.name(elems[i]));
  }
  return build_semigroup(
      names, [&](int a, int b) { return idx.at(amb.op(elems[a], elems[b])); },
      [&](int a, int b) { return amb.leq(elems[a], elems[b]); });
}

}  // namespace smv
