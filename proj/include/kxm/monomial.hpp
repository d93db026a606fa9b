#pragma once

// Thompson's monoid M on generators x0, x1, x2, ... subject to
//
//     x_j x_i = x_i x_{j+1}   for 0 <= i < j.
//
// Rewriting x_j x_i -> x_i x_{j+1} (j > i) is terminating and confluent, and
// the normal forms are exactly the weakly increasing index sequences.  A
// Monomial stores that normal form.  M is cancellative and admits right lcms,
// which is what makes the common-multiple machinery downstream work.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kxm/util.hpp"

namespace kxm {

using Index = std::uint32_t;

// A word in the generators, not necessarily in normal form.
using RawWord = std::vector<Index>;

class Monomial {
 public:
  Monomial() = default;

  // `word` must already be weakly increasing.
  static Monomial from_sorted(std::vector<Index> word) {
    if (!std::is_sorted(word.begin(), word.end()))
      throw std::invalid_argument("from_sorted: indices not weakly increasing");
    Monomial m;
    m.idx_ = std::move(word);
    return m;
  }

  static Monomial identity() { return Monomial(); }

  static Monomial generator(Index i) {
    Monomial m;
    m.idx_.push_back(i);
    return m;
  }

  std::size_t degree() const { return idx_.size(); }
  bool is_identity() const { return idx_.empty(); }
  const std::vector<Index>& indices() const { return idx_; }
  Index operator[](std::size_t j) const { return idx_[j]; }
  Index max_index() const { return idx_.back(); }
  Index min_index() const { return idx_.front(); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.idx_ == b.idx_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  // Lexicographic order on index sequences.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.idx_ < b.idx_; }

  // Right-multiplies by x_c in place.  The letter commutes leftward past every
  // strictly larger letter, incrementing each one it passes.
  void push_letter(Index c) {
    auto it = std::upper_bound(idx_.begin(), idx_.end(), c);
    for (auto p = it; p != idx_.end(); ++p) ++*p;
    idx_.insert(it, c);
  }

 private:
  std::vector<Index> idx_;  // weakly increasing
};

// Degree first, then lexicographic.  This is the term order used by the
// polynomial layer.
inline bool deglex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.indices() < b.indices();
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Index i : m.indices()) h = hash_mix(h, i);
    return static_cast<std::size_t>(h);
  }
};

// --- rewriting ----------------------------------------------------------

// One rewrite step at position p: ... w[p] w[p+1] ... with w[p] > w[p+1]
// becomes ... w[p+1] w[p]+1 ...
inline void rewrite_at(RawWord& w, std::size_t p) {
  Index hi = w[p];
  w[p] = w[p + 1];
  w[p + 1] = hi + 1;
}

// Normal form by rewriting, always reducing the rightmost inversion first.
inline Monomial normalize(RawWord w) {
  for (;;) {
    std::size_t p = w.size();
    for (std::size_t j = w.size(); j > 1; --j) {
      if (w[j - 2] > w[j - 1]) {
        p = j - 2;
        break;
      }
    }
    if (p == w.size()) break;
    rewrite_at(w, p);
  }
  return Monomial::from_sorted(std::move(w));
}

// Normal form by rewriting a uniformly random inversion each step.  Same
// answer as normalize() for every seed; the tests lean on that.
inline Monomial normalize_random(RawWord w, Rng& rng) {
  std::vector<std::size_t> inv;
  for (;;) {
    inv.clear();
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
      if (w[j] > w[j + 1]) inv.push_back(j);
    if (inv.empty()) break;
    rewrite_at(w, inv[rng.below(inv.size())]);
  }
  return Monomial::from_sorted(std::move(w));
}

// --- multiplication and division ----------------------------------------

inline Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (Index c : b.indices()) r.push_letter(c);
  return r;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) { return multiply(a, b); }

// x_i^k shifted: multiplies w by x_i on the left k times.  Kept for clarity
// at call sites that build products letter by letter.
inline Monomial power(Index i, std::size_t k) {
  return Monomial::from_sorted(std::vector<Index>(k, i));
}

// w with every index raised by k.
inline Monomial shift(const Monomial& w, Index k) {
  std::vector<Index> v = w.indices();
  for (Index& i : v) i += k;
  return Monomial::from_sorted(std::move(v));
}

// Inverse of shift; requires min index >= k.
inline Monomial unshift(const Monomial& w, Index k) {
  std::vector<Index> v = w.indices();
  for (Index& i : v) {
    if (i < k) throw std::invalid_argument("unshift: index below shift amount");
    i -= k;
  }
  return Monomial::from_sorted(std::move(v));
}

// Left quotient by a single generator: returns c with x_i * c = w, if any.
//
// Writing w = w_1 w_2 ... w_d, multiplying x_i * w pushes x_i rightward: it
// passes position j exactly when w_j <= i + j - 2 (0-based: w[j] <= i + j - 1
// for j = 0..s-1), and where it stops it lands as the letter i + s.  So x_i
// divides w iff at the first position s where the passing condition fails we
// find exactly the letter i + s; removing it gives the quotient.
inline std::optional<Monomial> generator_left_quotient(Index i, const Monomial& w) {
  const std::vector<Index>& v = w.indices();
  std::size_t s = 0;
  while (s < v.size() && v[s] + 2 <= i + s + 1) ++s;  // v[s] <= i + s - 1, overflow-safe
  if (s == v.size() || v[s] != i + s) return std::nullopt;
  std::vector<Index> q;
  q.reserve(v.size() - 1);
  q.insert(q.end(), v.begin(), v.begin() + s);
  q.insert(q.end(), v.begin() + s + 1, v.end());
  return Monomial::from_sorted(std::move(q));
}

// Left quotient a \ b: the unique c with a * c = b, if it exists.  Peels the
// letters of a off b one at a time.
inline std::optional<Monomial> left_quotient(const Monomial& a, const Monomial& b) {
  if (a.degree() > b.degree()) return std::nullopt;
  Monomial c = b;
  for (Index i : a.indices()) {
    auto q = generator_left_quotient(i, c);
    if (!q) return std::nullopt;
    c = std::move(*q);
  }
  return c;
}

inline bool left_divides(const Monomial& a, const Monomial& b) {
  return left_quotient(a, b).has_value();
}

// All i such that x_i left-divides w, in increasing order.
//
// x_i divides w iff some position p has w_p = i + p - 1 while w_j <= i + j - 2
// before it.  Setting t_p = w_p - (p - 1), that says t_p = i and t_j < i for
// j < p, so the divisor indices are exactly the strict running maxima of the
// sequence t.
inline std::vector<Index> generator_divisors(const Monomial& w) {
  std::vector<Index> out;
  const std::vector<Index>& v = w.indices();
  std::int64_t best = -1;
  for (std::size_t p = 0; p < v.size(); ++p) {
    std::int64_t t = static_cast<std::int64_t>(v[p]) - static_cast<std::int64_t>(p);
    if (t > best) {
      best = t;
      out.push_back(static_cast<Index>(t));
    }
  }
  return out;
}

// Least common right multiple: the minimal m with a \ m and b \ m.  M has
// right lcms, so this exists; the search scans common multiples degree by
// degree and returns the lex-least one of minimal degree.  `extra_degrees`
// bounds the scan above deg a + deg b, which is already well past the lcm
// degree (<= deg a + deg b); it exists only to make nontermination impossible.
inline Monomial right_lcm(const Monomial& a, const Monomial& b, std::size_t extra_degrees = 0) {
  if (left_divides(a, b)) return b;
  if (left_divides(b, a)) return a;
  std::size_t dmax = a.degree() + b.degree() + extra_degrees;
  for (std::size_t d = std::max(a.degree(), b.degree()); d <= dmax; ++d) {
    // Candidates are a * s over all s of degree d - deg a with letters bounded
    // by the largest index that can appear in a minimal common multiple.
    Index bound = static_cast<Index>(std::max(a.degree() ? a.max_index() : 0,
                                              b.degree() ? b.max_index() : 0) +
                                     d + 1);
    std::vector<Index> s(d - a.degree(), 0);
    std::optional<Monomial> best;
    std::function<void(std::size_t, Index)> rec = [&](std::size_t pos, Index lo) {
      if (pos == s.size()) {
        Monomial m = multiply(a, Monomial::from_sorted(std::vector<Index>(s)));
        if (left_divides(b, m) && (!best || m < *best)) best = m;
        return;
      }
      for (Index c = lo; c <= bound; ++c) {
        s[pos] = c;
        rec(pos + 1, c);
      }
    };
    rec(0, 0);
    if (best) return *best;
  }
  throw budget_error("right_lcm: no common multiple within degree bound");
}

// --- text form -----------------------------------------------------------
//
// Grammar:  mono := "1" | factor ("*" factor)*      factor := "x" idx ["^" exp]
// Parsing accepts factors in any order and normalizes.

inline std::string to_string(const Monomial& m) {
  if (m.is_identity()) return "1";
  std::string out;
  const std::vector<Index>& v = m.indices();
  for (std::size_t j = 0; j < v.size();) {
    std::size_t k = j;
    while (k < v.size() && v[k] == v[j]) ++k;
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(v[j]);
    if (k - j > 1) {
      out += '^';
      out += std::to_string(k - j);
    }
    j = k;
  }
  return out;
}

// Parses a monomial starting at `pos`; on return `pos` is one past the last
// consumed character.  Throws parse_error with the offending offset.
inline Monomial parse_monomial(const std::string& s, std::size_t& pos) {
  detail::skip_ws(s, pos);
  if (pos < s.size() && s[pos] == '1') {
    ++pos;
    return Monomial::identity();
  }
  RawWord word;
  for (;;) {
    detail::skip_ws(s, pos);
    if (pos >= s.size() || s[pos] != 'x') throw parse_error(pos, "expected generator 'x<index>'");
    ++pos;
    Index i = static_cast<Index>(detail::parse_uint(s, pos, "generator index"));
    std::uint64_t e = 1;
    detail::skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      e = detail::parse_uint(s, pos, "exponent");
      if (e == 0) throw parse_error(pos, "exponent must be positive");
    }
    for (std::uint64_t t = 0; t < e; ++t) word.push_back(i);
    detail::skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      continue;
    }
    break;
  }
  return normalize(std::move(word));
}

inline Monomial parse_monomial(const std::string& s) {
  std::size_t pos = 0;
  Monomial m = parse_monomial(s, pos);
  detail::skip_ws(s, pos);
  if (pos != s.size()) throw parse_error(pos, "trailing input after monomial");
  return m;
}

}  // namespace kxm
