#pragma once

// The sets S_{k,n} (1 <= k <= n): elements of M of degree n - k whose normal
// form i_1 <= i_2 <= ... <= i_{n-k} satisfies i_j <= k + j - 2.  Their sizes
// form the Catalan triangle
//
//     |S_{k,n}| = b_{n,k} = k (2n-k-1)! / (n! (n-k)!),
//
// with b_{n,1} = c_{n-1} the (n-1)-st Catalan number.  The product law
// S_{m,n} S_{n,k} = S_{m,k} holds for m <= n <= k.
//
// A SetDescriptor names either such a set, a set difference of one with
// shifted copies of others, or an explicit list.  Enumeration is streaming
// and in lex order throughout.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "kxm/monomial.hpp"

namespace kxm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// b_{n,k} = k (2n-k-1)! / (n! (n-k)!)
inline BigInt catalan_triangle(unsigned n, unsigned k) {
  if (k < 1 || k > n) throw std::invalid_argument("catalan_triangle: need 1 <= k <= n");
  return k * factorial(2 * n - k - 1) / (factorial(n) * factorial(n - k));
}

// c_j = (2j)! / (j! (j+1)!)
inline BigInt catalan_number(unsigned j) {
  return factorial(2 * j) / (factorial(j) * factorial(j + 1));
}

// --- descriptors ----------------------------------------------------------

struct StairSet {
  unsigned k = 1, n = 1;  // S_{k,n}
};

// shift(S_{k,n}, by): every element of S_{k,n} with all indices raised by `by`.
struct ShiftedStairSet {
  unsigned k = 1, n = 1;
  Index by = 0;
};

struct StairSetMinus {
  StairSet base;
  std::vector<ShiftedStairSet> excluded;
};

struct ExplicitSet {
  std::vector<Monomial> elements;  // sorted, unique
};

using SetDescriptor = std::variant<StairSet, StairSetMinus, ExplicitSet>;

inline void validate(const StairSet& s) {
  if (s.k < 1 || s.k > s.n) throw std::invalid_argument("S_{k,n}: need 1 <= k <= n");
}

inline ExplicitSet make_explicit(std::vector<Monomial> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return ExplicitSet{std::move(elems)};
}

inline bool contains(const StairSet& s, const Monomial& m) {
  validate(s);
  if (m.degree() != s.n - s.k) return false;
  const std::vector<Index>& v = m.indices();
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] + 1 > s.k + j) return false;  // v[j] <= k + j - 1 (0-based)
  return true;
}

inline bool contains(const ShiftedStairSet& s, const Monomial& m) {
  if (m.degree() != s.n - s.k) return false;
  if (s.by > 0 && (m.is_identity() || m.min_index() < s.by)) return false;
  return contains(StairSet{s.k, s.n}, unshift(m, s.by));
}

inline bool contains(const SetDescriptor& d, const Monomial& m) {
  if (const auto* s = std::get_if<StairSet>(&d)) return contains(*s, m);
  if (const auto* sm = std::get_if<StairSetMinus>(&d)) {
    if (!contains(sm->base, m)) return false;
    for (const auto& e : sm->excluded)
      if (contains(e, m)) return false;
    return true;
  }
  const auto& ex = std::get<ExplicitSet>(d).elements;
  return std::binary_search(ex.begin(), ex.end(), m);
}

// Streams the elements of S_{k,n} in lex order.  The enumerator is a plain
// odometer over weakly increasing sequences with position bounds k + j - 1,
// so each step is O(1) amortized.  Fn may return void, or bool to stop early
// (return false to abort).
template <class Fn>
void for_each_element(const StairSet& s, Fn&& fn) {
  validate(s);
  auto call = [&fn](const Monomial& m) {
    if constexpr (std::is_void_v<decltype(fn(m))>) {
      fn(m);
      return true;
    } else {
      return static_cast<bool>(fn(m));
    }
  };
  std::size_t d = s.n - s.k;
  std::vector<Index> v(d, 0);
  for (;;) {
    if (!call(Monomial::from_sorted(std::vector<Index>(v)))) return;
    std::size_t j = d;
    while (j > 0 && v[j - 1] + 1 > s.k + j - 2) --j;  // v[j-1] maxed at k + (j-1) - 1
    if (j == 0) return;
    Index c = v[j - 1] + 1;
    for (std::size_t t = j - 1; t < d; ++t) v[t] = c;
  }
}

template <class Fn>
void for_each_element(const SetDescriptor& d, Fn&& fn) {
  auto call = [&fn](const Monomial& m) {
    if constexpr (std::is_void_v<decltype(fn(m))>) {
      fn(m);
      return true;
    } else {
      return static_cast<bool>(fn(m));
    }
  };
  if (const auto* s = std::get_if<StairSet>(&d)) {
    for_each_element(*s, fn);
  } else if (const auto* sm = std::get_if<StairSetMinus>(&d)) {
    for_each_element(sm->base, [&](const Monomial& m) {
      for (const auto& e : sm->excluded)
        if (contains(e, m)) return true;
      return call(m);
    });
  } else {
    for (const Monomial& m : std::get<ExplicitSet>(d).elements)
      if (!call(m)) return;
  }
}

inline std::vector<Monomial> enumerate_set(const SetDescriptor& d) {
  std::vector<Monomial> out;
  for_each_element(d, [&](const Monomial& m) { out.push_back(m); });
  return out;
}

inline std::uint64_t count_elements(const SetDescriptor& d) {
  std::uint64_t n = 0;
  for_each_element(d, [&](const Monomial&) { ++n; });
  return n;
}

// --- text form -------------------------------------------------------------
//
// descriptor := "S:<k>:<n>" | "{" mono ("," mono)* "}" | "{}"

inline std::string to_string(const SetDescriptor& d) {
  if (const auto* s = std::get_if<StairSet>(&d))
    return "S:" + std::to_string(s->k) + ":" + std::to_string(s->n);
  if (const auto* sm = std::get_if<StairSetMinus>(&d)) {
    std::string out = "S:" + std::to_string(sm->base.k) + ":" + std::to_string(sm->base.n);
    for (const auto& e : sm->excluded) {
      out += " \\ shift(S:" + std::to_string(e.k) + ":" + std::to_string(e.n) + ", " +
             std::to_string(e.by) + ")";
    }
    return out;
  }
  const auto& ex = std::get<ExplicitSet>(d).elements;
  std::string out = "{";
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (i) out += ",";
    out += to_string(ex[i]);
  }
  return out + "}";
}

inline SetDescriptor parse_set_descriptor(const std::string& s) {
  std::size_t pos = 0;
  detail::skip_ws(s, pos);
  if (pos < s.size() && s[pos] == 'S') {
    ++pos;
    if (pos >= s.size() || s[pos] != ':') throw parse_error(pos, "expected ':' after 'S'");
    ++pos;
    unsigned k = static_cast<unsigned>(detail::parse_uint(s, pos, "k"));
    if (pos >= s.size() || s[pos] != ':') throw parse_error(pos, "expected ':' after k");
    ++pos;
    unsigned n = static_cast<unsigned>(detail::parse_uint(s, pos, "n"));
    detail::skip_ws(s, pos);
    if (pos != s.size()) throw parse_error(pos, "trailing input after descriptor");
    StairSet st{k, n};
    validate(st);
    return st;
  }
  if (pos < s.size() && s[pos] == '{') {
    ++pos;
    std::vector<Monomial> elems;
    detail::skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '}') {
      ++pos;
    } else {
      for (;;) {
        elems.push_back(parse_monomial(s, pos));
        detail::skip_ws(s, pos);
        if (pos < s.size() && s[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < s.size() && s[pos] == '}') {
          ++pos;
          break;
        }
        throw parse_error(pos, "expected ',' or '}' in set literal");
      }
    }
    detail::skip_ws(s, pos);
    if (pos != s.size()) throw parse_error(pos, "trailing input after set literal");
    return make_explicit(std::move(elems));
  }
  throw parse_error(pos, "expected 'S:<k>:<n>' or '{...}'");
}

}  // namespace kxm
