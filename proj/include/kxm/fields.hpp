#pragma once

// Coefficient fields.  Everything downstream is templated on a field type F
// exposing: Elem, zero/one, add/sub/mul/neg/inv/div, is_zero/eq, from_int,
// random/random_nonzero (driven by kxm::Rng), parse/to_string, and config().
//
//   RationalField  exact arbitrary-precision rationals
//   PrimeField     Z/p for a 64-bit prime p < 2^62
//   EvalField      "generic" coefficients: a symbol is represented by k
//                  independent evaluations at seeded points of F_p, so an
//                  identity certified at all k points fails with probability
//                  at most (D/p)^k for total degree D (Schwartz-Zippel)
//
// A FieldConfig is the runtime description used by the CLI and by reports.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kxm/util.hpp"

namespace kxm {

using BigRationalElem = boost::multiprecision::cpp_rational;

// --- modular arithmetic helpers --------------------------------------------

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Smallest prime >= n (n < 2^62 assumed).
inline std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  if ((n & 1) == 0) ++n;
  while (!is_prime_u64(n)) n += 2;
  return n;
}

// --- runtime field description ---------------------------------------------

struct FieldConfig {
  enum class Kind { rationals, prime, generic };
  Kind kind = Kind::rationals;
  std::uint64_t p = 0;      // prime, generic
  std::uint64_t seed = 0;   // generic
  unsigned evals = 3;       // generic: number of evaluation components
  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

inline std::string to_string(const FieldConfig& c) {
  switch (c.kind) {
    case FieldConfig::Kind::rationals:
      return "q";
    case FieldConfig::Kind::prime:
      return "fp:" + std::to_string(c.p);
    default:
      return "generic:" + std::to_string(c.seed) + ":" + std::to_string(c.evals);
  }
}

// Accepts "q", "fp:<p>", "generic:<seed>[:<evals>]".
inline FieldConfig parse_field_config(const std::string& s) {
  FieldConfig c;
  if (s == "q" || s == "Q") {
    c.kind = FieldConfig::Kind::rationals;
    return c;
  }
  auto num_after = [&](std::size_t pos) {
    std::size_t p = pos;
    std::uint64_t v = 0;
    if (p >= s.size()) throw parse_error(p, "expected number");
    while (p < s.size() && s[p] >= '0' && s[p] <= '9') v = v * 10 + (s[p++] - '0');
    if (p != s.size() && s[p] != ':') throw parse_error(p, "bad field spec");
    return std::pair<std::uint64_t, std::size_t>(v, p);
  };
  if (s.rfind("fp:", 0) == 0) {
    auto [p, end] = num_after(3);
    if (end != s.size()) throw parse_error(end, "bad field spec");
    if (p >= (1ULL << 62) || !is_prime_u64(p)) throw std::invalid_argument("fp:<p>: p must be a prime below 2^62");
    c.kind = FieldConfig::Kind::prime;
    c.p = p;
    return c;
  }
  if (s.rfind("generic:", 0) == 0) {
    auto [seed, end] = num_after(8);
    c.kind = FieldConfig::Kind::generic;
    c.seed = seed;
    c.p = (1ULL << 61) - 1;
    if (end < s.size()) {
      auto [k, end2] = num_after(end + 1);
      if (end2 != s.size()) throw parse_error(end2, "bad field spec");
      if (k < 1 || k > 8) throw std::invalid_argument("generic:<seed>:<evals>: evals must be 1..8");
      c.evals = static_cast<unsigned>(k);
    }
    return c;
  }
  throw std::invalid_argument("field spec must be q, fp:<p>, or generic:<seed>[:<evals>]");
}

// --- rationals --------------------------------------------------------------

struct RationalField {
  using Elem = BigRationalElem;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(v); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a.is_zero()) throw std::domain_error("division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // Small random rationals keep hand inspection and exact solving pleasant.
  Elem random(Rng& rng) const {
    long long num = rng.range(-9, 9);
    long long den = rng.range(1, 9);
    return Elem(num) / den;
  }
  Elem random_nonzero(Rng& rng) const {
    for (;;) {
      Elem e = random(rng);
      if (!is_zero(e)) return e;
    }
  }

  std::string to_string(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const {
    try {
      Elem e(s);
      return e;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
  }

  FieldConfig config() const { return FieldConfig{}; }
  std::string name() const { return "q"; }
};

// --- prime field --------------------------------------------------------------

class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 62) || !is_prime_u64(p))
      throw std::invalid_argument("PrimeField: modulus must be a prime below 2^62");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Elem>(r);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem add(Elem a, Elem b) const {
    Elem r = a + b;
    if (r >= p_ || r < a) r -= p_;
    return r;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p_ - b); }
  Elem mul(Elem a, Elem b) const { return mulmod(a, b, p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return powmod(a, p_ - 2, p_);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem random(Rng& rng) const { return rng.below(p_); }
  Elem random_nonzero(Rng& rng) const { return 1 + rng.below(p_ - 1); }

  std::string to_string(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const;

  FieldConfig config() const { return FieldConfig{FieldConfig::Kind::prime, p_, 0, 3}; }
  std::string name() const { return "fp:" + std::to_string(p_); }

 private:
  std::uint64_t p_;
};

// --- generic coefficients via evaluation ------------------------------------

// An element is a vector of k evaluations in F_p.  Named indeterminates get
// reproducible nonzero component values hashed from (seed, component, name);
// distinct components act as independent evaluation points.  Arithmetic is
// componentwise.  An element testing zero on all k components is declared
// zero; for expressions of total degree <= D in the indeterminates that
// verdict is wrong with probability at most (D/p)^k over the choice of seed.
class EvalField {
 public:
  static constexpr unsigned kMaxEvals = 8;

  struct Elem {
    std::array<std::uint64_t, kMaxEvals> v{};
    friend bool operator==(const Elem& a, const Elem& b) { return a.v == b.v; }
  };

  EvalField(std::uint64_t seed, unsigned evals = 3, std::uint64_t p = (1ULL << 61) - 1)
      : p_(p), seed_(seed), k_(evals) {
    if (k_ < 1 || k_ > kMaxEvals) throw std::invalid_argument("EvalField: evals must be 1..8");
    if (p_ < (1ULL << 30) || p_ >= (1ULL << 62) || !is_prime_u64(p_))
      throw std::invalid_argument("EvalField: modulus must be a prime in [2^30, 2^62)");
  }

  std::uint64_t modulus() const { return p_; }
  unsigned evals() const { return k_; }
  std::uint64_t seed() const { return seed_; }

  Elem zero() const { return Elem{}; }
  Elem one() const { return splat(1); }
  Elem from_int(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return splat(static_cast<std::uint64_t>(r));
  }
  bool is_zero(const Elem& a) const { return a == Elem{}; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return map2(a, b, [&](auto x, auto y) { return x + y >= p_ ? x + y - p_ : x + y; }); }
  Elem sub(const Elem& a, const Elem& b) const { return map2(a, b, [&](auto x, auto y) { return x >= y ? x - y : x + (p_ - y); }); }
  Elem mul(const Elem& a, const Elem& b) const { return map2(a, b, [&](auto x, auto y) { return mulmod(x, y, p_); }); }
  Elem neg(const Elem& a) const { return map1(a, [&](auto x) { return x == 0 ? 0 : p_ - x; }); }
  Elem inv(const Elem& a) const {
    for (unsigned i = 0; i < k_; ++i)
      if (a.v[i] == 0)
        throw std::domain_error(a == Elem{} ? "division by zero"
                                            : "division by an element vanishing at an evaluation point");
    return map1(a, [&](auto x) { return powmod(x, p_ - 2, p_); });
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  // A named indeterminate.  Names must not begin with 'x', which is reserved
  // for the monoid generators.
  Elem indeterminate(const std::string& name) const {
    if (name.empty() || name[0] == 'x')
      throw std::invalid_argument("indeterminate names must be nonempty and must not start with 'x'");
    Elem e{};
    for (unsigned i = 0; i < k_; ++i)
      e.v[i] = 1 + hash_string(hash_mix(seed_, i + 1), name) % (p_ - 1);
    return e;
  }

  // A fresh random element behaves like one more independent indeterminate:
  // componentwise uniform draws.
  Elem random(Rng& rng) const {
    Elem e{};
    for (unsigned i = 0; i < k_; ++i) e.v[i] = rng.below(p_);
    return e;
  }
  Elem random_nonzero(Rng& rng) const {
    Elem e{};
    for (unsigned i = 0; i < k_; ++i) e.v[i] = 1 + rng.below(p_ - 1);
    return e;
  }

  // Upper bound on the probability that a nonzero degree-D expression
  // evaluates to zero at all k points, reported as a printable power.
  std::string certification_bound(unsigned long long degree) const {
    return "(" + std::to_string(degree) + "/" + std::to_string(p_) + ")^" + std::to_string(k_);
  }

  std::string to_string(const Elem& a) const {
    std::string s = "(";
    for (unsigned i = 0; i < k_; ++i) {
      if (i) s += ",";
      s += std::to_string(a.v[i]);
    }
    return s + ")";
  }
  Elem parse(const std::string& s) const;

  FieldConfig config() const { return FieldConfig{FieldConfig::Kind::generic, p_, seed_, k_}; }
  std::string name() const { return "generic:" + std::to_string(seed_) + ":" + std::to_string(k_); }

 private:
  Elem splat(std::uint64_t x) const {
    Elem e{};
    for (unsigned i = 0; i < k_; ++i) e.v[i] = x;
    return e;
  }
  template <class Op>
  Elem map1(const Elem& a, Op op) const {
    Elem e{};
    for (unsigned i = 0; i < k_; ++i) e.v[i] = op(a.v[i]);
    return e;
  }
  template <class Op>
  Elem map2(const Elem& a, const Elem& b, Op op) const {
    Elem e{};
    for (unsigned i = 0; i < k_; ++i) e.v[i] = op(a.v[i], b.v[i]);
    return e;
  }

  std::uint64_t p_;
  std::uint64_t seed_;
  unsigned k_;
};

// Shared scalar literal parsing for the modular fields: an optionally signed
// integer, or a fraction "a/b", or (EvalField only) an indeterminate name.
namespace detail {
template <class F>
typename F::Elem parse_int_or_fraction(const F& f, const std::string& s, bool allow_names) {
  std::size_t pos = 0;
  skip_ws(s, pos);
  auto parse_signed = [&]() -> typename F::Elem {
    bool negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negative = (s[pos++] == '-');
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') throw parse_error(pos, "expected integer");
    typename F::Elem v = f.zero();
    typename F::Elem ten = f.from_int(10);
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
      v = f.add(f.mul(v, ten), f.from_int(s[pos++] - '0'));
    return negative ? f.neg(v) : v;
  };
  typename F::Elem result = f.zero();
  if (allow_names && pos < s.size() && ((s[pos] >= 'a' && s[pos] <= 'z') || (s[pos] >= 'A' && s[pos] <= 'Z') || s[pos] == '_')) {
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if constexpr (std::is_same_v<F, EvalField>) {
      result = f.indeterminate(s.substr(start, pos - start));
    } else {
      throw parse_error(start, "named coefficients need the generic field");
    }
  } else {
    result = parse_signed();
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      skip_ws(s, pos);
      result = f.div(result, parse_signed());
    }
  }
  skip_ws(s, pos);
  if (pos != s.size()) throw parse_error(pos, "trailing input after scalar");
  return result;
}
}  // namespace detail

inline PrimeField::Elem PrimeField::parse(const std::string& s) const {
  return detail::parse_int_or_fraction(*this, s, false);
}

inline EvalField::Elem EvalField::parse(const std::string& s) const {
  return detail::parse_int_or_fraction(*this, s, true);
}

// Calls fn with the concrete field named by the config.
template <class Fn>
auto with_field(const FieldConfig& c, Fn&& fn) {
  switch (c.kind) {
    case FieldConfig::Kind::rationals:
      return fn(RationalField{});
    case FieldConfig::Kind::prime:
      return fn(PrimeField(c.p));
    default:
      return fn(EvalField(c.seed, c.evals, c.p));
  }
}

}  // namespace kxm
