#pragma once

// Counting experiments behind the doubling-ratio arguments: exact product
// censuses with duplicate-free enumeration, the closed-form ratio functions,
// the excluded-diagram set construction, 2-simple preimage counts, and the
// minimal-support dimension scan over prime fields.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "kxm/catalan.hpp"
#include "kxm/fields.hpp"
#include "kxm/monomial.hpp"
#include "kxm/ore.hpp"
#include "kxm/polynomial.hpp"
#include "kxm/util.hpp"

namespace kxm {

struct CensusRecord {
  unsigned n = 0;                   // the size parameter of Y, when one applies
  BigInt y_size{0};                 // |Y|
  BigInt sy_size{0};                // |S·Y|, duplicates removed
  BigRational ratio{0};             // |S·Y| / |Y|
  bool bound_holds = false;         // |S·Y| < 2|Y|
  bool matches_closed_form = true;  // counts agree with the closed form, when one applies
  double seconds = 0.0;
};

// `n,Y,SY,ratio_num,ratio_den,bound_holds` rows, one per record
inline void write_census_csv(std::ostream& os, const std::vector<CensusRecord>& rows) {
  os << "n,Y,SY,ratio_num,ratio_den,bound_holds\n";
  for (const CensusRecord& r : rows)
    os << r.n << ',' << r.y_size << ',' << r.sy_size << ','
       << boost::multiprecision::numerator(r.ratio) << ','
       << boost::multiprecision::denominator(r.ratio) << ',' << (r.bound_holds ? 1 : 0) << '\n';
}

namespace detail {

// In-place odometer over the index words of S_{k,n} in lex order; fn sees the
// scratch vector itself, so it must not hold on to it.  Avoids materializing
// a Monomial per element, which matters for billion-element streams.
template <class Fn>
void scan_stair_words(unsigned k, unsigned n, Fn&& fn) {
  if (k < 1 || k > n) throw std::invalid_argument("S_{k,n}: need 1 <= k <= n");
  const std::size_t d = n - k;
  std::vector<Index> v(d, 0);
  for (;;) {
    fn(const_cast<const std::vector<Index>&>(v));
    std::size_t j = d;
    while (j > 0 && v[j - 1] + 1 > k + j - 2) --j;
    if (j == 0) return;
    Index c = v[j - 1] + 1;
    for (std::size_t t = j - 1; t < d; ++t) v[t] = c;
  }
}

}  // namespace detail

// {x_0, ..., x_m}
inline SetDescriptor xm_set(unsigned m) {
  std::vector<Monomial> xs;
  xs.reserve(m + 1);
  for (unsigned i = 0; i <= m; ++i) xs.push_back(Monomial::generator(static_cast<Index>(i)));
  return make_explicit(std::move(xs));
}

// Exact |S·Y| by enumerating every product and discarding duplicates.
inline CensusRecord doubling_ratio(const SetDescriptor& s, const SetDescriptor& y,
                                   std::uint64_t max_products = 100'000'000) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Monomial> left = enumerate_set(s);
  if (left.empty()) throw std::invalid_argument("doubling_ratio: empty left factor");
  std::unordered_set<Monomial, MonomialHash> products;
  std::uint64_t ycount = 0, done = 0;
  for_each_element(y, [&](const Monomial& w) {
    ++ycount;
    if ((done += left.size()) > max_products)
      throw budget_error("doubling_ratio: product budget exceeded");
    for (const Monomial& a : left) products.insert(multiply(a, w));
  });
  if (ycount == 0) throw std::invalid_argument("doubling_ratio: empty Y");
  CensusRecord rec;
  rec.y_size = ycount;
  rec.sy_size = products.size();
  rec.ratio = BigRational(rec.sy_size, rec.y_size);
  rec.bound_holds = rec.sy_size < 2 * rec.y_size;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// (m+1)/(m+2) * (2n-m-2)/(n-m-1), the closed form of
// |X_m S_{m+2,n}| / |S_{m+2,n}|; valid for n >= m+2.
inline BigRational xm_ratio(unsigned m, unsigned n) {
  if (n < m + 2) throw std::invalid_argument("xm_ratio: need n >= m + 2");
  return BigRational(BigInt(m + 1) * (2 * n - m - 2), BigInt(m + 2) * (n - m - 1));
}

// least n with xm_ratio(m, n) < 2
inline unsigned xm_threshold(unsigned m) { return (m + 1) * (m + 2) / 2 + 1; }

// Census of X_m S_{m+2,n} = S_{m+1,n} by streaming both sets.  Every element
// of S_{m+1,n} is checked to factor as x_c (tail) with c <= m, which exhibits
// it as a product; every stride-th element is re-multiplied from scratch, and
// every stride-th y in S_{m+2,n} has all m+1 products x_i y membership-checked
// against S_{m+1,n}.  Stride 1 makes both directions exhaustive; larger
// strides keep billion-element rows affordable.
inline CensusRecord xm_census(unsigned m, unsigned n, std::uint64_t verify_stride = 1) {
  if (n < m + 2) throw std::invalid_argument("xm_census: need n >= m + 2");
  if (verify_stride == 0) throw std::invalid_argument("xm_census: stride must be positive");
  auto t0 = std::chrono::steady_clock::now();
  const StairSet yset{m + 2, n};
  const StairSet pset{m + 1, n};
  std::uint64_t ycount = 0, pcount = 0, bad = 0, tick = 0;

  detail::scan_stair_words(m + 2, n, [&](const std::vector<Index>& v) {
    ++ycount;
    if (++tick % verify_stride == 0) {
      Monomial w = Monomial::from_sorted(std::vector<Index>(v));
      for (unsigned i = 0; i <= m; ++i)
        if (!contains(pset, multiply(Monomial::generator(static_cast<Index>(i)), w))) ++bad;
    }
  });
  tick = 0;
  detail::scan_stair_words(m + 1, n, [&](const std::vector<Index>& v) {
    ++pcount;
    if (v[0] > static_cast<Index>(m)) {  // first letter names the left factor
      ++bad;
      return;
    }
    if (++tick % verify_stride == 0) {
      Monomial tail = Monomial::from_sorted(std::vector<Index>(v.begin() + 1, v.end()));
      if (!contains(yset, tail) ||
          multiply(Monomial::generator(v[0]), tail) != Monomial::from_sorted(std::vector<Index>(v)))
        ++bad;
    }
  });
  if (bad) throw std::logic_error("xm_census: a product check failed");

  CensusRecord rec;
  rec.n = n;
  rec.y_size = ycount;
  rec.sy_size = pcount;
  rec.ratio = BigRational(rec.sy_size, rec.y_size);
  rec.bound_holds = rec.sy_size < 2 * rec.y_size;
  rec.matches_closed_form = rec.y_size == catalan_triangle(n, m + 2) &&
                            rec.sy_size == catalan_triangle(n, m + 1) &&
                            rec.ratio == xm_ratio(m, n);
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// S_{4,n} minus the two index-shifted copies of S_{1,n-3} (the excluded
// diagram shapes); cardinality b_{n,4} - 2 c_{n-4}, asserted by enumeration.
inline SetDescriptor donnelly_Y(unsigned n) {
  if (n < 5) throw std::invalid_argument("donnelly_Y: need n >= 5");
  StairSetMinus y{StairSet{4, n}, {ShiftedStairSet{1, n - 3, 1}, ShiftedStairSet{1, n - 3, 2}}};
  BigInt expect = catalan_triangle(n, 4) - 2 * catalan_number(n - 4);
  if (BigInt(count_elements(SetDescriptor{y})) != expect)
    throw std::logic_error("donnelly_Y: cardinality mismatch against the closed form");
  return y;
}

// (29n^3 - 231n^2 + 562n - 420) / (3 (5n^3 - 47n^2 + 142n - 140)), the
// closed-form upper bound for |S_{2,4} Y| / |Y| on the excluded-diagram sets.
inline BigRational s24_bound_ratio(unsigned n) {
  if (n < 5) throw std::invalid_argument("s24_bound_ratio: need n >= 5");
  BigInt nn(n);
  BigInt num = ((29 * nn - 231) * nn + 562) * nn - 420;
  BigInt den = 3 * (((5 * nn - 47) * nn + 142) * nn - 140);
  return BigRational(num, den);
}

struct S24Census {
  CensusRecord record;          // enumerated counts over Y = donnelly_Y(n)
  BigInt deficit{0};            // b_{n,2} - |S Y|: products of S_{2,n} never reached
  BigInt required_deficit{0};   // 6 c_{n-4}, the proven lower bound on the deficit
  bool deficit_ok = false;      // deficit >= required_deficit
  BigRational bound_ratio{0};   // (b_{n,2} - 6c_{n-4}) / (b_{n,4} - 2c_{n-4})
  bool formula_matches = false; // bound_ratio equals the cubic closed form
};

// Enumerative census of S_{2,4} times the excluded-diagram set.
inline S24Census s24_census(unsigned n, std::uint64_t max_products = 100'000'000) {
  S24Census out;
  out.record = doubling_ratio(SetDescriptor{StairSet{2, 4}}, donnelly_Y(n), max_products);
  out.record.n = n;
  BigInt c = catalan_number(n - 4);
  out.deficit = catalan_triangle(n, 2) - out.record.sy_size;
  out.required_deficit = 6 * c;
  out.deficit_ok = out.deficit >= out.required_deficit;
  out.bound_ratio =
      BigRational(catalan_triangle(n, 2) - 6 * c, catalan_triangle(n, 4) - 2 * c);
  out.formula_matches = out.bound_ratio == s24_bound_ratio(n);
  out.record.matches_closed_form =
      out.record.y_size == catalan_triangle(n, 4) - 2 * c && out.deficit_ok;
  return out;
}

// --- top cells and 2-simple diagrams ----------------------------------------

// generator indices that left-divide w; one per top cell of the diagram
inline std::vector<Index> top_cells(const Monomial& w) { return generator_divisors(w); }

inline Monomial remove_top(const Monomial& w, Index i) {
  auto q = generator_left_quotient(i, w);
  if (!q) throw std::invalid_argument("remove_top: generator does not left divide the word");
  return *q;
}

inline bool is_simple(const Monomial& w) {
  return !w.is_identity() && generator_divisors(w).size() == 1;
}

// simple, and still simple after removing the unique top cell
inline bool is_2simple(const Monomial& w) {
  if (!is_simple(w)) return false;
  return is_simple(remove_top(w, generator_divisors(w)[0]));
}

// Number of 2-simple elements of S_{2,n} whose two top-cell removals give d.
// Candidates are x_i x_j d with i <= 1 and j <= 2: the membership bounds force
// the first letters of the element and of its once-reduced form that low.
inline unsigned count_2simple_preimages(const Monomial& d, unsigned n) {
  std::vector<Monomial> found;
  for (Index i = 0; i <= 1; ++i)
    for (Index j = 0; j <= 2; ++j) {
      Monomial z = multiply(Monomial::generator(i), multiply(Monomial::generator(j), d));
      if (!contains(StairSet{2, n}, z) || !is_2simple(z)) continue;
      Monomial once = remove_top(z, generator_divisors(z)[0]);
      if (remove_top(once, generator_divisors(once)[0]) != d) continue;
      if (std::find(found.begin(), found.end(), z) == found.end()) found.push_back(z);
    }
  return static_cast<unsigned>(found.size());
}

// --- minimal-support scan ----------------------------------------------------

// Rational coefficients pushed into F_p; fails if a denominator vanishes mod p.
inline Polynomial<PrimeField> reduce_mod(const PrimeField& f, const Polynomial<RationalField>& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  std::vector<Polynomial<PrimeField>::Term> ts;
  BigInt mod(f.modulus());
  for (const auto& [m, c] : p.terms()) {
    BigInt num = numerator(c) % mod;
    if (num < 0) num += mod;
    BigInt den = denominator(c) % mod;
    if (den == 0) throw std::domain_error("reduce_mod: denominator vanishes modulo p");
    PrimeField::Elem e =
        f.mul(num.convert_to<std::uint64_t>(), f.inv(den.convert_to<std::uint64_t>()));
    ts.emplace_back(m, e);
  }
  return Polynomial<PrimeField>::from_terms(f, std::move(ts));
}

struct MinNSeedTrace {
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  std::vector<int> dims;            // nullspace dimensions, parallel to `ns`
  std::optional<unsigned> first_n;  // first probed n with a nonzero dimension
};

struct MinNReport {
  std::vector<unsigned> ns;
  std::vector<MinNSeedTrace> traces;
  bool seeds_agree = true;
  std::optional<unsigned> first_n;  // consensus across seeds, when they agree
  bool solution_verified = false;   // a basis vector at first_n re-verified exactly
};

namespace detail {

inline std::uint64_t seed_prime(std::uint64_t seed, unsigned attempt) {
  Rng rng(hash_mix(seed, attempt));
  return next_prime((rng.next() | (1ULL << 60)) & ((1ULL << 61) - 1));
}

// MakePair: (const PrimeField&, seed) -> (a, b) over that field
template <class MakePair>
MinNReport min_n_scan(unsigned n_from, unsigned n_to, const std::vector<std::uint64_t>& seeds,
                      MakePair&& make_pair, const EliminationOptions& opts) {
  if (n_from < 5 || n_to < n_from) throw std::invalid_argument("min_n_scan: need 5 <= n_from <= n_to");
  if (seeds.empty()) throw std::invalid_argument("min_n_scan: need at least one seed");
  MinNReport rep;
  for (unsigned n = n_from; n <= n_to; ++n) rep.ns.push_back(n);
  std::optional<Polynomial<PrimeField>> first_a, first_b;
  for (std::uint64_t seed : seeds) {
    MinNSeedTrace tr;
    tr.seed = seed;
    unsigned attempt = 0;
    for (;;) {
      tr.prime = seed_prime(seed, attempt);
      try {
        PrimeField f(tr.prime);
        auto [a, b] = make_pair(f, seed);
        if (seed == seeds.front()) {
          first_a = a;
          first_b = b;
        }
        tr.dims.clear();
        for (unsigned n : rep.ns) {
          auto res = solve_pair(a, b, SetDescriptor{StairSet{4, n}}, opts);
          tr.dims.push_back(static_cast<int>(res.nullity()));
          if (res.nullity() > 0 && !tr.first_n) tr.first_n = n;
        }
        break;
      } catch (const std::domain_error&) {
        ++attempt;  // denominator hit the prime; try the next one
        if (attempt > 16) throw;
      }
    }
    rep.traces.push_back(std::move(tr));
  }
  rep.first_n = rep.traces.front().first_n;
  for (const auto& tr : rep.traces)
    if (tr.first_n != rep.traces.front().first_n) rep.seeds_agree = false;
  if (!rep.seeds_agree) rep.first_n.reset();
  if (rep.first_n && first_a) {
    auto res = solve_pair(*first_a, *first_b, SetDescriptor{StairSet{4, *rep.first_n}}, opts);
    rep.solution_verified = res.verified && !res.basis.empty();
  }
  return rep;
}

}  // namespace detail

// Scan with per-seed random coefficients on the S_{2,4} support.
inline MinNReport minimal_support_search(unsigned n_from, unsigned n_to,
                                         const std::vector<std::uint64_t>& seeds,
                                         const EliminationOptions& opts = {}) {
  return detail::min_n_scan(
      n_from, n_to, seeds,
      [](const PrimeField& f, std::uint64_t seed) {
        SetDescriptor s{StairSet{2, 4}};
        for (std::uint64_t t = 0;; ++t) {
          auto a = random_poly(f, s, hash_mix(seed, 2 * t));
          auto b = random_poly(f, s, hash_mix(seed, 2 * t + 1));
          if (!a.is_zero() && !b.is_zero()) return std::make_pair(a, b);
        }
      },
      opts);
}

// Scan a fixed rational pair, reduced modulo a fresh prime per seed.
inline MinNReport minimal_support_search(const Polynomial<RationalField>& a,
                                         const Polynomial<RationalField>& b, unsigned n_from,
                                         unsigned n_to, const std::vector<std::uint64_t>& seeds,
                                         const EliminationOptions& opts = {}) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("minimal_support_search: operands must be nonzero");
  for (const auto& t : a.terms())
    if (!contains(StairSet{2, 4}, t.first))
      throw std::invalid_argument("minimal_support_search: a must be supported in S_{2,4}");
  for (const auto& t : b.terms())
    if (!contains(StairSet{2, 4}, t.first))
      throw std::invalid_argument("minimal_support_search: b must be supported in S_{2,4}");
  return detail::min_n_scan(
      n_from, n_to, seeds,
      [&](const PrimeField& f, std::uint64_t) {
        return std::make_pair(reduce_mod(f, a), reduce_mod(f, b));
      },
      opts);
}

}  // namespace kxm
