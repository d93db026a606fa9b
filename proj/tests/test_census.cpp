#include <catch2/catch_amalgamated.hpp>

#include "kxm/census.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace kxm;

namespace {

Monomial mono(const std::string& s) { return parse_monomial(s); }

// elements of S_{k,n} with every index raised by `by`
std::vector<Monomial> shifted_elems(unsigned k, unsigned n, Index by) {
  std::vector<Monomial> out;
  for (const Monomial& w : enumerate_set(StairSet{k, n})) out.push_back(shift(w, by));
  return out;
}

// Independent left-divisor oracle: try every word of one smaller degree.
std::vector<Index> divisors_bruteforce(const Monomial& w) {
  std::vector<Index> out;
  if (w.is_identity()) return out;
  unsigned deg = static_cast<unsigned>(w.degree());
  Index top = static_cast<Index>(w.max_index() + 1);
  for (Index i = 0; i <= top; ++i) {
    bool hit = false;
    // candidates: weakly increasing words of degree deg-1 with entries <= top
    std::vector<Index> v(deg - 1, 0);
    for (;;) {
      if (multiply(Monomial::generator(i), Monomial::from_sorted(std::vector<Index>(v))) == w)
        hit = true;
      std::size_t j = v.size();
      while (j > 0 && v[j - 1] == top) --j;
      if (j == 0) break;
      Index c = v[j - 1] + 1;
      for (std::size_t t = j - 1; t < v.size(); ++t) v[t] = c;
    }
    if (hit) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("word scanner matches the set enumerator", "[census]") {
  for (auto [k, n] : {std::pair<unsigned, unsigned>{1, 5}, {2, 6}, {3, 7}, {4, 4}}) {
    std::vector<Monomial> scanned;
    detail::scan_stair_words(k, n, [&](const std::vector<Index>& v) {
      scanned.push_back(Monomial::from_sorted(std::vector<Index>(v)));
    });
    CHECK(scanned == enumerate_set(StairSet{k, n}));
  }
}

TEST_CASE("closed-form ratio and thresholds", "[census]") {
  // the ratio is exactly b_{n,m+1} / b_{n,m+2}
  for (unsigned m = 0; m <= 5; ++m)
    for (unsigned n = m + 3; n <= m + 14; ++n)
      CHECK(xm_ratio(m, n) == BigRational(catalan_triangle(n, m + 1), catalan_triangle(n, m + 2)));

  CHECK(xm_threshold(1) == 4);
  CHECK(xm_threshold(2) == 7);
  CHECK(xm_threshold(3) == 11);
  CHECK(xm_threshold(4) == 16);
  CHECK(xm_threshold(5) == 22);
  for (unsigned m = 1; m <= 6; ++m) {
    unsigned t = xm_threshold(m);
    CHECK(xm_ratio(m, t - 1) >= 2);
    CHECK(xm_ratio(m, t) < 2);
    for (unsigned n = m + 2; n <= t + 6; ++n) CHECK((xm_ratio(m, n) < 2) == (n >= t));
  }
  CHECK_THROWS_AS(xm_ratio(3, 4), std::invalid_argument);
}

TEST_CASE("generator-set census at the first doubling failures", "[census]") {
  CensusRecord r1 = xm_census(1, 4);
  CHECK(r1.y_size == 3);
  CHECK(r1.sy_size == 5);
  CHECK(r1.ratio == BigRational(5, 3));
  CHECK(r1.bound_holds);
  CHECK(r1.matches_closed_form);

  CensusRecord r2 = xm_census(2, 7);
  CHECK(r2.y_size == 48);
  CHECK(r2.sy_size == 90);
  CHECK(!(r2.ratio >= 2));
  CHECK(r2.matches_closed_form);

  CensusRecord r3 = xm_census(3, 11);
  CHECK(r3.y_size == 3640);
  CHECK(r3.sy_size == 7072);
  CHECK(r3.bound_holds);
  CHECK(r3.matches_closed_form);
  // sampled verification sees the same counts
  CensusRecord r3s = xm_census(3, 11, 97);
  CHECK(r3s.y_size == r3.y_size);
  CHECK(r3s.sy_size == r3.sy_size);

  // one step below the threshold the ratio is still >= 2
  CHECK(!xm_census(2, 6).bound_holds);

  CHECK_THROWS_AS(xm_census(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(xm_census(2, 9, 0), std::invalid_argument);
}

TEST_CASE("product census agrees with brute-force dedup", "[census][oracle]") {
  for (unsigned m = 1; m <= 3; ++m) {
    unsigned n = xm_threshold(m);
    CensusRecord brute = doubling_ratio(xm_set(m), SetDescriptor{StairSet{m + 2, n}});
    CensusRecord fast = xm_census(m, n);
    CHECK(brute.y_size == fast.y_size);
    CHECK(brute.sy_size == fast.sy_size);
    CHECK(brute.ratio == fast.ratio);
  }
  // off-threshold spot check
  CensusRecord brute = doubling_ratio(xm_set(2), SetDescriptor{StairSet{4, 8}});
  CHECK(brute.y_size == 165);
  CHECK(brute.sy_size == 297);

  // a singleton left factor cannot create collisions (cancellativity)
  CensusRecord one = doubling_ratio(SetDescriptor{make_explicit({mono("x2")})},
                                    SetDescriptor{StairSet{2, 5}});
  CHECK(one.ratio == 1);
  CHECK(one.bound_holds);

  CHECK_THROWS_AS(doubling_ratio(xm_set(1), SetDescriptor{StairSet{4, 10}}, 3), budget_error);
}

TEST_CASE("the full stair set never satisfies the doubling bound", "[census]") {
  // multiplying S_{2,4} into S_{4,n} at least doubles the count, which is
  // what forces the passage to excluded-diagram subsets
  for (unsigned n : {5u, 7u, 9u, 12u}) {
    CensusRecord r = doubling_ratio(SetDescriptor{StairSet{2, 4}}, SetDescriptor{StairSet{4, n}});
    CHECK(r.y_size == catalan_triangle(n, 4));
    CHECK(!r.bound_holds);
  }
}

TEST_CASE("excluded-diagram sets", "[census]") {
  CHECK(enumerate_set(donnelly_Y(5)) == std::vector<Monomial>{mono("x0"), mono("x3")});
  CHECK(count_elements(donnelly_Y(6)) == 10);
  for (unsigned n = 5; n <= 13; ++n) {
    SetDescriptor y = donnelly_Y(n);  // throws if the count disagrees with the closed form
    CHECK(BigInt(count_elements(y)) ==
          catalan_triangle(n, 4) - 2 * catalan_number(n - 4));
  }
  // the two excluded shifted copies sit inside S_{4,n} and never overlap
  for (unsigned n = 5; n <= 9; ++n) {
    auto ex1 = shifted_elems(1, n - 3, 1);
    auto ex2 = shifted_elems(1, n - 3, 2);
    for (const Monomial& w : ex1) {
      CHECK(contains(StairSet{4, n}, w));
      CHECK(std::find(ex2.begin(), ex2.end(), w) == ex2.end());
    }
    for (const Monomial& w : ex2) CHECK(contains(StairSet{4, n}, w));
  }
  CHECK_THROWS_AS(donnelly_Y(4), std::invalid_argument);
}

TEST_CASE("cubic bound ratio", "[census]") {
  CHECK(s24_bound_ratio(5) == 4);
  CHECK(s24_bound_ratio(10) == BigRational(185, 79));
  // the cubic is exactly (b_{n,2} - 6 c_{n-4}) / (b_{n,4} - 2 c_{n-4})
  for (unsigned n = 5; n <= 60; ++n) {
    BigInt c = catalan_number(n - 4);
    CHECK(s24_bound_ratio(n) ==
          BigRational(catalan_triangle(n, 2) - 6 * c, catalan_triangle(n, 4) - 2 * c));
  }
  // the bound crosses 2 between n = 44 and n = 45 and stays below afterwards
  for (unsigned n = 5; n <= 44; ++n) CHECK(s24_bound_ratio(n) >= 2);
  for (unsigned n = 45; n <= 80; ++n) CHECK(s24_bound_ratio(n) < 2);
  // limit 29/15 < 2, so it stays below forever
  CHECK(BigRational(29, 15) < 2);
}

TEST_CASE("enumerated census against the deficit bound", "[census]") {
  for (unsigned n : {6u, 8u, 10u}) {
    S24Census c = s24_census(n);
    CHECK(c.record.y_size == catalan_triangle(n, 4) - 2 * catalan_number(n - 4));
    CHECK(c.deficit_ok);  // |S Y| <= b_{n,2} - 6 c_{n-4}
    CHECK(c.formula_matches);
    CHECK(c.record.matches_closed_form);
    CHECK(c.bound_ratio == s24_bound_ratio(n));
    CHECK(c.record.ratio <= c.bound_ratio);
  }
  S24Census c10 = s24_census(10);
  CHECK(c10.required_deficit == 6 * catalan_number(6));
  CHECK(c10.bound_ratio == BigRational(185, 79));
}

TEST_CASE("top cells and simplicity", "[census][oracle]") {
  // x1 x0 = x0 x2, so x0 x2 has *two* top cells
  CHECK(top_cells(mono("x0*x2")) == std::vector<Index>{0, 1});
  CHECK(top_cells(mono("x0")) == std::vector<Index>{0});
  CHECK(top_cells(mono("x1^2")) == std::vector<Index>{1});
  CHECK(top_cells(Monomial::identity()).empty());

  // brute-force divisor oracle over a small crowd of words
  for (const Monomial& w : enumerate_set(StairSet{2, 6})) CHECK(top_cells(w) == divisors_bruteforce(w));
  for (const Monomial& w : enumerate_set(StairSet{4, 8})) CHECK(top_cells(w) == divisors_bruteforce(w));

  CHECK(remove_top(mono("x0*x2"), 1) == mono("x0"));
  CHECK(remove_top(mono("x0*x2"), 0) == mono("x2"));
  CHECK_THROWS_AS(remove_top(mono("x0*x2"), 2), std::invalid_argument);

  CHECK(!is_simple(Monomial::identity()));
  CHECK(is_simple(mono("x0")));
  CHECK(!is_simple(mono("x0*x2")));
  CHECK(is_simple(mono("x1^2")));
  CHECK(is_2simple(mono("x1^2")));
  CHECK(!is_2simple(mono("x0")));  // removing the top cell leaves the identity
}

TEST_CASE("2-simple preimages of excluded diagrams", "[census][oracle]") {
  // brute force over all of S_{2,n}: count the 2-simple words whose two
  // successive top-cell removals land on d
  auto brute = [](const Monomial& d, unsigned n) {
    unsigned cnt = 0;
    for (const Monomial& z : enumerate_set(StairSet{2, n})) {
      if (!is_2simple(z)) continue;
      Monomial once = remove_top(z, top_cells(z)[0]);
      if (remove_top(once, top_cells(once)[0]) == d) ++cnt;
    }
    return cnt;
  };

  for (unsigned n = 6; n <= 9; ++n) {
    for (const Monomial& d : shifted_elems(1, n - 3, 1)) {
      CHECK(count_2simple_preimages(d, n) == 3);
      CHECK(brute(d, n) == 3);
    }
    for (const Monomial& d : shifted_elems(1, n - 3, 2)) {
      CHECK(count_2simple_preimages(d, n) == 3);
      CHECK(brute(d, n) == 3);
    }
  }
  // cheap screen further out
  for (unsigned n = 10; n <= 12; ++n)
    for (const Monomial& d : shifted_elems(1, n - 3, 2))
      CHECK(count_2simple_preimages(d, n) == 3);
}

TEST_CASE("rational coefficients into a prime field", "[census]") {
  RationalField q;
  PrimeField f7(7);
  auto p = parse_poly(q, "1/2*x0 + 3*x1 - 2/3*x2");
  auto r = reduce_mod(f7, p);
  CHECK(r.coeff(mono("x0")) == 4);  // 2 * 4 = 8 = 1 mod 7
  CHECK(r.coeff(mono("x1")) == 3);
  CHECK(r.coeff(mono("x2")) == 4);  // -2/3 = 5 * 5 = 25 = 4 mod 7
  CHECK_THROWS_AS(reduce_mod(f7, parse_poly(q, "1/7*x0")), std::domain_error);
  // numerator divisible by p just kills the term
  CHECK(reduce_mod(f7, parse_poly(q, "7*x0 + x1")) == parse_poly(f7, "x1"));
}

TEST_CASE("minimal-support scan over prime fields", "[census]") {
  // random width-(2,4) pairs admit no solution with supports this small
  MinNReport rep = minimal_support_search(5, 7, {1, 2, 3});
  CHECK(rep.ns == std::vector<unsigned>{5, 6, 7});
  CHECK(rep.traces.size() == 3);
  CHECK(rep.seeds_agree);
  CHECK(!rep.first_n.has_value());
  for (const auto& tr : rep.traces) {
    CHECK(tr.dims == std::vector<int>{0, 0, 0});
    CHECK(is_prime_u64(tr.prime));
    CHECK(tr.prime > (1ULL << 60));
  }

  // a degenerate equal pair a u = a v is solvable immediately: u = v is free
  RationalField q;
  auto a = parse_poly(q, "x0^2 + 2*x0*x1 - x1*x2");
  MinNReport eq = minimal_support_search(a, a, 5, 6, {7, 8});
  CHECK(eq.seeds_agree);
  REQUIRE(eq.first_n.has_value());
  CHECK(*eq.first_n == 5);
  CHECK(eq.solution_verified);
  for (const auto& tr : eq.traces) CHECK(tr.dims[0] >= 4);  // u = v on a 4-element support

  CHECK_THROWS_AS(minimal_support_search(5, 4, {1}), std::invalid_argument);
  CHECK_THROWS_AS(minimal_support_search(5, 6, {}), std::invalid_argument);
  auto bad = parse_poly(q, "x0*x2^2");  // not supported in S_{2,4}
  CHECK_THROWS_AS(minimal_support_search(bad, a, 5, 6, {1}), std::invalid_argument);
}

TEST_CASE("census csv layout", "[census][io]") {
  std::vector<CensusRecord> rows(2);
  rows[0].n = 5;
  rows[0].y_size = 2;
  rows[0].sy_size = 8;
  rows[0].ratio = BigRational(4);
  rows[0].bound_holds = false;
  rows[1].n = 10;
  rows[1].y_size = 1738;
  rows[1].sy_size = 4000;
  rows[1].ratio = BigRational(4000, 1738);
  rows[1].bound_holds = false;
  std::ostringstream os;
  write_census_csv(os, rows);
  CHECK(os.str() ==
        "n,Y,SY,ratio_num,ratio_den,bound_holds\n"
        "5,2,8,4,1,0\n"
        "10,1738,4000,2000,869,0\n");
}
