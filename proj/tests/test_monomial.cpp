#include <catch2/catch_amalgamated.hpp>

#include "kxm/monomial.hpp"

#include <set>

using namespace kxm;

namespace {

Monomial mono(std::vector<Index> v) { return normalize(RawWord(std::move(v))); }

// Every monomial of degree d with indices <= bound, by direct recursion.
std::vector<Monomial> all_monomials(std::size_t d, Index bound) {
  std::vector<Monomial> out;
  std::vector<Index> v(d, 0);
  auto rec = [&](auto&& self, std::size_t pos, Index lo) -> void {
    if (pos == d) {
      out.push_back(Monomial::from_sorted(std::vector<Index>(v)));
      return;
    }
    for (Index c = lo; c <= bound; ++c) {
      v[pos] = c;
      self(self, pos + 1, c);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Divisibility the slow way: try every candidate quotient.
bool divides_brute(const Monomial& a, const Monomial& b) {
  if (a.degree() > b.degree()) return false;
  Index bound = b.is_identity() ? 0 : b.max_index() + 1;
  for (const Monomial& c : all_monomials(b.degree() - a.degree(), bound))
    if (multiply(a, c) == b) return true;
  return false;
}

}  // namespace

TEST_CASE("normal forms of short words", "[monomial]") {
  CHECK(mono({1, 0}) == mono({0, 2}));
  CHECK(to_string(mono({1, 0})) == "x0*x2");
  CHECK(mono({3, 1, 0}).indices() == std::vector<Index>{0, 2, 5});
  CHECK(mono({}) == Monomial::identity());
  CHECK(mono({4}).indices() == std::vector<Index>{4});
  CHECK(mono({2, 2, 5}).indices() == std::vector<Index>{2, 2, 5});
  // x_j x_i = x_i x_{j+1} for i < j, letter by letter
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 6; ++j) CHECK(mono({j, i}) == mono({i, j + 1}));
}

TEST_CASE("rewriting is confluent across strategies", "[monomial]") {
  Rng words(20250901);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t len = words.below(9);
    RawWord w(len);
    for (auto& c : w) c = static_cast<Index>(words.below(7));

    Monomial nf = normalize(w);
    REQUIRE(std::is_sorted(nf.indices().begin(), nf.indices().end()));
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      Rng rng(seed * 1000 + trial);
      CHECK(normalize_random(w, rng) == nf);
    }
    // the fold of right-multiplications is yet another route
    Monomial folded;
    for (Index c : w) folded.push_letter(c);
    CHECK(folded == nf);
  }
}

TEST_CASE("multiplication", "[monomial]") {
  CHECK(multiply(mono({0, 2}), mono({1, 1})) == mono({0, 1, 1, 4}));
  CHECK(to_string(multiply(mono({0, 2}), mono({1, 1}))) == "x0*x1^2*x4");
  Monomial e;
  CHECK(multiply(e, mono({3, 5})) == mono({3, 5}));
  CHECK(multiply(mono({3, 5}), e) == mono({3, 5}));

  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto rand_mono = [&]() {
      std::size_t d = rng.below(5);
      RawWord w(d);
      for (auto& c : w) c = static_cast<Index>(rng.below(6));
      return normalize(std::move(w));
    };
    Monomial a = rand_mono(), b = rand_mono(), c = rand_mono();
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    // degree is additive
    CHECK(multiply(a, b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("left quotients", "[monomial]") {
  CHECK(left_quotient(mono({1}), mono({0, 2})) == mono({0}));
  CHECK(left_quotient(mono({0}), mono({0, 2})) == mono({2}));
  CHECK_FALSE(left_quotient(mono({2}), mono({0, 1})).has_value());
  CHECK(left_quotient(mono({0, 2}), mono({0, 2})) == Monomial::identity());

  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto rand_mono = [&](std::size_t dmax) {
      std::size_t d = rng.below(dmax + 1);
      RawWord w(d);
      for (auto& c : w) c = static_cast<Index>(rng.below(6));
      return normalize(std::move(w));
    };
    Monomial a = rand_mono(4), b = rand_mono(4);
    auto q = left_quotient(a, multiply(a, b));
    REQUIRE(q.has_value());
    CHECK(*q == b);
  }
}

TEST_CASE("divisibility matches the brute-force oracle", "[monomial][oracle]") {
  std::vector<Monomial> all;
  for (std::size_t d = 0; d <= 4; ++d)
    for (const Monomial& m : all_monomials(d, 5)) all.push_back(m);
  // spot-check the full relation on a deterministic subsample
  Rng rng(5);
  for (int trial = 0; trial < 1500; ++trial) {
    const Monomial& a = all[rng.below(all.size())];
    const Monomial& b = all[rng.below(all.size())];
    bool fast = left_divides(a, b);
    CHECK(fast == divides_brute(a, b));
    if (fast) CHECK(multiply(a, *left_quotient(a, b)) == b);
  }
}

TEST_CASE("generator divisors", "[monomial][oracle]") {
  CHECK(generator_divisors(mono({0, 2})) == std::vector<Index>{0, 1});
  CHECK(generator_divisors(mono({2, 2})) == std::vector<Index>{2});
  CHECK(generator_divisors(Monomial::identity()).empty());
  CHECK(generator_divisors(mono({1, 1, 4})) == std::vector<Index>{1, 2});

  for (std::size_t d = 1; d <= 4; ++d) {
    for (const Monomial& w : all_monomials(d, 5)) {
      std::vector<Index> slow;
      for (Index i = 0; i <= w.max_index() + 1; ++i)
        if (generator_left_quotient(i, w)) slow.push_back(i);
      CHECK(generator_divisors(w) == slow);
    }
  }
}

TEST_CASE("right lcm", "[monomial]") {
  CHECK(right_lcm(mono({0}), mono({1})) == mono({0, 2}));
  CHECK(right_lcm(mono({0, 2}), mono({0, 2})) == mono({0, 2}));
  CHECK(right_lcm(mono({0}), mono({0, 1})) == mono({0, 1}));

  // the lcm left-divides every common multiple of bounded degree
  std::vector<Monomial> small;
  for (std::size_t d = 1; d <= 2; ++d)
    for (const Monomial& m : all_monomials(d, 3)) small.push_back(m);
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Monomial& a = small[rng.below(small.size())];
    const Monomial& b = small[rng.below(small.size())];
    Monomial l = right_lcm(a, b);
    CHECK(left_divides(a, l));
    CHECK(left_divides(b, l));
    for (std::size_t d = l.degree(); d <= a.degree() + b.degree(); ++d) {
      for (const Monomial& s : all_monomials(d - a.degree(), 8)) {
        Monomial m = multiply(a, s);
        if (left_divides(b, m)) CHECK(left_divides(l, m));
      }
    }
  }
}

TEST_CASE("monomial text round trip", "[monomial][io]") {
  for (const char* s : {"1", "x0", "x0*x2", "x0^2*x1*x4", "x12^3"}) {
    CHECK(to_string(parse_monomial(s)) == s);
  }
  CHECK(parse_monomial("x1*x0") == parse_monomial("x0*x2"));
  CHECK(parse_monomial(" x0 * x1 ") == mono({0, 1}));
  CHECK_THROWS_AS(parse_monomial("y1"), parse_error);
  CHECK_THROWS_AS(parse_monomial("x0^"), parse_error);
  CHECK_THROWS_AS(parse_monomial("x0**x1"), parse_error);
  CHECK_THROWS_AS(parse_monomial("x0^0"), parse_error);
  CHECK_THROWS_AS(parse_monomial("x0 x1"), parse_error);
  try {
    parse_monomial("x0*!");
  } catch (const parse_error& e) {
    CHECK(e.pos == 3);
  }
}

TEST_CASE("shift endomorphism", "[monomial]") {
  CHECK(shift(mono({0, 2}), 2) == mono({2, 4}));
  CHECK(unshift(mono({2, 4}), 2) == mono({0, 2}));
  CHECK_THROWS_AS(unshift(mono({1}), 2), std::invalid_argument);
  // shifting is multiplicative
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    RawWord wa(rng.below(4)), wb(rng.below(4));
    for (auto& c : wa) c = static_cast<Index>(rng.below(5));
    for (auto& c : wb) c = static_cast<Index>(rng.below(5));
    Monomial a = normalize(wa), b = normalize(wb);
    CHECK(shift(multiply(a, b), 3) == multiply(shift(a, 3), shift(b, 3)));
  }
}
