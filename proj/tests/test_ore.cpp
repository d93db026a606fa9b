#include <catch2/catch_amalgamated.hpp>

#include "kxm/ore.hpp"

#include <unordered_set>

using namespace kxm;

namespace {

const RationalField Q;
using QPoly = Polynomial<RationalField>;

QPoly qp(const std::string& s) { return parse_poly(Q, s); }

template <class F>
Polynomial<F> rand_on(const F& f, const SetDescriptor& d, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    auto p = random_poly(f, d, s);
    if (!p.is_zero()) return p;
  }
}

}  // namespace

TEST_CASE("system assembly shapes", "[ore]") {
  // row count is the number of distinct product monomials
  auto sys = build_system<RationalField>({{qp("x0"), qp("-x1")}},
                                         {parse_set_descriptor("S:2:4"), parse_set_descriptor("S:2:4")});
  CHECK(sys.matrix.cols() == 10);
  std::unordered_set<Monomial, MonomialHash> expect;
  for (const Monomial& y : enumerate_set(StairSet{2, 4})) {
    expect.insert(multiply(Monomial::generator(0), y));
    expect.insert(multiply(Monomial::generator(1), y));
  }
  CHECK(sys.matrix.rows() == static_cast<int>(expect.size()));
  for (const auto& [eq, m] : sys.row_labels) CHECK(expect.count(m) == 1);

  // with supports S_{3,4} the products sweep out exactly S_{2,4}
  auto sys2 = build_system<RationalField>({{qp("x0"), qp("-x1")}},
                                          {parse_set_descriptor("S:3:4"), parse_set_descriptor("S:3:4")});
  CHECK(sys2.matrix.cols() == 6);
  CHECK(sys2.matrix.rows() == 5);
  for (const auto& [eq, m] : sys2.row_labels) CHECK(contains(StairSet{2, 4}, m));

  CHECK_THROWS_AS(build_system<RationalField>({{qp("x0")}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_system<RationalField>({{qp("x0"), qp("x1")}, {qp("x0")}},
                                              {parse_set_descriptor("S:2:4"), parse_set_descriptor("S:2:4")}),
                  std::invalid_argument);
}

TEST_CASE("solve_pair on an explicit support", "[ore]") {
  auto res = solve_pair(qp("x0"), qp("x1"), parse_set_descriptor("{x0,x1,x2,x3}"));
  REQUIRE(res.basis.size() == 1);
  CHECK(res.verified);
  const QPoly& u = res.basis[0][0];
  const QPoly& v = res.basis[0][1];
  // the solution space is spanned by (x2, x0): x0 x2 = x1 x0 = x0 x2
  CHECK(Q.eq(Q.div(u.coeff(parse_monomial("x2")), v.coeff(parse_monomial("x0"))), Q.one()));
  CHECK(qp("x0") * u == qp("x1") * v);
  CHECK(res.nullity() == 1);
  CHECK(res.cols == 8);
}

TEST_CASE("nullity counts columns minus rank", "[ore]") {
  // x0 u = x1 v over S_{3,4}: 5 product monomials, 6 columns, so solutions exist
  auto res = solve_pair(qp("x0"), qp("x1"), parse_set_descriptor("S:3:4"));
  CHECK(res.cols == 6);
  CHECK(res.rows == 5);
  CHECK(res.nullity() == res.cols - res.rank);
  CHECK(res.nullity() >= 1);
  for (const auto& parts : res.basis) CHECK(qp("x0") * parts[0] == qp("x1") * parts[1]);

  // diagonal solutions for a = b
  auto diag = solve_pair(qp("x0+x1"), qp("x0+x1"), parse_set_descriptor("S:4:5"));
  CHECK(diag.nullity() >= 4);
  CHECK(diag.verified);
}

TEST_CASE("multi-equation systems", "[ore]") {
  auto one = Polynomial<RationalField>::one(Q);
  std::vector<std::vector<QPoly>> coeffs = {{one, -one, Polynomial<RationalField>::zero(Q)},
                                            {one, Polynomial<RationalField>::zero(Q), -one}};
  auto d = parse_set_descriptor("{x0}");
  auto res = solve_linear_system(coeffs, {d, d, d});
  REQUIRE(res.basis.size() == 1);
  CHECK(res.basis[0][0] == res.basis[0][1]);
  CHECK(res.basis[0][0] == res.basis[0][2]);
  CHECK_FALSE(res.basis[0][0].is_zero());
}

TEST_CASE("verify_solution and residuals", "[ore]") {
  std::vector<std::vector<QPoly>> coeffs = {{qp("x0"), qp("-x1")}};
  CHECK(verify_solution(coeffs, {qp("x2"), qp("x0")}));
  CHECK_FALSE(verify_solution(coeffs, {qp("x2"), qp("x1")}));
  auto r = residuals(coeffs, {qp("x2"), qp("x1")});
  REQUIRE(r.size() == 1);
  CHECK(to_string(r[0]) == "x0*x2 - x1^2");
}

TEST_CASE("polynomial left division", "[ore]") {
  CHECK(to_string(*left_divide_poly(qp("x0"), qp("x0^2+x0*x2"))) == "x0 + x2");
  CHECK(left_divide_poly(qp("x0"), qp("x1")) == std::nullopt);
  CHECK(left_divide_poly(qp("x0"), Polynomial<RationalField>::zero(Q))->is_zero());
  CHECK_THROWS_AS(left_divide_poly(Polynomial<RationalField>::zero(Q), qp("x0")), std::invalid_argument);
  CHECK_THROWS_AS(left_divide_poly(qp("1+x0"), qp("x0")), std::invalid_argument);

  PrimeField f((1ULL << 61) - 1);
  Rng rng(314);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = rand_on(f, parse_set_descriptor("S:3:4"), 1000 + trial);  // homogeneous deg 1
    auto q = random_poly(f, parse_set_descriptor("S:3:6"), 2000 + trial);
    auto p = a * q;
    auto rec = left_divide_poly(a, p);
    REQUIRE(rec.has_value());
    CHECK(*rec == q);
  }
}

TEST_CASE("ore_reduce on monomial pairs", "[ore]") {
  auto res = ore_reduce(qp("x0"), qp("x0*x2"));
  REQUIRE(res.solved);
  CHECK(to_string(res.u) == "x0*x3");
  CHECK(to_string(res.v) == "x0");
  CHECK(qp("x0") * res.u == qp("x0*x2") * res.v);

  auto same = ore_reduce(qp("x0"), qp("x0"));
  REQUIRE(same.solved);
  CHECK(same.u == same.v);
  CHECK(same.u == Polynomial<RationalField>::one(Q));
}

TEST_CASE("ore_reduce with mixed widths", "[ore]") {
  auto res = ore_reduce(qp("x0"), qp("1+x0"));
  REQUIRE(res.solved);
  CHECK(to_string(res.u) == "1 + x0");
  CHECK(to_string(res.v) == "x0");

  // swapped arguments give the swapped solution
  auto swp = ore_reduce(qp("1+x0"), qp("x0"));
  REQUIRE(swp.solved);
  CHECK(qp("1+x0") * swp.u == qp("x0") * swp.v);
}

TEST_CASE("ore_reduce randomized", "[ore]") {
  PrimeField f(1000003);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto a = rand_on(f, parse_set_descriptor("S:2:3"), seed);
    auto b = rand_on(f, parse_set_descriptor("S:2:3"), seed + 100);
    auto res = ore_reduce(a, b);
    REQUIRE(res.solved);
    CHECK_FALSE(res.u.is_zero());
    CHECK_FALSE(res.v.is_zero());
    CHECK(a * res.u == b * res.v);
  }
  // inhomogeneous operands
  Rng rng(55);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto a = Polynomial<PrimeField>::scalar(f, f.random_nonzero(rng)) +
             rand_on(f, parse_set_descriptor("S:1:2"), seed);
    auto b = rand_on(f, parse_set_descriptor("S:1:2"), seed + 50) +
             rand_on(f, parse_set_descriptor("S:1:3"), seed + 60);
    auto res = ore_reduce(a, b);
    REQUIRE(res.solved);
    CHECK(a * res.u == b * res.v);
    CHECK_FALSE(res.u.is_zero());
  }
}

TEST_CASE("ore_reduce minimal homogeneous slice", "[ore]") {
  OreReduceOptions opts;
  opts.minimal_homogeneous = true;
  PrimeField f(65537);
  auto a = rand_on(f, parse_set_descriptor("S:2:3"), 7);
  auto b = rand_on(f, parse_set_descriptor("S:2:3"), 77);
  auto res = ore_reduce(a, b, opts);
  REQUIRE(res.solved);
  CHECK(res.u.is_homogeneous());
  CHECK(res.v.is_homogeneous());
  CHECK(a * res.u == b * res.v);
}

TEST_CASE("ore_reduce budget exhaustion is reported", "[ore]") {
  OreReduceOptions opts;
  opts.max_extra_degree = 0;
  auto res = ore_reduce(qp("x0"), qp("x1"), opts);
  CHECK_FALSE(res.solved);
  CHECK_FALSE(res.failure.empty());
  CHECK_FALSE(res.trace.empty());

  OreReduceOptions tiny;
  tiny.max_columns = 1;
  auto res2 = ore_reduce(qp("x0"), qp("x1"), tiny);
  CHECK_FALSE(res2.solved);
  CHECK(res2.failure.find("column") != std::string::npos);

  CHECK_THROWS_AS(ore_reduce(qp("x0"), Polynomial<RationalField>::zero(Q)), std::invalid_argument);
}
