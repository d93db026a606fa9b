#include <catch2/catch_amalgamated.hpp>

#include "kxm/sparse.hpp"

#include <sstream>

using namespace kxm;

namespace {

// Reference implementation: dense Gaussian elimination with partial ordering
// by column, used as the rank oracle.
template <class F>
int dense_rank(const F& f, std::vector<std::vector<typename F::Elem>> a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size();
  int rank = 0;
  std::size_t rr = 0;
  for (std::size_t c = 0; c < cols && rr < rows; ++c) {
    std::size_t piv = rr;
    while (piv < rows && f.is_zero(a[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rr]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rr || f.is_zero(a[r][c])) continue;
      auto factor = f.div(a[r][c], a[rr][c]);
      for (std::size_t j = c; j < cols; ++j) a[r][j] = f.sub(a[r][j], f.mul(factor, a[rr][j]));
    }
    ++rr;
    ++rank;
  }
  return rank;
}

template <class F>
SparseMatrix<F> from_dense(const F& f, const std::vector<std::vector<typename F::Elem>>& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SparseMatrix<F> m(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.add(r, c, a[r][c]);
  m.finalize();
  return m;
}

template <class F>
std::vector<typename F::Elem> apply(const F& f, const std::vector<std::vector<typename F::Elem>>& a,
                                    const std::vector<typename F::Elem>& x) {
  std::vector<typename F::Elem> y(a.size(), f.zero());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) y[r] = f.add(y[r], f.mul(a[r][c], x[c]));
  return y;
}

}  // namespace

TEST_CASE("small rational systems", "[sparse]") {
  RationalField Q;
  auto m = from_dense(Q, {{Q.from_int(1), Q.from_int(2)}, {Q.from_int(2), Q.from_int(4)}});
  CHECK(rank(m) == 1);
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  // kernel of (1 2) is spanned by (-2, 1)
  REQUIRE(ns[0].size() == 2);
  CHECK(Q.eq(Q.div(ns[0][0].second, ns[0][1].second), Q.from_int(-2)));

  auto id3 = from_dense(Q, {{Q.one(), Q.zero(), Q.zero()},
                            {Q.zero(), Q.one(), Q.zero()},
                            {Q.zero(), Q.zero(), Q.one()}});
  CHECK(rank(id3) == 3);
  CHECK(nullspace(id3).empty());

  SparseMatrix<RationalField> z(Q, 2, 3);
  z.finalize();
  CHECK(rank(z) == 0);
  CHECK(nullspace(z).size() == 3);

  auto sys = from_dense(Q, {{Q.from_int(1), Q.from_int(1)}, {Q.from_int(1), Q.from_int(-1)}});
  auto sol = solve(sys, {Q.from_int(3), Q.from_int(1)});
  REQUIRE(sol.has_value());
  CHECK(Q.eq((*sol)[0], Q.from_int(2)));
  CHECK(Q.eq((*sol)[1], Q.from_int(1)));

  auto bad = from_dense(Q, {{Q.one(), Q.one()}, {Q.one(), Q.one()}});
  CHECK_FALSE(solve(bad, {Q.from_int(1), Q.from_int(2)}).has_value());
  CHECK(solve(bad, {Q.from_int(1), Q.from_int(1)}).has_value());
}

TEST_CASE("randomized rank against dense oracle", "[sparse][oracle]") {
  PrimeField f(32003);
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng.below(30), cols = 1 + rng.below(30);
    std::vector<std::vector<PrimeField::Elem>> a(rows, std::vector<PrimeField::Elem>(cols, 0));
    // sparse fill with planted low rank half the time
    if (trial % 2 == 0) {
      for (auto& row : a)
        for (auto& v : row)
          if (rng.below(4) == 0) v = f.random(rng);
    } else {
      std::size_t inner = 1 + rng.below(5);
      std::vector<std::vector<PrimeField::Elem>> u(rows, std::vector<PrimeField::Elem>(inner)),
          w(inner, std::vector<PrimeField::Elem>(cols));
      for (auto& row : u)
        for (auto& v : row) v = rng.below(3) ? f.random(rng) : 0;
      for (auto& row : w)
        for (auto& v : row) v = rng.below(3) ? f.random(rng) : 0;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          for (std::size_t k = 0; k < inner; ++k)
            a[r][c] = f.add(a[r][c], f.mul(u[r][k], w[k][c]));
    }
    auto m = from_dense(f, a);
    int rk = rank(m);
    CHECK(rk == dense_rank(f, a));

    auto ns = nullspace(m);
    CHECK(static_cast<int>(ns.size()) + rk == static_cast<int>(cols));
    for (const auto& v : ns) {
      std::vector<PrimeField::Elem> x(cols, 0);
      for (auto [c, val] : v) x[static_cast<std::size_t>(c)] = val;
      for (auto y : apply(f, a, x)) CHECK(f.is_zero(y));
    }
    // basis vectors are linearly independent: stack them and check rank
    if (!ns.empty()) {
      std::vector<std::vector<PrimeField::Elem>> basis(ns.size(), std::vector<PrimeField::Elem>(cols, 0));
      for (std::size_t i = 0; i < ns.size(); ++i)
        for (auto [c, val] : ns[i]) basis[i][static_cast<std::size_t>(c)] = val;
      CHECK(dense_rank(f, basis) == static_cast<int>(ns.size()));
    }
  }
}

TEST_CASE("randomized solve", "[sparse][oracle]") {
  PrimeField f(65537);
  Rng rng(555);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + rng.below(25), cols = 1 + rng.below(25);
    std::vector<std::vector<PrimeField::Elem>> a(rows, std::vector<PrimeField::Elem>(cols, 0));
    for (auto& row : a)
      for (auto& v : row)
        if (rng.below(3) == 0) v = f.random(rng);
    std::vector<PrimeField::Elem> x0(cols);
    for (auto& v : x0) v = f.random(rng);
    auto b = apply(f, a, x0);
    auto sol = solve(from_dense(f, a), b);
    REQUIRE(sol.has_value());  // consistent by construction
    auto bx = apply(f, a, *sol);
    for (std::size_t r = 0; r < rows; ++r) CHECK(f.eq(bx[r], b[r]));
  }
}

TEST_CASE("exact rational kernels", "[sparse][oracle]") {
  RationalField Q;
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
    std::vector<std::vector<BigRationalElem>> a(rows, std::vector<BigRationalElem>(cols, 0));
    for (auto& row : a)
      for (auto& v : row)
        if (rng.below(2) == 0) v = Q.random(rng);
    auto m = from_dense(Q, a);
    int rk = rank(m);
    CHECK(rk == dense_rank(Q, a));
    auto ns = nullspace(m);
    CHECK(ns.size() + static_cast<std::size_t>(rk) == cols);
    for (const auto& v : ns) {
      std::vector<BigRationalElem> x(cols, 0);
      for (const auto& [c, val] : v) x[static_cast<std::size_t>(c)] = val;
      for (const auto& y : apply(Q, a, x)) CHECK(Q.is_zero(y));
    }
  }
}

TEST_CASE("deterministic output", "[sparse]") {
  PrimeField f(40961);
  Rng rng(9);
  std::vector<std::vector<PrimeField::Elem>> a(20, std::vector<PrimeField::Elem>(24, 0));
  for (auto& row : a)
    for (auto& v : row)
      if (rng.below(4) == 0) v = f.random(rng);
  auto run = [&]() {
    std::ostringstream os;
    for (const auto& v : nullspace(from_dense(f, a)))
      for (auto [c, val] : v) os << c << ":" << val << ";";
    return os.str();
  };
  CHECK(run() == run());
}

TEST_CASE("entry budget", "[sparse]") {
  PrimeField f(101);
  Rng rng(4);
  std::vector<std::vector<PrimeField::Elem>> a(30, std::vector<PrimeField::Elem>(30, 0));
  for (auto& row : a)
    for (auto& v : row) v = f.random(rng);
  EliminationOptions opts;
  opts.max_entries = 50;
  CHECK_THROWS_AS(rank(from_dense(f, a), opts), budget_error);
}

TEST_CASE("triplet round trip", "[sparse][io]") {
  RationalField Q;
  auto m = from_dense(Q, {{Q.parse("1/2"), Q.zero(), Q.from_int(-3)},
                          {Q.zero(), Q.parse("7/5"), Q.zero()}});
  std::stringstream ss;
  m.dump_triplets(ss);
  auto m2 = SparseMatrix<RationalField>::load_triplets(Q, ss);
  CHECK(m2.rows() == 2);
  CHECK(m2.cols() == 3);
  CHECK(m2.nonzeros() == m.nonzeros());
  CHECK(rank(m2) == rank(m));

  std::stringstream ss2;
  m.dump_triplets(ss2);
  CHECK_THROWS_AS(SparseMatrix<PrimeField>::load_triplets(PrimeField(101), ss2), std::invalid_argument);
}
