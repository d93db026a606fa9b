#pragma once

// Linear equation solving in K[M].  An equation sum_j c_j u_j = 0 with the
// unknowns u_j confined to finite supports is a sparse K-linear system: one
// column per (unknown, support element), one row per product monomial that
// actually occurs.  Nullspace vectors are exact solutions and are re-verified
// by multiplication before being reported.
//
// ore_reduce finds a single nonzero solution of a u = b v for arbitrary
// nonzero a, b by induction on width (top degree minus bottom degree): solve
// the lowest homogeneous blocks over a staircase support, subtract, recurse.
// Each homogeneous block solve scans supports S_{k,n} with k fixed by the
// staircase offsets of the input monomials and n climbing until the
// configured budget runs out; exhaustion is reported, never looped.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kxm/catalan.hpp"
#include "kxm/polynomial.hpp"
#include "kxm/sparse.hpp"

namespace kxm {

// All monomials of the given degree with indices <= bound, in lex order.
inline std::vector<Monomial> bounded_monomials(std::size_t degree, Index bound) {
  std::vector<Monomial> out;
  std::vector<Index> v(degree, 0);
  for (;;) {
    out.push_back(Monomial::from_sorted(std::vector<Index>(v)));
    std::size_t j = degree;
    while (j > 0 && v[j - 1] >= bound) --j;
    if (j == 0) return out;
    Index c = v[j - 1] + 1;
    for (std::size_t t = j - 1; t < degree; ++t) v[t] = c;
  }
}

// Smallest k such that w lies in S_{k, k + deg w}: one more than the largest
// staircase offset i_j - (j - 1) over the positions of w.
inline unsigned stair_offset(const Monomial& w) {
  std::int64_t best = 0;
  const auto& v = w.indices();
  for (std::size_t p = 0; p < v.size(); ++p)
    best = std::max(best, static_cast<std::int64_t>(v[p]) - static_cast<std::int64_t>(p));
  return static_cast<unsigned>(best) + 1;
}

template <class F>
unsigned stair_offset(const Polynomial<F>& p) {
  unsigned k = 1;
  for (const auto& [m, c] : p.terms()) k = std::max(k, stair_offset(m));
  return k;
}

// --- assembled systems -------------------------------------------------------

template <class F>
struct OreSystem {
  std::vector<std::vector<Polynomial<F>>> coeffs;  // equations x unknowns
  std::vector<SetDescriptor> supports;             // one per unknown
  std::vector<std::vector<Monomial>> support_elems;
  std::vector<int> col_offset;                     // first column of each unknown
  std::vector<std::pair<int, Monomial>> row_labels;
  SparseMatrix<F> matrix;
};

template <class F>
OreSystem<F> build_system(std::vector<std::vector<Polynomial<F>>> coeffs,
                          std::vector<SetDescriptor> supports) {
  if (coeffs.empty() || coeffs.front().empty()) throw std::invalid_argument("empty system");
  std::size_t unknowns = coeffs.front().size();
  for (const auto& eq : coeffs)
    if (eq.size() != unknowns) throw std::invalid_argument("ragged coefficient matrix");
  if (supports.size() != unknowns) throw std::invalid_argument("one support per unknown required");
  const F& f = coeffs.front().front().field();

  OreSystem<F> sys{std::move(coeffs), std::move(supports), {}, {}, {}, SparseMatrix<F>(f, 0, 0)};
  int cols = 0;
  for (const auto& d : sys.supports) {
    sys.col_offset.push_back(cols);
    sys.support_elems.push_back(enumerate_set(d));
    cols += static_cast<int>(sys.support_elems.back().size());
  }

  std::vector<std::tuple<int, int, typename F::Elem>> triplets;
  int rows = 0;
  std::unordered_map<Monomial, int, MonomialHash> row_of;
  for (std::size_t e = 0; e < sys.coeffs.size(); ++e) {
    row_of.clear();
    for (std::size_t j = 0; j < unknowns; ++j) {
      const Polynomial<F>& c = sys.coeffs[e][j];
      for (std::size_t t = 0; t < sys.support_elems[j].size(); ++t) {
        for (const auto& [m, val] : c.terms()) {
          Monomial prod = multiply(m, sys.support_elems[j][t]);
          auto [it, fresh] = row_of.try_emplace(prod, rows);
          if (fresh) {
            sys.row_labels.emplace_back(static_cast<int>(e), prod);
            ++rows;
          }
          triplets.emplace_back(it->second, sys.col_offset[j] + static_cast<int>(t), val);
        }
      }
    }
  }

  sys.matrix = SparseMatrix<F>(f, rows, cols);
  for (auto& [r, c, v] : triplets) sys.matrix.add(r, c, v);
  sys.matrix.finalize();
  return sys;
}

template <class F>
std::vector<Polynomial<F>> unpack_solution(const OreSystem<F>& sys,
                                           const std::vector<std::pair<int, typename F::Elem>>& vec) {
  const F& f = sys.coeffs.front().front().field();
  std::vector<std::vector<typename Polynomial<F>::Term>> parts(sys.supports.size());
  std::size_t j = 0;
  for (const auto& [col, val] : vec) {  // columns arrive sorted
    while (j + 1 < sys.col_offset.size() && col >= sys.col_offset[j + 1]) ++j;
    parts[j].emplace_back(sys.support_elems[j][static_cast<std::size_t>(col - sys.col_offset[j])], val);
  }
  std::vector<Polynomial<F>> out;
  out.reserve(parts.size());
  for (std::size_t t = 0; t < parts.size(); ++t)
    out.push_back(Polynomial<F>::from_terms(f, std::move(parts[t])));
  return out;
}

template <class F>
std::vector<Polynomial<F>> residuals(const std::vector<std::vector<Polynomial<F>>>& coeffs,
                                     const std::vector<Polynomial<F>>& parts) {
  std::vector<Polynomial<F>> out;
  for (const auto& eq : coeffs) {
    if (eq.size() != parts.size()) throw std::invalid_argument("solution arity mismatch");
    Polynomial<F> r = Polynomial<F>::zero(parts.front().field());
    for (std::size_t j = 0; j < eq.size(); ++j) r = r + eq[j] * parts[j];
    out.push_back(std::move(r));
  }
  return out;
}

template <class F>
bool verify_solution(const std::vector<std::vector<Polynomial<F>>>& coeffs,
                     const std::vector<Polynomial<F>>& parts) {
  for (const auto& r : residuals(coeffs, parts))
    if (!r.is_zero()) return false;
  return true;
}

template <class F>
struct SolveResult {
  FieldConfig field;
  std::vector<std::string> support_labels;
  int rows = 0;
  int cols = 0;
  int rank = 0;
  std::vector<std::vector<Polynomial<F>>> basis;  // nullspace, as tuples of polynomials
  bool verified = false;

  int nullity() const { return cols - rank; }
};

// Solves sum_j coeffs[e][j] u_j = 0 with u_j supported on supports[j]; the
// basis spans every solution subject to those supports.
template <class F>
SolveResult<F> solve_linear_system(const std::vector<std::vector<Polynomial<F>>>& coeffs,
                                   const std::vector<SetDescriptor>& supports,
                                   const EliminationOptions& opts = {}) {
  OreSystem<F> sys = build_system(coeffs, supports);
  Elimination<F> elim(sys.matrix, opts);
  SolveResult<F> res;
  res.field = coeffs.front().front().field().config();
  for (const auto& d : supports) res.support_labels.push_back(to_string(d));
  res.rows = sys.matrix.rows();
  res.cols = sys.matrix.cols();
  res.rank = elim.rank();
  for (const auto& vec : elim.nullspace_basis()) res.basis.push_back(unpack_solution(sys, vec));
  res.verified = true;
  for (const auto& parts : res.basis)
    if (!verify_solution(coeffs, parts)) res.verified = false;
  if (!res.verified) throw std::logic_error("nullspace vector failed exact re-verification");
  return res;
}

// Solutions of a u = b v with u, v both supported on `support`.
template <class F>
SolveResult<F> solve_pair(const Polynomial<F>& a, const Polynomial<F>& b, const SetDescriptor& support,
                          const EliminationOptions& opts = {}) {
  return solve_linear_system<F>({{a, -b}}, {support, support}, opts);
}

// --- polynomial left division ------------------------------------------------

// The unique q with a q = p, if one exists with support in the candidate set
// {monomials of degree deg p - deg a and indices <= max index of p}.
// `a` must be homogeneous and nonzero.
template <class F>
std::optional<Polynomial<F>> left_divide_poly(const Polynomial<F>& a, const Polynomial<F>& p) {
  if (a.is_zero()) throw std::invalid_argument("left_divide_poly: divisor is zero");
  if (!a.is_homogeneous()) throw std::invalid_argument("left_divide_poly: divisor must be homogeneous");
  const F& f = a.field();
  if (p.is_zero()) return Polynomial<F>::zero(f);
  std::size_t da = a.degree();
  Index bound = 0;
  for (const auto& [m, c] : p.terms())
    if (!m.is_identity()) bound = std::max(bound, m.max_index());
  std::vector<Monomial> cand;
  for (const auto& [d, comp] : p.homogeneous_components()) {
    if (d < da) return std::nullopt;
    for (Monomial& m : bounded_monomials(d - da, bound)) cand.push_back(std::move(m));
  }
  std::sort(cand.begin(), cand.end(), deglex_less);
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // rows: product monomials of a*cand plus the support of p
  std::unordered_map<Monomial, int, MonomialHash> row_of;
  std::vector<std::tuple<int, int, typename F::Elem>> triplets;
  int rows = 0;
  auto row_id = [&](const Monomial& m) {
    auto [it, fresh] = row_of.try_emplace(m, rows);
    if (fresh) ++rows;
    return it->second;
  };
  for (std::size_t t = 0; t < cand.size(); ++t)
    for (const auto& [m, val] : a.terms())
      triplets.emplace_back(row_id(multiply(m, cand[t])), static_cast<int>(t), val);
  std::vector<std::pair<int, typename F::Elem>> rhs_entries;
  for (const auto& [m, val] : p.terms()) rhs_entries.emplace_back(row_id(m), val);

  SparseMatrix<F> mat(f, rows, static_cast<int>(cand.size()));
  for (auto& [r, c, v] : triplets) mat.add(r, c, v);
  mat.finalize();
  std::vector<typename F::Elem> rhs(static_cast<std::size_t>(rows), f.zero());
  for (auto& [r, v] : rhs_entries) rhs[static_cast<std::size_t>(r)] = v;

  auto x = solve(mat, rhs);
  if (!x) return std::nullopt;
  std::vector<typename Polynomial<F>::Term> terms;
  for (std::size_t t = 0; t < cand.size(); ++t) terms.emplace_back(cand[t], (*x)[t]);
  Polynomial<F> q = Polynomial<F>::from_terms(f, std::move(terms));
  if (!(a * q == p)) throw std::logic_error("left_divide_poly: solver returned a bad quotient");
  return q;
}

// --- single-solution reduction ------------------------------------------------

struct OreReduceOptions {
  unsigned max_extra_degree = 8;     // supports S_{k,n} scan n = k .. k + this
  std::uint64_t max_columns = 500000;  // give up when a support gets this wide
  EliminationOptions elim;
  bool minimal_homogeneous = false;  // reduce the answer to its lowest slice
                                     // (meaningful when a and b are homogeneous)
};

template <class F>
struct OreReduceResult {
  bool solved = false;
  Polynomial<F> u, v;
  std::vector<std::string> trace;
  std::string failure;

  OreReduceResult(const F& f) : u(Polynomial<F>::zero(f)), v(Polynomial<F>::zero(f)) {}
};

namespace detail {

// Nonzero (u, v) with p u = q v for homogeneous nonzero p, q, or nullopt with
// a budget note appended to the trace.
template <class F>
std::optional<std::pair<Polynomial<F>, Polynomial<F>>> homogeneous_pair_solution(
    const Polynomial<F>& p, const Polynomial<F>& q, const OreReduceOptions& opts,
    std::vector<std::string>& trace, std::string& failure) {
  const F& f = p.field();
  // pad the lower-degree side on the right by a power of x_0
  Polynomial<F> pp = p, qq = q;
  std::size_t tpad_p = 0, tpad_q = 0;
  if (pp.degree() < qq.degree()) {
    tpad_p = qq.degree() - pp.degree();
    pp = pp.rmul(power(0, tpad_p));
  } else if (qq.degree() < pp.degree()) {
    tpad_q = pp.degree() - qq.degree();
    qq = qq.rmul(power(0, tpad_q));
  }
  std::size_t delta = pp.degree();
  unsigned k = std::max(stair_offset(pp), stair_offset(qq)) + static_cast<unsigned>(delta);
  for (unsigned extra = 0; extra <= opts.max_extra_degree; ++extra) {
    unsigned n = k + extra;
    BigInt size = catalan_triangle(n, k);
    if (2 * size > BigInt(opts.max_columns)) {
      failure = "support S:" + std::to_string(k) + ":" + std::to_string(n) + " needs " +
                BigInt(2 * size).str() + " columns, over the cap of " + std::to_string(opts.max_columns);
      trace.push_back(failure);
      return std::nullopt;
    }
    std::optional<SolveResult<F>> res;
    try {
      res = solve_pair(pp, qq, StairSet{k, n}, opts.elim);
    } catch (const budget_error& e) {
      // an elimination budget is a search bound like max_columns: report, don't crash
      failure = "S:" + std::to_string(k) + ":" + std::to_string(n) + ": " + e.what();
      trace.push_back(failure);
      return std::nullopt;
    }
    trace.push_back("blocks deg " + std::to_string(p.degree()) + "/" + std::to_string(q.degree()) +
                    ": S:" + std::to_string(k) + ":" + std::to_string(n) + " gives nullity " +
                    std::to_string(res->nullity()));
    if (!res->basis.empty()) {
      Polynomial<F> u = res->basis.front()[0], v = res->basis.front()[1];
      if (tpad_p) u = Polynomial<F>::monomial(f, power(0, tpad_p)) * u;
      if (tpad_q) v = Polynomial<F>::monomial(f, power(0, tpad_q)) * v;
      return std::make_pair(std::move(u), std::move(v));
    }
  }
  failure = "no solution for the lowest blocks with supports up to S:" + std::to_string(k) + ":" +
            std::to_string(k + opts.max_extra_degree);
  trace.push_back(failure);
  return std::nullopt;
}

template <class F>
bool ore_reduce_core(const Polynomial<F>& a, const Polynomial<F>& b, const OreReduceOptions& opts,
                     OreReduceResult<F>& out) {
  if (a.width() > b.width()) {
    if (!ore_reduce_core(b, a, opts, out)) return false;
    std::swap(out.u, out.v);
    return true;
  }
  auto acomp = a.homogeneous_components();
  auto bcomp = b.homogeneous_components();
  const Polynomial<F>&a1 = acomp.front().second, &b1 = bcomp.front().second;
  auto blocks = homogeneous_pair_solution(a1, b1, opts, out.trace, out.failure);
  if (!blocks) return false;
  auto& [u1, v1] = *blocks;
  Polynomial<F> bprime = b * v1 - a * u1;
  if (bprime.is_zero()) {
    out.u = u1;
    out.v = v1;
    return true;
  }
  if (bprime.width() >= b.width())
    throw std::logic_error("ore_reduce: width failed to decrease");
  out.trace.push_back("widths " + std::to_string(a.width()) + "+" + std::to_string(b.width()) +
                      " -> " + std::to_string(a.width()) + "+" + std::to_string(bprime.width()));
  if (!ore_reduce_core(a, bprime, opts, out)) return false;
  Polynomial<F> urec = out.u, vrec = out.v;
  out.u = urec + u1 * vrec;
  out.v = v1 * vrec;
  return true;
}

}  // namespace detail

template <class F>
OreReduceResult<F> ore_reduce(const Polynomial<F>& a, const Polynomial<F>& b,
                              const OreReduceOptions& opts = {}) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("ore_reduce: operands must be nonzero");
  a.check_same_field(b);
  const F& f = a.field();
  OreReduceResult<F> out(f);
  if (!detail::ore_reduce_core(a, b, opts, out)) return out;
  if (out.u.is_zero() || out.v.is_zero() || !(a * out.u == b * out.v))
    throw std::logic_error("ore_reduce: combination produced an invalid solution");
  if (opts.minimal_homogeneous && a.is_homogeneous() && b.is_homogeneous() && !out.u.is_homogeneous()) {
    // every degree slice of a solution is one; keep the lowest
    std::size_t lambda = a.degree() + out.u.min_degree();
    lambda = std::min(lambda, b.degree() + out.v.min_degree());
    Polynomial<F> us = Polynomial<F>::zero(f), vs = Polynomial<F>::zero(f);
    for (const auto& [d, comp] : out.u.homogeneous_components())
      if (d + a.degree() == lambda) us = comp;
    for (const auto& [d, comp] : out.v.homogeneous_components())
      if (d + b.degree() == lambda) vs = comp;
    if (!us.is_zero() && !(a * us == b * vs)) throw std::logic_error("ore_reduce: bad minimal slice");
    if (!us.is_zero()) {
      out.u = std::move(us);
      out.v = std::move(vs);
    }
  }
  out.solved = true;
  return out;
}

}  // namespace kxm
