#pragma once

// Closed-form solutions of a·u = b·v in K[M] for degree-one operands, the
// explicit degree-2 "basic" solution of (x0 + a·x2)u = (x1 + b·x2)v, the
// recursive family generating solutions of every degree from it, and the
// chain-product solution of the k-equation system with k+1 unknowns.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kxm/monomial.hpp"
#include "kxm/ore.hpp"
#include "kxm/polynomial.hpp"

namespace kxm {

// sum_i coeffs[i] * x_i
template <class F>
Polynomial<F> linear_combination(const F& f, const std::vector<typename F::Elem>& coeffs) {
  using P = Polynomial<F>;
  std::vector<typename P::Term> ts;
  ts.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    ts.emplace_back(Monomial::generator(static_cast<Index>(i)), coeffs[i]);
  return P::from_terms(f, std::move(ts));
}

// Solves (a0*x0 + ... + am*xm)u = (b0*x0 + ... + bm*xm)v with u, v
// homogeneous of degree m in x_0..x_{2m}.
//
// The recursion keeps f_k = a·u_{k-1} + b·v_{k-1} where f_k is a degree-k
// polynomial in x_k..x_{k+m-1}; commuting a linear form in x_0..x_{k-1}
// across f_k shifts every index of f_k up by one, which is what lets the
// degrees grow while the expression stays inside aR + bR.  Requires all
// pairwise determinants g[i][j] = a_j*b_i - a_i*b_j (i != j) to be nonzero;
// each step and the final identity are re-checked exactly.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> degree_one_solution(
    const F& f, const std::vector<typename F::Elem>& alpha,
    const std::vector<typename F::Elem>& beta) {
  using P = Polynomial<F>;
  if (alpha.empty() || alpha.size() != beta.size())
    throw std::invalid_argument(
        "degree_one_solution: coefficient vectors must have equal positive length");
  const std::size_t m = alpha.size() - 1;
  if (m == 0) return {P::scalar(f, beta[0]), P::scalar(f, alpha[0])};

  std::vector<std::vector<typename F::Elem>> g(
      m + 1, std::vector<typename F::Elem>(m + 1, f.zero()));
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == j) continue;
      g[i][j] = f.sub(f.mul(alpha[j], beta[i]), f.mul(alpha[i], beta[j]));
      if (f.is_zero(g[i][j]))
        throw std::domain_error("degree_one_solution: degenerate coefficients (determinant " +
                                std::to_string(i) + "," + std::to_string(j) + " vanishes)");
    }

  // the slice sum_{i=lo..hi} g[k][i] * x_i of the k-th syzygy form
  auto band = [&](std::size_t k, std::size_t lo, std::size_t hi) {
    std::vector<typename P::Term> ts;
    for (std::size_t i = lo; i <= hi; ++i)
      ts.emplace_back(Monomial::generator(static_cast<Index>(i)), g[k][i]);
    return P::from_terms(f, std::move(ts));
  };

  P a = linear_combination(f, alpha);
  P b = linear_combination(f, beta);
  P u = P::scalar(f, beta[0]);
  P v = P::scalar(f, f.neg(alpha[0]));
  P fk = band(0, 1, m);
  if (a * u + b * v != fk) throw std::logic_error("degree_one_solution: base invariant failed");
  for (std::size_t k = 1; k < m; ++k) {
    P fs = fk.shifted(1);
    P low = band(k, 0, k - 1);
    u = -(u * low) + fs.scaled(beta[k]);
    v = -(v * low) - fs.scaled(alpha[k]);
    fk = band(k, k + 1, m) * fs;
    if (a * u + b * v != fk) throw std::logic_error("degree_one_solution: step invariant failed");
  }
  // last step flips the sign pattern on v: f_m multiplied on the right by the
  // full degree-m syzygy form lands in aR + bR with a minus sign
  P fs = fk.shifted(1);
  P sm = band(m, 0, m - 1);
  P su = -(u * sm) + fs.scaled(beta[m]);
  P sv = (v * sm) + fs.scaled(alpha[m]);
  if (a * su != b * sv) throw std::logic_error("degree_one_solution: final identity failed");
  if (su.is_zero() || sv.is_zero())
    throw std::logic_error("degree_one_solution: produced a zero component");
  return {std::move(su), std::move(sv)};
}

// The explicit degree-2 solution of (x0 + alpha*x2)u = (x1 + beta*x2)v:
//   u0 = b*x0x3 + b^2*x0x4 - a*x1x3 - ab*x1x4 - ab*x3^2 - ab^2*x3x4
//   v0 = b*x0^2 - a*x0x1 - a^2*x3^2 - a^2 b*x3x4
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> basic_solution(const F& f,
                                                       const typename F::Elem& alpha,
                                                       const typename F::Elem& beta) {
  if (f.is_zero(alpha) || f.is_zero(beta))
    throw std::domain_error("basic_solution: alpha and beta must be nonzero");
  using P = Polynomial<F>;
  using E = typename F::Elem;
  auto mono = [](std::vector<Index> w) { return Monomial::from_sorted(std::move(w)); };
  E a = alpha, b = beta;
  E ab = f.mul(a, b), bb = f.mul(b, b), aa = f.mul(a, a);
  P u0 = P::from_terms(f, {{mono({0, 3}), b},
                           {mono({0, 4}), bb},
                           {mono({1, 3}), f.neg(a)},
                           {mono({1, 4}), f.neg(ab)},
                           {mono({3, 3}), f.neg(ab)},
                           {mono({3, 4}), f.neg(f.mul(ab, b))}});
  P v0 = P::from_terms(f, {{mono({0, 0}), b},
                           {mono({0, 1}), f.neg(a)},
                           {mono({3, 3}), f.neg(aa)},
                           {mono({3, 4}), f.neg(f.mul(aa, b))}});
  P lhs = P::generator(f, 0) + P::generator(f, 2).scaled(a);
  P rhs = P::generator(f, 1) + P::generator(f, 2).scaled(b);
  if (lhs * u0 != rhs * v0) throw std::logic_error("basic_solution: identity failed");
  return {std::move(u0), std::move(v0)};
}

// The alpha = beta basic solution with the common scalar factor beta removed,
// as used by the solution-family statement:
//   u0 = x0x3 + b*x0x4 - x1x3 - b*x1x4 - b*x3^2 - b^2*x3x4
//   v0 = x0^2 - x0x1 - b*x3^2 - b^2*x3x4
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> normalized_basic_solution(const F& f,
                                                                  const typename F::Elem& beta) {
  if (f.is_zero(beta)) throw std::domain_error("normalized_basic_solution: beta must be nonzero");
  using P = Polynomial<F>;
  auto mono = [](std::vector<Index> w) { return Monomial::from_sorted(std::move(w)); };
  typename F::Elem b = beta, bb = f.mul(beta, beta), one = f.one();
  P u0 = P::from_terms(f, {{mono({0, 3}), one},
                           {mono({0, 4}), b},
                           {mono({1, 3}), f.neg(one)},
                           {mono({1, 4}), f.neg(b)},
                           {mono({3, 3}), f.neg(b)},
                           {mono({3, 4}), f.neg(bb)}});
  P v0 = P::from_terms(f, {{mono({0, 0}), one},
                           {mono({0, 1}), f.neg(one)},
                           {mono({3, 3}), f.neg(b)},
                           {mono({3, 4}), f.neg(bb)}});
  P lhs = P::generator(f, 0) + P::generator(f, 2).scaled(b);
  P rhs = P::generator(f, 1) + P::generator(f, 2).scaled(b);
  if (lhs * u0 != rhs * v0) throw std::logic_error("normalized_basic_solution: identity failed");
  return {std::move(u0), std::move(v0)};
}

// Parameters of one member of the solution family for
// (x0 + alpha*x2)u = (x1 + beta*x2)v.  w[j] must lie in the subring generated
// by x_j, x_{j+1}, ...; the member has degree 2 + j + deg w[j] contributions
// from level j, so homogeneous members of degree d take deg w[j] = d - j - 2.
template <class F>
struct FamilyParams {
  typename F::Elem beta;
  std::vector<Polynomial<F>> w;  // levels 0..k
};

// Builds the family member: descending through levels k..0,
//   u <- u0*w~_j + (1/a_j)(x1 + beta*x3)*phi(u)
//   v <- v0*w~_j + (1/a_j)x0*phi(v) + x3*phi(u)
// where a_j is alpha at level 0 and beta below, (u0, v0) is the basic
// solution at (a_j, beta), w~_j pulls w[j] back down by phi^j, and phi shifts
// every index up by one.  The defining identity is re-checked exactly.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> solution_family(const F& f, const FamilyParams<F>& params,
                                                        const typename F::Elem& alpha) {
  using P = Polynomial<F>;
  if (params.w.empty()) throw std::invalid_argument("solution_family: need at least one level");
  if (f.is_zero(alpha) || f.is_zero(params.beta))
    throw std::domain_error("solution_family: alpha and beta must be nonzero");
  for (std::size_t j = 0; j < params.w.size(); ++j)
    for (const auto& t : params.w[j].terms())
      if (t.first.degree() && t.first.min_index() < j)
        throw std::invalid_argument("solution_family: w_" + std::to_string(j) +
                                    " uses indices below its level");

  const typename F::Elem& beta = params.beta;
  P x0 = P::generator(f, 0);
  P x3 = P::generator(f, 3);
  P lift = P::generator(f, 1) + x3.scaled(beta);  // x1 + beta*x3
  P u = P::zero(f), v = P::zero(f);
  for (std::size_t j = params.w.size(); j-- > 0;) {
    const typename F::Elem& aj = (j == 0) ? alpha : beta;
    auto [u0, v0] = basic_solution(f, aj, beta);
    typename F::Elem inv_aj = f.inv(aj);
    P wt = params.w[j].unshifted(static_cast<Index>(j));
    P us = u.shifted(1);
    P vs = v.shifted(1);
    P nu = u0 * wt + (lift * us).scaled(inv_aj);
    P nv = v0 * wt + (x0 * vs).scaled(inv_aj) + x3 * us;
    u = std::move(nu);
    v = std::move(nv);
  }
  P lhs = x0 + P::generator(f, 2).scaled(alpha);
  P rhs = P::generator(f, 1) + P::generator(f, 2).scaled(beta);
  if (lhs * u != rhs * v) throw std::logic_error("solution_family: identity failed");
  return {std::move(u), std::move(v)};
}

// Chain product whose i-th factor (1-based) is a_i*x0 + b_i*x_i.  Every
// divisor a_i*x0 + b_i*x1 divides it on the left: adjacent factors with
// consecutive variables exchange their coefficient pairs under the defining
// relations, so any factor can be bubbled to the front.
template <class F>
Polynomial<F> chain_product(const F& f,
                            const std::vector<std::pair<typename F::Elem, typename F::Elem>>& pairs) {
  using P = Polynomial<F>;
  P prod = P::one(f);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    P factor = P::generator(f, 0).scaled(pairs[i].first) +
               P::generator(f, static_cast<Index>(i + 1)).scaled(pairs[i].second);
    prod = prod * factor;
  }
  return prod;
}

// The product as printed in the source display: the first coefficient pair
// appears twice and the variables run x1..x_{k+1}, giving k+1 factors.  Kept
// for comparison; equals chain_product(...) times one extra right factor.
template <class F>
Polynomial<F> chain_product_printed(
    const F& f, const std::vector<std::pair<typename F::Elem, typename F::Elem>>& pairs) {
  using P = Polynomial<F>;
  if (pairs.empty()) return P::one(f);
  P prod = P::generator(f, 0).scaled(pairs[0].first) + P::generator(f, 1).scaled(pairs[0].second);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    P factor = P::generator(f, 0).scaled(pairs[i].first) +
               P::generator(f, static_cast<Index>(i + 2)).scaled(pairs[i].second);
    prod = prod * factor;
  }
  return prod;
}

template <class F>
struct ChainSolution {
  Polynomial<F> product;                 // common value of all k equations
  std::vector<Polynomial<F>> quotients;  // u_i with (a_i*x0 + b_i*x1)u_i = product
};

// Solves (a_1x0+b_1x1)u_1 = ... = (a_kx0+b_kx1)u_k by exhibiting the chain
// product as a common left multiple and dividing.  A division failure would
// falsify the construction, so it raises instead of returning empty.
template <class F>
ChainSolution<F> qk_system_solution(
    const F& f, const std::vector<std::pair<typename F::Elem, typename F::Elem>>& pairs) {
  using P = Polynomial<F>;
  if (pairs.empty()) throw std::invalid_argument("qk_system_solution: need at least one pair");
  for (const auto& pr : pairs)
    if (f.is_zero(pr.first) && f.is_zero(pr.second))
      throw std::domain_error("qk_system_solution: zero coefficient pair");
  ChainSolution<F> out{chain_product(f, pairs), {}};
  out.quotients.reserve(pairs.size());
  for (const auto& pr : pairs) {
    P divisor = P::generator(f, 0).scaled(pr.first) + P::generator(f, 1).scaled(pr.second);
    auto q = left_divide_poly(divisor, out.product);
    if (!q) throw std::logic_error("qk_system_solution: chain product not left divisible");
    out.quotients.push_back(std::move(*q));
  }
  return out;
}

}  // namespace kxm
