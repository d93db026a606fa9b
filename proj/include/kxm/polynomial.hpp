#pragma once

// Elements of the monoid ring K[M]: finite K-linear combinations of normal
// forms.  Terms are kept sorted by deglex with no explicit zeros, so equality
// is representational equality.  Multiplication extends the monoid product
// bilinearly; left multiplication by elements supported on shifted copies of
// M is what the equation-solving layers manipulate.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kxm/catalan.hpp"
#include "kxm/fields.hpp"
#include "kxm/monomial.hpp"

namespace kxm {

template <class F>
class Polynomial {
 public:
  using Field = F;
  using Elem = typename F::Elem;
  using Term = std::pair<Monomial, Elem>;

  explicit Polynomial(F field) : f_(std::move(field)) {}

  static Polynomial zero(const F& f) { return Polynomial(f); }
  static Polynomial scalar(const F& f, Elem c) {
    Polynomial p(f);
    if (!f.is_zero(c)) p.terms_.emplace_back(Monomial::identity(), std::move(c));
    return p;
  }
  static Polynomial one(const F& f) { return scalar(f, f.one()); }
  static Polynomial term(const F& f, Monomial m, Elem c) {
    Polynomial p(f);
    if (!f.is_zero(c)) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
  }
  static Polynomial monomial(const F& f, Monomial m) { return term(f, std::move(m), f.one()); }
  static Polynomial generator(const F& f, Index i) { return monomial(f, Monomial::generator(i)); }

  static Polynomial from_terms(const F& f, std::vector<Term> terms) {
    Polynomial p(f);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const F& field() const { return f_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }

  std::size_t degree() const {
    require_nonzero("degree");
    return terms_.back().first.degree();
  }
  std::size_t min_degree() const {
    require_nonzero("min_degree");
    return terms_.front().first.degree();
  }
  // max degree - min degree over the support.
  std::size_t width() const {
    require_nonzero("width");
    return degree() - min_degree();
  }
  bool is_homogeneous() const { return terms_.empty() || degree() == min_degree(); }

  const Term& leading() const {
    require_nonzero("leading");
    return terms_.back();
  }

  Elem coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return deglex_less(t.first, k); });
    if (it != terms_.end() && it->first == m) return it->second;
    return f_.zero();
  }

  std::vector<Monomial> support() const {
    std::vector<Monomial> s;
    s.reserve(terms_.size());
    for (const Term& t : terms_) s.push_back(t.first);
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    a.check_same_field(b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first) return false;
      if (!a.f_.eq(a.terms_[i].second, b.terms_[i].second)) return false;
    }
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (Term& t : r.terms_) t.second = f_.neg(t.second);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same_field(b);
    Polynomial r(a.f_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && deglex_less(a.terms_[i].first, b.terms_[j].first))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || deglex_less(b.terms_[j].first, a.terms_[i].first)) {
        r.terms_.push_back(b.terms_[j++]);
      } else {
        Elem c = a.f_.add(a.terms_[i].second, b.terms_[j].second);
        if (!a.f_.is_zero(c)) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
        ++i, ++j;
      }
    }
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  Polynomial scaled(const Elem& c) const {
    Polynomial r(f_);
    if (f_.is_zero(c)) return r;
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.second = f_.mul(t.second, c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_field(b);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const Term& s : a.terms_)
      for (const Term& t : b.terms_)
        prod.emplace_back(multiply(s.first, t.first), a.f_.mul(s.second, t.second));
    return from_terms(a.f_, std::move(prod));
  }

  // x_m * p and p * x_m without building a one-term polynomial.
  Polynomial lmul(const Monomial& m) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.emplace_back(multiply(m, t.first), t.second);
    return from_terms(f_, std::move(out));
  }
  Polynomial rmul(const Monomial& m) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.emplace_back(multiply(t.first, m), t.second);
    return from_terms(f_, std::move(out));
  }

  // Applies the shift endomorphism x_i -> x_{i+k} termwise.
  Polynomial shifted(Index k) const {
    Polynomial r(f_);
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.first = shift(t.first, k);
    // shifting preserves deglex order
    return r;
  }
  Polynomial unshifted(Index k) const {
    Polynomial r(f_);
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.first = unshift(t.first, k);
    return r;
  }

  // Ordered by degree, ascending; zero polynomial gives an empty list.
  std::vector<std::pair<std::size_t, Polynomial>> homogeneous_components() const {
    std::vector<std::pair<std::size_t, Polynomial>> out;
    for (const Term& t : terms_) {
      std::size_t d = t.first.degree();
      if (out.empty() || out.back().first != d) out.emplace_back(d, Polynomial(f_));
      out.back().second.terms_.push_back(t);
    }
    return out;
  }

  void check_same_field(const Polynomial& other) const {
    if (!(f_.config() == other.f_.config()))
      throw std::invalid_argument("polynomial operands belong to different fields");
  }

 private:
  void require_nonzero(const char* what) const {
    if (terms_.empty()) throw std::domain_error(std::string(what) + ": undefined for the zero polynomial");
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return deglex_less(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (Term& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second = f_.add(out.back().second, t.second);
        if (f_.is_zero(out.back().second)) out.pop_back();
      } else if (!f_.is_zero(t.second)) {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  F f_;
  std::vector<Term> terms_;
};

// Random polynomial on the given support with uniform seeded coefficients.
// Draws that hit zero drop the term, so the support may come out smaller.
template <class F>
Polynomial<F> random_poly(const F& f, const SetDescriptor& support, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<typename Polynomial<F>::Term> terms;
  for_each_element(support, [&](const Monomial& m) { terms.emplace_back(m, f.random(rng)); });
  return Polynomial<F>::from_terms(f, std::move(terms));
}

// --- text form ---------------------------------------------------------------
//
//   poly := [sign] term (sign term)*        sign := "+" | "-"
//   term := scalar | mono | scalar "*" mono
//
// Scalars use the field's literal syntax (integers, fractions a/b, and for the
// generic field indeterminate names).

template <class F>
std::string to_string(const Polynomial<F>& p) {
  if (p.is_zero()) return "0";
  const F& f = p.field();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string cs = f.to_string(c);
    bool negative = cs.size() > 1 && cs[0] == '-';
    if (first) {
      if (negative) out += "-", cs = cs.substr(1);
      first = false;
    } else {
      out += negative ? " - " : " + ";
      if (negative) cs = cs.substr(1);
    }
    if (m.is_identity()) {
      out += cs;
    } else if (cs == "1") {
      out += to_string(m);
    } else {
      out += cs + "*" + to_string(m);
    }
  }
  return out;
}

template <class F>
Polynomial<F> parse_poly(const F& f, const std::string& s) {
  std::vector<typename Polynomial<F>::Term> terms;
  std::size_t pos = 0;
  detail::skip_ws(s, pos);
  if (pos == s.size()) throw parse_error(pos, "empty polynomial");
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    detail::skip_ws(s, pos);
    if (s[pos] == '+' || s[pos] == '-') {
      negative = (s[pos] == '-');
      ++pos;
    } else if (!first) {
      throw parse_error(pos, "expected '+' or '-' between terms");
    }
    first = false;
    detail::skip_ws(s, pos);
    if (pos >= s.size()) throw parse_error(pos, "dangling sign");

    typename F::Elem coef = f.one();
    bool saw_scalar = false;
    if (s[pos] != 'x') {
      // scalar token: maximal run of scalar characters
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '/' || s[pos] == '_'))
        ++pos;
      if (start == pos) throw parse_error(pos, "expected term");
      try {
        coef = f.parse(s.substr(start, pos - start));
      } catch (const parse_error& e) {
        throw parse_error(start + e.pos, "bad scalar literal");
      } catch (const std::exception&) {
        throw parse_error(start, "bad scalar literal");
      }
      saw_scalar = true;
    }
    Monomial m = Monomial::identity();
    detail::skip_ws(s, pos);
    if (saw_scalar && pos < s.size() && s[pos] == '*') {
      ++pos;
      m = parse_monomial(s, pos);
    } else if (!saw_scalar) {
      m = parse_monomial(s, pos);
    }
    terms.emplace_back(std::move(m), negative ? f.neg(coef) : coef);
    detail::skip_ws(s, pos);
  }
  return Polynomial<F>::from_terms(f, std::move(terms));
}

}  // namespace kxm
