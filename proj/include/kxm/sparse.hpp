#pragma once

// Exact sparse Gaussian elimination over a field F.  Rows are sorted
// (column, value) vectors.  Pivots are chosen Markowitz-style: among the
// sparsest active rows, the entry whose column meets the fewest rows, with
// deterministic (row, column) tie-breaking.  Chosen pivot columns are
// eliminated from every other row, so the surviving pivot rows are fully
// reduced and nullspace vectors read off directly.
//
// Over the rationals each rewritten row is rescaled to a primitive integer
// vector, which keeps numerator growth in check and changes nothing that rank
// or nullspace computations can see.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "kxm/fields.hpp"

namespace kxm {

template <class F>
class SparseMatrix {
 public:
  using Elem = typename F::Elem;
  using Entry = std::pair<int, Elem>;  // (column, value)

  SparseMatrix(F field, int rows, int cols)
      : f_(std::move(field)), cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

  const F& field() const { return f_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  void add(int r, int c, Elem v) {
    if (r < 0 || r >= rows() || c < 0 || c >= cols_) throw std::invalid_argument("entry out of range");
    if (!f_.is_zero(v)) rows_[static_cast<std::size_t>(r)].emplace_back(c, std::move(v));
  }

  // Sorts rows, merges duplicate columns, prunes zeros.
  void finalize() {
    for (auto& row : rows_) {
      std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
      std::vector<Entry> out;
      out.reserve(row.size());
      for (Entry& e : row) {
        if (!out.empty() && out.back().first == e.first) {
          out.back().second = f_.add(out.back().second, e.second);
          if (f_.is_zero(out.back().second)) out.pop_back();
        } else {
          out.push_back(std::move(e));
        }
      }
      row = std::move(out);
    }
  }

  const std::vector<Entry>& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  std::uint64_t nonzeros() const {
    std::uint64_t n = 0;
    for (const auto& row : rows_) n += row.size();
    return n;
  }

  void dump_triplets(std::ostream& os) const {
    os << rows() << " " << cols_ << " " << to_string(f_.config()) << "\n";
    for (int r = 0; r < rows(); ++r)
      for (const Entry& e : rows_[static_cast<std::size_t>(r)])
        os << r << " " << e.first << " " << f_.to_string(e.second) << "\n";
  }

  static SparseMatrix load_triplets(const F& f, std::istream& is) {
    int r = 0, c = 0;
    std::string fieldspec;
    if (!(is >> r >> c >> fieldspec)) throw std::invalid_argument("bad triplet header");
    if (!(parse_field_config(fieldspec) == f.config()))
      throw std::invalid_argument("triplet field does not match requested field");
    SparseMatrix m(f, r, c);
    int i, j;
    std::string val;
    while (is >> i >> j >> val) m.add(i, j, f.parse(val));
    m.finalize();
    return m;
  }

 private:
  F f_;
  int cols_;
  std::vector<std::vector<Entry>> rows_;
};

struct EliminationOptions {
  std::uint64_t max_entries = 0;  // abort if total stored entries exceed this (0: no cap)
  std::uint64_t max_pivots = 0;   // abort after this many pivot steps (0: no cap)
  std::size_t max_basis = 0;      // materialize at most this many nullspace vectors (0: all)
  std::ostream* log = nullptr;    // progress notes, if given
  int log_every = 1000;           // pivots between notes
};

namespace detail {

// Divides a rational row by the gcd of numerators and multiplies by the lcm
// of denominators, leaving a primitive integer row with positive leading entry.
inline void make_row_primitive(const RationalField&,
                               std::vector<std::pair<int, BigRationalElem>>& row) {
  using boost::multiprecision::cpp_int;
  if (row.empty()) return;
  cpp_int g = 0, l = 1;
  for (const auto& e : row) {
    g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(e.second));
    l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(e.second));
  }
  if (boost::multiprecision::numerator(row.front().second) < 0) g = -g;
  BigRationalElem scale = BigRationalElem(l) / g;
  for (auto& e : row) e.second *= scale;
}

template <class F>
inline void make_row_primitive(const F&, std::vector<std::pair<int, typename F::Elem>>&) {}

}  // namespace detail

// One elimination pass shared by rank, nullspace, and solve.  If `aug` is
// given it is treated as column `cols` (never pivoted on), making the system
// [A | aug] for particular-solution extraction.
template <class F>
class Elimination {
 public:
  using Elem = typename F::Elem;
  using Entry = std::pair<int, Elem>;

  Elimination(const SparseMatrix<F>& m, const EliminationOptions& opts,
              const std::vector<Elem>* aug = nullptr)
      : f_(m.field()), ncols_(m.cols()), opts_(opts) {
    int nr = m.rows();
    rows_.resize(static_cast<std::size_t>(nr));
    total_entries_ = 0;
    for (int r = 0; r < nr; ++r) {
      rows_[r] = m.row(r);
      if (aug && !f_.is_zero((*aug)[static_cast<std::size_t>(r)]))
        rows_[r].emplace_back(ncols_, (*aug)[static_cast<std::size_t>(r)]);
      detail::make_row_primitive(f_, rows_[r]);
      total_entries_ += rows_[r].size();
    }
    colrows_.assign(static_cast<std::size_t>(ncols_) + 1, {});
    colcnt_.assign(static_cast<std::size_t>(ncols_) + 1, 0);
    for (int r = 0; r < nr; ++r)
      for (const Entry& e : rows_[r]) {
        colrows_[e.first].push_back(r);
        ++colcnt_[e.first];
      }
    candidate_.assign(rows_.size(), true);
    for (std::size_t r = 0; r < rows_.size(); ++r) push_bucket(r);
    run();
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  // True if some reduced row asserts 0 = nonzero in the augmented column.
  bool inconsistent() const {
    for (const auto& row : rows_)
      if (row.size() == 1 && row.front().first == ncols_) return true;
    return false;
  }

  // Particular solution with all free variables zero; requires consistency.
  std::vector<Elem> particular_solution() const {
    std::vector<Elem> x(static_cast<std::size_t>(ncols_), f_.zero());
    for (auto [r, c] : pivots_) {
      const auto& row = rows_[static_cast<std::size_t>(r)];
      Elem piv = f_.zero(), rhs = f_.zero();
      for (const Entry& e : row) {
        if (e.first == c) piv = e.second;
        if (e.first == ncols_) rhs = e.second;
      }
      x[static_cast<std::size_t>(c)] = f_.div(rhs, piv);
    }
    return x;
  }

  // Basis of the nullspace of the (unaugmented) matrix, one sparse vector per
  // free column, ordered by free column.  Vector for free column fc has a 1
  // at fc and -row[fc]/pivot at each pivot column.  With max_basis set, only
  // the first that many free columns are materialized (the dimension is still
  // cols - rank); large structured systems can have nullspaces far too big to
  // hold while a single representative is all the caller wants.
  std::vector<std::vector<Entry>> nullspace_basis() const {
    std::vector<int> pivot_of_col(static_cast<std::size_t>(ncols_), -1);
    for (auto [r, c] : pivots_) pivot_of_col[static_cast<std::size_t>(c)] = r;
    std::vector<std::vector<Entry>> basis;
    std::vector<int> basis_of_col(static_cast<std::size_t>(ncols_), -1);
    for (int c = 0; c < ncols_; ++c) {
      if (pivot_of_col[static_cast<std::size_t>(c)] >= 0) continue;
      if (opts_.max_basis && basis.size() >= opts_.max_basis) break;
      basis_of_col[static_cast<std::size_t>(c)] = static_cast<int>(basis.size());
      basis.emplace_back();
      basis.back().emplace_back(c, f_.one());
    }
    for (auto [r, c] : pivots_) {
      const auto& row = rows_[static_cast<std::size_t>(r)];
      Elem piv = f_.zero();
      for (const Entry& e : row)
        if (e.first == c) piv = e.second;
      for (const Entry& e : row) {
        if (e.first == c || e.first == ncols_) continue;
        int b = basis_of_col[static_cast<std::size_t>(e.first)];
        if (b < 0) continue;  // free column beyond the materialization cap
        basis[static_cast<std::size_t>(b)].emplace_back(c, f_.neg(f_.div(e.second, piv)));
      }
    }
    for (auto& v : basis)
      std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    return basis;
  }

 private:
  void run() {
    int step = 0;
    for (;;) {
      auto piv = choose_pivot();
      if (!piv) break;
      auto [r, c] = *piv;
      eliminate(r, c);
      candidate_[static_cast<std::size_t>(r)] = false;
      pivots_.emplace_back(r, c);
      ++step;
      if (opts_.log && opts_.log_every > 0 && step % opts_.log_every == 0)
        *opts_.log << "  pivot " << step << ", stored entries " << total_entries_ << "\n";
      if (opts_.max_entries && total_entries_ > opts_.max_entries)
        throw budget_error("elimination: entry budget exceeded (" + std::to_string(total_entries_) +
                           " > " + std::to_string(opts_.max_entries) + ")");
      if (opts_.max_pivots && static_cast<std::uint64_t>(step) >= opts_.max_pivots)
        throw budget_error("elimination: pivot budget exceeded (" + std::to_string(step) + " of " +
                           std::to_string(rows_.size()) + " rows eliminated)");
    }
  }

  std::size_t live_nnz(std::size_t r) const {
    std::size_t nnz = rows_[r].size();
    if (nnz >= 1 && rows_[r].back().first == ncols_) --nnz;  // augmented entry is not pivotable
    return nnz;
  }

  // Rows wait in buckets keyed by their nonzero count.  Entries go stale when
  // a merge resizes the row; stale entries are discarded on pop, so selecting
  // the sparsest active row is amortized constant time instead of a full scan.
  void push_bucket(std::size_t r) {
    std::size_t nnz = live_nnz(r);
    if (nnz == 0) return;
    if (buckets_.size() <= nnz) buckets_.resize(nnz + 1);
    buckets_[nnz].push_back(static_cast<int>(r));
    if (nnz < min_bucket_) min_bucket_ = nnz;
  }

  std::optional<std::pair<int, int>> choose_pivot() {
    while (min_bucket_ < buckets_.size()) {
      auto& b = buckets_[min_bucket_];
      if (b.empty()) {
        ++min_bucket_;
        continue;
      }
      int r = b.back();
      b.pop_back();
      if (!candidate_[static_cast<std::size_t>(r)] ||
          live_nnz(static_cast<std::size_t>(r)) != min_bucket_)
        continue;  // stale: the row was consumed or resized since it was queued
      // within the chosen row, pick the entry with the fewest rows in its
      // column; the first entry achieving the minimum wins (smallest column)
      int bc = -1;
      std::size_t bcost = 0;
      for (const Entry& e : rows_[static_cast<std::size_t>(r)]) {
        if (e.first == ncols_) continue;
        std::size_t cost = colcnt_[static_cast<std::size_t>(e.first)];
        if (bc < 0 || cost < bcost) {
          bcost = cost;
          bc = e.first;
        }
      }
      return std::make_pair(r, bc);
    }
    return std::nullopt;
  }

  Elem value_at(const std::vector<Entry>& row, int c) const {
    for (const Entry& e : row)
      if (e.first == c) return e.second;
    return f_.zero();
  }

  void eliminate(int pr, int pc) {
    Elem piv = value_at(rows_[static_cast<std::size_t>(pr)], pc);
    std::vector<int> targets;
    targets.swap(colrows_[static_cast<std::size_t>(pc)]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      if (r == pr) {
        colrows_[static_cast<std::size_t>(pc)].push_back(r);
        continue;
      }
      Elem val = value_at(rows_[static_cast<std::size_t>(r)], pc);
      if (f_.is_zero(val)) continue;  // stale index entry
      Elem factor = f_.neg(f_.div(val, piv));
      merge_row(r, pr, factor, pc);
    }
  }

  // rows_[r] += factor * rows_[pr]; updates column counts and the column index.
  void merge_row(int r, int pr, const Elem& factor, int pc) {
    const auto& a = rows_[static_cast<std::size_t>(r)];
    const auto& p = rows_[static_cast<std::size_t>(pr)];
    scratch_.clear();
    scratch_.reserve(a.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < p.size()) {
      if (j == p.size() || (i < a.size() && a[i].first < p[j].first)) {
        scratch_.push_back(a[i++]);
      } else if (i == a.size() || p[j].first < a[i].first) {
        Elem v = f_.mul(factor, p[j].second);
        if (!f_.is_zero(v)) {
          // new fill-in
          ++colcnt_[static_cast<std::size_t>(p[j].first)];
          auto& cr = colrows_[static_cast<std::size_t>(p[j].first)];
          cr.push_back(r);
          // fill-in appends accumulate duplicates; squash them when the list
          // outgrows the live count so the index stays proportional to it
          if (cr.size() > 4 * colcnt_[static_cast<std::size_t>(p[j].first)] + 8) {
            std::sort(cr.begin(), cr.end());
            cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
          }
          scratch_.emplace_back(p[j].first, std::move(v));
        }
        ++j;
      } else {
        Elem v = f_.add(a[i].second, f_.mul(factor, p[j].second));
        if (f_.is_zero(v)) {
          --colcnt_[static_cast<std::size_t>(a[i].first)];
        } else {
          scratch_.emplace_back(a[i].first, std::move(v));
        }
        ++i, ++j;
      }
    }
    // the pivot column always cancels exactly
    total_entries_ += scratch_.size();
    total_entries_ -= a.size();
    rows_[static_cast<std::size_t>(r)].swap(scratch_);
    detail::make_row_primitive(f_, rows_[static_cast<std::size_t>(r)]);
    if (candidate_[static_cast<std::size_t>(r)]) push_bucket(static_cast<std::size_t>(r));
    (void)pc;
  }

  F f_;
  int ncols_;
  EliminationOptions opts_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<int>> colrows_;  // column -> rows that may contain it
  std::vector<std::size_t> colcnt_;        // column -> exact live count
  std::vector<bool> candidate_;            // true while a row may still be chosen as pivot
  std::vector<std::pair<int, int>> pivots_;
  std::vector<Entry> scratch_;
  std::vector<std::vector<int>> buckets_;  // nnz -> waiting rows (entries may be stale)
  std::size_t min_bucket_ = 1;
  std::uint64_t total_entries_ = 0;
};

template <class F>
int rank(const SparseMatrix<F>& m, const EliminationOptions& opts = {}) {
  return Elimination<F>(m, opts).rank();
}

// Basis of { x : M x = 0 }, each vector sparse and sorted by column.
template <class F>
std::vector<std::vector<std::pair<int, typename F::Elem>>> nullspace(
    const SparseMatrix<F>& m, const EliminationOptions& opts = {}) {
  return Elimination<F>(m, opts).nullspace_basis();
}

// Some solution of M x = rhs, if one exists (free variables set to zero).
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const SparseMatrix<F>& m,
                                                   const std::vector<typename F::Elem>& rhs,
                                                   const EliminationOptions& opts = {}) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw std::invalid_argument("rhs size mismatch");
  Elimination<F> e(m, opts, &rhs);
  if (e.inconsistent()) return std::nullopt;
  return e.particular_solution();
}

}  // namespace kxm
