#include "weil/linalg.hpp"

namespace weil {

namespace {
long first_nonzero(const CVec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return (long)i;
  return -1;
}
}  // namespace

bool CycloSpan::insert(CVec v) {
  CVec comb;
  if (track_) comb.assign(inserted_ + 1, Cyclotomic::zero());
  if (track_) comb[inserted_] = Cyclotomic::integer(1);
  ++inserted_;
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Cyclotomic& c = v[pivot_[r]];
    if (c.is_zero()) continue;
    Cyclotomic f = c;  // rows are pivot-normalized to 1
    for (long j = 0; j < dim_; ++j)
      if (!rows_[r][j].is_zero()) v[j] = v[j] - f * rows_[r][j];
    if (track_) {
      if ((long)comb.size() < (long)coords_[r].size()) comb.resize(coords_[r].size(), Cyclotomic::zero());
      for (size_t j = 0; j < coords_[r].size(); ++j)
        if (!coords_[r][j].is_zero()) comb[j] = comb[j] - f * coords_[r][j];
    }
  }
  long p = first_nonzero(v);
  if (p < 0) return false;
  Cyclotomic inv = v[p].inverse();
  for (long j = 0; j < dim_; ++j)
    if (!v[j].is_zero()) v[j] = v[j] * inv;
  if (track_)
    for (auto& x : comb)
      if (!x.is_zero()) x = x * inv;
  rows_.push_back(std::move(v));
  pivot_.push_back(p);
  coords_.push_back(std::move(comb));
  return true;
}

bool CycloSpan::contains(const CVec& v) const {
  CVec w = v;
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Cyclotomic& c = w[pivot_[r]];
    if (c.is_zero()) continue;
    Cyclotomic f = c;
    for (long j = 0; j < dim_; ++j)
      if (!rows_[r][j].is_zero()) w[j] = w[j] - f * rows_[r][j];
  }
  return first_nonzero(w) < 0;
}

bool CycloSpan::solve(const CVec& v, CVec* coords) const {
  CVec w = v;
  CVec comb(inserted_, Cyclotomic::zero());
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Cyclotomic& c = w[pivot_[r]];
    if (c.is_zero()) continue;
    Cyclotomic f = c;
    for (long j = 0; j < dim_; ++j)
      if (!rows_[r][j].is_zero()) w[j] = w[j] - f * rows_[r][j];
    for (size_t j = 0; j < coords_[r].size(); ++j)
      if (!coords_[r][j].is_zero()) comb[j] = comb[j] + f * coords_[r][j];
  }
  if (first_nonzero(w) >= 0) return false;
  if (coords) *coords = std::move(comb);
  return true;
}

std::vector<std::vector<mpq_class>> rational_nullspace(
    const std::vector<std::vector<mpq_class>>& in_rows, long cols) {
  // row-reduce to RREF, then read the nullspace off the free columns
  std::vector<std::vector<mpq_class>> rows;
  std::vector<long> pivot_col;
  for (const auto& r0 : in_rows) {
    std::vector<mpq_class> r = r0;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (r[pivot_col[i]] == 0) continue;
      mpq_class f = r[pivot_col[i]];
      for (long j = 0; j < cols; ++j)
        if (rows[i][j] != 0) r[j] -= f * rows[i][j];
    }
    long p = -1;
    for (long j = 0; j < cols; ++j)
      if (r[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) continue;
    mpq_class inv = 1 / r[p];
    for (long j = 0; j < cols; ++j)
      if (r[j] != 0) r[j] *= inv;
    // eliminate the new pivot from earlier rows to reach RREF
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][p] == 0) continue;
      mpq_class f = rows[i][p];
      for (long j = 0; j < cols; ++j)
        if (r[j] != 0) rows[i][j] -= f * r[j];
    }
    rows.push_back(std::move(r));
    pivot_col.push_back(p);
  }
  std::vector<bool> is_pivot(cols, false);
  for (long p : pivot_col) is_pivot[p] = true;
  std::vector<std::vector<mpq_class>> basis;
  for (long f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> x(cols, 0);
    x[f] = 1;
    for (size_t i = 0; i < rows.size(); ++i) x[pivot_col[i]] = -rows[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

long rational_rank(std::vector<std::vector<mpq_class>> rows) {
  long cols = rows.empty() ? 0 : (long)rows[0].size();
  std::vector<std::vector<mpq_class>> red;
  std::vector<long> pivots;
  for (auto& r : rows) {
    for (size_t i = 0; i < red.size(); ++i) {
      if (r[pivots[i]] == 0) continue;
      mpq_class f = r[pivots[i]];
      for (long j = 0; j < cols; ++j)
        if (red[i][j] != 0) r[j] -= f * red[i][j];
    }
    long p = -1;
    for (long j = 0; j < cols; ++j)
      if (r[j] != 0) {
        p = j;
        break;
      }
    if (p < 0) continue;
    mpq_class inv = 1 / r[p];
    for (long j = 0; j < cols; ++j)
      if (r[j] != 0) r[j] *= inv;
    red.push_back(std::move(r));
    pivots.push_back(p);
  }
  return (long)red.size();
}

}  // namespace weil
