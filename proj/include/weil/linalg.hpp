#pragma once

// Small exact linear algebra: Gaussian elimination over a cyclotomic field
// (span/solve for restriction matrices) and rational nullspace computation
// (the scalar-restricted commutant system).

#include <gmpxx.h>

#include <vector>

#include "weil/scalars.hpp"

namespace weil {

using CVec = std::vector<Cyclotomic>;

// Maintains a row-reduced basis of the span of inserted vectors.
class CycloSpan {
 public:
  explicit CycloSpan(long dim) : dim_(dim) {}

  long dim() const { return (long)rows_.size(); }
  long ambient_dim() const { return dim_; }

  // returns true if v enlarged the span
  bool insert(CVec v);
  bool contains(const CVec& v) const;
  // coordinates of v in terms of the ORIGINAL inserted basis vectors
  // (available only when track_coords was requested and v is in the span)
  bool solve(const CVec& v, CVec* coords) const;
  void track_coords(bool on) { track_ = on; }

 private:
  long dim_;
  bool track_ = false;
  std::vector<CVec> rows_;    // reduced, each with a pivot column
  std::vector<long> pivot_;   // pivot column per row
  std::vector<CVec> coords_;  // expression of each reduced row in inserted vecs
  long inserted_ = 0;
};

// Exact nullspace of a rational matrix given by rows; returns a basis of
// column vectors (each of length cols).
std::vector<std::vector<mpq_class>> rational_nullspace(
    const std::vector<std::vector<mpq_class>>& rows, long cols);

// rank of a rational matrix
long rational_rank(std::vector<std::vector<mpq_class>> rows);

}  // namespace weil
