#pragma once

// Dense exact linear algebra over a finite field. Elimination pivots on
// the first nonzero entry in column order, so ranks, nullspace bases and
// reported solution bases are reproducible across runs.

#include <optional>
#include <vector>

#include "ramp1/field.hpp"

namespace ramp1 {

class FqMatrix {
public:
  FqMatrix(const FieldSpec* spec, size_t cols) : spec_(spec), cols_(cols) {}

  void add_row(std::vector<FieldElem> row);
  size_t rows() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  const FieldSpec* spec() const { return spec_; }
  const std::vector<FieldElem>& row(size_t i) const { return rows_[i]; }

  size_t rank() const;
  // basis of the right nullspace, one vector per free column, ordered by
  // free column index; each vector has a 1 in its free column
  std::vector<std::vector<FieldElem>> nullspace() const;

  // nonzero rows of the reduced row echelon form
  std::vector<std::vector<FieldElem>> reduced_rows() const;

  // one particular solution of (this) x = rhs, or nullopt if inconsistent
  std::optional<std::vector<FieldElem>> solve(
      const std::vector<FieldElem>& rhs) const;

private:
  void eliminate(std::vector<std::vector<FieldElem>>* m,
                 std::vector<int>* pivot_col) const;

  const FieldSpec* spec_;
  size_t cols_;
  std::vector<std::vector<FieldElem>> rows_;
};

}  // namespace ramp1
