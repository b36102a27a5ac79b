#include "ramp1/linalg.hpp"

namespace ramp1 {

void FqMatrix::add_row(std::vector<FieldElem> row) {
  if (row.size() != cols_) fail(errc::internal, "row width mismatch");
  rows_.push_back(std::move(row));
}

void FqMatrix::eliminate(std::vector<std::vector<FieldElem>>* m,
                         std::vector<int>* pivot_col) const {
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < m->size(); ++c) {
    size_t sel = r;
    while (sel < m->size() && (*m)[sel][c].is_zero()) ++sel;
    if (sel == m->size()) continue;
    std::swap((*m)[r], (*m)[sel]);
    FieldElem inv = (*m)[r][c].inv();
    for (size_t j = c; j < cols_; ++j) (*m)[r][j] = (*m)[r][j] * inv;
    for (size_t i = 0; i < m->size(); ++i) {
      if (i == r || (*m)[i][c].is_zero()) continue;
      FieldElem f = (*m)[i][c];
      for (size_t j = c; j < cols_; ++j)
        (*m)[i][j] = (*m)[i][j] - f * (*m)[r][j];
    }
    pivot_col->push_back((int)c);
    ++r;
  }
}

size_t FqMatrix::rank() const {
  auto m = rows_;
  std::vector<int> pivots;
  eliminate(&m, &pivots);
  return pivots.size();
}

std::vector<std::vector<FieldElem>> FqMatrix::reduced_rows() const {
  auto m = rows_;
  std::vector<int> pivots;
  eliminate(&m, &pivots);
  m.resize(pivots.size());
  return m;
}

std::vector<std::vector<FieldElem>> FqMatrix::nullspace() const {
  auto m = rows_;
  std::vector<int> pivots;
  eliminate(&m, &pivots);

  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[(size_t)c] = true;

  std::vector<std::vector<FieldElem>> basis;
  for (size_t fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<FieldElem> v(cols_, spec_->zero());
    v[fc] = spec_->one();
    for (size_t r = 0; r < pivots.size(); ++r)
      v[(size_t)pivots[r]] = -m[r][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<FieldElem>> FqMatrix::solve(
    const std::vector<FieldElem>& rhs) const {
  if (rhs.size() != rows_.size()) fail(errc::internal, "rhs size mismatch");
  FqMatrix aug(spec_, cols_ + 1);
  for (size_t i = 0; i < rows_.size(); ++i) {
    auto row = rows_[i];
    row.push_back(rhs[i]);
    aug.add_row(std::move(row));
  }
  auto m = aug.rows_;
  std::vector<int> pivots;
  aug.eliminate(&m, &pivots);
  std::vector<FieldElem> x(cols_, spec_->zero());
  for (size_t r = 0; r < pivots.size(); ++r) {
    if ((size_t)pivots[r] == cols_) return std::nullopt;  // 0 = 1 row
    x[(size_t)pivots[r]] = m[r][cols_];
  }
  return x;
}

}  // namespace ramp1
