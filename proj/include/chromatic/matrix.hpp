#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chromatic/coefficient.hpp"

namespace chromatic {

/// Sparse matrix over Q or F_p with optional row/column labels.
template <class Field>
class ExactMatrix {
 public:
  using Coeff = typename Field::value_type;
  using Row = std::map<std::size_t, Coeff>;

  ExactMatrix(std::size_t rows, std::size_t cols, std::uint32_t prime = 0)
      : rows_(rows), cols_(cols), prime_(prime), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return prime_; }

  void add(std::size_t r, std::size_t c, const Coeff& v);
  Coeff at(std::size_t r, std::size_t c) const;
  const Row& row(std::size_t r) const { return data_.at(r); }
  std::size_t nonzeros() const;

  ExactMatrix operator*(const ExactMatrix& o) const;
  bool is_zero() const { return nonzeros() == 0; }

  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

 private:
  std::size_t rows_, cols_;
  std::uint32_t prime_;
  std::vector<Row> data_;
};

/// Rank by exact sparse Gaussian elimination.
template <class Field>
std::size_t exact_rank(const ExactMatrix<Field>& m);

/// Dense textbook row reduction; used as an independent cross-check.
template <class Field>
std::size_t dense_rank(const ExactMatrix<Field>& m);

}  // namespace chromatic
