#include "chromatic/matrix.hpp"

#include <algorithm>

#include "chromatic/errors.hpp"

namespace chromatic {

template <class Field>
void ExactMatrix<Field>::add(std::size_t r, std::size_t c, const Coeff& v) {
  if (r >= rows_ || c >= cols_) throw PreconditionError("matrix index out of range");
  if (Field::is_zero(v)) return;
  auto [it, fresh] = data_[r].try_emplace(c, v);
  if (!fresh) {
    it->second = Field::add(it->second, v, prime_);
    if (Field::is_zero(it->second)) data_[r].erase(it);
  }
}

template <class Field>
typename Field::value_type ExactMatrix<Field>::at(std::size_t r, std::size_t c) const {
  const auto& row = data_.at(r);
  auto it = row.find(c);
  return it == row.end() ? Field::from_int(0, prime_) : it->second;
}

template <class Field>
std::size_t ExactMatrix<Field>::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

template <class Field>
ExactMatrix<Field> ExactMatrix<Field>::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix shapes do not compose");
  ExactMatrix out(rows_, o.cols_, prime_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [k, a] : data_[r])
      for (const auto& [c, b] : o.data_[k]) out.add(r, c, Field::mul(a, b, prime_));
  return out;
}

template <class Field>
std::size_t exact_rank(const ExactMatrix<Field>& m) {
  const auto p = m.prime();
  using Row = typename ExactMatrix<Field>::Row;
  // pivot rows keyed by leading column, kept monic
  std::map<std::size_t, Row> pivots;
  std::vector<std::size_t> order(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) order[r] = r;
  // sparse rows first keeps fill-in down
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).size() < m.row(b).size(); });
  for (auto r : order) {
    Row row = m.row(r);
    while (!row.empty()) {
      auto lead = row.begin();
      auto pv = pivots.find(lead->first);
      if (pv == pivots.end()) {
        const auto inv = Field::inv(lead->second, p);
        for (auto& [c, v] : row) v = Field::mul(v, inv, p);
        const auto col = lead->first;
        pivots.emplace(col, std::move(row));
        break;
      }
      const auto factor = lead->second;
      for (const auto& [c, v] : pv->second) {
        auto [it, fresh] = row.try_emplace(c, Field::neg(Field::mul(factor, v, p), p));
        if (!fresh) {
          it->second = Field::sub(it->second, Field::mul(factor, v, p), p);
          if (Field::is_zero(it->second)) row.erase(it);
        }
      }
    }
  }
  return pivots.size();
}

template <class Field>
std::size_t dense_rank(const ExactMatrix<Field>& m) {
  const auto p = m.prime();
  std::vector<std::vector<typename Field::value_type>> a(m.rows(),
                                                         std::vector<typename Field::value_type>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.at(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && Field::is_zero(a[piv][c])) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const auto inv = Field::inv(a[rank][c], p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || Field::is_zero(a[r][c])) continue;
      const auto f = Field::mul(a[r][c], inv, p);
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = Field::sub(a[r][k], Field::mul(f, a[rank][k], p), p);
    }
    ++rank;
  }
  return rank;
}

template class ExactMatrix<Rationals>;
template class ExactMatrix<PrimeField>;
template std::size_t exact_rank(const ExactMatrix<Rationals>&);
template std::size_t exact_rank(const ExactMatrix<PrimeField>&);
template std::size_t dense_rank(const ExactMatrix<Rationals>&);
template std::size_t dense_rank(const ExactMatrix<PrimeField>&);

}  // namespace chromatic
