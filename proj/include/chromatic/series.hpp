#pragma once

// One-variable power series truncated at x^order, with polynomial
// coefficients.  Stored sparsely: exponent -> nonzero coefficient.

#include <deque>
#include <map>
#include <string>

#include "chromatic/poly.hpp"

namespace chromatic {

template <class Field>
class TruncSeries {
 public:
  using Poly = GradedPoly<Field>;

  TruncSeries() = default;
  TruncSeries(RingPtr ring, int order);

  /// c * x^e (dropped when e > order).
  static TruncSeries monomial(RingPtr ring, int order, int e, const Poly& c);
  /// The series x.
  static TruncSeries variable(RingPtr ring, int order);

  const RingPtr& ring() const { return ring_; }
  int order() const { return order_; }
  const std::map<int, Poly>& coefficients() const { return coeffs_; }
  Poly coefficient(int e) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest exponent present; order + 1 for the zero series.
  int valuation() const;

  void add_term(int e, const Poly& c);
  /// Adds the terms of o up to this->order(), ignoring o's own truncation;
  /// for summands known to be exact that far.
  void accumulate(const TruncSeries& o);

  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries scaled(const Poly& c) const;
  TruncSeries truncated(int order) const;

  /// q-th power in characteristic p (q a power of p): x^e c -> x^{eq} c^q.
  TruncSeries frobenius(std::uint64_t q) const;
  /// f(c * x^k).
  TruncSeries substitute(const Poly& c, int k) const;
  /// Composition f(g) with g of positive valuation.
  TruncSeries compose(const TruncSeries& g) const;

  /// Every coefficient of x^e is homogeneous of degree shift + 2e.
  bool is_homogeneous(int shift) const;

  bool operator==(const TruncSeries& o) const { return order_ == o.order_ && coeffs_ == o.coeffs_; }

  std::string to_string() const;
  std::string to_tex() const;

 private:
  RingPtr ring_;
  int order_ = 0;
  std::map<int, Poly> coeffs_;
};

using QSeries = TruncSeries<Rationals>;
using FpSeries = TruncSeries<PrimeField>;

/// Powers s, s^2, ..., s^k truncated at s.order(), built on demand.
template <class Field>
class PowerTable {
 public:
  explicit PowerTable(TruncSeries<Field> base) : powers_{std::move(base)} {}
  const TruncSeries<Field>& operator[](int k);

 private:
  std::deque<TruncSeries<Field>> powers_;
};

}  // namespace chromatic
