#include <algorithm>
#include <limits>

#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"

namespace chromatic {

template <class Field>
FiniteAlgebra<Field>::FiniteAlgebra(const Presentation<Field>& P) : ring_(P.ring()), prime_(P.prime()) {
  if (!P.base().empty()) throw PreconditionError("finite algebra needs an empty base");
  for (const auto& g : ring_->generators()) {
    if (g.invertible()) throw PreconditionError("Laurent generator " + g.name + ": specialize it first");
    if (g.kind == GeneratorKind::exterior)
      throw PreconditionError("exterior generator " + g.name + ": only even algebras are supported");
  }
  basis_ = P.module_basis();
  std::map<Monomial, std::size_t> index;
  bool has_unit = false;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    index.emplace(basis_[k], k);
    const int d = ring_->degree(basis_[k]);
    if (d % 2 != 0) throw PreconditionError("odd-degree basis element " + ring_->format(basis_[k]));
    degrees_.push_back(d);
    if (basis_[k].is_one()) {
      unit_ = k;
      has_unit = true;
    }
  }
  if (!has_unit) throw MathError("the unit is not a basis element");

  const std::size_t n = basis_.size();
  mult_.resize(n * n);
  using Poly = GradedPoly<Field>;
  const auto one = Field::from_int(1, prime_);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Poly prod = P.normal_form(Poly::monomial(ring_, basis_[a] + basis_[b], one));
      Vec v;
      for (const auto& t : prod.terms()) {
        auto it = index.find(t.mono);
        if (it == index.end()) throw MathError("normal form left the basis: " + ring_->format(t.mono));
        v.emplace_back(it->second, t.coeff);
      }
      mult_[a * n + b] = v;
      mult_[b * n + a] = std::move(v);
    }
  }
}

template <class Field>
std::string FiniteAlgebra<Field>::label(std::size_t k) const {
  return ring_->format(basis_.at(k));
}

namespace {

using Tuple = std::vector<std::uint16_t>;

template <class Field>
struct Degrees {
  int lo_bar = std::numeric_limits<int>::max(), hi_bar = std::numeric_limits<int>::min();
  int lo_all = std::numeric_limits<int>::max(), hi_all = std::numeric_limits<int>::min();
  std::vector<std::uint16_t> bar;  // indices of Abar

  explicit Degrees(const FiniteAlgebra<Field>& A) {
    for (std::size_t k = 0; k < A.dim(); ++k) {
      lo_all = std::min(lo_all, A.degree(k));
      hi_all = std::max(hi_all, A.degree(k));
      if (k == A.unit()) continue;
      bar.push_back(static_cast<std::uint16_t>(k));
      lo_bar = std::min(lo_bar, A.degree(k));
      hi_bar = std::max(hi_bar, A.degree(k));
    }
  }
};

/// Basis of C_s(t): tuples (a_0, a_1..a_s) with a_k in Abar for k >= 1.
template <class Field>
std::vector<Tuple> chains(const FiniteAlgebra<Field>& A, const Degrees<Field>& D, int s, int t, std::size_t budget) {
  std::vector<Tuple> out;
  if (s > 0 && D.bar.empty()) return out;
  Tuple cur(s + 1);
  auto rec = [&](auto&& self, int k, int deg) -> void {
    if (k == s + 1) {
      if (deg == t) {
        out.push_back(cur);
        if (out.size() > budget)
          throw BudgetExceeded("bar complex slice t=" + std::to_string(t) + ", s=" + std::to_string(s) +
                               " exceeds " + std::to_string(budget) + " columns");
      }
      return;
    }
    const int left = s - k;  // Abar factors still to place after this one
    auto feasible = [&](int d) {
      if (left == 0) return d == t;
      return d + left * D.lo_bar <= t && d + left * D.hi_bar >= t;
    };
    if (k == 0) {
      for (std::size_t a = 0; a < A.dim(); ++a) {
        if (!feasible(deg + A.degree(a))) continue;
        cur[0] = static_cast<std::uint16_t>(a);
        self(self, 1, deg + A.degree(a));
      }
    } else {
      for (auto a : D.bar) {
        if (!feasible(deg + A.degree(a))) continue;
        cur[k] = a;
        self(self, k + 1, deg + A.degree(a));
      }
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

template <class Field>
BarComplexSlice<Field> bar_slice(const FiniteAlgebra<Field>& A, int t, int s_max, const BarOptions& opt) {
  if (s_max < 0) throw PreconditionError("s_max must be >= 0");
  if (A.dim() > std::numeric_limits<std::uint16_t>::max()) throw BudgetExceeded("algebra too large for the bar oracle");
  const Degrees<Field> D(A);
  const auto p = A.prime();
  std::vector<std::vector<Tuple>> basis;
  std::vector<std::map<Tuple, std::size_t>> index;
  for (int s = 0; s <= s_max + 1; ++s) {
    basis.push_back(chains(A, D, s, t, opt.max_columns));
    std::map<Tuple, std::size_t> idx;
    for (std::size_t k = 0; k < basis.back().size(); ++k) idx.emplace(basis.back()[k], k);
    index.push_back(std::move(idx));
  }

  BarComplexSlice<Field> out;
  out.t = t;
  for (const auto& b : basis) out.dims.push_back(b.size());
  out.differentials.emplace_back(0, 0, p);
  const auto plus = Field::from_int(1, p), minus = Field::from_int(-1, p);
  for (int s = 1; s <= s_max + 1; ++s) {
    ExactMatrix<Field> d(basis[s - 1].size(), basis[s].size(), p);
    const auto& target = index[s - 1];
    for (std::size_t col = 0; col < basis[s].size(); ++col) {
      const Tuple& a = basis[s][col];
      Tuple img(s);
      auto emit = [&](const Tuple& tup, const typename Field::value_type& c) {
        auto it = target.find(tup);
        if (it == target.end()) throw MathError("bar differential left its degree");
        d.add(it->second, col, c);
      };
      // a_0 a_1 (x) a_2 ... a_s
      for (const auto& [e, c] : A.product(a[0], a[1])) {
        img[0] = static_cast<std::uint16_t>(e);
        std::copy(a.begin() + 2, a.end(), img.begin() + 1);
        emit(img, c);
      }
      // (-1)^i a_0 (x) ... (x) a_i a_{i+1} (x) ..., unit component dropped
      for (int i = 1; i < s; ++i) {
        const auto sign = (i % 2) ? minus : plus;
        for (const auto& [e, c] : A.product(a[i], a[i + 1])) {
          if (e == A.unit()) continue;
          std::copy(a.begin(), a.begin() + i, img.begin());
          img[i] = static_cast<std::uint16_t>(e);
          std::copy(a.begin() + i + 2, a.end(), img.begin() + i + 1);
          emit(img, Field::mul(sign, c, p));
        }
      }
      // (-1)^s a_s a_0 (x) a_1 ... a_{s-1}
      const auto sign = (s % 2) ? minus : plus;
      for (const auto& [e, c] : A.product(a[s], a[0])) {
        img[0] = static_cast<std::uint16_t>(e);
        std::copy(a.begin() + 1, a.begin() + s, img.begin() + 1);
        emit(img, Field::mul(sign, c, p));
      }
    }
    out.differentials.push_back(std::move(d));
  }
  return out;
}

template <class Field>
BigradedTable hh_bar(const FiniteAlgebra<Field>& A, int s_max, int t_lo, int t_hi, const BarOptions& opt) {
  if (t_lo > t_hi) throw PreconditionError("empty degree window");
  BigradedTable out;
  out.method = "bar";
  out.s_max = s_max;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  for (int t = t_lo; t <= t_hi; ++t) {
    const auto slice = bar_slice(A, t, s_max, opt);
    std::vector<std::size_t> rk(s_max + 3, 0);
    for (int s = 1; s <= s_max + 1; ++s) rk[s] = exact_rank(slice.differentials[s]);
    if (opt.check_dd) {
      for (int s = 1; s <= s_max; ++s) {
        const auto& d1 = slice.differentials[s];
        const auto& d2 = slice.differentials[s + 1];
        if (d1.rows() == 0 || d2.cols() == 0) continue;
        if (!(d1 * d2).is_zero())
          throw MathError("d o d != 0 at s=" + std::to_string(s + 1) + ", t=" + std::to_string(t));
      }
    }
    for (int s = 0; s <= s_max; ++s) out.set(s, t, slice.dims[s] - rk[s] - rk[s + 1]);
  }
  return out;
}

template <class Field>
ExactMatrix<Field> bar_resolution_differential(const FiniteAlgebra<Field>& A, int s) {
  if (s < 0) throw PreconditionError("s must be >= 0");
  const std::size_t n = A.dim();
  std::size_t cols = 1;
  for (int k = 0; k < s + 2; ++k) {
    cols *= n;
    if (cols > 1'000'000) throw BudgetExceeded("bar resolution too large");
  }
  const std::size_t rows = cols / n;
  const auto p = A.prime();
  ExactMatrix<Field> d(rows, cols, p);
  std::vector<std::size_t> digits(s + 2), img(s + 1);
  auto encode = [&](const std::vector<std::size_t>& v) {
    std::size_t r = 0;
    for (auto x : v) r = r * n + x;
    return r;
  };
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t c = col;
    for (int k = s + 1; k >= 0; --k) {
      digits[k] = c % n;
      c /= n;
    }
    for (int i = 0; i <= s; ++i) {
      const auto sign = Field::from_int((i % 2) ? -1 : 1, p);
      for (const auto& [e, coeff] : A.product(digits[i], digits[i + 1])) {
        std::copy(digits.begin(), digits.begin() + i, img.begin());
        img[i] = e;
        std::copy(digits.begin() + i + 2, digits.end(), img.begin() + i + 1);
        d.add(encode(img), col, Field::mul(sign, coeff, p));
      }
    }
  }
  return d;
}

template <class Field>
std::pair<int, int> bar_window(const FiniteAlgebra<Field>& A, int s_max) {
  const Degrees<Field> D(A);
  int lo = D.lo_all, hi = D.hi_all;
  if (!D.bar.empty()) {
    for (int s = 1; s <= s_max; ++s) {
      lo = std::min(lo, D.lo_all + s * D.lo_bar);
      hi = std::max(hi, D.hi_all + s * D.hi_bar);
    }
  }
  return {lo, hi};
}

#define CHROMATIC_INSTANTIATE(F)                                                                   \
  template class FiniteAlgebra<F>;                                                                 \
  template BarComplexSlice<F> bar_slice(const FiniteAlgebra<F>&, int, int, const BarOptions&);     \
  template BigradedTable hh_bar(const FiniteAlgebra<F>&, int, int, int, const BarOptions&);        \
  template ExactMatrix<F> bar_resolution_differential(const FiniteAlgebra<F>&, int);               \
  template std::pair<int, int> bar_window(const FiniteAlgebra<F>&, int);

CHROMATIC_INSTANTIATE(Rationals)
CHROMATIC_INSTANTIATE(PrimeField)

}  // namespace chromatic
