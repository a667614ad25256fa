#pragma once

// Hochschild homology of graded commutative algebras, three ways:
//   hh_hkr    closed form A (x) Lambda(dg) for smooth bases and etale towers
//   hh_koszul generating function for free polynomial algebras
//   hh_bar    normalized Hochschild complex of a finite-dimensional algebra
// Tables record (homological degree s, internal degree t) -> rank.  Ranks
// over a graded field count basis elements of exactly that degree.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chromatic/derive.hpp"
#include "chromatic/matrix.hpp"
#include "chromatic/presentation.hpp"
#include "chromatic/serialize.hpp"

namespace chromatic {

inline constexpr const char* kTableSchema = "chromatic.hh/1";

struct BigradedTable {
  std::string method;
  int s_max = 0;
  int t_lo = 0, t_hi = 0;
  std::map<std::pair<int, int>, std::uint64_t> ranks;  // nonzero entries only

  std::uint64_t rank(int s, int t) const;
  void set(int s, int t, std::uint64_t r);
  bool in_window(int s, int t) const { return s >= 0 && s <= s_max && t >= t_lo && t <= t_hi; }
};

Json table_to_json(const BigradedTable& t);
BigradedTable table_from_json(const Json& j);
std::string table_to_csv(const BigradedTable& t);
std::string table_to_tex(const BigradedTable& t);

struct ExteriorClass {
  std::string name;  // "dv1"
  int internal_degree = 0;
  int homological = 1;
};

template <class Field>
struct HHAnswer {
  Presentation<Field> algebra;
  std::vector<ExteriorClass> exterior;
  std::string method;

  /// Ranks of algebra (x) Lambda(exterior) in the window.
  BigradedTable table(int s_max, int t_lo, int t_hi) const;
  /// algebra (x) Lambda(exterior) as a ring with exterior generators appended.
  RingPtr total_ring() const;
};

/// HKR for P smooth on `smooth` (polynomial or Laurent generators), or etale
/// over such a base.  Every relation of P needs an etale certificate whose
/// relation matches it exactly, and every generator that is neither smooth
/// nor ground has to be the solved variable of one of them.
template <class Field>
HHAnswer<Field> hh_hkr(const Presentation<Field>& P, const std::vector<std::string>& smooth,
                       const std::vector<EtaleReport>& certificates = {});

struct KoszulGenerator {
  std::string name;
  int degree = 0;
  bool laurent = false;  // Laurent generators are counted over, not enumerated
};

/// Ranks of k[gens] (x) Lambda(dg) from the product of
/// (1 + z q^d) / (1 - q^d) over polynomial and (1 + z q^d) over Laurent
/// generators.
BigradedTable hh_koszul(const std::vector<KoszulGenerator>& gens, int s_max, int t_lo, int t_hi);

/// Generators of a relation-free presentation in Koszul form.
template <class Field>
std::vector<KoszulGenerator> koszul_generators(const Presentation<Field>& P);

/// A finite-dimensional commutative algebra with even-degree basis, given by
/// structure constants in its normal-form monomial basis.
template <class Field>
class FiniteAlgebra {
 public:
  using Coeff = typename Field::value_type;
  using Vec = std::vector<std::pair<std::size_t, Coeff>>;

  explicit FiniteAlgebra(const Presentation<Field>& P);

  std::uint32_t prime() const { return prime_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t unit() const { return unit_; }
  int degree(std::size_t k) const { return degrees_[k]; }
  const std::vector<Monomial>& basis() const { return basis_; }
  const Vec& product(std::size_t a, std::size_t b) const { return mult_[a * basis_.size() + b]; }
  std::string label(std::size_t k) const;

 private:
  RingPtr ring_;
  std::uint32_t prime_ = 0;
  std::vector<Monomial> basis_;
  std::vector<int> degrees_;
  std::size_t unit_ = 0;
  std::vector<Vec> mult_;
};

struct BarOptions {
  std::size_t max_columns = 10'000;
  bool check_dd = true;
};

/// One internal degree of the normalized complex C_s = A (x) Abar^{(x)s}.
template <class Field>
struct BarComplexSlice {
  int t = 0;
  std::vector<std::size_t> dims;                  // dim C_s(t), s = 0..s_max+1
  std::vector<ExactMatrix<Field>> differentials;  // [s] : C_s -> C_{s-1}; [0] is empty
};

template <class Field>
BarComplexSlice<Field> bar_slice(const FiniteAlgebra<Field>& A, int t, int s_max, const BarOptions& opt = {});

template <class Field>
BigradedTable hh_bar(const FiniteAlgebra<Field>& A, int s_max, int t_lo, int t_hi, const BarOptions& opt = {});

/// b' : A^{(x)(s+2)} -> A^{(x)(s+1)} of the (unnormalized) bar resolution,
/// all internal degrees at once.
template <class Field>
ExactMatrix<Field> bar_resolution_differential(const FiniteAlgebra<Field>& A, int s);

/// Smallest window holding every nonzero C_s(t) with s <= s_max.
template <class Field>
std::pair<int, int> bar_window(const FiniteAlgebra<Field>& A, int s_max);

template <class Field>
struct Specialization {
  Presentation<Field> algebra;
  std::map<std::string, long long> values;
  bool collapsed = true;
  std::size_t source_basis = 0;  // module rank before
  std::size_t target_basis = 0;  // dimension after
  std::string validity;
};

/// Sets the named generators to scalars (nonzero for Laurent ones) and, when
/// `collapse` is set, puts every remaining generator in degree 0.
template <class Field>
Specialization<Field> specialize(const Presentation<Field>& P, const std::map<std::string, long long>& values,
                                 bool collapse = true);

struct TableDiff {
  int s_max = 0;
  int t_lo = 0, t_hi = 0;
  struct Entry {
    int s, t;
    std::uint64_t left, right;
  };
  std::vector<Entry> entries;
  bool empty() const { return entries.empty(); }
};

/// Rank differences on the common window; throws on disjoint windows.
TableDiff compare_methods(const BigradedTable& a, const BigradedTable& b);
Json diff_to_json(const TableDiff& d);

}  // namespace chromatic
