#pragma once

// Degree bookkeeping for Bokstedt E2 pages and for splittings of THH(E(n))
// into suspended, localized copies of E(n).

#include <cstdint>
#include <string>
#include <vector>

#include "chromatic/serialize.hpp"

namespace chromatic {

inline constexpr const char* kPageSchema = "chromatic.e2page/1";

struct PageGenerator {
  std::string name;
  int s = 0;  // homological (column)
  int t = 0;  // internal
};

/// Free graded-commutative algebra on `generators` over a filtration-0 base.
/// The base is described by the degrees of its polynomial and Laurent
/// generators; that is all a degree argument can use.
struct E2Page {
  std::string label;
  std::vector<int> base_polynomial;  // degrees
  std::vector<int> base_laurent;
  std::vector<PageGenerator> generators;
};

Json page_to_json(const E2Page& page);
E2Page page_from_json(const Json& j);

struct DifferentialCandidate {
  std::string generator;
  int r = 0;
  int s = 0, t = 0;  // target bidegree of d^r
  bool target_nonzero = false;
};

struct CollapseCertificate {
  std::string label;
  bool collapses = true;
  std::vector<std::string> reasons;               // one line per generator
  std::vector<DifferentialCandidate> candidates;  // targets in columns >= 0
};

/// d^r : (s, t) -> (s - r, t + r - 1).  A generator in column s can only
/// support d^r for 2 <= r <= s; every such target is checked against the
/// page's monomials and the base degrees.
CollapseCertificate bokstedt_collapse_check(const E2Page& page);
Json collapse_to_json(const CollapseCertificate& c);

/// Page for K(i)_*THH(E(n)): the base K(i)_*E(n) with dw_{i+1}..dw_n in
/// bidegree (1, 2p^j - 2); for i = 0 the rational page with dv_1..dv_n.
E2Page ki_thh_page(std::uint32_t p, int n, int i);

/// One summand Sigma^degree L_level E(n); level n means unlocalized.
struct SummandEntry {
  int level = 0;
  std::int64_t degree = 0;
  std::vector<int> label;  // k with dt_k in the labelling monomial
};

struct SummandSpec {
  std::uint32_t p = 3;
  int n = 1;
  std::vector<SummandEntry> entries;
};

std::string label_name(const std::vector<int>& label);  // "1", "dt1", "dt1dt2"
std::int64_t label_degree(std::uint32_t p, const std::vector<int>& label);

/// The cube: one summand per monomial w in dt_1..dt_n, localized at level
/// n - max(w) and suspended by |w|.
SummandSpec conjecture_spec(std::uint32_t p, int n);

struct DegreeMultiset {
  std::vector<std::int64_t> degrees;  // sorted
  std::int64_t modulus = 0;           // generator of the unit-degree lattice; 0 = exact
};

/// K(i) of Sigma^d L_j E survives iff i <= j.
std::vector<std::int64_t> ki_of_summand(int i, const SummandEntry& e);
DegreeMultiset ki_of_spec(const SummandSpec& spec, int i);

/// Unit-degree lattice of K(i)_*E(n): 2(p^n - 1) for i = 0, otherwise
/// gcd(2(p^i - 1), 2(p^n - 1)).
std::int64_t unit_lattice(std::uint32_t p, int n, int i);

/// {sum over S of (2p^j - 1) : S subset of {i+1..n}}.
DegreeMultiset thh_ki_expected(std::uint32_t p, int n, int i);

struct MultisetComparison {
  bool consistent = false;  // equal modulo the lattice
  bool exact = false;       // equal as integer multisets
  std::int64_t modulus = 0;
  std::vector<std::int64_t> left_only, right_only;  // residues without a partner
};

MultisetComparison compare_multisets(const DegreeMultiset& a, const DegreeMultiset& b);

struct ConjectureVerdict {
  std::uint32_t p = 3;
  int n = 1, i = 0;
  DegreeMultiset conjectured, expected;
  MultisetComparison comparison;
  std::size_t expected_cardinality = 0;  // 2^{n-i}
  bool consistent = false;
  std::string verdict;
};

ConjectureVerdict conjecture_check(std::uint32_t p, int n, int i);
Json conjecture_to_json(const ConjectureVerdict& v);

struct SplittingCheck {
  std::uint32_t p = 3;
  std::vector<ConjectureVerdict> levels;  // i = 0, 1, 2
  std::vector<std::int64_t> k0_degrees;   // exact K(0) multiset
  std::vector<std::int64_t> stated;       // 0, 2p-1, 2p^2-1, 2p^2+2p-2
  std::vector<std::int64_t> reduced;      // K(0) without the unit summand
  bool levels_match = false;              // localization levels of the three suspended summands
  bool reduced_ok = false;
  std::string suspension_note;
  bool passed = false;
};

/// n = 2: THH(E) = E v Sigma^{2p-1} L_1 E v Sigma^{2p^2-1} L_0 E v Sigma^{2p^2+2p-2} L_0 E
/// against K(0), K(1), K(2) homology.
SplittingCheck e2_splitting_check(std::uint32_t p);
Json splitting_to_json(const SplittingCheck& c);

/// 2^{n-1} x 2 table: columns {1, dt_1}, rows monomials in dt_2..dt_n.
std::string cube_table_tex(std::uint32_t p, int n);

}  // namespace chromatic
