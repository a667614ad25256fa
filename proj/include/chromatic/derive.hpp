#pragma once

// Presentations of K(i)_*E(n) stages from the identity
//   [p]_{G}(f(x)) = f([p]_{F_i}(x))
// expanded over F_p with unknown right-unit images w_j and strict
// isomorphism coefficients t_j.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromatic/fgl.hpp"
#include "chromatic/presentation.hpp"

namespace chromatic {

struct DerivationOptions {
  LogScheme scheme = LogScheme::hazewinkel;
  /// Highest x-exponent compared; 0 selects p^{i+m} + p - 1.
  int trunc = 0;
  /// Upper bound on the number of terms held by any expanded series.
  std::size_t max_terms = 4'000'000;
  /// Refuse (p, i, n, m) outside i <= n <= 3, m <= 2 unless set.
  bool allow_large = false;
  const CoefficientCache* cache = nullptr;
};

/// A conclusion w_k = value drawn from the coefficient of x^{p^k}.
struct Identification {
  std::string generator;
  std::string value;
  std::int64_t exponent = 0;
};

struct StageRelation {
  int stage = 0;
  std::int64_t exponent = 0;  // p^{i+r}
  FpPoly lhs;                 // coefficient of x^{p^{i+r}} on the left, reduced by earlier stages
  FpPoly rhs;
  FpPoly relation;            // lhs - rhs
  Monomial lead;              // t_r^{p^i}
  FpPoly tail;                // the rewrite t_r^{p^i} -> tail
};

struct DerivationState {
  std::uint32_t p = 3;
  int i = 1, n = 1, m = 0;
  int trunc = 0;
  LogScheme scheme = LogScheme::hazewinkel;
  std::vector<Identification> identifications;
  std::vector<StageRelation> stages;
  std::size_t identities_checked = 0;  // exponents where both sides agreed outright
  FpPresentation presentation;        // B_m over B(i,n)_*
  FpLaw law;                          // right-unit law in the stage ring
  FpSeries f;                         // x +_G t_1 x^p +_G ... +_G t_m x^{p^m}
  FpSeries lhs, rhs;                  // both sides of the identity

  std::string v_name() const { return "v" + std::to_string(i); }
};

/// Generator names in monomial-priority order: t_m..t_1, w_n..w_{i+1}, v_i.
RingPtr stage_ring(std::uint32_t p, int i, int n, int m);

DerivationState derive_presentation(std::uint32_t p, int i, int n, int m, const DerivationOptions& opt = {});

/// Presentation of the first r stages only (B_r).
FpPresentation stage_presentation(const DerivationState& st, int r);

/// K(n)_*[t_1..t_m]/(v_n t_r^{p^n} - v_n^{p^r} t_r).
FpPresentation sigma_n_presentation(std::uint32_t p, int n, int m);

struct PresentationComparison {
  bool equal = true;
  std::vector<std::string> mismatches;
};

/// Each relation of one side reduces to zero modulo the other.
PresentationComparison compare_presentations(const FpPresentation& a, const FpPresentation& b);

/// g = -c^{-1} * rest when `relation` is c*g + rest with c a unit and rest free of g.
FpPoly solve_for(const FpPoly& relation, const std::string& generator);

struct EtaleReport {
  int stage = 0;
  FpPoly relation;
  std::map<std::string, FpPoly> differential;  // "dt1" -> coefficient, ...
  std::string solved_for;                      // "dt_r"
  FpPoly solving_coefficient;
  std::string unit_certificate;
  int solving_power = 0;  // exponent of v_i in the solving coefficient
  std::map<std::string, FpPoly> solution;  // dt_r in base differentials
  std::optional<std::string> inverse;      // dw = c * dt when dt_r has a single unit term
  std::size_t basis_size = 0;
  std::size_t expected_basis_size = 0;
  bool etale = false;
  std::string verdict;
};

/// Relative Kähler differential of the stage-r relation over K(i)_*.
EtaleReport kahler_check(const DerivationState& st, int r);
/// Jacobian certificate for relation `index` of P in the generator g.
EtaleReport etale_certificate(const FpPresentation& P, std::size_t index, const std::string& g);

Json etale_report_to_json(const EtaleReport& rep);

/// Does p^r equal the sum of p^e over the given (distinct, >= 1) exponents?
bool ppower_is_sum(std::uint32_t p, int r, const std::vector<int>& exponents);

struct PPowerSweep {
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
};
/// All r in [0, max_exp] against all subsets of {1..max_exp} of the given sizes.
PPowerSweep ppower_sweep(std::uint32_t p, int max_exp, int min_size, int max_size);

struct CrossTermAudit {
  int stage = 0;
  std::int64_t exponent = 0;
  FpPoly linear;        // t_r v_i^{p^r}
  FpPoly cross;         // everything else on the right at x^{p^{i+r}}
  FpPoly lhs_cross;     // the same split for the left-hand side, for information
  bool involves_later = false;  // a cross term mentions t_j with j >= r
  bool passed = true;
  std::string note;
};

CrossTermAudit cross_term_audit(const DerivationState& st, int r);

Json derivation_to_json(const DerivationState& st);
std::string derivation_to_tex(const DerivationState& st);

}  // namespace chromatic
