#include <doctest.h>

#include <filesystem>

#include "chromatic/derive.hpp"
#include "chromatic/errors.hpp"

using namespace chromatic;

namespace {

struct FrozenRule {
  std::uint32_t p;
  int i, n, m;
  int stage;
  const char* lead;
  const char* tail;
};

// From tests/oracles/fgl_oracle.py (dense series, no shared code).
const FrozenRule kRules[] = {
    {3, 1, 2, 2, 1, "t1^3", "t1*v1^2 - w2*v1^-1"},
    {3, 1, 2, 2, 2, "t2^3",
     "t2*v1^8 - t1*w2*v1^7 + t1^2*w2*v1^6 + w2^2*v1^4 - t1*w2^2*v1^3 + w2^4*v1^-4"},
    {3, 1, 3, 2, 2, "t2^3",
     "t2*v1^8 - t1*w2*v1^7 + t1^2*w2*v1^6 + w2^2*v1^4 - t1*w2^2*v1^3 - w3*v1^-1 + w2^4*v1^-4"},
    {3, 2, 3, 1, 1, "t1^9", "t1*v2^2 - w3*v2^-1"},
    {5, 1, 2, 1, 1, "t1^5", "t1*v1^4 - w2*v1^-1"},
};

std::string value_of(const DerivationState& st, const std::string& g) {
  for (const auto& id : st.identifications)
    if (id.generator == g) return id.value;
  return "(none)";
}

}  // namespace

TEST_CASE("stage rewrite rules match the oracle") {
  for (const auto& fr : kRules) {
    const auto st = derive_presentation(fr.p, fr.i, fr.n, fr.m);
    const auto& P = st.presentation;
    const auto& s = st.stages.at(static_cast<std::size_t>(fr.stage - 1));
    CAPTURE(fr.tail);
    CHECK(P.ring()->format(s.lead) == fr.lead);
    CHECK(s.tail == P.parse(fr.tail));
    CHECK(s.exponent == ipow(fr.p, fr.i + fr.stage));
  }
}

TEST_CASE("low exponents identify the right-unit images w_k with k <= i") {
  CHECK(value_of(derive_presentation(3, 1, 2, 1), "w1") == "v1");
  const auto st = derive_presentation(3, 2, 3, 1);
  CHECK(value_of(st, "w1") == "0");
  CHECK(value_of(st, "w2") == "v2");
}

TEST_CASE("first stage relation and the solved right unit") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto st = derive_presentation(p, 1, 2, 1);
    const auto& P = st.presentation;
    const auto P_ = std::to_string(p);
    CHECK(st.stages.at(0).lhs == P.parse("t1^" + P_ + "*v1 + w2"));
    CHECK(st.stages.at(0).rhs == P.parse("t1*v1^" + P_));
    CHECK(solve_for(st.stages.at(0).relation, "w2") == P.parse("t1*v1^" + P_ + " - t1^" + P_ + "*v1"));
  }
}

TEST_CASE("solve_for needs a unit coefficient") {
  const auto st = derive_presentation(3, 1, 2, 1);
  CHECK_THROWS(solve_for(st.stages.at(0).relation, "t1"));
}

TEST_CASE("the stage relations are etale over K(i)_*") {
  const auto st = derive_presentation(3, 1, 2, 2);
  for (int r = 1; r <= 2; ++r) {
    const auto rep = kahler_check(st, r);
    CHECK(rep.etale);
    CHECK(rep.solved_for == "dt" + std::to_string(r));
  }
  const auto one = derive_presentation(3, 1, 2, 1);
  const auto rep = kahler_check(one, 1);
  REQUIRE(rep.inverse.has_value());
  CHECK(*rep.inverse == "dw2 = v1^3*dt1");
  CHECK(rep.basis_size == 3);
  CHECK(rep.expected_basis_size == 3);
  CHECK(etale_certificate(one.presentation, 0, "t1").etale);
}

TEST_CASE("i = n stages agree with Sigma(n)") {
  for (std::uint32_t p : {3u, 5u})
    for (auto [n, m] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 1}}) {
      const auto cmp =
          compare_presentations(derive_presentation(p, n, n, m).presentation, sigma_n_presentation(p, n, m));
      CHECK(cmp.equal);
    }
}

TEST_CASE("stage presentations are nested") {
  const auto st = derive_presentation(3, 1, 2, 2);
  CHECK(stage_presentation(st, 1).relations().size() == 1);
  CHECK(stage_presentation(st, 2).relations().size() == 2);
  CHECK(stage_presentation(st, 0).relations().empty());
  // same rule as the one-stage derivation, over a ring that also carries t2
  CHECK(stage_presentation(st, 1).rules().at(0).tail.to_string() ==
        derive_presentation(3, 1, 2, 1).presentation.rules().at(0).tail.to_string());
}

TEST_CASE("no p-power is a sum of several distinct p-powers") {
  CHECK(ppower_is_sum(3, 2, {2}));
  CHECK_FALSE(ppower_is_sum(3, 2, {1, 2}));
  CHECK_FALSE(ppower_is_sum(5, 3, {1, 2}));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto sw = ppower_sweep(p, 8, 2, 4);
    CHECK(sw.checked > 0);
    CHECK(sw.counterexamples.empty());
  }
}

TEST_CASE("cross terms in the formal sum") {
  const auto st = derive_presentation(3, 1, 2, 2);
  const auto a1 = cross_term_audit(st, 1);
  CHECK(a1.passed);
  CHECK(a1.cross.is_zero());
  CHECK(a1.linear == st.presentation.parse("t1*v1^3"));
  const auto a2 = cross_term_audit(st, 2);
  CHECK(a2.passed);
  CHECK_FALSE(a2.involves_later);
  CHECK_THROWS_AS(cross_term_audit(st, 3), PreconditionError);
}

TEST_CASE("derivation guards") {
  CHECK_THROWS_AS(derive_presentation(4, 1, 2, 1), PreconditionError);
  CHECK_THROWS_AS(derive_presentation(3, 3, 2, 1), PreconditionError);
  CHECK_THROWS_AS(derive_presentation(3, 1, 4, 1), PreconditionError);
  CHECK_THROWS_AS(derive_presentation(3, 1, 2, 3), PreconditionError);
  DerivationOptions bad;
  bad.trunc = 8;  // below p^{i+m}
  CHECK_THROWS_AS(derive_presentation(3, 1, 2, 1, bad), PreconditionError);
  DerivationOptions big;
  big.allow_large = true;
  CHECK(derive_presentation(3, 1, 4, 1, big).presentation.module_basis().size() == 3);
}

TEST_CASE("Araki and Hazewinkel logarithms give the same presentation") {
  DerivationOptions araki;
  araki.scheme = LogScheme::araki;
  const auto a = derive_presentation(3, 1, 3, 2, araki).presentation;
  const auto h = derive_presentation(3, 1, 3, 2).presentation;
  CHECK(compare_presentations(a, h).equal);
}

TEST_CASE("derivations are deterministic and cache-transparent") {
  const auto dir = std::filesystem::temp_directory_path() / "chromatic-unit-derive";
  std::filesystem::remove_all(dir);
  CoefficientCache cache(dir);
  DerivationOptions cached;
  cached.cache = &cache;
  const auto plain = dump_canonical(derivation_to_json(derive_presentation(3, 1, 2, 2)));
  CHECK(plain == dump_canonical(derivation_to_json(derive_presentation(3, 1, 2, 2))));
  CHECK(plain == dump_canonical(derivation_to_json(derive_presentation(3, 1, 2, 2, cached))));  // miss
  CHECK(plain == dump_canonical(derivation_to_json(derive_presentation(3, 1, 2, 2, cached))));  // hit
  CHECK_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("TeX rendering of the first stage") {
  const auto tex = derivation_to_tex(derive_presentation(3, 1, 2, 1));
  CHECK(tex.find("t_{1}^{3} v_{1} + w_{2} = t_{1} v_{1}^{3}") != std::string::npos);
}
