#include <doctest.h>

#include <fstream>

#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"

using namespace chromatic;

namespace {

QPresentation dual_numbers() {
  QPresentation P(make_ring(0, {{"x", 2}}));
  P.add_relation(P.generator("x", 2));
  return P;
}

// F_3[t1]/(t1^3 - t1), from the first stage with v1 = 1
FpPresentation cubic() {
  return specialize(derive_presentation(3, 1, 1, 1).presentation, {{"v1", 1}}).algebra;
}

std::vector<EtaleReport> certify(const FpPresentation& P) {
  std::vector<EtaleReport> out;
  for (std::size_t k = 0; k < P.rules().size(); ++k) {
    const auto& lead = P.rules()[k].lead;
    for (std::size_t g = 0; g < P.ring()->size(); ++g)
      if (lead[g] != 0) out.push_back(etale_certificate(P, k, P.ring()->generator(g).name));
  }
  return out;
}

}  // namespace

TEST_CASE("dual numbers: bar complex against the frozen oracle table") {
  std::ifstream f(CHROMATIC_FIXTURE_DIR "/dual_numbers_bar.json");
  REQUIRE(f);
  const auto frozen = table_from_json(Json::parse(f));
  const FiniteAlgebra<Rationals> A(dual_numbers());
  CHECK(A.dim() == 2);
  const auto bar = hh_bar(A, 4, 0, 10);
  CHECK(compare_methods(bar, frozen).empty());
  // HH_0 is the whole algebra: one class in degree 0 and one in degree 2
  CHECK(bar.rank(0, 0) == 1);
  CHECK(bar.rank(0, 2) == 1);
  CHECK(bar_window(A, 4) == std::pair{0, 10});
}

TEST_CASE("cubic etale algebra over F_3") {
  const auto P = cubic();
  CHECK(P.rules().at(0).tail == P.parse("t1"));
  const FiniteAlgebra<PrimeField> A(P);
  REQUIRE(A.dim() == 3);
  const auto bar = hh_bar(A, 4, 0, 0);
  CHECK(bar.ranks == std::map<std::pair<int, int>, std::uint64_t>{{{0, 0}, 3}});
  const auto hkr = hh_hkr(P, {}, certify(P)).table(4, 0, 0);
  CHECK(compare_methods(bar, hkr).empty());
}

TEST_CASE("bar resolution differential has rank 6 on the cubic algebra") {
  const FiniteAlgebra<PrimeField> A(cubic());
  const auto b1 = bar_resolution_differential(A, 1);  // A^{(x)3} -> A^{(x)2}
  CHECK(b1.rows() * b1.cols() == 9 * 27);
  CHECK(exact_rank(b1) == 6);
  CHECK(dense_rank(b1) == 6);
  // exactness of the resolution: b'_0 b'_1 = 0 and rank b'_0 + rank b'_1 = dim A^{(x)2}
  const auto b0 = bar_resolution_differential(A, 0);
  CHECK(exact_rank(b0) == 3);
  CHECK(exact_rank(b0) + exact_rank(b1) == 9);
  const auto s = bar_slice(A, 0, 2);
  CHECK(exact_rank(s.differentials.at(2)) == 6);
}

TEST_CASE("normalized complex squares to zero") {
  const FiniteAlgebra<Rationals> A(dual_numbers());
  for (int t = 0; t <= 10; t += 2) {
    const auto s = bar_slice(A, t, 4);
    for (std::size_t k = 1; k + 1 < s.differentials.size(); ++k)
      if (s.differentials[k].rows() && s.differentials[k + 1].cols())
        CHECK((s.differentials[k] * s.differentials[k + 1]).is_zero());
  }
  const FiniteAlgebra<PrimeField> B(specialize(derive_presentation(3, 1, 2, 2).presentation, {{"v1", 1}, {"w2", 1}}).algebra);
  CHECK(B.dim() == 9);
  const auto s = bar_slice(B, 0, 2);
  CHECK(s.dims.at(1) == 9 * 8);
  CHECK((s.differentials.at(1) * s.differentials.at(2)).is_zero());
}

TEST_CASE("bar complex column budget") {
  const FiniteAlgebra<PrimeField> A(cubic());
  BarOptions opt;
  opt.max_columns = 10;
  CHECK_THROWS_AS(hh_bar(A, 3, 0, 0, opt), BudgetExceeded);
}

TEST_CASE("finite algebras need a finite even-degree basis") {
  QPresentation free(make_ring(0, {{"x", 2}}));
  CHECK_THROWS(FiniteAlgebra<Rationals>(free));
  QPresentation odd(make_ring(0, {{"x", 3}}));
  odd.add_relation(odd.generator("x", 2));
  CHECK_THROWS(FiniteAlgebra<Rationals>(odd));
}

TEST_CASE("Koszul generating function") {
  const auto t = hh_koszul({{"v1", 4, false}}, 2, 0, 8);
  CHECK(t.ranks == std::map<std::pair<int, int>, std::uint64_t>{
                       {{0, 0}, 1}, {{0, 4}, 1}, {{0, 8}, 1}, {{1, 4}, 1}, {{1, 8}, 1}});
  // Laurent generator over a graded field: one class per period in s = 0, 1
  const auto l = hh_koszul({{"v1", 4, true}}, 2, -8, 8);
  for (int d = -8; d <= 8; ++d) {
    CHECK(l.rank(0, d) == (d == 0 ? 1u : 0u));
    CHECK(l.rank(1, d) == (d == 4 ? 1u : 0u));
  }
  // two polynomial generators: HH_2 starts at |x| + |y|
  const auto two = hh_koszul({{"x", 2, false}, {"y", 4, false}}, 2, 0, 6);
  CHECK(two.rank(2, 6) == 1);
  CHECK(two.rank(2, 4) == 0);
  CHECK(two.rank(0, 4) == 2);
}

TEST_CASE("HKR agrees with the Koszul count for rational E(n)") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Generator> gens;
    std::vector<std::string> names;
    for (int k = 1; k <= n; ++k) {
      gens.push_back({"v" + std::to_string(k), 2 * (static_cast<int>(ipow(3, k)) - 1),
                      k == n ? GeneratorKind::laurent : GeneratorKind::polynomial});
      names.push_back(gens.back().name);
    }
    const QPresentation E(make_ring(0, gens), {}, {names.back()});
    const int width = 3 * gens.back().degree;
    const auto hkr = hh_hkr(E, names).table(n, 0, width);
    const auto kos = hh_koszul(koszul_generators(E), n, 0, width);
    CAPTURE(n);
    CHECK(compare_methods(hkr, kos).empty());
    CHECK(hkr.rank(1, 4) == 1);  // dv1
  }
}

TEST_CASE("HKR on the two-stage tower over K(1)_*E(2)") {
  const auto st = derive_presentation(3, 1, 2, 2);
  const auto ans = hh_hkr(st.presentation, {"w2"}, {kahler_check(st, 1), kahler_check(st, 2)});
  REQUIRE(ans.exterior.size() == 1);
  CHECK(ans.exterior[0].name == "dw2");
  CHECK(ans.exterior[0].internal_degree == 16);
  const auto t = ans.table(2, 0, 64);
  CHECK(t.rank(0, 0) > 0);
  for (int d = 16; d <= 64; ++d) CHECK(t.rank(1, d) == t.rank(0, d - 16));
  for (int d = 0; d <= 64; ++d) CHECK(t.rank(2, d) == 0);
  CHECK(ans.total_ring()->find("dw2").has_value());
}

TEST_CASE("HKR refuses what it cannot certify") {
  const auto st = derive_presentation(3, 1, 2, 2);
  CHECK_THROWS_AS(hh_hkr(st.presentation, {"w2"}, {kahler_check(st, 1)}), MathError);
  CHECK_THROWS_AS(hh_hkr(st.presentation, {"w2"}), MathError);
  CHECK_THROWS_AS(hh_hkr(st.presentation, {}, {kahler_check(st, 1), kahler_check(st, 2)}), MathError);
  CHECK_THROWS_AS(hh_hkr(dual_numbers(), {}), PreconditionError);
}

TEST_CASE("specialization keeps the module rank") {
  const auto st = derive_presentation(3, 1, 2, 2);
  const auto sp = specialize(st.presentation, {{"v1", 1}, {"w2", 1}});
  CHECK(sp.source_basis == 9);
  CHECK(sp.target_basis == 9);
  CHECK(sp.algebra.rules().at(0).tail == sp.algebra.parse("t1 - 1"));
  CHECK_THROWS(specialize(st.presentation, {{"v1", 0}}));
  CHECK_THROWS(specialize(st.presentation, {{"nope", 1}}));
}

TEST_CASE("table serialization") {
  BigradedTable t;
  t.method = "koszul";
  t.s_max = 2;
  t.t_lo = 0;
  t.t_hi = 8;
  t.set(0, 0, 1);
  t.set(1, 4, 2);
  t.set(2, 8, 0);
  CHECK(t.ranks.size() == 2);
  const auto back = table_from_json(table_to_json(t));
  CHECK(back.ranks == t.ranks);
  CHECK(back.t_hi == 8);
  CHECK(dump_canonical(table_to_json(back)) == dump_canonical(table_to_json(t)));
  CHECK(table_to_csv(t).find("1,4,2") != std::string::npos);
  CHECK(table_to_tex(t).find("\\begin{tabular}") != std::string::npos);
  CHECK_THROWS_AS(table_from_json(Json::parse(R"({"schema": "chromatic.hh/0"})")), FormatError);
}

TEST_CASE("method comparison") {
  BigradedTable a, b;
  a.s_max = b.s_max = 1;
  a.t_hi = 8;
  b.t_lo = 4;
  b.t_hi = 12;
  a.set(0, 4, 1);
  b.set(0, 4, 2);
  b.set(1, 12, 1);  // outside the common window
  const auto d = compare_methods(a, b);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.t_lo == 4);
  CHECK(d.t_hi == 8);
  CHECK(d.entries[0].left == 1);
  CHECK(d.entries[0].right == 2);
  BigradedTable c;
  c.t_lo = 20;
  c.t_hi = 30;
  CHECK_THROWS(compare_methods(a, c));
}
