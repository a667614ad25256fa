#include <doctest.h>

#include <random>

#include "chromatic/derive.hpp"
#include "chromatic/errors.hpp"
#include "chromatic/matrix.hpp"
#include "chromatic/serialize.hpp"

using namespace chromatic;

namespace {

FpPresentation b1_p3() { return derive_presentation(3, 1, 2, 1).presentation; }

/// Random homogeneous element: sample monomials, keep one degree class.
/// t-exponents stay a little past p^i; reverse-order rewriting is
/// exponential in them.
FpPoly random_homogeneous(const FpPresentation& P, int t_max, std::mt19937& rng) {
  const auto& ring = P.ring();
  std::map<int, std::vector<Monomial>> by_degree;
  std::uniform_int_distribution<int> small(0, 4), signed_exp(-4, 4);
  for (int k = 0; k < 60; ++k) {
    Monomial m;
    for (std::size_t g = 0; g < ring->size(); ++g) {
      const auto& gen = ring->generator(g);
      if (gen.invertible())
        m[g] = signed_exp(rng);
      else if (gen.name[0] == 't')
        m[g] = std::uniform_int_distribution<int>(0, t_max)(rng);
      else
        m[g] = small(rng);
    }
    by_degree[ring->degree(m)].push_back(m);
  }
  const std::vector<Monomial>* best = nullptr;
  for (const auto& [d, v] : by_degree)
    if (!best || v.size() > best->size()) best = &v;
  FpPoly out(ring);
  std::uniform_int_distribution<std::uint32_t> coeff(1, P.prime() - 1);
  for (const auto& m : *best) out += FpPoly::monomial(ring, m, coeff(rng));
  return out;
}

}  // namespace

TEST_CASE("polynomial arithmetic over F_3") {
  auto ring = make_ring(3, {{"t1", 4}, {"v1", 4, GeneratorKind::laurent}});
  auto a = parse_poly<PrimeField>(ring, "t1*v1 + v1^2");
  auto b = parse_poly<PrimeField>(ring, "t1 - v1");
  CHECK((a * b).to_string() == "t1^2*v1 - v1^3");
  CHECK((a + a + a).is_zero());
  CHECK(a.is_homogeneous());
  CHECK(*a.degree() == 8);
  CHECK(parse_poly<PrimeField>(ring, "v1^-2").inverse_unit() == parse_poly<PrimeField>(ring, "v1^2"));
  CHECK(parse_poly<PrimeField>(ring, "t1 + v1").frobenius(3) == parse_poly<PrimeField>(ring, "t1^3 + v1^3"));
  CHECK(a.derivative(ring->index_of("t1")) == parse_poly<PrimeField>(ring, "v1"));
}

TEST_CASE("rational coefficients stay exact") {
  auto ring = make_ring(0, {{"x", 2}});
  auto f = parse_poly<Rationals>(ring, "1/3*x");
  CHECK((f * f).to_string() == "1/9*x^2");
  CHECK((f.scaled(mpq_class(3)) - parse_poly<Rationals>(ring, "x")).is_zero());
}

TEST_CASE("exterior generators anticommute") {
  auto ring = make_ring(3, {{"a", 5, GeneratorKind::exterior, 1}, {"b", 17, GeneratorKind::exterior, 1}});
  auto a = FpPoly::generator(ring, "a"), b = FpPoly::generator(ring, "b");
  CHECK((a * a).is_zero());
  CHECK((a * b + b * a).is_zero());
}

TEST_CASE("normal form in B_1 at p = 3, i = 1, n = 2") {
  const auto P = b1_p3();
  CHECK(P.normal_form(P.parse("t1^3")) == P.parse("t1*v1^2 - w2*v1^-1"));
  CHECK(P.normal_form(FpPoly(P.ring())).is_zero());
  // (v1^2 t1 - v1^-1 w2)^2 with -2 = 1 mod 3
  CHECK(P.normal_form(P.parse("t1^6")) == P.parse("t1^2*v1^4 + t1*w2*v1 + w2^2*v1^-2"));
  const auto e = P.parse("t1^5*w2 + t1^5*v1^4");
  const auto nf = P.normal_form(e);
  CHECK(P.normal_form(nf) == nf);
  CHECK(*nf.degree() == *e.degree());
}

TEST_CASE("normal form budget guards runaway rewriting") {
  const auto P = b1_p3();
  NormalFormOptions opt;
  opt.step_budget = 2;
  CHECK_THROWS_AS(P.normal_form(P.parse("t1^30"), opt), BudgetExceeded);
}

TEST_CASE("rewriting is confluent and multiplicative on random elements") {
  std::mt19937 rng(20240601);
  const std::vector<std::tuple<std::uint32_t, int, int, int>> cases{
      {3, 1, 2, 2}, {3, 1, 3, 2}, {5, 1, 2, 2}, {3, 2, 3, 2}, {5, 2, 2, 1}};
  NormalFormOptions rev;
  rev.order = RuleOrder::reverse;
  for (auto [p, i, n, m] : cases) {
    const auto P = derive_presentation(p, i, n, m).presentation;
    const int t_max = static_cast<int>(ipow(p, i)) + static_cast<int>(p);
    int disagreements = 0, non_multiplicative = 0;
    for (int k = 0; k < 1000; ++k) {
      const auto e = random_homogeneous(P, t_max, rng);
      const auto f = P.normal_form(e);
      if (!(f == P.normal_form(e, rev))) ++disagreements;
      if (!f.is_zero() && (!f.is_homogeneous() || *f.degree() != *e.degree())) ++disagreements;
      if (k < 100) {
        const auto g = random_homogeneous(P, t_max, rng);
        if (!(P.normal_form(e * g) == P.normal_form(f * P.normal_form(g)))) ++non_multiplicative;
      }
    }
    CAPTURE(p);
    CAPTURE(i);
    CAPTURE(n);
    CAPTURE(m);
    CHECK(disagreements == 0);
    CHECK(non_multiplicative == 0);
  }
}

TEST_CASE("module bases of the stages have p^{i m} elements") {
  for (std::uint32_t p : {3u, 5u})
    for (int n = 1; n <= 3; ++n)
      for (int i = 1; i <= n; ++i)
        for (int m = 0; m <= 2; ++m) {
          const auto P = derive_presentation(p, i, n, m).presentation;
          CAPTURE(p);
          CAPTURE(i);
          CAPTURE(n);
          CAPTURE(m);
          CHECK(P.module_basis().size() == static_cast<std::size_t>(ipow(p, i * m)));
        }
  const auto B1 = b1_p3();
  const auto basis = B1.module_basis();
  const auto& ring = *B1.ring();
  REQUIRE(basis.size() == 3);
  CHECK(ring.format(basis[0]) == "1");
  CHECK(ring.format(basis[1]) == "t1");
  CHECK(ring.format(basis[2]) == "t1^2");
  const auto b2 = derive_presentation(3, 1, 3, 2).presentation.module_basis();
  CHECK(b2.size() == 9);
}

TEST_CASE("module basis needs a bounding relation") {
  FpPresentation P(make_ring(3, {{"t1", 4}}));
  CHECK_THROWS_AS(P.module_basis(), MathError);
}

TEST_CASE("hilbert counts") {
  FpPresentation F(make_ring(3, {{"v1", 4}}));
  const auto c = F.hilbert_counts(0, 12);
  for (int d = 0; d <= 12; ++d) CHECK(c.at(d) == (d % 4 == 0 ? 1u : 0u));

  QPresentation L(make_ring(0, {{"dv1", 5, GeneratorKind::exterior, 1}, {"dv2", 17, GeneratorKind::exterior, 1}}));
  const auto e = L.hilbert_counts(0, 22);
  std::map<int, std::uint64_t> nonzero;
  for (auto [d, k] : e)
    if (k) nonzero[d] = k;
  CHECK(nonzero == std::map<int, std::uint64_t>{{0, 1}, {5, 1}, {17, 1}, {22, 1}});

  // B(1,2)_* = K(1)_*[w2^{+-1}] over the graded field K(1)_*
  FpPresentation B(make_ring(3, {{"w2", 16, GeneratorKind::laurent}, {"v1", 4, GeneratorKind::laurent}}), {"w2"},
                   {"v1"});
  const auto b = B.hilbert_counts(-32, 48);
  for (int d = -32; d <= 48; ++d) CHECK(b.at(d) == (d % 16 == 0 ? 1u : 0u));

  FpPresentation two(make_ring(3, {{"a", 4, GeneratorKind::laurent}, {"b", 16, GeneratorKind::laurent}}));
  CHECK_THROWS_AS(two.hilbert_counts(0, 10), MathError);
  FpPresentation zero(make_ring(3, {{"z", 0}}));
  CHECK_THROWS_AS(zero.hilbert_counts(0, 10), MathError);
  FpPresentation mixed(make_ring(3, {{"a", 4}, {"b", -4}}));
  CHECK_THROWS_AS(mixed.hilbert_counts(0, 10), MathError);
}

TEST_CASE("relations must be homogeneous and oriented") {
  auto ring = make_ring(3, {{"t1", 4}, {"v1", 4, GeneratorKind::laurent}});
  FpPresentation P(ring);
  CHECK_THROWS_AS(P.add_relation(parse_poly<PrimeField>(ring, "t1 + t1^2")), MathError);
  CHECK_THROWS_AS(P.add_relation(parse_poly<PrimeField>(ring, "v1")), MathError);
  CHECK_THROWS_AS(P.add_relation(FpPoly(ring)), PreconditionError);
}

TEST_CASE("exact rank") {
  ExactMatrix<PrimeField> id(3, 3, 3);
  for (std::size_t k = 0; k < 3; ++k) id.add(k, k, 1);
  CHECK(exact_rank(id) == 3);
  CHECK(exact_rank(ExactMatrix<PrimeField>(4, 5, 3)) == 0);
  CHECK(exact_rank(ExactMatrix<Rationals>(0, 0, 0)) == 0);
}

TEST_CASE("exact rank agrees with dense elimination and with lifting") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    const std::uint32_t p = trial % 2 ? 3 : 5;
    ExactMatrix<PrimeField> a(rows, cols, p);
    ExactMatrix<Rationals> q(rows, cols, 0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        if (rng() % 3 == 0) continue;  // keep it sparse
        const long v = static_cast<long>(rng() % p);
        a.add(r, c, PrimeField::from_int(v, p));
        q.add(r, c, mpq_class(v));
      }
    const auto rp = exact_rank(a), rq = exact_rank(q);
    CHECK(rp == dense_rank(a));
    CHECK(rq == dense_rank(q));
    CHECK(rp <= rq);  // reduction mod p can only lose rank
  }
}

TEST_CASE("presentation JSON round trip is byte-stable") {
  const auto P = derive_presentation(3, 1, 3, 2).presentation;
  const auto text = dump_canonical(presentation_to_json(P));
  const auto back = presentation_from_json(Json::parse(text));
  REQUIRE(std::holds_alternative<FpPresentation>(back));
  const auto& Q = std::get<FpPresentation>(back);
  CHECK(dump_canonical(presentation_to_json(Q)) == text);
  CHECK(Q.normal_form(Q.parse("t2^3")) == P.normal_form(P.parse("t2^3")));
  CHECK_THROWS_AS(presentation_from_json(Json::parse(R"({"schema": "other"})")), FormatError);
}
