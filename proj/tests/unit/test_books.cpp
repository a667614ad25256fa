#include <doctest.h>

#include <algorithm>
#include <random>

#include "chromatic/books.hpp"
#include "chromatic/errors.hpp"

using namespace chromatic;

TEST_CASE("labels and suspension degrees") {
  CHECK(label_name({}) == "1");
  CHECK(label_name({1}) == "dt1");
  CHECK(label_name({1, 2}) == "dt1dt2");
  CHECK(label_degree(3, {}) == 0);
  CHECK(label_degree(3, {1}) == 5);
  CHECK(label_degree(3, {2}) == 17);
  CHECK(label_degree(3, {1, 2}) == 22);
  CHECK(label_degree(5, {1, 2}) == 9 + 49);
}

TEST_CASE("cube for n = 2 at p = 3") {
  const auto spec = conjecture_spec(3, 2);
  REQUIRE(spec.entries.size() == 4);
  std::vector<std::tuple<int, std::int64_t, std::string>> got;
  for (const auto& e : spec.entries) got.emplace_back(e.level, e.degree, label_name(e.label));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::tuple<int, std::int64_t, std::string>>{
                   {0, 17, "dt2"}, {0, 22, "dt1dt2"}, {1, 5, "dt1"}, {2, 0, "1"}});
  CHECK_THROWS_AS(conjecture_spec(3, 5), PreconditionError);
}

TEST_CASE("K(i) survival and the unit lattice") {
  const SummandEntry e{1, 5, {1}};
  CHECK(ki_of_summand(0, e) == std::vector<std::int64_t>{5});
  CHECK(ki_of_summand(1, e) == std::vector<std::int64_t>{5});
  CHECK(ki_of_summand(2, e).empty());
  CHECK(unit_lattice(3, 2, 0) == 16);
  CHECK(unit_lattice(3, 2, 1) == 4);
  CHECK(unit_lattice(3, 2, 2) == 16);
  CHECK(unit_lattice(7, 4, 2) == 96);
  CHECK(unit_lattice(3, 3, 2) == 4);  // gcd(16, 52)
}

TEST_CASE("expected K(i) degrees have 2^{n-i} elements") {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i <= n; ++i) {
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(i);
        CHECK(thh_ki_expected(p, n, i).degrees.size() == (std::size_t{1} << (n - i)));
        CHECK(ki_of_spec(conjecture_spec(p, n), i).degrees.size() == (std::size_t{1} << (n - i)));
      }
  CHECK(thh_ki_expected(3, 2, 1).degrees == std::vector<std::int64_t>{0, 17});
  CHECK(thh_ki_expected(3, 2, 0).degrees == std::vector<std::int64_t>{0, 5, 17, 22});
}

TEST_CASE("fewer summands survive at higher height") {
  for (int n = 1; n <= 4; ++n) {
    const auto spec = conjecture_spec(5, n);
    for (int i = 1; i <= n; ++i)
      CHECK(ki_of_spec(spec, i).degrees.size() <= ki_of_spec(spec, i - 1).degrees.size());
  }
}

TEST_CASE("multiset comparison modulo a lattice") {
  const auto c = compare_multisets({{0, 5}, 4}, {{0, 17}, 4});
  CHECK(c.consistent);
  CHECK_FALSE(c.exact);
  CHECK(c.modulus == 4);
  const auto d = compare_multisets({{0, 6}, 4}, {{0, 17}, 4});
  CHECK_FALSE(d.consistent);
  CHECK(d.left_only == std::vector<std::int64_t>{2});
  CHECK(d.right_only == std::vector<std::int64_t>{1});
  const auto e = compare_multisets({{0, 5, 17, 22}, 0}, {{0, 5, 17, 22}, 0});
  CHECK(e.exact);
  CHECK(e.consistent);
  CHECK_FALSE(compare_multisets({{0, 0}, 4}, {{0}, 4}).consistent);  // multiplicities count
}

TEST_CASE("cube decomposition is consistent with K(i)_*THH(E(n))") {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i <= n; ++i) {
        const auto v = conjecture_check(p, n, i);
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(i);
        CHECK(v.consistent);
        CHECK(v.expected_cardinality == (std::size_t{1} << (n - i)));
      }
  const auto v = conjecture_check(3, 2, 0);
  CHECK(v.comparison.exact);
  CHECK(conjecture_check(7, 4, 2).comparison.modulus == 96);
  CHECK(conjecture_to_json(v).contains("verdict"));
}

TEST_CASE("THH(E(2)) splitting") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto c = e2_splitting_check(p);
    const std::int64_t P = p;
    CAPTURE(p);
    CHECK(c.passed);
    CHECK(c.levels_match);
    CHECK(c.reduced_ok);
    CHECK(c.stated == std::vector<std::int64_t>{0, 2 * P - 1, 2 * P * P - 1, 2 * P * P + 2 * P - 2});
    CHECK(c.k0_degrees == c.stated);
    REQUIRE(c.levels.size() == 3);
    CHECK(c.levels[2].conjectured.degrees == std::vector<std::int64_t>{0});
  }
  CHECK(splitting_to_json(e2_splitting_check(3)).contains("verdict"));
}

TEST_CASE("Bokstedt pages for K(i)_*THH(E(n)) collapse") {
  for (std::uint32_t p : {3u, 5u})
    for (int n = 1; n <= 3; ++n)
      for (int i = 0; i <= n; ++i) {
        const auto page = ki_thh_page(p, n, i);
        CHECK(page.generators.size() == static_cast<std::size_t>(n - i));
        CHECK(bokstedt_collapse_check(page).collapses);
      }
  const auto page = ki_thh_page(3, 2, 1);
  REQUIRE(page.generators.size() == 1);
  CHECK(page.generators[0].name == "dw2");
  CHECK(page.generators[0].s == 1);
  CHECK(page.generators[0].t == 16);
}

TEST_CASE("pages in columns 0 and 1 always collapse") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    E2Page page;
    page.label = "random";
    const int k = 1 + static_cast<int>(rng() % 5);
    for (int g = 0; g < k; ++g)
      page.generators.push_back({"x" + std::to_string(g), static_cast<int>(rng() % 2), static_cast<int>(rng() % 40)});
    if (rng() % 2) page.base_polynomial.push_back(2 + 2 * static_cast<int>(rng() % 10));
    if (rng() % 2) page.base_laurent.push_back(2 + 2 * static_cast<int>(rng() % 10));
    const auto c = bokstedt_collapse_check(page);
    CHECK(c.collapses);
    CHECK(c.candidates.empty());
  }
}

TEST_CASE("a differential with a live target blocks the certificate") {
  E2Page page;
  page.label = "blocked";
  page.generators = {{"x", 2, 3}};
  page.base_polynomial = {4};  // d^2 x lands on (0, 4)
  const auto c = bokstedt_collapse_check(page);
  CHECK_FALSE(c.collapses);
  REQUIRE(c.candidates.size() == 1);
  CHECK(c.candidates[0].s == 0);
  CHECK(c.candidates[0].t == 4);
  CHECK(c.candidates[0].target_nonzero);

  E2Page dead = page;
  dead.base_polynomial = {6};
  CHECK(bokstedt_collapse_check(dead).collapses);

  // targets of both d^2 and d^3 exist as bidegrees but hold nothing
  E2Page two;
  two.generators = {{"x", 3, 8}, {"y", 1, 4}};
  two.base_laurent = {4};
  const auto t = bokstedt_collapse_check(two);
  CHECK(t.collapses);
  CHECK(t.candidates.size() == 2);
}

TEST_CASE("page serialization") {
  const auto page = ki_thh_page(3, 3, 1);
  const auto back = page_from_json(page_to_json(page));
  CHECK(dump_canonical(page_to_json(back)) == dump_canonical(page_to_json(page)));
  CHECK(back.generators.size() == 2);
  CHECK_THROWS_AS(page_from_json(Json::parse(R"({"schema": "x"})")), FormatError);
  CHECK(collapse_to_json(bokstedt_collapse_check(page)).contains("collapses"));
}

TEST_CASE("cube table in TeX") {
  const auto tex = cube_table_tex(3, 2);
  CHECK(tex.find("\\begin{tabular}") != std::string::npos);
  CHECK(tex.find("L_{1}") != std::string::npos);
}
