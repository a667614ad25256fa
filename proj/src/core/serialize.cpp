#include "chromatic/serialize.hpp"

#include "chromatic/errors.hpp"

namespace chromatic {

namespace {

const char* kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::polynomial:
      return "polynomial";
    case GeneratorKind::laurent:
      return "laurent";
    case GeneratorKind::exterior:
      return "exterior";
  }
  return "polynomial";
}

GeneratorKind kind_from(const std::string& s) {
  if (s == "polynomial") return GeneratorKind::polynomial;
  if (s == "laurent") return GeneratorKind::laurent;
  if (s == "exterior") return GeneratorKind::exterior;
  throw FormatError("unknown generator kind '" + s + "'");
}

template <class Field>
std::string coeff_text(const typename Field::value_type& c) {
  return Field::to_string(c);
}

}  // namespace

Json monomial_to_json(const Ring& ring, const Monomial& m) {
  Json out = Json::object();
  for (std::size_t g = 0; g < ring.size(); ++g)
    if (m[g] != 0) out[ring.generator(g).name] = m[g];
  return out;
}

Monomial monomial_from_json(const Ring& ring, const Json& j) {
  if (!j.is_object()) throw FormatError("monomial must be an object of exponents");
  Monomial m;
  for (const auto& [name, e] : j.items()) m[ring.index_of(name)] = e.get<std::int32_t>();
  if (!ring.admissible(m)) throw FormatError("inadmissible exponents in monomial");
  return m;
}

Json ring_to_json(const Ring& ring) {
  Json gens = Json::array();
  for (const auto& g : ring.generators()) {
    Json e;
    e["name"] = g.name;
    e["degree"] = g.degree;
    e["kind"] = kind_name(g.kind);
    e["invertible"] = g.invertible();
    e["homological"] = g.homological;
    gens.push_back(std::move(e));
  }
  return gens;
}

RingPtr ring_from_json(const Json& j) {
  try {
    const auto prime = j.at("prime").get<std::uint32_t>();
    if (prime != 0) require_odd_prime(prime);
    std::vector<Generator> gens;
    for (const auto& e : j.at("generators")) {
      Generator g;
      g.name = e.at("name").get<std::string>();
      g.degree = e.at("degree").get<int>();
      if (e.contains("kind")) {
        g.kind = kind_from(e.at("kind").get<std::string>());
      } else if (e.value("invertible", false)) {
        g.kind = GeneratorKind::laurent;
      }
      if (e.contains("invertible") && e.at("invertible").get<bool>() != g.invertible())
        throw FormatError("generator " + g.name + ": 'invertible' contradicts 'kind'");
      g.homological = e.value("homological", 0);
      gens.push_back(std::move(g));
    }
    return make_ring(prime, std::move(gens));
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed presentation: ") + ex.what());
  }
}

template <class Field>
Json poly_to_json(const GradedPoly<Field>& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json e;
    e["coeff"] = coeff_text<Field>(t.coeff);
    e["exp"] = monomial_to_json(*f.ring(), t.mono);
    terms.push_back(std::move(e));
  }
  return terms;
}

template <class Field>
GradedPoly<Field> poly_from_json(const RingPtr& ring, const Json& j) {
  if (j.is_string()) return parse_poly<Field>(ring, j.get<std::string>());
  if (!j.is_array()) throw FormatError("polynomial must be a term list or a string");
  std::vector<typename GradedPoly<Field>::Term> terms;
  for (const auto& e : j) {
    const auto& c = e.at("coeff");
    const std::string text = c.is_string() ? c.get<std::string>() : c.dump();
    terms.push_back({monomial_from_json(*ring, e.at("exp")), Field::parse(text, ring->prime())});
  }
  return GradedPoly<Field>::from_terms(ring, std::move(terms));
}

template <class Field>
Json presentation_to_json(const Presentation<Field>& p) {
  Json out;
  out["schema"] = kPresentationSchema;
  out["prime"] = p.prime();
  out["generators"] = ring_to_json(*p.ring());
  out["base"] = p.base();
  out["ground"] = p.ground();
  Json rels = Json::array();
  for (std::size_t k = 0; k < p.relations().size(); ++k) {
    Json r;
    r["lead"] = monomial_to_json(*p.ring(), p.rules()[k].lead);
    r["terms"] = poly_to_json(p.relations()[k]);
    rels.push_back(std::move(r));
  }
  out["relations"] = std::move(rels);
  return out;
}

namespace {

template <class Field>
Presentation<Field> load_relations(const RingPtr& ring, const Json& j) {
  Presentation<Field> pres(ring, j.value("base", std::vector<std::string>{}),
                           j.value("ground", std::vector<std::string>{}));
  for (const auto& r : j.value("relations", Json::array())) {
    if (r.is_object() && r.contains("terms")) {
      auto rel = poly_from_json<Field>(ring, r.at("terms"));
      if (r.contains("lead"))
        pres.add_relation(rel, monomial_from_json(*ring, r.at("lead")));
      else
        pres.add_relation(rel);
    } else {
      pres.add_relation(poly_from_json<Field>(ring, r));
    }
  }
  return pres;
}

}  // namespace

AnyPresentation presentation_from_json(const Json& j) {
  if (j.contains("schema") && j.at("schema") != kPresentationSchema)
    throw FormatError("unsupported schema " + j.at("schema").dump());
  auto ring = ring_from_json(j);
  try {
    if (ring->prime() == 0) return load_relations<Rationals>(ring, j);
    return load_relations<PrimeField>(ring, j);
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("malformed presentation: ") + ex.what());
  }
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

template Json poly_to_json(const GradedPoly<Rationals>&);
template Json poly_to_json(const GradedPoly<PrimeField>&);
template GradedPoly<Rationals> poly_from_json(const RingPtr&, const Json&);
template GradedPoly<PrimeField> poly_from_json(const RingPtr&, const Json&);
template Json presentation_to_json(const Presentation<Rationals>&);
template Json presentation_to_json(const Presentation<PrimeField>&);

}  // namespace chromatic
