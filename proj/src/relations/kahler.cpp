#include <set>

#include "chromatic/derive.hpp"
#include "chromatic/errors.hpp"

namespace chromatic {

namespace {

std::string dname(const std::string& g) { return "d" + g; }

/// Differentiates `rel` in every non-ground generator; returns dg -> coefficient.
std::map<std::string, FpPoly> differentiate(const FpPresentation& P, const FpPoly& rel) {
  std::map<std::string, FpPoly> out;
  const auto& ring = *P.ring();
  for (std::size_t g = 0; g < ring.size(); ++g) {
    if (P.is_ground(g)) continue;
    auto c = P.normal_form(rel.derivative(g));
    if (!c.is_zero()) out.emplace(dname(ring.generator(g).name), std::move(c));
  }
  return out;
}

std::string unit_certificate(const FpPoly& c) {
  if (!c.is_unit()) return c.to_string() + " is not a unit monomial";
  return c.to_string() + " is a scalar times a Laurent monomial, inverse " + c.inverse_unit().to_string();
}

}  // namespace

EtaleReport kahler_check(const DerivationState& st, int r) {
  if (r < 1 || r > st.m) throw PreconditionError("stage out of range");
  const auto& P = st.presentation;
  const auto& ring = P.ring();
  EtaleReport rep;
  rep.stage = r;
  rep.relation = st.stages[r - 1].relation;
  rep.differential = differentiate(P, rep.relation);
  const std::string dt = "dt" + std::to_string(r);
  rep.solved_for = dt;
  rep.solving_coefficient = rep.differential.count(dt) ? rep.differential.at(dt) : FpPoly(ring);
  rep.unit_certificate = unit_certificate(rep.solving_coefficient);
  const bool unit = rep.solving_coefficient.is_unit();
  bool power_of_v = false;
  if (unit) {
    const auto& mono = rep.solving_coefficient.leading().mono;
    const auto vi = ring->index_of(st.v_name());
    power_of_v = true;
    for (std::size_t g = 0; g < ring->size(); ++g)
      if (g != vi && mono[g] != 0) power_of_v = false;
    rep.solving_power = mono[vi];
  }

  if (unit) {
    // dt_r = -c^{-1} * sum over the other differentials, earlier dt_j eliminated
    const FpPoly inv = -rep.solving_coefficient.inverse_unit();
    std::map<std::string, FpPoly> acc;
    auto add = [&](const std::string& key, const FpPoly& c) {
      auto [it, fresh] = acc.try_emplace(key, c);
      if (!fresh) it->second += c;
    };
    for (const auto& [key, c] : rep.differential) {
      if (key == dt) continue;
      const auto sub = std::string(key.begin() + 1, key.end());
      if (sub[0] == 't') {
        const int j = std::stoi(sub.substr(1));
        if (j >= r) throw MathError("stage relation involves a later generator " + sub);
        for (const auto& [k2, c2] : kahler_check(st, j).solution) add(k2, c * c2);
      } else {
        add(key, c);
      }
    }
    for (auto& [key, c] : acc) {
      auto v = P.normal_form(c * inv);
      if (!v.is_zero()) rep.solution.emplace(key, std::move(v));
    }
    if (rep.solution.size() == 1 && rep.solution.begin()->second.is_unit()) {
      const auto& [key, c] = *rep.solution.begin();
      rep.inverse = key + " = " + c.inverse_unit().to_string() + "*" + dt;
    }
  }

  rep.basis_size = stage_presentation(st, r).module_basis().size();
  rep.expected_basis_size = static_cast<std::size_t>(ipow(st.p, st.i * r));
  rep.etale = unit && power_of_v && rep.basis_size == rep.expected_basis_size;
  rep.verdict = rep.etale ? "etale" : "not certified";
  return rep;
}

EtaleReport etale_certificate(const FpPresentation& P, std::size_t index, const std::string& g) {
  if (index >= P.relations().size()) throw PreconditionError("relation index out of range");
  EtaleReport rep;
  rep.relation = P.relations()[index];
  rep.differential = differentiate(P, rep.relation);
  const std::string dg = dname(g);
  rep.solved_for = dg;
  const auto& ring = P.ring();
  rep.solving_coefficient = rep.differential.count(dg) ? rep.differential.at(dg) : FpPoly(ring);
  rep.unit_certificate = unit_certificate(rep.solving_coefficient);
  const bool unit = rep.solving_coefficient.is_unit();
  if (unit) {
    const FpPoly inv = -rep.solving_coefficient.inverse_unit();
    for (const auto& [key, c] : rep.differential) {
      if (key == dg) continue;
      auto v = P.normal_form(c * inv);
      if (!v.is_zero()) rep.solution.emplace(key, std::move(v));
    }
  }
  rep.basis_size = P.module_basis().size();
  rep.expected_basis_size = rep.basis_size;
  rep.etale = unit;
  rep.verdict = rep.etale ? "etale" : "not certified";
  return rep;
}

Json etale_report_to_json(const EtaleReport& rep) {
  Json out;
  out["stage"] = rep.stage;
  out["relation"] = rep.relation.to_string();
  Json d = Json::object();
  for (const auto& [k, c] : rep.differential) d[k] = c.to_string();
  out["differential"] = std::move(d);
  out["solved_for"] = rep.solved_for;
  out["solving_coefficient"] = rep.solving_coefficient.to_string();
  out["unit_certificate"] = rep.unit_certificate;
  out["solving_power"] = rep.solving_power;
  Json s = Json::object();
  for (const auto& [k, c] : rep.solution) s[k] = c.to_string();
  out["solution"] = std::move(s);
  if (rep.inverse) out["inverse"] = *rep.inverse;
  out["basis_size"] = rep.basis_size;
  out["expected_basis_size"] = rep.expected_basis_size;
  out["verdict"] = rep.verdict;
  return out;
}

bool ppower_is_sum(std::uint32_t p, int r, const std::vector<int>& exponents) {
  std::set<int> seen;
  for (int e : exponents) {
    if (e < 1) throw PreconditionError("exponents must be >= 1");
    if (!seen.insert(e).second) throw PreconditionError("exponents must be pairwise distinct");
  }
  if (r < 0) throw PreconditionError("r must be >= 0");
  mpz_class target, sum = 0, term;
  mpz_ui_pow_ui(target.get_mpz_t(), p, static_cast<unsigned long>(r));
  for (int e : exponents) {
    mpz_ui_pow_ui(term.get_mpz_t(), p, static_cast<unsigned long>(e));
    sum += term;
  }
  return sum == target;
}

PPowerSweep ppower_sweep(std::uint32_t p, int max_exp, int min_size, int max_size) {
  PPowerSweep out;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(pick.size()) >= min_size) {
      for (int r = 0; r <= max_exp; ++r) {
        ++out.checked;
        if (ppower_is_sum(p, r, pick)) {
          std::string s = std::to_string(p) + "^" + std::to_string(r) + " =";
          for (int e : pick) s += " " + std::to_string(p) + "^" + std::to_string(e);
          out.counterexamples.push_back(s);
        }
      }
    }
    if (static_cast<int>(pick.size()) == max_size) return;
    for (int e = next; e <= max_exp; ++e) {
      pick.push_back(e);
      self(self, e + 1);
      pick.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace chromatic
