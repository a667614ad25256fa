#include <set>
#include <sstream>
#include <type_traits>

#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"

namespace chromatic {

template <class Field>
BigradedTable HHAnswer<Field>::table(int s_max, int t_lo, int t_hi) const {
  if (t_lo > t_hi) throw PreconditionError("empty degree window");
  if (exterior.size() > 20) throw BudgetExceeded("too many exterior classes");
  BigradedTable out;
  out.method = method;
  out.s_max = s_max;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  const std::size_t subsets = std::size_t{1} << exterior.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    int s = 0, shift = 0;
    for (std::size_t k = 0; k < exterior.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      s += exterior[k].homological;
      shift += exterior[k].internal_degree;
    }
    if (s > s_max) continue;
    for (const auto& [d, c] : algebra.hilbert_counts(t_lo - shift, t_hi - shift))
      out.set(s, d + shift, out.rank(s, d + shift) + c);
  }
  return out;
}

template <class Field>
RingPtr HHAnswer<Field>::total_ring() const {
  auto gens = algebra.ring()->generators();
  for (const auto& e : exterior)
    gens.push_back(Generator{e.name, e.internal_degree + e.homological, GeneratorKind::exterior, e.homological});
  return make_ring(algebra.prime(), std::move(gens));
}

template <class Field>
HHAnswer<Field> hh_hkr(const Presentation<Field>& P, const std::vector<std::string>& smooth,
                       const std::vector<EtaleReport>& certificates) {
  const auto& ring = *P.ring();
  std::set<std::size_t> smooth_idx;
  for (const auto& name : smooth) {
    const auto g = ring.index_of(name);
    if (ring.generator(g).kind == GeneratorKind::exterior)
      throw PreconditionError("smooth generator " + name + " must be even (polynomial or Laurent)");
    if (!P.relations().empty() && !P.is_base(g))
      throw PreconditionError("smooth generator " + name + " must lie in the base of the etale tower");
    if (!smooth_idx.insert(g).second) throw PreconditionError("smooth generator " + name + " listed twice");
  }

  std::set<std::string> solved;
  if (!P.relations().empty()) {
    if constexpr (!std::is_same_v<Field, PrimeField>) {
      throw PreconditionError("etale certificates are only issued over F_p; refusing relations over Q");
    } else {
      for (std::size_t k = 0; k < P.relations().size(); ++k) {
        const auto& rel = P.relations()[k];
        const EtaleReport* hit = nullptr;
        for (const auto& c : certificates) {
          if (!same_ring(c.relation.ring(), P.ring()) || !(c.relation == rel)) continue;
          if (!c.etale) continue;
          hit = &c;
          break;
        }
        if (!hit) throw MathError("missing etale certificate for relation " + rel.to_string());
        const std::string var = hit->solved_for.substr(1);
        const auto g = ring.index_of(var);
        if (smooth_idx.count(g) || P.is_base(g))
          throw MathError("certificate solves for " + var + ", which belongs to the base");
        if (!solved.insert(var).second) throw MathError("two certificates solve for " + var);
      }
    }
  }

  for (std::size_t g = 0; g < ring.size(); ++g) {
    const auto& gen = ring.generator(g);
    if (smooth_idx.count(g) || P.is_ground(g) || solved.count(gen.name)) continue;
    throw MathError("generator " + gen.name + " is neither smooth, ground, nor solved by a certificate");
  }

  HHAnswer<Field> ans;
  ans.algebra = P;
  ans.method = "hkr";
  for (const auto& name : smooth) {
    const auto& gen = ring.generator(ring.index_of(name));
    ans.exterior.push_back({"d" + name, gen.degree, 1});
  }
  return ans;
}

template <class Field>
Specialization<Field> specialize(const Presentation<Field>& P, const std::map<std::string, long long>& values,
                                 bool collapse) {
  using Poly = GradedPoly<Field>;
  const auto& src = *P.ring();
  const auto p = P.prime();
  for (const auto& [name, v] : values) {
    const auto g = src.index_of(name);
    if (src.generator(g).kind == GeneratorKind::exterior)
      throw PreconditionError("cannot specialize exterior generator " + name);
    if (src.generator(g).invertible() && Field::is_zero(Field::from_int(v, p)))
      throw PreconditionError("Laurent generator " + name + " needs a nonzero value");
    if (!collapse && src.generator(g).degree != 0)
      throw PreconditionError("specializing " + name + " of nonzero degree needs a collapsed grading");
  }

  std::vector<Generator> gens;
  for (const auto& gen : src.generators()) {
    if (values.count(gen.name)) continue;
    Generator g = gen;
    if (collapse) {
      g.degree = 0;
      g.homological = 0;
    }
    gens.push_back(g);
  }
  auto target = make_ring(p, gens);
  std::vector<Poly> images;
  for (const auto& gen : src.generators()) {
    auto it = values.find(gen.name);
    if (it != values.end())
      images.push_back(Poly::constant(target, Field::from_int(it->second, p)));
    else
      images.push_back(Poly::generator(target, gen.name));
  }

  std::vector<std::string> base, ground;
  for (const auto& b : P.base())
    if (!values.count(b)) base.push_back(b);
  for (const auto& g : P.ground())
    if (!values.count(g)) ground.push_back(g);

  Specialization<Field> out;
  out.values = values;
  out.collapsed = collapse;
  out.algebra = Presentation<Field>(target, base, ground);
  for (const auto& rel : P.relations()) {
    auto image = map_poly(rel, target, images);
    if (image.is_zero()) throw MathError("relation " + rel.to_string() + " vanishes under the specialization");
    out.algebra.add_relation(image);
  }
  out.source_basis = P.module_basis().size();
  out.target_basis = out.algebra.module_basis().size();
  if (out.source_basis != out.target_basis)
    throw MathError("specialization changes the module rank (" + std::to_string(out.source_basis) + " -> " +
                    std::to_string(out.target_basis) + ")");

  std::ostringstream os;
  os << "set";
  bool first = true;
  for (const auto& [name, v] : values) {
    os << (first ? " " : ", ") << name << "=" << v;
    first = false;
  }
  os << (collapse ? "; grading collapsed to degree 0" : "; grading kept");
  os << "; leading terms keep unit cofactors, module rank " << out.source_basis << " preserved";
  out.validity = os.str();
  return out;
}

template struct HHAnswer<Rationals>;
template struct HHAnswer<PrimeField>;
template HHAnswer<Rationals> hh_hkr(const Presentation<Rationals>&, const std::vector<std::string>&,
                                    const std::vector<EtaleReport>&);
template HHAnswer<PrimeField> hh_hkr(const Presentation<PrimeField>&, const std::vector<std::string>&,
                                     const std::vector<EtaleReport>&);
template Specialization<Rationals> specialize(const Presentation<Rationals>&, const std::map<std::string, long long>&,
                                              bool);
template Specialization<PrimeField> specialize(const Presentation<PrimeField>&,
                                               const std::map<std::string, long long>&, bool);

}  // namespace chromatic
