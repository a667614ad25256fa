#include "chromatic/ring.hpp"

#include <cctype>
#include <set>

#include "chromatic/errors.hpp"

namespace chromatic {

Ring::Ring(std::uint32_t prime, std::vector<Generator> generators)
    : prime_(prime), gens_(std::move(generators)) {
  if (gens_.size() > kMaxGenerators)
    throw PreconditionError("too many generators (max " + std::to_string(kMaxGenerators) + ")");
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.name.empty()) throw PreconditionError("generator with empty name");
    if (!seen.insert(g.name).second) throw PreconditionError("duplicate generator " + g.name);
    if (g.kind == GeneratorKind::exterior) has_exterior_ = true;
  }
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Ring::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

int Ring::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) d += m[i] * gens_[i].degree;
  return d;
}

int Ring::homological_degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) d += m[i] * gens_[i].homological;
  return d;
}

bool Ring::admissible(const Monomial& m) const {
  for (std::size_t i = 0; i < kMaxGenerators; ++i) {
    if (i >= gens_.size()) {
      if (m[i] != 0) return false;
      continue;
    }
    switch (gens_[i].kind) {
      case GeneratorKind::polynomial:
        if (m[i] < 0) return false;
        break;
      case GeneratorKind::exterior:
        if (m[i] < 0 || m[i] > 1) return false;
        break;
      case GeneratorKind::laurent:
        break;
    }
  }
  return true;
}

bool Ring::is_unit(const Monomial& m) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (m[i] != 0 && !gens_[i].invertible()) return false;
  return true;
}

Monomial Ring::non_invertible_part(const Monomial& m) const {
  Monomial r = m;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].invertible()) r[i] = 0;
  return r;
}

int Ring::multiply(const Monomial& a, const Monomial& b, Monomial& out) const {
  out = a + b;
  if (!has_exterior_) return 1;
  int swaps = 0;
  int a_after = 0;  // exterior generators of a with index > current
  for (std::size_t i = gens_.size(); i-- > 0;) {
    if (gens_[i].kind != GeneratorKind::exterior) continue;
    if (a[i] && b[i]) return 0;
    // moving b's generator i left past every exterior factor of a with larger index
    if (b[i]) swaps += a_after;
    if (a[i]) ++a_after;
  }
  return (swaps % 2) ? -1 : 1;
}

std::string Ring::format(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += gens_[i].name;
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Ring::format_tex(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += tex_name(gens_[i].name);
    if (m[i] != 1) s += "^{" + std::to_string(m[i]) + "}";
  }
  return s.empty() ? "1" : s;
}

RingPtr make_ring(std::uint32_t prime, std::vector<Generator> generators) {
  return std::make_shared<const Ring>(prime, std::move(generators));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string tex_name(std::string_view name) {
  std::size_t k = name.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1]))) --k;
  if (k == 0 || k == name.size()) return std::string(name);
  return std::string(name.substr(0, k)) + "_{" + std::string(name.substr(k)) + "}";
}

}  // namespace chromatic
