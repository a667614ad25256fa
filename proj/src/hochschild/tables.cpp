#include <algorithm>
#include <sstream>

#include "chromatic/errors.hpp"
#include "chromatic/hochschild.hpp"

namespace chromatic {

std::uint64_t BigradedTable::rank(int s, int t) const {
  auto it = ranks.find({s, t});
  return it == ranks.end() ? 0 : it->second;
}

void BigradedTable::set(int s, int t, std::uint64_t r) {
  if (r == 0)
    ranks.erase({s, t});
  else
    ranks[{s, t}] = r;
}

Json table_to_json(const BigradedTable& t) {
  Json out;
  out["schema"] = kTableSchema;
  out["method"] = t.method;
  out["s_max"] = t.s_max;
  out["window"] = Json::array({t.t_lo, t.t_hi});
  Json rows = Json::array();
  for (const auto& [key, r] : t.ranks) rows.push_back(Json{{"s", key.first}, {"t", key.second}, {"rank", r}});
  out["ranks"] = std::move(rows);
  return out;
}

BigradedTable table_from_json(const Json& j) {
  if (j.value("schema", "") != kTableSchema) throw FormatError("not a " + std::string(kTableSchema) + " document");
  BigradedTable t;
  t.method = j.at("method").get<std::string>();
  t.s_max = j.at("s_max").get<int>();
  t.t_lo = j.at("window").at(0).get<int>();
  t.t_hi = j.at("window").at(1).get<int>();
  for (const auto& row : j.at("ranks")) t.set(row.at("s"), row.at("t"), row.at("rank").get<std::uint64_t>());
  return t;
}

std::string table_to_csv(const BigradedTable& t) {
  std::ostringstream os;
  os << "s,t,rank\n";
  for (const auto& [key, r] : t.ranks) os << key.first << ',' << key.second << ',' << r << '\n';
  return os.str();
}

std::string table_to_tex(const BigradedTable& t) {
  // columns: internal degrees that carry something; rows: s
  std::vector<int> cols;
  for (const auto& [key, r] : t.ranks) cols.push_back(key.second);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::ostringstream os;
  os << "% " << t.method << ", s <= " << t.s_max << ", " << t.t_lo << " <= t <= " << t.t_hi << "\n";
  os << "\\begin{tabular}{r|" << std::string(cols.size(), 'r') << "}\n";
  os << "$s \\backslash t$";
  for (int c : cols) os << " & " << c;
  os << " \\\\\n\\hline\n";
  for (int s = 0; s <= t.s_max; ++s) {
    os << s;
    for (int c : cols) {
      const auto r = t.rank(s, c);
      os << " & " << (r ? std::to_string(r) : std::string("."));
    }
    os << " \\\\\n";
  }
  os << "\\end{tabular}\n";
  return os.str();
}

BigradedTable hh_koszul(const std::vector<KoszulGenerator>& gens, int s_max, int t_lo, int t_hi) {
  if (t_lo > t_hi) throw PreconditionError("empty degree window");
  if (s_max < 0) throw PreconditionError("s_max must be >= 0");
  // exterior factors can shift below zero; polynomial factors only upward
  int lo = 0;
  for (const auto& g : gens) {
    if (!g.laurent && g.degree <= 0)
      throw PreconditionError("polynomial generator " + g.name + " needs positive degree");
    if (g.degree < 0) lo += g.degree;
  }
  lo = std::min(lo, t_lo);
  const int hi = t_hi;
  const int width = hi - lo + 1;
  // coeff[s][t - lo]
  std::vector<std::vector<std::uint64_t>> coeff(s_max + 1, std::vector<std::uint64_t>(width, 0));
  if (0 >= lo && 0 <= hi) coeff[0][-lo] = 1;
  for (const auto& g : gens) {
    const int d = g.degree;
    if (!g.laurent) {
      // multiply by 1/(1 - q^d): prefix sums along stride d
      for (int s = 0; s <= s_max; ++s)
        for (int k = d; k < width; ++k) coeff[s][k] += coeff[s][k - d];
    }
    // multiply by (1 + z q^d), high s first
    for (int s = s_max; s >= 1; --s) {
      if (d >= 0) {
        for (int k = width - 1; k >= d; --k) coeff[s][k] += coeff[s - 1][k - d];
      } else {
        for (int k = 0; k - d < width; ++k) coeff[s][k] += coeff[s - 1][k - d];
      }
    }
  }
  BigradedTable t;
  t.method = "koszul";
  t.s_max = s_max;
  t.t_lo = t_lo;
  t.t_hi = t_hi;
  for (int s = 0; s <= s_max; ++s)
    for (int k = t_lo; k <= t_hi; ++k) t.set(s, k, coeff[s][k - lo]);
  return t;
}

template <class Field>
std::vector<KoszulGenerator> koszul_generators(const Presentation<Field>& P) {
  if (!P.relations().empty()) throw PreconditionError("Koszul route needs a free algebra");
  std::vector<KoszulGenerator> out;
  const auto& ring = *P.ring();
  for (std::size_t g = 0; g < ring.size(); ++g) {
    const auto& gen = ring.generator(g);
    if (gen.kind == GeneratorKind::exterior) throw PreconditionError("Koszul route needs even generators");
    if (gen.invertible() && !P.is_ground(g))
      throw PreconditionError("Laurent generator " + gen.name + " must be a ground generator");
    out.push_back({gen.name, gen.degree, gen.invertible()});
  }
  return out;
}

template std::vector<KoszulGenerator> koszul_generators(const Presentation<Rationals>&);
template std::vector<KoszulGenerator> koszul_generators(const Presentation<PrimeField>&);

TableDiff compare_methods(const BigradedTable& a, const BigradedTable& b) {
  TableDiff d;
  d.s_max = std::min(a.s_max, b.s_max);
  d.t_lo = std::max(a.t_lo, b.t_lo);
  d.t_hi = std::min(a.t_hi, b.t_hi);
  if (d.t_lo > d.t_hi) throw PreconditionError("tables have no common window");
  std::map<std::pair<int, int>, std::pair<std::uint64_t, std::uint64_t>> both;
  for (const auto& [k, r] : a.ranks) both[k].first = r;
  for (const auto& [k, r] : b.ranks) both[k].second = r;
  for (const auto& [k, lr] : both) {
    if (k.first > d.s_max || k.second < d.t_lo || k.second > d.t_hi) continue;
    if (lr.first != lr.second) d.entries.push_back({k.first, k.second, lr.first, lr.second});
  }
  return d;
}

Json diff_to_json(const TableDiff& d) {
  Json out;
  out["s_max"] = d.s_max;
  out["window"] = Json::array({d.t_lo, d.t_hi});
  Json rows = Json::array();
  for (const auto& e : d.entries) rows.push_back(Json{{"s", e.s}, {"t", e.t}, {"left", e.left}, {"right", e.right}});
  out["entries"] = std::move(rows);
  out["agree"] = d.empty();
  return out;
}

}  // namespace chromatic
