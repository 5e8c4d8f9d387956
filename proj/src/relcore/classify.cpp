#include "bagcq/relcore/classify.hpp"

namespace bagcq {

std::vector<RelAtom> venus_atoms(const Signature& base) {
  std::vector<Term> pool{Term::constant(std::string(kVenus))};
  for (const auto& c : base.base().constants) pool.push_back(Term::constant(c));

  std::vector<RelAtom> out;
  for (const auto& [name, ar] : base.base().relations) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
    while (true) {
      bool has_venus = false;
      RelAtom atom{name, {}};
      for (auto i : idx) {
        has_venus = has_venus || i == 0;
        atom.args.push_back(pool[i]);
      }
      if (has_venus) out.push_back(std::move(atom));
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == pool.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

StructureFlags classify_structure(const Structure& d) {
  if (!d.signature().is_extension())
    throw SignatureError("classification needs a signature with V, R, venus and mars");
  StructureFlags f;
  VertexId venus = d.constant(kVenus);
  f.non_trivial = d.constant(kMars) != venus;

  f.good = d.holds(kVisible, {venus, venus}) && d.holds(kReach, {venus, venus});
  if (f.good) {
    for (const auto& atom : venus_atoms(d.signature())) {
      Tuple t;
      for (const auto& term : atom.args) t.push_back(d.constant(term.name));
      if (!d.holds(atom.relation, t)) {
        f.good = false;
        break;
      }
    }
  }
  if (!f.good) return f;

  f.foggy = true;
  for (const auto& t : d.facts(kVisible))
    if (t[0] == venus && t[1] != venus) f.foggy = false;
  if (!f.foggy) return f;

  f.very_good = true;
  for (const auto& t : d.facts(kReach))
    if (t[0] == t[1] && t[0] != venus) f.very_good = false;
  return f;
}

}  // namespace bagcq
