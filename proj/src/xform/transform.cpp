#include "bagcq/xform/transform.hpp"

#include "bagcq/relcore/classify.hpp"

namespace bagcq {

namespace {

Term venus() { return Term::constant(std::string(kVenus)); }

RelAtom reach(const Term& a, const Term& b) { return rel(std::string(kReach), {a, b}); }
RelAtom visible(const Term& a, const Term& b) { return rel(std::string(kVisible), {a, b}); }

Signature extension_of(const Signature& sig) { return sig.base().extended(); }

void require_base_query(const CQ& cq, const char* op) {
  if (cq.has_inequalities())
    throw PreconditionError(std::string(op) + " does not accept inequality atoms");
  for (const auto& atom : cq.relational_atoms())
    if (atom.relation == kVisible || atom.relation == kReach)
      throw SignatureError(std::string(op) + " expects a query over the base signature, found " +
                           atom.relation);
  for (const auto& c : cq.constants())
    if (c == kVenus || c == kMars)
      throw SignatureError(std::string(op) + " expects a query over the base signature, found @" +
                           c);
}

}  // namespace

CQ good_query(const Signature& sig) {
  std::vector<Atom> atoms{visible(venus(), venus()), reach(venus(), venus())};
  for (auto& a : venus_atoms(sig.base())) atoms.emplace_back(std::move(a));
  return CQ(std::move(atoms), extension_of(sig));
}

CQ planet_query(const Term& x, const Signature& sig) {
  Signature ext = extension_of(sig);
  if (x.is_constant()) ext.add_constant(x.name);
  return CQ({reach(venus(), x), reach(x, venus())}, ext);
}

CQ relativize(const Term& x, const CQ& cq) {
  require_base_query(cq, "relativization");
  if (x.is_var() ? cq.variable_set().contains(x.name) : cq.constants().contains(x.name))
    throw PreconditionError("relativization point '" + x.name + "' occurs in the query");
  Signature ext = extension_of(cq.signature());
  if (x.is_constant()) ext.add_constant(x.name);
  std::vector<Atom> atoms = cq.atoms();
  atoms.emplace_back(reach(venus(), x));
  atoms.emplace_back(reach(x, venus()));
  for (const auto& y : cq.variables()) atoms.emplace_back(visible(x, Term::var(y)));
  return CQ(std::move(atoms), ext);
}

CQ rclique(const std::vector<std::string>& vars, const Signature& sig) {
  std::set<std::string> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size()) throw PreconditionError("RClique variables must be distinct");
  std::vector<Atom> atoms;
  for (const auto& x : vars) {
    atoms.emplace_back(reach(venus(), Term::var(x)));
    atoms.emplace_back(reach(Term::var(x), venus()));
  }
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t k = i + 1; k < vars.size(); ++k) {
      atoms.emplace_back(reach(Term::var(vars[i]), Term::var(vars[k])));
      atoms.emplace_back(reach(Term::var(vars[k]), Term::var(vars[i])));
    }
  return CQ(std::move(atoms), extension_of(sig));
}

CQ cqize(const UCQ& q) {
  if (!is_pleasant(q)) throw PreconditionError("CQ-ization needs a pleasant query");
  std::vector<std::string> aliens;
  for (std::size_t j = 0; j < q.size(); ++j) {
    require_base_query(q[j], "CQ-ization");
    for (const auto& v : q[j].variables())
      if (is_alien_name(v))
        throw PreconditionError("variable '" + v + "' clashes with the alien names");
    aliens.push_back(alien_name(j + 1));
  }
  Signature ext = extension_of(q.signature());
  std::vector<Atom> atoms;
  for (const auto& cq : q.disjuncts())
    atoms.insert(atoms.end(), cq.atoms().begin(), cq.atoms().end());
  const auto clique = rclique(aliens, ext);
  atoms.insert(atoms.end(), clique.atoms().begin(), clique.atoms().end());
  for (std::size_t j = 0; j < q.size(); ++j)
    for (const auto& y : q[j].variables()) atoms.emplace_back(visible(Term::var(aliens[j]), Term::var(y)));
  return CQ(std::move(atoms), ext);
}

Structure marsify(const Structure& d) {
  const Signature& sig = d.signature();
  if (!sig.is_base()) throw SignatureError("marsification expects a structure over a base signature");
  std::set<std::string> taken(d.vertex_names().begin(), d.vertex_names().end());
  std::string v = fresh_name(std::string(kVenus), taken);
  taken.insert(v);
  std::string m = fresh_name(std::string(kMars), taken);

  StructureBuilder b(sig.extended());
  b.add_all(d);
  b.set_constant(std::string(kVenus), v);
  b.set_constant(std::string(kMars), m);
  const std::string vis(kVisible);
  const std::string rea(kReach);
  b.add_fact(vis, {v, v});
  b.add_fact(rea, {v, v});
  for (const auto& atom : venus_atoms(sig)) {
    std::vector<std::string> args;
    for (const auto& t : atom.args) args.push_back(t.name == kVenus ? v : d.name(d.constant(t.name)));
    b.add_fact(atom.relation, args);
  }
  b.add_fact(rea, {v, m});
  b.add_fact(rea, {m, v});
  for (const auto& a : d.vertex_names()) b.add_fact(vis, {m, a});
  return b.build();
}

CQ eta0(std::size_t m, const Signature& sig) {
  if (m == 0) throw PreconditionError("eta0 needs at least one conjunct");
  std::vector<Atom> atoms;
  for (std::size_t i = 1; i <= m; ++i)
    atoms.emplace_back(visible(venus(), Term::var("_w" + std::to_string(i))));
  return CQ(std::move(atoms), extension_of(sig));
}

CQ eta1(const Signature& sig) {
  return CQ({visible(venus(), Term::var("_w1")), reach(Term::var("_w2"), Term::var("_w2"))},
            extension_of(sig));
}

CQ substitute(const CQ& q, const std::map<std::string, std::string>& h) {
  auto vars = q.variable_set();
  Signature sig = q.signature();
  std::map<std::string, Term> image;
  for (const auto& [var, vertex] : h) {
    if (!vars.contains(var))
      throw PreconditionError("substituted variable '" + var + "' does not occur in the query");
    sig.add_constant(vertex);
    image.emplace(var, Term::constant(vertex));
  }
  auto map_term = [&](const Term& t) {
    if (!t.is_var()) return t;
    auto it = image.find(t.name);
    return it == image.end() ? t : it->second;
  };
  std::vector<Atom> atoms;
  for (const auto& atom : q.atoms()) {
    if (const auto* r = std::get_if<RelAtom>(&atom)) {
      RelAtom out{r->relation, {}};
      for (const auto& t : r->args) out.args.push_back(map_term(t));
      atoms.emplace_back(std::move(out));
    } else {
      const auto& ne = std::get<NeqAtom>(atom);
      atoms.emplace_back(NeqAtom{map_term(ne.lhs), map_term(ne.rhs)});
    }
  }
  return CQ(std::move(atoms), sig);
}

}  // namespace bagcq
