#include "bagcq/relcore/query.hpp"

#include <algorithm>
#include <cctype>

#include "bagcq/common.hpp"

namespace bagcq {

namespace {

template <class F>
void for_each_term(const Atom& atom, F&& f) {
  if (const auto* r = std::get_if<RelAtom>(&atom)) {
    for (const auto& t : r->args) f(t);
  } else {
    const auto& n = std::get<NeqAtom>(atom);
    f(n.lhs);
    f(n.rhs);
  }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (!t.is_var()) return t;
  auto it = renaming.find(t.name);
  return it == renaming.end() ? t : Term::var(it->second);
}

}  // namespace

RelAtom rel(std::string relation, std::vector<Term> args) {
  return RelAtom{std::move(relation), std::move(args)};
}

CQ::CQ(std::vector<Atom> atoms, Signature sig) : atoms_(std::move(atoms)), sig_(std::move(sig)) {
  std::set<std::string> vars;
  std::set<std::string> rel_vars;
  std::set<std::string> consts;
  for (const auto& atom : atoms_) {
    if (const auto* r = std::get_if<RelAtom>(&atom)) {
      int ar = sig_.arity(r->relation);
      if (static_cast<std::size_t>(ar) != r->args.size())
        throw SignatureError("atom " + r->relation + " has " + std::to_string(r->args.size()) +
                             " arguments but arity " + std::to_string(ar));
      for (const auto& t : r->args)
        if (t.is_var()) rel_vars.insert(t.name);
    }
    for_each_term(atom, [&](const Term& t) {
      if (t.is_var()) {
        if (t.name.empty()) throw SignatureError("empty variable name");
        vars.insert(t.name);
      } else {
        if (!sig_.has_constant(t.name))
          throw SignatureError("unknown constant '" + t.name + "'");
        consts.insert(t.name);
      }
    });
  }
  for (const auto& v : vars) {
    if (consts.contains(v))
      throw SignatureError("name '" + v + "' used both as variable and as constant");
    if (!rel_vars.contains(v))
      throw SignatureError("variable '" + v + "' occurs only in inequality atoms");
  }
}

std::vector<std::string> CQ::variables() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& atom : atoms_)
    for_each_term(atom, [&](const Term& t) {
      if (t.is_var() && seen.insert(t.name).second) out.push_back(t.name);
    });
  return out;
}

std::set<std::string> CQ::variable_set() const {
  auto v = variables();
  return {v.begin(), v.end()};
}

std::set<std::string> CQ::constants() const {
  std::set<std::string> out;
  for (const auto& atom : atoms_)
    for_each_term(atom, [&](const Term& t) {
      if (t.is_constant()) out.insert(t.name);
    });
  return out;
}

bool CQ::has_inequalities() const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return std::holds_alternative<NeqAtom>(a); });
}

std::vector<RelAtom> CQ::relational_atoms() const {
  std::vector<RelAtom> out;
  for (const auto& atom : atoms_)
    if (const auto* r = std::get_if<RelAtom>(&atom)) out.push_back(*r);
  return out;
}

UCQ::UCQ(std::vector<CQ> disjuncts) {
  if (disjuncts.empty()) throw PreconditionError("a UCQ needs at least one disjunct");
  std::set<std::string> used;
  for (auto& cq : disjuncts) {
    sig_ = Signature::merge(sig_, cq.signature());
  }
  std::size_t index = 0;
  for (auto& cq : disjuncts) {
    ++index;
    std::map<std::string, std::string> renaming;
    auto vars = cq.variables();
    std::set<std::string> local(vars.begin(), vars.end());
    for (const auto& v : vars) {
      if (!used.contains(v)) continue;
      std::set<std::string> taken = used;
      taken.insert(local.begin(), local.end());
      for (const auto& [from, to] : renaming) taken.insert(to);
      renaming[v] = fresh_name(v + "_" + std::to_string(index), taken);
    }
    CQ renamed = renaming.empty() ? cq : rename_variables(cq, renaming);
    for (const auto& v : renamed.variables()) used.insert(v);
    disjuncts_.push_back(with_signature(renamed, sig_));
  }
}

UCQ::UCQ(CQ single) : UCQ(std::vector<CQ>{std::move(single)}) {}

CQ rename_variables(const CQ& cq, const std::map<std::string, std::string>& renaming) {
  std::vector<Atom> atoms;
  atoms.reserve(cq.atoms().size());
  for (const auto& atom : cq.atoms()) {
    if (const auto* r = std::get_if<RelAtom>(&atom)) {
      RelAtom out{r->relation, {}};
      for (const auto& t : r->args) out.args.push_back(rename_term(t, renaming));
      atoms.emplace_back(std::move(out));
    } else {
      const auto& n = std::get<NeqAtom>(atom);
      atoms.emplace_back(NeqAtom{rename_term(n.lhs, renaming), rename_term(n.rhs, renaming)});
    }
  }
  return CQ(std::move(atoms), cq.signature());
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.contains(base)) return base;
  for (std::size_t i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!used.contains(candidate)) return candidate;
  }
}

CQ conjoin(const CQ& a, const CQ& b) {
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return CQ(std::move(atoms), Signature::merge(a.signature(), b.signature()));
}

CQ conjoin_disjoint(const CQ& a, const CQ& b) {
  auto used = a.variable_set();
  auto bvars = b.variable_set();
  std::set<std::string> taken = used;
  taken.insert(bvars.begin(), bvars.end());
  std::map<std::string, std::string> renaming;
  for (const auto& v : b.variables()) {
    if (!used.contains(v)) continue;
    auto fresh = fresh_name(v, taken);
    taken.insert(fresh);
    renaming[v] = fresh;
  }
  return conjoin(a, renaming.empty() ? b : rename_variables(b, renaming));
}

CQ with_signature(const CQ& cq, const Signature& sig) {
  if (!sig.includes(cq.signature()))
    throw SignatureError("cannot narrow a query's signature");
  return CQ(cq.atoms(), sig);
}

CQ dedup_atoms(const CQ& cq) {
  std::vector<Atom> atoms;
  std::set<RelAtom> seen;
  for (const auto& atom : cq.atoms()) {
    if (const auto* r = std::get_if<RelAtom>(&atom)) {
      if (!seen.insert(*r).second) continue;
    }
    atoms.push_back(atom);
  }
  return CQ(std::move(atoms), cq.signature());
}

bool is_pleasant(const CQ& cq) {
  for (const auto& atom : cq.atoms()) {
    bool has_var = false;
    for_each_term(atom, [&](const Term& t) { has_var = has_var || t.is_var(); });
    if (!has_var) return false;
  }
  return true;
}

bool is_pleasant(const UCQ& q) {
  return std::all_of(q.disjuncts().begin(), q.disjuncts().end(),
                     [](const CQ& cq) { return is_pleasant(cq); });
}

bool is_alien_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string alien_name(std::size_t index) { return "x" + std::to_string(index); }

}  // namespace bagcq
