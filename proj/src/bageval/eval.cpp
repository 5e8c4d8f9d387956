#include "bagcq/bageval/eval.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace bagcq {

namespace {

struct Arg {
  bool is_var;
  std::uint32_t id;  // variable index or vertex id
};

struct CompiledAtom {
  bool neq = false;
  const std::set<Tuple>* facts = nullptr;
  std::vector<Arg> args;
};

void check_compatible(const CQ& cq, const Structure& d) {
  for (const auto& atom : cq.relational_atoms()) {
    const auto& rels = d.signature().relations;
    auto it = rels.find(atom.relation);
    if (it == rels.end())
      throw SignatureError("structure has no relation '" + atom.relation + "'");
    if (static_cast<std::size_t>(it->second) != atom.args.size())
      throw SignatureError("relation '" + atom.relation + "' has a different arity in the structure");
  }
  for (const auto& c : cq.constants()) d.constant(c);
}

class Engine {
 public:
  Engine(const CQ& cq, const Structure& d, const EvalOptions& options) : n_(d.size()) {
    check_compatible(cq, d);
    auto names = cq.variables();
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
    value_.assign(names.size(), kUnassigned);
    var_atoms_.resize(names.size());

    for (const auto& [var, vertex] : options.pinned) {
      auto it = index.find(var);
      if (it == index.end())
        throw PreconditionError("pinned variable '" + var + "' does not occur in the query");
      if (vertex >= n_) throw PreconditionError("pinned vertex out of range");
      value_[it->second] = vertex;
    }
    if (options.domain) {
      if (options.domain->size() != n_) throw PreconditionError("domain mask has the wrong size");
      domain_ = *options.domain;
    }

    auto arg_of = [&](const Term& t) {
      if (t.is_var()) return Arg{true, index.at(t.name)};
      return Arg{false, d.constant(t.name)};
    };
    for (const auto& atom : cq.atoms()) {
      CompiledAtom ca;
      if (const auto* r = std::get_if<RelAtom>(&atom)) {
        ca.facts = &d.facts(r->relation);
        for (const auto& t : r->args) ca.args.push_back(arg_of(t));
      } else {
        const auto& ne = std::get<NeqAtom>(atom);
        ca.neq = true;
        ca.args = {arg_of(ne.lhs), arg_of(ne.rhs)};
      }
      std::uint32_t ai = static_cast<std::uint32_t>(atoms_.size());
      std::set<std::uint32_t> seen_vars;
      for (const auto& a : ca.args)
        if (a.is_var && seen_vars.insert(a.id).second) var_atoms_[a.id].push_back(ai);
      atoms_.push_back(std::move(ca));
    }
  }

  Count run() {
    for (std::uint32_t ai = 0; ai < atoms_.size(); ++ai)
      if (bound(atoms_[ai]) && !satisfied(atoms_[ai])) return 0;
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < value_.size(); ++v)
      if (value_[v] == kUnassigned) free.push_back(v);
    return count(free);
  }

 private:
  static constexpr std::int64_t kUnassigned = -1;

  std::int64_t val(const Arg& a) const { return a.is_var ? value_[a.id] : a.id; }

  bool bound(const CompiledAtom& a) const {
    return std::all_of(a.args.begin(), a.args.end(),
                       [&](const Arg& x) { return val(x) != kUnassigned; });
  }

  bool satisfied(const CompiledAtom& a) const {
    if (a.neq) return val(a.args[0]) != val(a.args[1]);
    Tuple t;
    t.reserve(a.args.size());
    for (const auto& x : a.args) t.push_back(static_cast<VertexId>(val(x)));
    return a.facts->contains(t);
  }

  // Splits `free` into groups linked through atoms with >= 2 free variables.
  std::vector<std::vector<std::uint32_t>> components(const std::vector<std::uint32_t>& free) {
    std::map<std::uint32_t, std::uint32_t> parent;
    for (auto v : free) parent[v] = v;
    std::function<std::uint32_t(std::uint32_t)> root = [&](std::uint32_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& a : atoms_) {
      std::int64_t first = -1;
      for (const auto& x : a.args) {
        if (!x.is_var || value_[x.id] != kUnassigned) continue;
        if (first < 0) {
          first = x.id;
        } else {
          parent[root(x.id)] = root(static_cast<std::uint32_t>(first));
        }
      }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (auto v : free) groups[root(v)].push_back(v);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [r, g] : groups) out.push_back(std::move(g));
    return out;
  }

  std::size_t bound_args(const CompiledAtom& a) const {
    std::size_t k = 0;
    for (const auto& x : a.args) k += val(x) != kUnassigned;
    return k;
  }

  std::uint32_t pick(const std::vector<std::uint32_t>& vars) const {
    std::uint32_t best = vars.front();
    std::pair<std::size_t, std::size_t> best_score{0, 0};
    bool first = true;
    for (auto v : vars) {
      std::size_t constrained = 0;
      for (auto ai : var_atoms_[v]) constrained += bound_args(atoms_[ai]) > 0;
      std::pair<std::size_t, std::size_t> score{constrained, var_atoms_[v].size()};
      if (first || score > best_score) {
        best = v;
        best_score = score;
        first = false;
      }
    }
    return best;
  }

  std::vector<VertexId> candidates(std::uint32_t v) const {
    const CompiledAtom* source = nullptr;
    std::pair<std::size_t, std::size_t> best{0, 0};
    for (auto ai : var_atoms_[v]) {
      const auto& a = atoms_[ai];
      if (a.neq) continue;
      // prefer many bound arguments, then few facts
      std::pair<std::size_t, std::size_t> score{bound_args(a), SIZE_MAX - a.facts->size()};
      if (!source || score > best) {
        source = &a;
        best = score;
      }
    }
    std::vector<char> mark(n_, 0);
    if (source) {
      for (const auto& t : *source->facts) {
        std::int64_t chosen = kUnassigned;
        bool ok = true;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
          const Arg& x = source->args[i];
          if (x.is_var && x.id == v) {
            if (chosen == kUnassigned) chosen = t[i];
            else ok = chosen == t[i];
          } else {
            auto bv = val(x);
            ok = bv == kUnassigned || bv == t[i];
          }
        }
        if (ok) mark[static_cast<std::size_t>(chosen)] = 1;
      }
    } else {
      std::fill(mark.begin(), mark.end(), 1);
    }
    std::vector<VertexId> out;
    for (VertexId c = 0; c < n_; ++c)
      if (mark[c] && (!domain_ || (*domain_)[c])) out.push_back(c);
    return out;
  }

  Count count(const std::vector<std::uint32_t>& free) {
    if (free.empty()) return 1;
    auto comps = components(free);
    if (comps.size() > 1) {
      Count product = 1;
      for (const auto& c : comps) {
        product *= count_connected(c);
        if (product == 0) break;
      }
      return product;
    }
    return count_connected(free);
  }

  Count count_connected(const std::vector<std::uint32_t>& vars) {
    std::uint32_t v = pick(vars);
    std::vector<std::uint32_t> rest;
    for (auto u : vars)
      if (u != v) rest.push_back(u);
    Count total = 0;
    for (auto c : candidates(v)) {
      value_[v] = c;
      bool ok = true;
      for (auto ai : var_atoms_[v]) {
        const auto& a = atoms_[ai];
        if (bound(a) && !satisfied(a)) {
          ok = false;
          break;
        }
      }
      if (ok) total += count(rest);
    }
    value_[v] = kUnassigned;
    return total;
  }

  std::size_t n_;
  std::vector<CompiledAtom> atoms_;
  std::vector<std::vector<std::uint32_t>> var_atoms_;
  std::vector<std::int64_t> value_;
  std::optional<std::vector<bool>> domain_;
};

VertexId term_value(const Term& t, const Assignment& h, const Structure& d) {
  return t.is_var() ? h.at(t.name) : d.constant(t.name);
}

bool satisfies(const CQ& cq, const Assignment& h, const Structure& d) {
  for (const auto& atom : cq.atoms()) {
    if (const auto* r = std::get_if<RelAtom>(&atom)) {
      Tuple t;
      for (const auto& term : r->args) t.push_back(term_value(term, h, d));
      if (!d.holds(r->relation, t)) return false;
    } else {
      const auto& ne = std::get<NeqAtom>(atom);
      if (term_value(ne.lhs, h, d) == term_value(ne.rhs, h, d)) return false;
    }
  }
  return true;
}

template <class F>
void enumerate_assignments(const CQ& cq, const Structure& d, F&& visit) {
  check_compatible(cq, d);
  auto vars = cq.variables();
  if (!vars.empty() && d.size() == 0) return;
  std::vector<VertexId> digits(vars.size(), 0);
  Assignment h;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) h[vars[i]] = digits[i];
    if (satisfies(cq, h, d)) visit(h);
    std::size_t k = digits.size();
    while (k > 0 && ++digits[k - 1] == d.size()) digits[--k] = 0;
    if (k == 0) break;
  }
}

}  // namespace

Count count_homs(const CQ& cq, const Structure& d, const EvalOptions& options) {
  return Engine(cq, d, options).run();
}

Count count_homs_naive(const CQ& cq, const Structure& d) {
  Count total = 0;
  enumerate_assignments(cq, d, [&](const Assignment&) { ++total; });
  return total;
}

std::vector<Assignment> homomorphisms(const CQ& cq, const Structure& d) {
  std::vector<Assignment> out;
  enumerate_assignments(cq, d, [&](const Assignment& h) { out.push_back(h); });
  return out;
}

Count apply(const UCQ& q, const Structure& d) {
  Count total = 0;
  for (const auto& cq : q.disjuncts()) total += count_homs(cq, d);
  return total;
}

Count apply_naive(const UCQ& q, const Structure& d) {
  Count total = 0;
  for (const auto& cq : q.disjuncts()) total += count_homs_naive(cq, d);
  return total;
}

std::vector<CQ> component_split(const CQ& cq) {
  if (cq.has_inequalities())
    throw PreconditionError("component split of a query with inequality atoms");
  const auto& atoms = cq.atoms();
  std::vector<std::size_t> parent(atoms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (const auto& t : std::get<RelAtom>(atoms[i]).args) {
      if (!t.is_var()) continue;
      auto [it, inserted] = owner.emplace(t.name, i);
      if (!inserted) parent[root(i)] = root(it->second);
    }
  }
  std::vector<std::size_t> order;
  std::map<std::size_t, std::vector<Atom>> groups;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    auto r = root(i);
    if (!groups.contains(r)) order.push_back(r);
    groups[r].push_back(atoms[i]);
  }
  std::vector<CQ> out;
  for (auto r : order) out.emplace_back(groups[r], cq.signature());
  return out;
}

std::vector<VertexId> planets(const Structure& d) {
  std::vector<VertexId> out;
  if (!d.signature().has_relation(kReach) || !d.signature().has_constant(kVenus)) return out;
  VertexId venus = d.constant(kVenus);
  for (VertexId p = 0; p < d.size(); ++p)
    if (d.holds(kReach, {venus, p}) && d.holds(kReach, {p, venus})) out.push_back(p);
  return out;
}

std::vector<VertexId> planets_except_venus(const Structure& d) {
  auto all = planets(d);
  if (all.empty()) return all;
  VertexId venus = d.constant(kVenus);
  std::erase(all, venus);
  return all;
}

std::vector<bool> visible_from(VertexId p, const Structure& d) {
  std::vector<bool> mask(d.size(), false);
  for (const auto& t : d.facts(kVisible))
    if (t[0] == p) mask[t[1]] = true;
  return mask;
}

namespace {

void require_planet(VertexId p, const Structure& d) {
  auto ps = planets(d);
  if (!std::binary_search(ps.begin(), ps.end(), p))
    throw PreconditionError("vertex '" + (p < d.size() ? d.name(p) : std::to_string(p)) +
                            "' is not a planet");
}

}  // namespace

Structure seen(VertexId p, const Structure& d) {
  require_planet(p, d);
  auto mask = visible_from(p, d);
  std::set<std::string> keep;
  for (VertexId a = 0; a < d.size(); ++a)
    if (mask[a]) keep.insert(d.name(a));
  return restrict_to(d, keep, d.signature().base());
}

Count count_seen_from(const CQ& cq, VertexId p, const Structure& d) {
  require_planet(p, d);
  EvalOptions options;
  options.domain = visible_from(p, d);
  return count_homs(cq, d, options);
}

bool scaled_leq(const Rational& r, const Count& lhs, const Count& rhs) {
  return r * Rational(lhs) <= Rational(rhs);
}

ScaledCheck check_scaled_containment_at(const Rational& r, const UCQ& qs, const UCQ& qb,
                                        const Structure& d) {
  ScaledCheck out;
  out.lhs = apply(qs, d);
  out.rhs = apply(qb, d);
  out.holds = scaled_leq(r, out.lhs, out.rhs);
  return out;
}

}  // namespace bagcq
