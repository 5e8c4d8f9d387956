#include "bagcq/lab/generate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "bagcq/relcore/text.hpp"

namespace bagcq {

namespace {

std::string vertex_name(std::size_t i) { return "v" + std::to_string(i); }

bool needs_good(const StructureFlags& f) { return f.good || f.foggy || f.very_good; }

bool satisfies(const StructureFlags& have, const StructureFlags& want) {
  return (!want.good || have.good) && (!want.foggy || have.foggy) &&
         (!want.very_good || have.very_good) && (!want.non_trivial || have.non_trivial);
}

bool any_flag(const StructureFlags& f) { return f.good || f.foggy || f.very_good || f.non_trivial; }

void check_flag_signature(const GenConfig& cfg) {
  if (any_flag(cfg.required) && !cfg.signature.is_extension())
    throw PreconditionError("structure flags need a signature with V, R, venus and mars");
}

/// All tuples of the given arity over n vertices, in lexicographic order.
std::vector<Tuple> all_tuples(std::size_t n, int arity) {
  std::vector<Tuple> out;
  Tuple t(static_cast<std::size_t>(arity), 0);
  if (n == 0) return arity == 0 ? std::vector<Tuple>{t} : out;
  while (true) {
    out.push_back(t);
    std::size_t k = t.size();
    while (k > 0 && ++t[k - 1] == n) t[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

struct Fact {
  std::string relation;
  Tuple args;
  friend auto operator<=>(const Fact&, const Fact&) = default;
};

std::vector<Fact> all_facts(const Signature& sig, std::size_t n) {
  std::vector<Fact> out;
  for (const auto& [name, ar] : sig.relations)
    for (auto& t : all_tuples(n, ar)) out.push_back({name, std::move(t)});
  return out;
}

/// Facts that flagged structures must contain and must avoid, given where
/// the constants sit.
void flag_constraints(const GenConfig& cfg, const std::map<std::string, VertexId>& place,
                      std::set<Fact>& forced, std::set<Fact>& forbidden, std::size_t n) {
  if (!needs_good(cfg.required)) return;
  const VertexId venus = place.at(std::string(kVenus));
  forced.insert({std::string(kVisible), {venus, venus}});
  forced.insert({std::string(kReach), {venus, venus}});
  for (const auto& atom : venus_atoms(cfg.signature)) {
    Tuple t;
    for (const auto& term : atom.args) t.push_back(place.at(term.name));
    forced.insert({atom.relation, t});
  }
  if (cfg.required.foggy || cfg.required.very_good)
    for (VertexId a = 0; a < n; ++a)
      if (a != venus) forbidden.insert({std::string(kVisible), {venus, a}});
  if (cfg.required.very_good)
    for (VertexId v = 0; v < n; ++v)
      if (v != venus) forbidden.insert({std::string(kReach), {v, v}});
}

Structure assemble(const Signature& sig, std::size_t n, const std::map<std::string, VertexId>& place,
                   const std::vector<const Fact*>& facts) {
  StructureBuilder b(sig);
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(vertex_name(i));
  for (const auto& [c, v] : place) b.set_constant(c, vertex_name(v));
  for (const Fact* f : facts) {
    std::vector<std::string> args;
    for (auto v : f->args) args.push_back(vertex_name(v));
    b.add_fact(f->relation, args);
  }
  return b.build();
}

using Encoding = std::vector<std::int64_t>;

/// Iterated colour refinement. Colours are ranks of sorted keys, so they do
/// not depend on vertex numbering.
std::vector<int> refine_colours(const Structure& d) {
  const std::size_t n = d.size();
  std::vector<Encoding> keys(n);
  int ci = 0;
  for (const auto& c : d.signature().constants) {
    keys[d.constant(c)].push_back(ci);
    ++ci;
  }
  for (auto& k : keys) std::sort(k.begin(), k.end());

  std::vector<int> colour(n, 0);
  std::size_t classes = 0;
  for (int round = 0;; ++round) {
    std::vector<Encoding> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < n; ++v)
      colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    if (round > 0 && sorted.size() == classes) break;
    classes = sorted.size();

    std::vector<std::vector<Encoding>> entries(n);
    int ri = 0;
    for (const auto& [name, ar] : d.signature().relations) {
      for (const auto& t : d.facts(name)) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          Encoding e{ri, static_cast<std::int64_t>(i)};
          for (auto u : t) e.push_back(colour[u]);
          entries[t[i]].push_back(std::move(e));
        }
      }
      ++ri;
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(entries[v].begin(), entries[v].end());
      Encoding k{colour[v]};
      for (const auto& e : entries[v]) {
        k.push_back(-1);
        k.insert(k.end(), e.begin(), e.end());
      }
      keys[v] = std::move(k);
    }
  }
  return colour;
}

Encoding encode(const Structure& d, const std::vector<VertexId>& pos) {
  Encoding out{static_cast<std::int64_t>(d.size())};
  for (const auto& [c, v] : d.constants()) out.push_back(pos[v]);
  for (const auto& [name, ar] : d.signature().relations) {
    std::vector<Tuple> mapped;
    for (const auto& t : d.facts(name)) {
      Tuple m;
      for (auto v : t) m.push_back(pos[v]);
      mapped.push_back(std::move(m));
    }
    std::sort(mapped.begin(), mapped.end());
    out.push_back(-1);
    out.push_back(static_cast<std::int64_t>(mapped.size()));
    for (const auto& m : mapped) out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

}  // namespace

std::string to_string(const GenConfig& cfg) {
  std::ostringstream os;
  const bool unset = cfg.signature.relations.empty() && cfg.signature.constants.empty();
  os << "signature={" << (unset ? "default" : to_string(cfg.signature)) << "} vertices=" << cfg.min_vertices << ".."
     << cfg.max_vertices << " seed=" << cfg.seed << " samples=" << cfg.samples
     << " exhaustive=" << cfg.exhaustive << " iso_reduce=" << cfg.iso_reduce
     << " cap=" << cfg.fact_space_cap << " required=";
  const auto& r = cfg.required;
  std::vector<std::string> flags;
  if (r.good) flags.push_back("good");
  if (r.foggy) flags.push_back("foggy");
  if (r.very_good) flags.push_back("very_good");
  if (r.non_trivial) flags.push_back("non_trivial");
  for (std::size_t i = 0; i < flags.size(); ++i) os << (i ? "," : "") << flags[i];
  if (flags.empty()) os << "none";
  if (cfg.min_planets || cfg.max_planets)
    os << " planets=" << cfg.min_planets << ".." << cfg.max_planets;
  if (cfg.mars_is_planet) os << " mars_is_planet=1";
  return os.str();
}

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return lo;
  return lo + rng() % (hi - lo + 1);
}

bool chance(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

std::string canonical_key(const Structure& d) {
  const std::size_t n = d.size();
  std::vector<int> colour = refine_colours(d);
  std::vector<std::vector<VertexId>> classes;
  {
    std::map<int, std::vector<VertexId>> by_colour;
    for (VertexId v = 0; v < n; ++v) by_colour[colour[v]].push_back(v);
    for (auto& [c, vs] : by_colour) classes.push_back(std::move(vs));
  }

  std::vector<VertexId> pos(n);
  std::optional<Encoding> best;
  std::function<void(std::size_t, VertexId)> go = [&](std::size_t k, VertexId offset) {
    if (k == classes.size()) {
      Encoding e = encode(d, pos);
      if (!best || e < *best) best = std::move(e);
      return;
    }
    std::vector<VertexId> members = classes[k];
    do {
      for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = offset + static_cast<VertexId>(i);
      go(k + 1, offset + static_cast<VertexId>(members.size()));
    } while (std::next_permutation(members.begin(), members.end()));
  };
  go(0, 0);

  std::string out;
  for (auto x : *best) out += std::to_string(x) + ",";
  return out;
}

void enumerate_structures(const GenConfig& cfg, const std::function<bool(const Structure&)>& visit) {
  check_flag_signature(cfg);
  const Signature& sig = cfg.signature;
  const std::vector<std::string> constants(sig.constants.begin(), sig.constants.end());
  std::set<std::string> seen_keys;

  for (std::size_t n = std::max<std::size_t>(cfg.min_vertices, 1); n <= cfg.max_vertices; ++n) {
    if (constants.empty() && n == 0) continue;
    const std::vector<Fact> facts = all_facts(sig, n);
    const bool iso = cfg.iso_reduce && n <= 5;

    std::vector<VertexId> at(constants.size(), 0);
    while (true) {
      std::map<std::string, VertexId> place;
      for (std::size_t i = 0; i < constants.size(); ++i) place[constants[i]] = at[i];

      bool placement_ok = true;
      if (cfg.required.non_trivial && place.at(std::string(kMars)) == place.at(std::string(kVenus)))
        placement_ok = false;

      if (placement_ok) {
        std::set<Fact> forced, forbidden;
        flag_constraints(cfg, place, forced, forbidden, n);
        std::vector<const Fact*> fixed, free;
        for (const auto& f : facts) {
          if (forced.contains(f)) fixed.push_back(&f);
          else if (!forbidden.contains(f)) free.push_back(&f);
        }
        if (free.size() > cfg.fact_space_cap || free.size() >= 63)
          throw CapExceeded("structure enumeration: " + std::to_string(free.size()) +
                            " free facts on " + std::to_string(n) + " vertices exceed the cap of " +
                            std::to_string(cfg.fact_space_cap));
        const std::uint64_t total = std::uint64_t{1} << free.size();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          std::vector<const Fact*> chosen = fixed;
          for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) chosen.push_back(free[i]);
          Structure d = assemble(sig, n, place, chosen);
          if (any_flag(cfg.required) && !satisfies(classify_structure(d), cfg.required)) continue;
          if (iso && !seen_keys.insert(std::to_string(n) + ":" + canonical_key(d)).second) continue;
          if (!visit(d)) return;
        }
      }

      std::size_t k = at.size();
      while (k > 0 && ++at[k - 1] == n) at[--k] = 0;
      if (k == 0) break;
    }
  }
}

std::vector<Structure> enumerate_all(const GenConfig& cfg) {
  std::vector<Structure> out;
  enumerate_structures(cfg, [&](const Structure& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

Structure sample_structure(Rng& rng, const GenConfig& cfg) {
  check_flag_signature(cfg);
  const Signature& sig = cfg.signature;
  const bool ext = sig.is_extension();
  const bool good = needs_good(cfg.required);
  const bool foggy = cfg.required.foggy || cfg.required.very_good;
  const bool very_good = cfg.required.very_good;

  std::size_t lo = std::max<std::size_t>(cfg.min_vertices, 1);
  std::size_t hi = std::max(lo, cfg.max_vertices);
  if (ext && (cfg.required.non_trivial || cfg.mars_is_planet)) lo = std::max<std::size_t>(lo, 2);
  if (ext) lo = std::max(lo, cfg.min_planets + 1);
  hi = std::max(hi, lo);
  const std::size_t n = uniform(rng, lo, hi);
  const unsigned density = static_cast<unsigned>(uniform(rng, 15, 60));

  std::map<std::string, VertexId> place;
  VertexId venus = 0;
  if (ext) {
    venus = static_cast<VertexId>(uniform(rng, 0, n - 1));
    place[std::string(kVenus)] = venus;
    VertexId mars = static_cast<VertexId>(uniform(rng, 0, n - 1));
    if ((cfg.required.non_trivial || cfg.mars_is_planet) && mars == venus)
      mars = static_cast<VertexId>((venus + 1 + uniform(rng, 0, n - 2)) % n);
    place[std::string(kMars)] = mars;
  }
  for (const auto& c : sig.constants)
    if (!place.contains(c)) place[c] = static_cast<VertexId>(uniform(rng, 0, n - 1));

  std::set<Fact> facts;
  for (const auto& [name, ar] : sig.relations) {
    if (ext && (name == kVisible || name == kReach)) continue;
    for (auto& t : all_tuples(n, ar))
      if (chance(rng, density)) facts.insert({name, std::move(t)});
  }

  if (ext) {
    const std::string vis(kVisible), reach(kReach);
    // Planets other than venus.
    std::vector<VertexId> others;
    for (VertexId v = 0; v < n; ++v)
      if (v != venus) others.push_back(v);
    std::set<VertexId> planet_set;
    const VertexId mars = place.at(std::string(kMars));
    if (cfg.mars_is_planet) planet_set.insert(mars);
    std::size_t max_p = cfg.max_planets ? std::min(cfg.max_planets, others.size()) : others.size();
    std::size_t min_p = std::min(std::max(cfg.min_planets, planet_set.size()), max_p);
    std::size_t want = (cfg.min_planets || cfg.max_planets) ? uniform(rng, min_p, max_p) : 0;
    std::vector<VertexId> order = others;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform(rng, 0, i - 1)]);
    for (auto v : order) {
      if (cfg.min_planets || cfg.max_planets) {
        if (planet_set.size() < want) planet_set.insert(v);
      } else if (chance(rng, 50)) {
        planet_set.insert(v);
      }
    }
    for (auto v : others) {
      if (planet_set.contains(v)) {
        facts.insert({reach, {venus, v}});
        facts.insert({reach, {v, venus}});
      } else {
        auto r = uniform(rng, 0, 2);
        if (r == 1) facts.insert({reach, {venus, v}});
        if (r == 2) facts.insert({reach, {v, venus}});
      }
    }
    for (auto u : others)
      for (auto v : others) {
        if (u == v && very_good) continue;
        unsigned pct = u == v ? density / 2 : std::max(density, 50u);
        if (u != v && planet_set.contains(u) && planet_set.contains(v)) pct = 80;
        if (chance(rng, pct)) facts.insert({reach, {u, v}});
      }
    if (good || chance(rng, 70)) facts.insert({reach, {venus, venus}});
    if (good || chance(rng, 70)) facts.insert({vis, {venus, venus}});
    for (auto a : others)
      if (!foggy && chance(rng, density)) facts.insert({vis, {venus, a}});
    for (auto p : others)
      for (VertexId a = 0; a < n; ++a)
        if (chance(rng, std::max(density, 40u))) facts.insert({vis, {p, a}});
    if (good) {
      for (const auto& atom : venus_atoms(sig)) {
        Tuple t;
        for (const auto& term : atom.args) t.push_back(place.at(term.name));
        facts.insert({atom.relation, t});
      }
    }
  }

  std::vector<const Fact*> chosen;
  for (const auto& f : facts) chosen.push_back(&f);
  Structure d = assemble(sig, n, place, chosen);
  if (any_flag(cfg.required) && !satisfies(classify_structure(d), cfg.required))
    throw std::logic_error("sampler produced a structure without the required flags");
  return d;
}

std::vector<Structure> sample_structures(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<Structure> out;
  out.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) out.push_back(sample_structure(rng, cfg));
  return out;
}

CQ random_cq(Rng& rng, const Signature& sig, const QueryShape& shape) {
  std::vector<std::pair<std::string, int>> relations(sig.relations.begin(), sig.relations.end());
  if (relations.empty()) throw PreconditionError("random queries need at least one relation");
  std::vector<std::string> constants;
  if (shape.use_constants)
    for (const auto& c : sig.constants) constants.push_back(c);
  const std::size_t nvars = uniform(rng, 1, std::max<std::size_t>(shape.max_vars, 1));
  const std::size_t natoms = uniform(rng, shape.min_atoms, std::max(shape.min_atoms, shape.max_atoms));

  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < natoms; ++i) {
    const auto& [name, ar] = relations[uniform(rng, 0, relations.size() - 1)];
    RelAtom atom{name, {}};
    bool has_var = false;
    for (int k = 0; k < ar; ++k) {
      if (!constants.empty() && chance(rng, 20)) {
        atom.args.push_back(Term::constant(constants[uniform(rng, 0, constants.size() - 1)]));
      } else {
        atom.args.push_back(Term::var("y" + std::to_string(uniform(rng, 1, nvars))));
        has_var = true;
      }
    }
    if (shape.pleasant && !has_var) {
      if (ar == 0) continue;
      atom.args[uniform(rng, 0, static_cast<std::uint64_t>(ar) - 1)] =
          Term::var("y" + std::to_string(uniform(rng, 1, nvars)));
    }
    atoms.emplace_back(std::move(atom));
  }
  return CQ(std::move(atoms), sig);
}

UCQ random_ucq(Rng& rng, const Signature& sig, const QueryShape& shape, std::size_t max_disjuncts) {
  const std::size_t k = uniform(rng, 1, std::max<std::size_t>(max_disjuncts, 1));
  std::vector<CQ> disjuncts;
  for (std::size_t i = 0; i < k; ++i) disjuncts.push_back(random_cq(rng, sig, shape));
  return UCQ(std::move(disjuncts));
}

Polynomial random_polynomial(Rng& rng, const PolyShape& shape) {
  Polynomial p;
  const std::size_t terms = uniform(rng, std::max<std::size_t>(shape.min_terms, 1), shape.max_terms);
  for (std::size_t i = 0; i < terms; ++i) {
    std::vector<std::uint32_t> idx;
    const std::size_t deg = uniform(rng, 0, shape.max_degree);
    for (std::size_t k = 0; k < deg; ++k)
      idx.push_back(static_cast<std::uint32_t>(uniform(rng, 1, std::max<std::uint32_t>(shape.variables, 1))));
    p.terms.emplace_back(std::move(idx));
  }
  return p;
}

Valuation random_valuation(Rng& rng, std::uint32_t size, std::uint64_t max_value) {
  Valuation v;
  for (std::uint32_t i = 0; i < size; ++i) v.values.push_back(uniform(rng, 0, max_value));
  return v;
}

}  // namespace bagcq
