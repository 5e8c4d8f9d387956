#include "bagcq/relcore/structure.hpp"

#include <algorithm>

namespace bagcq {

namespace {

const std::set<Tuple>& empty_facts() {
  static const std::set<Tuple> kEmpty;
  return kEmpty;
}

}  // namespace

std::optional<VertexId> Structure::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Structure::vertex(std::string_view name) const {
  auto v = find(name);
  if (!v) throw PreconditionError("unknown vertex '" + std::string(name) + "'");
  return *v;
}

VertexId Structure::constant(std::string_view name) const {
  auto it = constants_.find(name);
  if (it == constants_.end())
    throw SignatureError("constant '" + std::string(name) + "' is not interpreted");
  return it->second;
}

const std::set<Tuple>& Structure::facts(std::string_view relation) const {
  auto it = facts_.find(relation);
  return it == facts_.end() ? empty_facts() : it->second;
}

bool Structure::holds(std::string_view relation, const Tuple& args) const {
  return facts(relation).contains(args);
}

std::size_t Structure::fact_count() const {
  std::size_t total = 0;
  for (const auto& [rel, tuples] : facts_) total += tuples.size();
  return total;
}

StructureBuilder& StructureBuilder::add_vertex(const std::string& name) {
  if (name.empty()) throw PreconditionError("empty vertex name");
  vertices_.insert(name);
  return *this;
}

StructureBuilder& StructureBuilder::add_fact(const std::string& relation,
                                             const std::vector<std::string>& args) {
  int ar = sig_.arity(relation);
  if (static_cast<std::size_t>(ar) != args.size())
    throw SignatureError("fact " + relation + " has " + std::to_string(args.size()) +
                         " arguments but arity " + std::to_string(ar));
  for (const auto& a : args) add_vertex(a);
  facts_[relation].insert(args);
  return *this;
}

StructureBuilder& StructureBuilder::set_constant(const std::string& constant,
                                                 const std::string& vertex) {
  if (!sig_.has_constant(constant))
    throw SignatureError("unknown constant '" + constant + "'");
  constants_[constant] = vertex;
  return *this;
}

StructureBuilder& StructureBuilder::add_all(const Structure& d) {
  for (const auto& name : d.vertex_names()) add_vertex(name);
  for (const auto& [rel, ar] : d.signature().relations) {
    if (!sig_.has_relation(rel)) continue;
    for (const auto& t : d.facts(rel)) {
      std::vector<std::string> args;
      args.reserve(t.size());
      for (auto v : t) args.push_back(d.name(v));
      add_fact(rel, args);
    }
  }
  for (const auto& [c, v] : d.constants())
    if (sig_.has_constant(c)) set_constant(c, d.name(v));
  return *this;
}

Structure StructureBuilder::build() const {
  Structure d;
  d.sig_ = sig_;
  d.names_.assign(vertices_.begin(), vertices_.end());
  for (std::size_t i = 0; i < d.names_.size(); ++i)
    d.index_.emplace(d.names_[i], static_cast<VertexId>(i));
  for (const auto& c : sig_.constants) {
    auto it = constants_.find(c);
    if (it == constants_.end())
      throw SignatureError("constant '" + c + "' is not interpreted");
    if (!vertices_.contains(it->second))
      throw SignatureError("constant '" + c + "' names missing vertex '" + it->second + "'");
    d.constants_.emplace(c, d.index_.at(it->second));
  }
  for (const auto& [rel, tuples] : facts_) {
    auto& out = d.facts_[rel];
    for (const auto& args : tuples) {
      Tuple t;
      t.reserve(args.size());
      for (const auto& a : args) t.push_back(d.index_.at(a));
      out.insert(std::move(t));
    }
  }
  return d;
}

Structure canonical_structure(const CQ& cq) {
  if (cq.has_inequalities())
    throw PreconditionError("canonical structure of a query with inequality atoms");
  Signature sig;
  sig.relations = cq.signature().relations;
  auto consts = cq.constants();
  for (const auto& c : consts) sig.add_constant(c);
  StructureBuilder b(sig);
  for (const auto& c : consts) b.set_constant(c, c);
  for (const auto& v : cq.variables()) {
    if (consts.contains(v))
      throw PreconditionError("variable and constant share the name '" + v + "'");
    b.add_vertex(v);
  }
  for (const auto& atom : cq.relational_atoms()) {
    std::vector<std::string> args;
    for (const auto& t : atom.args) args.push_back(t.name);
    b.add_fact(atom.relation, args);
  }
  return b.build();
}

Structure restrict_to(const Structure& d, const std::set<std::string>& keep,
                      const Signature& target) {
  for (const auto& name : keep)
    if (!d.find(name)) throw PreconditionError("vertex '" + name + "' is not in the structure");
  for (const auto& c : target.constants)
    if (!keep.contains(d.name(d.constant(c))))
      throw PreconditionError("restriction drops the interpretation of constant '" + c + "'");
  StructureBuilder b(target);
  for (const auto& name : keep) b.add_vertex(name);
  for (const auto& [rel, ar] : target.relations) {
    if (!d.signature().has_relation(rel)) continue;
    for (const auto& t : d.facts(rel)) {
      bool inside = std::all_of(t.begin(), t.end(),
                                [&](VertexId v) { return keep.contains(d.name(v)); });
      if (!inside) continue;
      std::vector<std::string> args;
      for (auto v : t) args.push_back(d.name(v));
      b.add_fact(rel, args);
    }
  }
  for (const auto& c : target.constants) b.set_constant(c, d.name(d.constant(c)));
  return b.build();
}

Structure restrict(const Structure& d, const std::set<std::string>& keep) {
  return restrict_to(d, keep, d.signature());
}

Structure with_vertex_constants(const Structure& d) {
  Signature sig = d.signature();
  for (const auto& name : d.vertex_names()) {
    auto it = d.constants().find(name);
    if (it != d.constants().end() && d.name(it->second) != name)
      throw SignatureError("constant '" + name + "' already names another vertex");
    sig.add_constant(name);
  }
  StructureBuilder b(sig);
  b.add_all(d);
  for (const auto& name : d.vertex_names()) b.set_constant(name, name);
  return b.build();
}

std::set<std::string> names_of(const Structure& d, const std::vector<VertexId>& vs) {
  std::set<std::string> out;
  for (auto v : vs) out.insert(d.name(v));
  return out;
}

}  // namespace bagcq
