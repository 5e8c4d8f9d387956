#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bagcq/common.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/signature.hpp"

namespace bagcq {

using Tuple = std::vector<VertexId>;

/// Finite relational structure. Vertices are kept sorted by name and
/// addressed by their index; every constant of the signature is
/// interpreted. Immutable once built.
class Structure {
 public:
  Structure() = default;

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  std::optional<VertexId> find(std::string_view name) const;
  VertexId vertex(std::string_view name) const;

  /// Interpretation of a constant; throws SignatureError if undeclared.
  VertexId constant(std::string_view name) const;
  const std::map<std::string, VertexId, std::less<>>& constants() const { return constants_; }

  /// Facts of a relation, sorted; empty when the relation has none.
  const std::set<Tuple>& facts(std::string_view relation) const;
  bool holds(std::string_view relation, const Tuple& args) const;
  std::size_t fact_count() const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  friend class StructureBuilder;

  Signature sig_;
  std::vector<std::string> names_;
  std::map<std::string, VertexId, std::less<>> index_;
  std::map<std::string, VertexId, std::less<>> constants_;
  std::map<std::string, std::set<Tuple>, std::less<>> facts_;
};

/// Collects vertices, facts and constants by name, then validates.
class StructureBuilder {
 public:
  explicit StructureBuilder(Signature sig) : sig_(std::move(sig)) {}

  StructureBuilder& add_vertex(const std::string& name);
  /// Adds the fact and any vertex it mentions. Arity is checked here.
  StructureBuilder& add_fact(const std::string& relation, const std::vector<std::string>& args);
  StructureBuilder& set_constant(const std::string& constant, const std::string& vertex);

  /// Copies all vertices, facts and constant interpretations of `d` whose
  /// symbols belong to this builder's signature.
  StructureBuilder& add_all(const Structure& d);

  bool has_vertex(const std::string& name) const { return vertices_.contains(name); }
  const Signature& signature() const { return sig_; }

  /// Throws SignatureError on an uninterpreted constant.
  Structure build() const;

 private:
  Signature sig_;
  std::set<std::string> vertices_;
  std::map<std::string, std::string> constants_;
  std::map<std::string, std::set<std::vector<std::string>>> facts_;
};

/// Vertices are the variables and constants of `cq`, facts its relational
/// atoms; constants interpret themselves. Rejects inequality atoms.
Structure canonical_structure(const CQ& cq);

/// Substructure induced by `keep`. Every constant must stay interpreted.
Structure restrict(const Structure& d, const std::set<std::string>& keep);

/// Like restrict, but only relations and constants of `target` survive.
Structure restrict_to(const Structure& d, const std::set<std::string>& keep, const Signature& target);

/// Adds a constant per vertex, named like the vertex, so that queries with
/// substituted vertices can be evaluated. Throws if a vertex name is already
/// a constant interpreted elsewhere.
Structure with_vertex_constants(const Structure& d);

/// Vertex names (sorted) of a set of vertex ids.
std::set<std::string> names_of(const Structure& d, const std::vector<VertexId>& vs);

}  // namespace bagcq
