#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bagcq/common.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

/// Total mapping from a query's variables to vertices.
using Assignment = std::map<std::string, VertexId>;

struct EvalOptions {
  /// Variables fixed in advance; each must occur in the query.
  Assignment pinned;
  /// When set, unpinned variables range only over vertices marked true.
  std::optional<std::vector<bool>> domain;
};

/// |Hom(cq, d)|: assignments of var(cq) mapping every relational atom onto a
/// fact and every inequality onto distinct vertices. Constants are bound to
/// their interpretations. The empty CQ counts 1.
///
/// Backtracks most-constrained-variable first and multiplies counts of
/// independent components of the still-unassigned variables.
Count count_homs(const CQ& cq, const Structure& d, const EvalOptions& options = {});

/// Same contract, by enumerating all |V(d)|^|var(cq)| assignments.
Count count_homs_naive(const CQ& cq, const Structure& d);

/// Sum of count_homs over the disjuncts.
Count apply(const UCQ& q, const Structure& d);
Count apply_naive(const UCQ& q, const Structure& d);

/// Enumerates Hom(cq, d) in the naive order; used by oracles and the CLI.
std::vector<Assignment> homomorphisms(const CQ& cq, const Structure& d);

/// Connected components of the variable-sharing graph, in order of their
/// first atom. Variable-free atoms form singleton components.
std::vector<CQ> component_split(const CQ& cq);

/// Vertices p with R(venus,p) and R(p,venus), ascending.
std::vector<VertexId> planets(const Structure& d);
/// planets(d) without venus.
std::vector<VertexId> planets_except_venus(const Structure& d);

/// Vertices a with V(p,a), as a membership mask.
std::vector<bool> visible_from(VertexId p, const Structure& d);

/// Substructure visible from planet p, narrowed to the base signature.
/// Throws when p is not a planet or a base constant is not visible from p.
Structure seen(VertexId p, const Structure& d);

/// Count of a base-signature query with its variables restricted to the
/// vertices visible from p and constants fixed. Equals the count of its
/// relativization at p, and does not need base constants to be visible.
Count count_seen_from(const CQ& cq, VertexId p, const Structure& d);

struct ScaledCheck {
  bool holds = false;
  Count lhs;
  Count rhs;
};

/// Whether r * apply(qs,d) <= apply(qb,d), compared exactly.
ScaledCheck check_scaled_containment_at(const Rational& r, const UCQ& qs, const UCQ& qb,
                                        const Structure& d);

/// r * lhs <= rhs over exact rationals.
bool scaled_leq(const Rational& r, const Count& lhs, const Count& rhs);

}  // namespace bagcq
