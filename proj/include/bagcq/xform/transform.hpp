#pragma once

#include <map>
#include <string>
#include <vector>

#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

/// V(venus,venus) & R(venus,venus) & every venus-atom over the base part of
/// `sig`. Variable-free.
CQ good_query(const Signature& sig);

/// R(venus,x) & R(x,venus).
CQ planet_query(const Term& x, const Signature& sig = {});

/// cq & Planet(x) & V(x,y) for every variable y of cq. `x` may be a
/// variable or a constant; it must not occur in cq.
CQ relativize(const Term& x, const CQ& cq);

/// Planet(x) for each variable plus R in both directions for every pair.
CQ rclique(const std::vector<std::string>& vars, const Signature& sig = {});

/// RClique(x1..xj) & relativize(x_j, phi_j) for the j disjuncts. Repeated
/// Planet atoms are emitted once. Requires a pleasant query free of
/// inequalities and of the reserved names x1, x2, ...
CQ cqize(const UCQ& q);

/// Good & Planet(mars) on two fresh vertices, plus d, plus V(mars,a) for
/// every vertex a of d. `d` must be over a base signature.
Structure marsify(const Structure& d);

/// m atoms V(venus,_) on fresh variables; m >= 1.
CQ eta0(std::size_t m, const Signature& sig = {});

/// V(venus,_) & R(v,v).
CQ eta1(const Signature& sig = {});

/// Replaces variables by constants named after vertices (q[h]). Evaluate the
/// result on with_vertex_constants(d).
CQ substitute(const CQ& q, const std::map<std::string, std::string>& h);

}  // namespace bagcq
