#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "bagcq/common.hpp"
#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

enum class ContainmentMode { AllStructures, NonTrivialOnly };

const char* to_string(ContainmentMode mode);

/// A containment question `scale * qs <= qb` over all structures, or over
/// the structures interpreting mars and venus differently.
struct ReductionInstance {
  ReductionInstance(UCQ s, UCQ b) : qs(std::move(s)), qb(std::move(b)) {}

  UCQ qs;
  UCQ qb;
  Rational scale{1};
  ContainmentMode mode = ContainmentMode::AllStructures;
  std::string provenance;
  /// Printable construction parameters (c, cent, u, m, ...).
  std::map<std::string, std::string> params;
  /// Padded polynomials when the construction pads its input.
  std::optional<Padding> padding;
};

/// gamma_s = Good & cq(psi_s), gamma_b = eta0(m) & cq(Psi_b), m the number of
/// disjuncts of Psi_b. Both inputs must be pleasant and over a base signature.
ReductionInstance build_thm1(const CQ& psi_s, const UCQ& psi_b);

/// Name of the believer relation for `relation`: a trailing prime.
std::string believer_relation(const std::string& relation);

/// R/i becomes R'/(i+1); constants are kept.
Signature believer_signature(const Signature& sig);

/// Every atom R(y..) of a disjunct becomes R'(x, y..) with one fresh
/// variable x per disjunct. Rejects inequality atoms.
UCQ pleasantize(const UCQ& q);

/// D_c over the unprimed signature: R(a..) holds iff R'(c, a..) holds in d.
/// Same vertices and constants as d.
Structure believer_slice(const Structure& d, VertexId c);

/// D^c over the primed signature: R'(c, a..) for every fact R(a..) of d;
/// c is added as a vertex when new.
Structure believer_lift(const Structure& d, const std::string& c);

/// Phi_s = one disjunct Good & Planet(mars) & relativize(mars, mu(M)) per
/// monomial of ps; phi_b = cq(ucq(pb)). Non-trivial mode, scale 1.
ReductionInstance build_thm2(const Polynomial& ps, const Polynomial& pb);

/// Smallest-denominator rational in [sqrt(c), c); for equal denominators,
/// the smallest numerator. Requires c > 1.
Rational choose_cent(const Rational& c);

/// Pads (ps0, pb0) for c = 1 + eps and the chosen cent, then
/// beta_s = Good & Planet(mars) & cq(ucq(Ps)), beta_b = eta1 & cq(ucq(Pb)).
/// Scale c, non-trivial mode. Requires 0 < eps <= 1.
ReductionInstance build_thm3(const Polynomial& ps0, const Polynomial& pb0, const Rational& eps);

/// Same queries from already padded polynomials, with scale c.
ReductionInstance build_thm3_padded(const Polynomial& ps, const Polynomial& pb, const Rational& c);

/// Name of the fresh unary relation used by the gadgets.
inline constexpr std::string_view kGadgetRelation = "P";

/// alpha_s = (mars != venus) & P(mars) & P(venus) & P(z) & P(z'),
/// alpha_b = P(z) & P(z') & z != z'.
std::pair<CQ, CQ> cor5_gadgets();

/// gamma_s = beta_s & alpha_s, gamma_b = beta_b & alpha_b with variables kept
/// apart. All-structures mode. Throws if P already occurs in a signature.
ReductionInstance cor5_compose(const CQ& beta_s, const CQ& beta_b);

}  // namespace bagcq
