#pragma once

#include <optional>
#include <vector>

#include "bagcq/lab/generate.hpp"
#include "bagcq/reductions/reductions.hpp"

namespace bagcq {

struct Counterexample {
  Structure d;
  /// apply(qs, d) and apply(qb, d); the violation is scale * lhs > rhs.
  Count lhs;
  Count rhs;
};

/// Scans the given structures first, then the enumerated (cfg.exhaustive)
/// or sampled stream, for a structure violating the scaled containment.
/// Non-trivial-only instances skip structures with mars = venus. When
/// cfg.signature has no relations the instance's signature is used.
/// Finding nothing proves nothing.
std::optional<Counterexample> search_counterexample(const ReductionInstance& inst, const GenConfig& cfg,
                                                    const std::vector<Structure>& seeds = {});

}  // namespace bagcq
