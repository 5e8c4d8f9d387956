#include "bagcq/lab/search.hpp"

#include "bagcq/bageval/eval.hpp"

namespace bagcq {

std::optional<Counterexample> search_counterexample(const ReductionInstance& inst, const GenConfig& cfg,
                                                    const std::vector<Structure>& seeds) {
  const Signature inst_sig = Signature::merge(inst.qs.signature(), inst.qb.signature());
  std::optional<Counterexample> hit;

  auto test = [&](const Structure& d) {
    if (inst.mode == ContainmentMode::NonTrivialOnly && d.signature().has_constant(kVenus) &&
        d.signature().has_constant(kMars) && d.constant(kVenus) == d.constant(kMars))
      return true;
    ScaledCheck r = check_scaled_containment_at(inst.scale, inst.qs, inst.qb, d);
    if (r.holds) return true;
    hit = Counterexample{d, r.lhs, r.rhs};
    return false;
  };

  for (const auto& d : seeds)
    if (!test(d)) return hit;

  GenConfig c = cfg;
  if (c.signature.relations.empty()) c.signature = inst_sig;
  if (c.exhaustive) {
    enumerate_structures(c, test);
  } else {
    Rng rng(c.seed);
    for (std::size_t i = 0; i < c.samples && !hit; ++i) test(sample_structure(rng, c));
  }
  return hit;
}

}  // namespace bagcq
