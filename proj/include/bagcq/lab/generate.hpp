#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/relcore/classify.hpp"
#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

using Rng = std::mt19937_64;

/// Bounds and filters for structure streams.
struct GenConfig {
  Signature signature;
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 3;
  /// Flags every emitted structure must have (set members only).
  StructureFlags required;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  /// Enumerate instead of sampling where a check supports both.
  bool exhaustive = false;
  /// One representative per isomorphism class; only honoured up to 5 vertices.
  bool iso_reduce = false;
  /// Largest number of undetermined facts per vertex count and constant placement.
  std::size_t fact_space_cap = 24;
  /// Sampling only: number of planets other than venus, when the signature
  /// is an extension. max_planets = 0 means no upper bound.
  std::size_t min_planets = 0;
  std::size_t max_planets = 0;
  /// Sampling only: make mars a planet.
  bool mars_is_planet = false;
};

std::string to_string(const GenConfig& cfg);

/// Uniform integer in [lo, hi], by modulo reduction so that the stream only
/// depends on the engine.
std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);
/// True with probability percent / 100.
bool chance(Rng& rng, unsigned percent);

/// Calls `visit` on every structure with min..max vertices (named v0, v1,
/// ...) over the signature that has the required flags; stops when it
/// returns false. Throws CapExceeded when the free fact space of one
/// vertex count exceeds the cap.
void enumerate_structures(const GenConfig& cfg, const std::function<bool(const Structure&)>& visit);
std::vector<Structure> enumerate_all(const GenConfig& cfg);

/// cfg.samples seeded random structures; flagged ones are built directly.
std::vector<Structure> sample_structures(const GenConfig& cfg);
Structure sample_structure(Rng& rng, const GenConfig& cfg);

/// Key equal for two structures iff they are isomorphic (same signature).
std::string canonical_key(const Structure& d);

struct QueryShape {
  std::size_t min_atoms = 1;
  std::size_t max_atoms = 3;
  std::size_t max_vars = 3;
  /// Every atom gets at least one variable.
  bool pleasant = true;
  bool use_constants = true;
};

/// Random CQ over the relations and constants of `sig`; variables are
/// y1, y2, ...
CQ random_cq(Rng& rng, const Signature& sig, const QueryShape& shape);
UCQ random_ucq(Rng& rng, const Signature& sig, const QueryShape& shape, std::size_t max_disjuncts);

struct PolyShape {
  std::uint32_t variables = 2;
  std::size_t min_terms = 1;
  std::size_t max_terms = 4;
  std::size_t max_degree = 3;
};

Polynomial random_polynomial(Rng& rng, const PolyShape& shape);
Valuation random_valuation(Rng& rng, std::uint32_t size, std::uint64_t max_value);

}  // namespace bagcq
