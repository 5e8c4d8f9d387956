#pragma once

#include "bagcq/relcore/query.hpp"
#include "bagcq/relcore/structure.hpp"

namespace bagcq {

struct StructureFlags {
  bool good = false;
  /// Only meaningful for good structures; false otherwise.
  bool foggy = false;
  bool very_good = false;
  bool non_trivial = false;

  friend bool operator==(const StructureFlags&, const StructureFlags&) = default;
};

/// Variable-free atoms over the base part of `sig` plus venus in which venus
/// occurs at least once, in a fixed enumeration order.
std::vector<RelAtom> venus_atoms(const Signature& base);

/// Requires an extension signature.
StructureFlags classify_structure(const Structure& d);

}  // namespace bagcq
