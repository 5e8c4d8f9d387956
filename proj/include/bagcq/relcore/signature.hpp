#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace bagcq {

inline constexpr std::string_view kVenus = "venus";
inline constexpr std::string_view kMars = "mars";
inline constexpr std::string_view kVisible = "V";
inline constexpr std::string_view kReach = "R";

/// Relation symbols with arities plus constant symbols.
///
/// A base signature never mentions V, R, venus or mars. Its extension adds
/// the binary relations V (visibility) and R (reachability) and the two
/// distinguished constants.
struct Signature {
  std::map<std::string, int, std::less<>> relations;
  std::set<std::string, std::less<>> constants;

  bool has_relation(std::string_view name) const { return relations.contains(name); }
  bool has_constant(std::string_view name) const { return constants.contains(name); }

  /// Arity of `name`; throws SignatureError when absent.
  int arity(std::string_view name) const;

  bool is_base() const;
  bool is_extension() const;

  /// Adds V/2, R/2, venus and mars. Throws if this is not a base signature
  /// or an extension already.
  Signature extended() const;

  /// Drops V, R, venus and mars.
  Signature base() const;

  /// True when every relation (with equal arity) and constant of `other`
  /// also belongs to this signature.
  bool includes(const Signature& other) const;

  void add_relation(std::string name, int arity);
  void add_constant(std::string name);

  /// Union; throws SignatureError on conflicting arities.
  static Signature merge(const Signature& a, const Signature& b);

  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& sig);

}  // namespace bagcq
