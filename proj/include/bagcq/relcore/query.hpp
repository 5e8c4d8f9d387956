#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bagcq/relcore/signature.hpp"

namespace bagcq {

struct Term {
  enum class Kind { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term var(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }

  bool is_var() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

struct RelAtom {
  std::string relation;
  std::vector<Term> args;

  friend auto operator<=>(const RelAtom&, const RelAtom&) = default;
  friend bool operator==(const RelAtom&, const RelAtom&) = default;
};

/// Asserts that two terms denote distinct vertices.
struct NeqAtom {
  Term lhs;
  Term rhs;

  friend auto operator<=>(const NeqAtom&, const NeqAtom&) = default;
  friend bool operator==(const NeqAtom&, const NeqAtom&) = default;
};

using Atom = std::variant<RelAtom, NeqAtom>;

RelAtom rel(std::string relation, std::vector<Term> args);

/// Boolean conjunctive query; every variable is existentially quantified.
///
/// Invariants checked on construction: relational atoms respect the
/// signature, constants are declared, no name is both a variable and a
/// constant, and every variable of an inequality also occurs in some
/// relational atom.
class CQ {
 public:
  CQ() = default;
  CQ(std::vector<Atom> atoms, Signature sig);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const Signature& signature() const { return sig_; }
  bool empty() const { return atoms_.empty(); }

  /// Variables in order of first occurrence.
  std::vector<std::string> variables() const;
  std::set<std::string> variable_set() const;
  std::set<std::string> constants() const;

  bool has_inequalities() const;
  std::vector<RelAtom> relational_atoms() const;

  friend bool operator==(const CQ&, const CQ&) = default;

 private:
  std::vector<Atom> atoms_;
  Signature sig_;
};

/// Union of CQs over a common signature with pairwise disjoint variables.
class UCQ {
 public:
  /// Renames variables of later disjuncts that clash with earlier ones.
  explicit UCQ(std::vector<CQ> disjuncts);
  UCQ(CQ single);  // NOLINT(google-explicit-constructor)

  const std::vector<CQ>& disjuncts() const { return disjuncts_; }
  std::size_t size() const { return disjuncts_.size(); }
  const CQ& operator[](std::size_t i) const { return disjuncts_[i]; }
  const Signature& signature() const { return sig_; }

  friend bool operator==(const UCQ&, const UCQ&) = default;

 private:
  std::vector<CQ> disjuncts_;
  Signature sig_;
};

/// Replaces variables according to `renaming`; other terms are kept.
CQ rename_variables(const CQ& cq, const std::map<std::string, std::string>& renaming);

/// Returns `base`-derived name not in `used` (`base` itself when free, else
/// `base_2`, `base_3`, ...).
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

/// Conjunction keeping variable names as they are (shared names join).
CQ conjoin(const CQ& a, const CQ& b);

/// Conjunction after renaming variables of `b` that clash with `a`.
CQ conjoin_disjoint(const CQ& a, const CQ& b);

/// Same atoms, signature widened to `sig` (which must include the old one).
CQ with_signature(const CQ& cq, const Signature& sig);

/// Removes repeated identical relational atoms, keeping first occurrences.
CQ dedup_atoms(const CQ& cq);

bool is_pleasant(const CQ& cq);
bool is_pleasant(const UCQ& q);

/// Alien variables x1, x2, ... are reserved for CQ-ization.
bool is_alien_name(const std::string& name);
std::string alien_name(std::size_t index);

}  // namespace bagcq
