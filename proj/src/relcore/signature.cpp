#include "bagcq/relcore/signature.hpp"

#include "bagcq/common.hpp"

namespace bagcq {

int Signature::arity(std::string_view name) const {
  auto it = relations.find(name);
  if (it == relations.end()) throw SignatureError("unknown relation '" + std::string(name) + "'");
  return it->second;
}

bool Signature::is_base() const {
  return !has_relation(kVisible) && !has_relation(kReach) && !has_constant(kVenus) &&
         !has_constant(kMars);
}

bool Signature::is_extension() const {
  auto v = relations.find(kVisible);
  auto r = relations.find(kReach);
  return v != relations.end() && v->second == 2 && r != relations.end() && r->second == 2 &&
         has_constant(kVenus) && has_constant(kMars);
}

Signature Signature::extended() const {
  if (is_extension()) return *this;
  if (!is_base()) throw SignatureError("signature is neither a base signature nor an extension");
  Signature out = *this;
  out.relations.emplace(std::string(kVisible), 2);
  out.relations.emplace(std::string(kReach), 2);
  out.constants.emplace(kVenus);
  out.constants.emplace(kMars);
  return out;
}

Signature Signature::base() const {
  Signature out = *this;
  out.relations.erase(std::string(kVisible));
  out.relations.erase(std::string(kReach));
  out.constants.erase(std::string(kVenus));
  out.constants.erase(std::string(kMars));
  return out;
}

bool Signature::includes(const Signature& other) const {
  for (const auto& [name, ar] : other.relations) {
    auto it = relations.find(name);
    if (it == relations.end() || it->second != ar) return false;
  }
  for (const auto& c : other.constants)
    if (!has_constant(c)) return false;
  return true;
}

void Signature::add_relation(std::string name, int ar) {
  if (ar < 1) throw SignatureError("relation '" + name + "' must have arity >= 1");
  auto [it, inserted] = relations.emplace(name, ar);
  if (!inserted && it->second != ar)
    throw SignatureError("relation '" + name + "' used with arity " + std::to_string(ar) +
                         " but declared with arity " + std::to_string(it->second));
}

void Signature::add_constant(std::string name) { constants.insert(std::move(name)); }

Signature Signature::merge(const Signature& a, const Signature& b) {
  Signature out = a;
  for (const auto& [name, ar] : b.relations) out.add_relation(name, ar);
  for (const auto& c : b.constants) out.add_constant(c);
  return out;
}

std::string to_string(const Signature& sig) {
  std::string out = "sig ";
  bool first = true;
  for (const auto& [name, ar] : sig.relations) {
    if (!first) out += ", ";
    first = false;
    out += name + "/" + std::to_string(ar);
  }
  return out;
}

}  // namespace bagcq
