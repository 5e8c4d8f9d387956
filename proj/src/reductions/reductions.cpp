#include "bagcq/reductions/reductions.hpp"

#include "bagcq/xform/transform.hpp"

namespace bagcq {

namespace {

Term mars() { return Term::constant(std::string(kMars)); }
Term venus() { return Term::constant(std::string(kVenus)); }

CQ good_and_mars_planet(const Signature& sig) {
  return conjoin(good_query(sig), planet_query(mars(), sig));
}

}  // namespace

const char* to_string(ContainmentMode mode) {
  return mode == ContainmentMode::AllStructures ? "all-structures" : "non-trivial-only";
}

ReductionInstance build_thm1(const CQ& psi_s, const UCQ& psi_b) {
  if (!is_pleasant(psi_b)) throw PreconditionError("the b-query must be pleasant");
  if (!is_pleasant(psi_s)) throw PreconditionError("the s-query must be pleasant");
  Signature sig = Signature::merge(psi_s.signature(), psi_b.signature());
  if (!sig.is_base()) throw SignatureError("theorem 1 inputs must be over a base signature");
  CQ gamma_s = conjoin(good_query(sig), cqize(UCQ(with_signature(psi_s, sig))));
  std::vector<CQ> disjuncts;
  for (const auto& cq : psi_b.disjuncts()) disjuncts.push_back(with_signature(cq, sig));
  CQ gamma_b = conjoin_disjoint(cqize(UCQ(std::move(disjuncts))), eta0(psi_b.size(), sig));
  ReductionInstance inst{UCQ(gamma_s), UCQ(gamma_b)};
  inst.mode = ContainmentMode::AllStructures;
  inst.provenance = "thm1";
  inst.params["m"] = std::to_string(psi_b.size());
  return inst;
}

std::string believer_relation(const std::string& relation) { return relation + "'"; }

Signature believer_signature(const Signature& sig) {
  Signature out;
  for (const auto& [name, ar] : sig.relations) out.add_relation(believer_relation(name), ar + 1);
  out.constants = sig.constants;
  return out;
}

UCQ pleasantize(const UCQ& q) {
  Signature primed = believer_signature(q.signature());
  std::set<std::string> used;
  for (const auto& cq : q.disjuncts()) {
    auto vars = cq.variable_set();
    used.insert(vars.begin(), vars.end());
  }
  std::vector<CQ> out;
  for (const auto& cq : q.disjuncts()) {
    if (cq.has_inequalities()) throw PreconditionError("pleasantization does not accept inequality atoms");
    std::string x = fresh_name("b", used);
    used.insert(x);
    std::vector<Atom> atoms;
    for (const auto& atom : cq.relational_atoms()) {
      RelAtom primed_atom{believer_relation(atom.relation), {Term::var(x)}};
      primed_atom.args.insert(primed_atom.args.end(), atom.args.begin(), atom.args.end());
      atoms.emplace_back(std::move(primed_atom));
    }
    out.emplace_back(std::move(atoms), primed);
  }
  return UCQ(std::move(out));
}

Structure believer_slice(const Structure& d, VertexId c) {
  if (c >= d.size()) throw PreconditionError("believer is not a vertex");
  Signature sig;
  for (const auto& [name, ar] : d.signature().relations) {
    if (name.size() < 2 || name.back() != '\'' || ar < 2)
      throw SignatureError("relation '" + name + "' is not a believer relation");
    sig.add_relation(name.substr(0, name.size() - 1), ar - 1);
  }
  sig.constants = d.signature().constants;
  StructureBuilder b(sig);
  for (const auto& v : d.vertex_names()) b.add_vertex(v);
  for (const auto& [name, ar] : d.signature().relations) {
    for (const auto& t : d.facts(name)) {
      if (t[0] != c) continue;
      std::vector<std::string> args;
      for (std::size_t i = 1; i < t.size(); ++i) args.push_back(d.name(t[i]));
      b.add_fact(name.substr(0, name.size() - 1), args);
    }
  }
  for (const auto& [k, v] : d.constants()) b.set_constant(k, d.name(v));
  return b.build();
}

Structure believer_lift(const Structure& d, const std::string& c) {
  StructureBuilder b(believer_signature(d.signature()));
  b.add_vertex(c);
  for (const auto& v : d.vertex_names()) b.add_vertex(v);
  for (const auto& [name, ar] : d.signature().relations) {
    for (const auto& t : d.facts(name)) {
      std::vector<std::string> args{c};
      for (auto v : t) args.push_back(d.name(v));
      b.add_fact(believer_relation(name), args);
    }
  }
  for (const auto& [k, v] : d.constants()) b.set_constant(k, d.name(v));
  return b.build();
}

ReductionInstance build_thm2(const Polynomial& ps, const Polynomial& pb) {
  if (ps.empty() || pb.empty()) throw PreconditionError("theorem 2 needs nonempty polynomials");
  std::uint32_t n = std::max(ps.max_index(), pb.max_index());
  Signature sig = unary_signature(n);
  CQ prefix = good_and_mars_planet(sig);
  std::vector<CQ> disjuncts;
  for (const auto& m : ps.terms)
    disjuncts.push_back(dedup_atoms(conjoin(prefix, relativize(mars(), mono_to_cq(m, n)))));
  ReductionInstance inst{UCQ(std::move(disjuncts)), UCQ(cqize(poly_to_ucq(pb, n)))};
  inst.mode = ContainmentMode::NonTrivialOnly;
  inst.provenance = "thm2";
  inst.params["n"] = std::to_string(n);
  return inst;
}

Rational choose_cent(const Rational& c) {
  if (c <= 1) throw PreconditionError("cent needs c > 1");
  const Count cn = boost::multiprecision::numerator(c);
  const Count cd = boost::multiprecision::denominator(c);
  for (Count den = 1;; ++den) {
    // least num with num^2 * cd >= cn * den^2
    const Count target = cn * den * den;
    Count num = boost::multiprecision::sqrt(Count(target / cd));
    while (num * num * cd < target) ++num;
    while (num > 0 && (num - 1) * (num - 1) * cd >= target) --num;
    Rational cand(num, den);
    if (cand < c) return cand;
  }
}

ReductionInstance build_thm3_padded(const Polynomial& ps, const Polynomial& pb, const Rational& c) {
  if (ps.empty() || pb.empty()) throw PreconditionError("theorem 3 needs nonempty polynomials");
  std::uint32_t n = std::max(ps.max_index(), pb.max_index());
  Signature sig = unary_signature(n);
  CQ beta_s = dedup_atoms(conjoin(good_and_mars_planet(sig), cqize(poly_to_ucq(ps, n))));
  CQ beta_b = conjoin_disjoint(cqize(poly_to_ucq(pb, n)), eta1(sig));
  ReductionInstance inst{UCQ(beta_s), UCQ(beta_b)};
  inst.scale = c;
  inst.mode = ContainmentMode::NonTrivialOnly;
  inst.provenance = "thm3";
  inst.params["n"] = std::to_string(n);
  inst.params["c"] = to_string(c);
  return inst;
}

ReductionInstance build_thm3(const Polynomial& ps0, const Polynomial& pb0, const Rational& eps) {
  if (!(eps > 0 && eps <= 1)) throw PreconditionError("eps must satisfy 0 < eps <= 1");
  Rational c = 1 + eps;
  Rational cent = choose_cent(c);
  Padding padding = pad_polynomials(ps0, pb0, c, cent);
  ReductionInstance inst = build_thm3_padded(padding.ps, padding.pb, c);
  inst.params["eps"] = to_string(eps);
  inst.params["cent"] = to_string(cent);
  inst.params["u"] = padding.u.str();
  inst.params["ps"] = to_string(padding.ps);
  inst.params["pb"] = to_string(padding.pb);
  inst.padding = std::move(padding);
  return inst;
}

std::pair<CQ, CQ> cor5_gadgets() {
  Signature sig;
  const std::string p(kGadgetRelation);
  sig.add_relation(p, 1);
  sig.add_constant(std::string(kVenus));
  sig.add_constant(std::string(kMars));
  Term z = Term::var("z");
  Term zp = Term::var("z'");
  CQ alpha_s({NeqAtom{mars(), venus()}, rel(p, {mars()}), rel(p, {venus()}), rel(p, {z}), rel(p, {zp})},
             sig);
  CQ alpha_b({rel(p, {z}), rel(p, {zp}), NeqAtom{z, zp}}, sig);
  return {alpha_s, alpha_b};
}

ReductionInstance cor5_compose(const CQ& beta_s, const CQ& beta_b) {
  for (const CQ* q : {&beta_s, &beta_b})
    if (q->signature().has_relation(kGadgetRelation))
      throw SignatureError("relation P is already in use");
  auto [alpha_s, alpha_b] = cor5_gadgets();
  ReductionInstance inst{UCQ(conjoin_disjoint(beta_s, alpha_s)), UCQ(conjoin_disjoint(beta_b, alpha_b))};
  inst.mode = ContainmentMode::AllStructures;
  inst.provenance = "cor5";
  return inst;
}

}  // namespace bagcq
