#include "bagcq/lab/lemmas.hpp"

#include <map>
#include <sstream>

#include "bagcq/bageval/eval.hpp"
#include "bagcq/reductions/reductions.hpp"
#include "bagcq/relcore/text.hpp"
#include "bagcq/xform/transform.hpp"
#include "bagcq/xform/trips.hpp"

namespace bagcq {

namespace {

using Clock = std::chrono::steady_clock;

class Tally {
 public:
  explicit Tally(std::string id) : start_(Clock::now()) { report_.id = std::move(id); }

  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++report_.run;
    if (ok) ++report_.passed;
    else if (!report_.counterexample) report_.counterexample = describe();
  }

  std::size_t run() const { return report_.run; }

  LemmaReport finish() {
    report_.elapsed = Clock::now() - start_;
    return report_;
  }

 private:
  LemmaReport report_;
  Clock::time_point start_;
};

struct Context {
  const GenConfig& cfg;
  const LemmaHooks& hooks;
  Rng rng;

  Context(const GenConfig& c, const LemmaHooks& h) : cfg(c), hooks(h), rng(c.seed ^ 0x9e3779b97f4a7c15ULL) {}

  Signature base() const {
    Signature sig = cfg.signature.is_extension() ? cfg.signature.base() : cfg.signature;
    if (!sig.relations.empty()) return sig;
    sig.add_relation("A", 1);
    sig.add_relation("E", 2);
    sig.add_constant("a");
    return sig;
  }

  CQ cqize(const UCQ& q) const { return hooks.cqize ? hooks.cqize(q) : bagcq::cqize(q); }

  GenConfig with(const Signature& sig, StructureFlags flags = {}) const {
    GenConfig c = cfg;
    c.signature = sig;
    c.required = flags;
    return c;
  }

  /// Structures for unconditional properties.
  std::vector<Structure> structures(const Signature& sig, StructureFlags flags = {}) const {
    GenConfig c = with(sig, flags);
    return c.exhaustive ? enumerate_all(c) : sample_structures(c);
  }

  std::size_t attempts() const { return 20 * std::max<std::size_t>(cfg.samples, 1); }
};

StructureFlags flags_good() {
  StructureFlags f;
  f.good = true;
  return f;
}

StructureFlags flags_foggy() {
  StructureFlags f = flags_good();
  f.foggy = true;
  return f;
}

StructureFlags flags_very_good() {
  StructureFlags f = flags_foggy();
  f.very_good = true;
  f.non_trivial = true;
  return f;
}

QueryShape small_shape() {
  QueryShape s;
  s.max_atoms = 3;
  s.max_vars = 3;
  return s;
}

std::string show(const Structure& d) { return "structure:\n" + to_string(d); }

std::string show(const UCQ& q) { return "query: " + to_string(q) + "\n"; }

std::string show(const CQ& q) { return "query: " + to_string(q) + "\n"; }

/// Count of relativize(p, phi) with the planet pinned.
Count relativized_at(const CQ& phi, VertexId p, const Structure& d) {
  const std::string x = alien_name(1);
  EvalOptions opts;
  opts.pinned[x] = p;
  return count_homs(relativize(Term::var(x), phi), d, opts);
}

std::map<std::string, std::string> trip_mapping(const std::vector<VertexId>& images, const Structure& d) {
  std::map<std::string, std::string> h;
  for (std::size_t j = 0; j < images.size(); ++j) h[alien_name(j + 1)] = d.name(images[j]);
  return h;
}

/// Count of q[h] on d; `dv` is with_vertex_constants(d).
Count substituted(const CQ& q, const std::vector<VertexId>& images, const Structure& d, const Structure& dv) {
  return count_homs(substitute(q, trip_mapping(images, d)), dv);
}

bool constants_visible(VertexId p, const Structure& d) {
  auto vis = visible_from(p, d);
  for (const auto& c : d.signature().base().constants)
    if (!vis[d.constant(c)]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation and single-planet properties

LemmaReport obs1(Context& ctx) {
  Tally t("obs1");
  const Signature sig = ctx.base();
  QueryShape shape;
  shape.max_atoms = 4;
  shape.max_vars = 4;
  shape.pleasant = false;
  for (const auto& d : ctx.structures(sig)) {
    CQ q = random_cq(ctx.rng, sig, shape);
    Count product = 1;
    for (const auto& part : component_split(q)) product *= count_homs(part, d);
    Count whole = count_homs(q, d);
    t.record(product == whole && whole == count_homs_naive(q, d), [&] { return show(q) + show(d); });
  }
  return t.finish();
}

LemmaReport obs2(Context& ctx) {
  Tally t("obs2");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig.extended())) {
    CQ psi = random_cq(ctx.rng, sig, small_shape());
    Count sum = 0;
    for (auto p : planets(d)) sum += relativized_at(psi, p, d);
    t.record(sum == count_homs(cqize(UCQ(psi)), d), [&] { return show(psi) + show(d); });
  }
  return t.finish();
}

LemmaReport lem4(Context& ctx) {
  Tally t("lem4");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig.extended(), flags_good())) {
    CQ phi = random_cq(ctx.rng, sig, small_shape());
    t.record(count_homs(phi, d) >= 1, [&] { return show(phi) + show(d); });
  }
  return t.finish();
}

LemmaReport lem8(Context& ctx) {
  Tally t("lem8");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig.extended())) {
    CQ phi = random_cq(ctx.rng, sig, small_shape());
    bool ok = true;
    for (auto p : planets(d)) {
      Count rel = relativized_at(phi, p, d);
      ok = ok && rel == count_seen_from(phi, p, d);
      if (constants_visible(p, d)) ok = ok && rel == count_homs(phi, seen(p, d));
    }
    t.record(ok, [&] { return show(phi) + show(d); });
  }
  return t.finish();
}

LemmaReport lem9(Context& ctx) {
  Tally t("lem9");
  const Signature sig = ctx.base();
  const Term venus = Term::constant(std::string(kVenus));
  for (const auto& d : ctx.structures(sig.extended(), flags_foggy())) {
    CQ phi = random_cq(ctx.rng, sig, small_shape());
    t.record(count_homs(relativize(venus, phi), d) == 1, [&] { return show(phi) + show(d); });
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Trips

LemmaReport lem5(Context& ctx) {
  Tally t("lem5");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig.extended(), flags_good())) {
    UCQ q = random_ucq(ctx.rng, sig, small_shape(), 3);
    CQ cq = ctx.cqize(q);
    Structure dv = with_vertex_constants(d);
    Count sum = 0;
    for_each_trip(q.size(), d, [&](const std::vector<VertexId>& images) {
      sum += substituted(cq, images, d, dv);
      return true;
    });
    t.record(sum == count_homs(cq, d), [&] { return show(q) + show(d); });
  }
  return t.finish();
}

LemmaReport lem6(Context& ctx) {
  Tally t("lem6");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig.extended(), flags_good())) {
    UCQ q = random_ucq(ctx.rng, sig, small_shape(), 3);
    CQ cq = ctx.cqize(q);
    Structure dv = with_vertex_constants(d);
    TripEvaluator eval(q, d);
    bool ok = true;
    for_each_trip(q.size(), d, [&](const std::vector<VertexId>& images) {
      ok = eval.value(images) == substituted(cq, images, d, dv);
      return ok;
    });
    ok = ok && count_by_trips(q, d).total == count_homs(cq, d);
    t.record(ok, [&] { return show(q) + show(d); });
  }
  return t.finish();
}

LemmaReport lem10(Context& ctx) {
  Tally t("lem10");
  const Signature sig = ctx.base();
  for (const auto& d : ctx.structures(sig)) {
    UCQ q = random_ucq(ctx.rng, sig, small_shape(), 3);
    t.record(count_homs(cqize(q), marsify(d)) == 1 + apply(q, d), [&] { return show(q) + show(d); });
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Polynomials

constexpr std::uint32_t kPolyVars = 2;

PolyShape bridge_shape() {
  PolyShape s;
  s.variables = kPolyVars;
  s.max_terms = 4;
  s.max_degree = 3;
  return s;
}

std::string show(const Polynomial& p) { return "polynomial: " + to_string(p) + "\n"; }

LemmaReport lem13(Context& ctx) {
  Tally t("lem13");
  for (const auto& d : ctx.structures(unary_signature(kPolyVars))) {
    Polynomial p = random_polynomial(ctx.rng, bridge_shape());
    const Monomial& m = p.terms.front();
    t.record(eval_monomial(m, valuation_of_structure(d)) == count_homs(mono_to_cq(m, kPolyVars), d),
             [&] { return "monomial: " + to_string(m) + "\n" + show(d); });
  }
  return t.finish();
}

LemmaReport lem16(Context& ctx) {
  Tally t("lem16");
  for (const auto& d : ctx.structures(unary_signature(kPolyVars))) {
    Polynomial p = random_polynomial(ctx.rng, bridge_shape());
    Valuation xi = random_valuation(ctx.rng, kPolyVars, 4);
    bool ok = eval_poly(p, valuation_of_structure(d)) == apply(poly_to_ucq(p, kPolyVars), d) &&
              eval_poly(p, xi) == apply(poly_to_ucq(p, kPolyVars), structure_of_valuation(xi));
    t.record(ok, [&] { return show(p) + "valuation: " + to_string(xi) + "\n" + show(d); });
  }
  return t.finish();
}

LemmaReport lem19(Context& ctx) {
  Tally t("lem19");
  for (const auto& d : ctx.structures(unary_signature(kPolyVars).extended())) {
    Polynomial p = random_polynomial(ctx.rng, bridge_shape());
    bool ok = true;
    for (auto planet : planets(d)) {
      Valuation local = local_valuation(planet, d);
      Count sum = 0;
      for (const auto& m : p.terms) {
        Count rel = relativized_at(mono_to_cq(m, kPolyVars), planet, d);
        ok = ok && eval_monomial(m, local) == rel;
        sum += rel;
      }
      ok = ok && eval_poly(p, local) == sum;
    }
    t.record(ok, [&] { return show(p) + show(d); });
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Theorem 1 supporting lemmas

Count seen_sum(const UCQ& q, VertexId p, const Structure& d) {
  Count s = 0;
  for (const auto& cq : q.disjuncts()) s += count_seen_from(cq, p, d);
  return s;
}

LemmaReport lem17(Context& ctx) {
  Tally t("lem17");
  const Signature sig = ctx.base();
  GenConfig gc = ctx.with(sig.extended(), flags_good());
  Rng srng(gc.seed);
  for (std::size_t attempt = 0; attempt < ctx.attempts() && t.run() < ctx.cfg.samples; ++attempt) {
    Structure d = sample_structure(srng, gc);
    CQ psi_s = random_cq(ctx.rng, sig, small_shape());
    UCQ psi_b = random_ucq(ctx.rng, sig, small_shape(), 3);
    const VertexId venus = d.constant(kVenus);
    bool premise = true;
    for (auto p : planets_except_venus(d))
      premise = premise && count_seen_from(psi_s, p, d) <= seen_sum(psi_b, p, d);
    if (!premise) continue;

    Count lhs = 0;
    for (auto p : planets_except_venus(d)) lhs += relativized_at(psi_s, p, d);
    CQ cq_b = cqize(psi_b);
    Structure dv = with_vertex_constants(d);
    Count rhs = 0;
    for_each_trip(psi_b.size(), d, [&](const std::vector<VertexId>& images) {
      std::size_t away = 0;
      for (auto v : images) away += v != venus;
      if (away == 1) rhs += substituted(cq_b, images, d, dv);
      return true;
    });
    t.record(lhs <= rhs, [&] { return "s-" + show(psi_s) + "b-" + show(psi_b) + show(d); });
  }
  return t.finish();
}

LemmaReport lem18(Context& ctx) {
  Tally t("lem18");
  const Signature sig = ctx.base();
  GenConfig gc = ctx.with(sig.extended(), flags_good());
  Rng srng(gc.seed);
  const Term venus_term = Term::constant(std::string(kVenus));
  for (std::size_t attempt = 0; attempt < ctx.attempts() && t.run() < ctx.cfg.samples; ++attempt) {
    Structure d = sample_structure(srng, gc);
    CQ psi_s = random_cq(ctx.rng, sig, small_shape());
    UCQ psi_b = random_ucq(ctx.rng, sig, small_shape(), 3);
    const VertexId venus = d.constant(kVenus);
    if (!(count_seen_from(psi_s, venus, d) <= seen_sum(psi_b, venus, d))) continue;

    Count lhs = count_homs(relativize(venus_term, psi_s), d);
    CQ gadget = conjoin_disjoint(cqize(psi_b), eta0(psi_b.size(), psi_b.signature().extended()));
    std::vector<VertexId> all_venus(psi_b.size(), venus);
    Count rhs = substituted(gadget, all_venus, d, with_vertex_constants(d));
    t.record(lhs <= rhs, [&] { return "s-" + show(psi_s) + "b-" + show(psi_b) + show(d); });
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Theorem 3 supporting lemmas

LemmaReport lem21(Context& ctx) {
  Tally t("lem21");
  PolyShape shape;
  shape.variables = kPolyVars;
  shape.max_terms = 3;
  shape.max_degree = 2;
  for (const auto& d : ctx.structures(unary_signature(kPolyVars).extended(), flags_good())) {
    Polynomial ps = random_polynomial(ctx.rng, shape);
    Polynomial pb = ps;
    Polynomial extra = random_polynomial(ctx.rng, shape);
    for (auto& m : extra.terms) pb.terms.insert(pb.terms.begin() + uniform(ctx.rng, 0, pb.terms.size()), m);
    Count lhs = count_homs(cqize(poly_to_ucq(ps, kPolyVars)), d);
    Count rhs = count_homs(cqize(poly_to_ucq(pb, kPolyVars)), d);
    t.record(lhs <= rhs, [&] { return "s-" + show(ps) + "b-" + show(pb) + show(d); });
  }
  return t.finish();
}

/// A very good structure with a padded pair, as used in the final part of
/// the Theorem 3 argument.
struct PaddedCase {
  Structure d;
  Polynomial ps0;
  Polynomial pb0;
  Padding pad;
  Rational c;

  std::string describe() const {
    return "ps0: " + to_string(ps0) + "\npb0: " + to_string(pb0) + "\nc: " + to_string(c) + "\n" + show(d);
  }
};

std::vector<PaddedCase> padded_cases(Context& ctx, std::size_t min_planets) {
  GenConfig gc = ctx.with(unary_signature(kPolyVars).extended(), flags_very_good());
  gc.min_planets = min_planets;
  gc.max_planets = 3;
  gc.mars_is_planet = true;
  gc.max_vertices = std::max<std::size_t>(gc.max_vertices, 4);
  Rng srng(gc.seed);
  PolyShape s_shape;
  s_shape.variables = kPolyVars;
  s_shape.max_terms = 2;
  s_shape.max_degree = 2;
  PolyShape b_shape = s_shape;
  b_shape.max_terms = 3;
  const Rational c = 2;
  const Rational cent = choose_cent(c);
  std::vector<PaddedCase> out;
  for (std::size_t i = 0; i < ctx.cfg.samples; ++i) {
    PaddedCase pc;
    pc.d = sample_structure(srng, gc);
    pc.ps0 = random_polynomial(ctx.rng, s_shape);
    pc.pb0 = random_polynomial(ctx.rng, b_shape);
    // Half of the pairs dominate coefficientwise, so that the Trips_1 premise holds.
    if (chance(ctx.rng, 50)) pc.pb0.terms.insert(pc.pb0.terms.end(), pc.ps0.terms.begin(), pc.ps0.terms.end());
    pc.pad = pad_polynomials(pc.ps0, pc.pb0, c, cent);
    pc.c = c;
    out.push_back(std::move(pc));
  }
  return out;
}

struct TripSums {
  Count near;  // Trips_1 and the all-venus trip
  Count far;   // Trips_{2<=}
};

TripSums trip_sums(const Polynomial& p, const Structure& d) {
  UCQ q = poly_to_ucq(p, kPolyVars);
  TripEvaluator eval(q, d);
  TripSums s{0, 0};
  for_each_trip(q.size(), d, [&](const std::vector<VertexId>& images) {
    TripClass cls = classify_trip(images, d);
    (cls.kind == TripKind::TwoPlusAway ? s.far : s.near) += eval.value(images);
    return true;
  });
  return s;
}

LemmaReport lem22(Context& ctx) {
  Tally t("lem22-split");
  for (const auto& pc : padded_cases(ctx, 1)) {
    bool premise = true;
    for (auto p : planets_except_venus(pc.d)) {
      Valuation local = local_valuation(p, pc.d);
      premise = premise && scaled_leq(pc.c, 1 + eval_poly(pc.pad.ps, local), 1 + eval_poly(pc.pad.pb, local));
    }
    TripSums s = trip_sums(pc.pad.ps, pc.d);
    TripSums b = trip_sums(pc.pad.pb, pc.d);
    bool ok = scaled_leq(pc.c, s.far, b.far) && (!premise || scaled_leq(pc.c, s.near, b.near));
    t.record(ok, [&] { return pc.describe(); });
  }
  return t.finish();
}

using DestinationKey = std::vector<std::pair<VertexId, Monomial>>;

/// Trips with at least two aliens away, grouped by destination planet and
/// the monomial of the alien sent there.
std::map<DestinationKey, std::vector<Count>> far_trips_by_class(const Polynomial& p, const Structure& d) {
  UCQ q = poly_to_ucq(p, kPolyVars);
  TripEvaluator eval(q, d);
  const VertexId venus = d.constant(kVenus);
  std::map<DestinationKey, std::vector<Count>> out;
  for_each_trip(q.size(), d, [&](const std::vector<VertexId>& images) {
    DestinationKey key;
    for (std::size_t j = 0; j < images.size(); ++j)
      if (images[j] != venus) key.emplace_back(images[j], p.terms[j]);
    if (key.size() < 2) return true;
    std::sort(key.begin(), key.end());
    out[key].push_back(eval.value(images));
    return true;
  });
  return out;
}

bool is_r_clique(const std::vector<VertexId>& a, const Structure& d) {
  for (auto p : a)
    for (auto q : a)
      if (p != q && !d.holds(kReach, {p, q})) return false;
  return true;
}

/// Number of trips with destination map `key`, by counting falling factorials.
Count closed_form(const DestinationKey& key, const Polynomial& p, const Structure& d) {
  std::vector<VertexId> a;
  std::map<Monomial, std::uint64_t> per_monomial;
  for (const auto& [v, m] : key) {
    a.push_back(v);
    ++per_monomial[m];
  }
  if (!is_r_clique(a, d)) return 0;
  Count t = 1;
  for (const auto& [m, k] : per_monomial) t *= falling_factorial(coef(m, p), k);
  return t;
}

/// Every destination map with at least two destinations among the non-venus
/// planets, over the given monomials.
std::vector<DestinationKey> all_destination_keys(const Structure& d, const std::vector<Monomial>& monomials) {
  std::vector<VertexId> ps = planets_except_venus(d);
  std::vector<DestinationKey> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ps.size()); ++mask) {
    std::vector<VertexId> a;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (mask >> i & 1) a.push_back(ps[i]);
    if (a.size() < 2) continue;
    std::vector<std::size_t> idx(a.size(), 0);
    while (true) {
      DestinationKey key;
      for (std::size_t i = 0; i < a.size(); ++i) key.emplace_back(a[i], monomials[idx[i]]);
      out.push_back(std::move(key));
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == monomials.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

std::vector<Monomial> union_monomials(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> out = a.monomials();
  for (const auto& m : b.monomials())
    if (!std::binary_search(out.begin(), out.end(), m)) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

LemmaReport lem23(Context& ctx) {
  Tally t("lem23");
  for (const auto& pc : padded_cases(ctx, 2)) {
    bool ok = true;
    for (const Polynomial* p : {&pc.pad.ps, &pc.pad.pb}) {
      for (const auto& [key, counts] : far_trips_by_class(*p, pc.d)) {
        Count r = 1;
        for (const auto& [v, m] : key) r *= relativized_at(mono_to_cq(m, kPolyVars), v, pc.d);
        for (const auto& c : counts) ok = ok && c == r;
      }
    }
    t.record(ok, [&] { return pc.describe(); });
  }
  return t.finish();
}

LemmaReport lem24(Context& ctx) {
  Tally t("lem24");
  for (const auto& pc : padded_cases(ctx, 2)) {
    bool ok = true;
    for (const auto& key : all_destination_keys(pc.d, union_monomials(pc.pad.ps, pc.pad.pb)))
      ok = ok && scaled_leq(pc.c, closed_form(key, pc.pad.ps, pc.d), closed_form(key, pc.pad.pb, pc.d));
    t.record(ok, [&] { return pc.describe(); });
  }
  return t.finish();
}

LemmaReport app_e(Context& ctx) {
  Tally t("appE-closed-form");
  for (const auto& pc : padded_cases(ctx, 2)) {
    bool ok = true;
    const auto monomials = union_monomials(pc.pad.ps, pc.pad.pb);
    for (const Polynomial* p : {&pc.pad.ps, &pc.pad.pb}) {
      auto found = far_trips_by_class(*p, pc.d);
      for (const auto& key : all_destination_keys(pc.d, monomials)) {
        auto it = found.find(key);
        Count enumerated = it == found.end() ? Count(0) : Count(it->second.size());
        ok = ok && enumerated == closed_form(key, *p, pc.d);
      }
    }
    t.record(ok, [&] { return pc.describe(); });
  }
  return t.finish();
}

// ---------------------------------------------------------------------------
// Reductions

LemmaReport app_a(Context& ctx) {
  Tally t("appA-identity");
  const Signature sig = ctx.base();
  QueryShape shape = small_shape();
  shape.pleasant = false;
  for (const auto& d : ctx.structures(believer_signature(sig))) {
    CQ phi = random_cq(ctx.rng, sig, shape);
    CQ primed = pleasantize(UCQ(phi))[0];
    Count sum = 0;
    for (VertexId c = 0; c < d.size(); ++c) sum += count_homs(phi, believer_slice(d, c));
    t.record(count_homs(primed, d) == sum, [&] { return show(phi) + show(d); });
  }
  return t.finish();
}

LemmaReport app_b(Context& ctx) {
  Tally t("appB-padding");
  PolyShape shape;
  shape.variables = kPolyVars;
  shape.max_terms = 3;
  shape.max_degree = 2;
  const Rational eps[] = {Rational(1), Rational(1, 2), Rational(1, 10)};
  for (std::size_t i = 0; i < ctx.cfg.samples; ++i) {
    Polynomial ps0 = random_polynomial(ctx.rng, shape);
    Polynomial pb0 = random_polynomial(ctx.rng, shape);
    const Rational c = 1 + eps[i % 3];
    const Rational cent = choose_cent(c);
    Padding pad = pad_polynomials(ps0, pb0, c, cent);
    bool ok = true;
    for (const auto& m : union_monomials(pad.ps, pad.pb))
      ok = ok && cent * Rational(coef(m, pad.ps)) <= Rational(coef(m, pad.pb));
    for (int k = 0; k < 20 && ok; ++k) {
      Valuation xi = random_valuation(ctx.rng, kPolyVars, 4);
      bool before = eval_poly(ps0, xi) <= eval_poly(pb0, xi);
      bool after = scaled_leq(c, 1 + eval_poly(pad.ps, xi), 1 + eval_poly(pad.pb, xi));
      ok = before == after;
    }
    t.record(ok, [&] { return "ps0: " + to_string(ps0) + "\npb0: " + to_string(pb0) + "\nc: " + to_string(c) + "\n"; });
  }
  return t.finish();
}

LemmaReport cor5(Context& ctx) {
  Tally t("cor5-claims");
  auto [alpha_s, alpha_b] = cor5_gadgets();
  GenConfig gc = ctx.with(alpha_s.signature());
  gc.min_vertices = 1;
  for (const auto& d : enumerate_all(gc)) {
    Count s = count_homs(alpha_s, d);
    Count b = count_homs(alpha_b, d);
    t.record(s <= 2 * b, [&] { return show(d); });
  }
  StructureBuilder b(alpha_s.signature());
  b.add_fact(std::string(kGadgetRelation), {"m"}).add_fact(std::string(kGadgetRelation), {"v"});
  b.set_constant(std::string(kMars), "m").set_constant(std::string(kVenus), "v");
  Structure witness = b.build();
  t.record(count_homs(alpha_s, witness) == 4 && count_homs(alpha_b, witness) == 2,
           [&] { return "witness " + show(witness); });
  return t.finish();
}

LemmaReport thm1_neg(Context& ctx) {
  Tally t("thm1-neg");
  const Signature sig = ctx.base();
  GenConfig gc = ctx.with(sig);
  Rng srng(gc.seed);
  for (std::size_t attempt = 0; attempt < ctx.attempts() && t.run() < ctx.cfg.samples; ++attempt) {
    Structure d = sample_structure(srng, gc);
    CQ psi_s = random_cq(ctx.rng, sig, small_shape());
    UCQ psi_b = random_ucq(ctx.rng, sig, small_shape(), 2);
    Count vs = count_homs(psi_s, d);
    Count vb = apply(psi_b, d);
    if (!(vs > vb)) continue;
    ReductionInstance inst = build_thm1(psi_s, psi_b);
    Structure m = marsify(d);
    Count gs = apply(inst.qs, m);
    Count gb = apply(inst.qb, m);
    t.record(gs == 1 + vs && gb == 1 + vb && gs > gb,
             [&] { return "s-" + show(psi_s) + "b-" + show(psi_b) + show(d); });
  }
  return t.finish();
}

std::string show_pair(const Polynomial& ps, const Polynomial& pb, const Valuation& xi) {
  return "ps: " + to_string(ps) + "\npb: " + to_string(pb) + "\nvaluation: " + to_string(xi) + "\n";
}

LemmaReport thm2_neg(Context& ctx) {
  Tally t("thm2-neg");
  PolyShape s_shape;
  s_shape.variables = kPolyVars;
  s_shape.max_terms = 4;
  s_shape.max_degree = 3;
  PolyShape b_shape = s_shape;
  b_shape.max_terms = 2;
  for (std::size_t attempt = 0; attempt < ctx.attempts() && t.run() < ctx.cfg.samples; ++attempt) {
    Polynomial ps = random_polynomial(ctx.rng, s_shape);
    Polynomial pb = random_polynomial(ctx.rng, b_shape);
    Valuation xi = random_valuation(ctx.rng, kPolyVars, 4);
    Count vs = eval_poly(ps, xi);
    Count vb = eval_poly(pb, xi);
    if (!(vs > 1 + vb)) continue;
    ReductionInstance inst = build_thm2(ps, pb);
    Structure d = marsify(structure_of_valuation(xi));
    Count gs = apply(inst.qs, d);
    Count gb = apply(inst.qb, d);
    t.record(gs == vs && gb == 1 + vb && gs > gb, [&] { return show_pair(ps, pb, xi); });
  }
  return t.finish();
}

LemmaReport thm3_neg(Context& ctx) {
  Tally t("thm3-neg");
  PolyShape s_shape;
  s_shape.variables = kPolyVars;
  s_shape.max_terms = 2;
  s_shape.max_degree = 2;
  PolyShape b_shape = s_shape;
  b_shape.max_terms = 1;
  for (std::size_t attempt = 0; attempt < ctx.attempts() && t.run() < ctx.cfg.samples; ++attempt) {
    Polynomial ps0 = random_polynomial(ctx.rng, s_shape);
    Polynomial pb0 = random_polynomial(ctx.rng, b_shape);
    Valuation xi = random_valuation(ctx.rng, kPolyVars, 4);
    if (!(eval_poly(ps0, xi) > eval_poly(pb0, xi))) continue;
    ReductionInstance inst = build_thm3(ps0, pb0, Rational(1));
    Structure d = marsify(structure_of_valuation(xi));
    Count gs = apply(inst.qs, d);
    Count gb = apply(inst.qb, d);
    const Padding& pad = *inst.padding;
    bool ok = gs == 1 + eval_poly(pad.ps, xi) && gb == 1 + eval_poly(pad.pb, xi) &&
              !scaled_leq(inst.scale, gs, gb);
    t.record(ok, [&] { return show_pair(ps0, pb0, xi); });
  }
  return t.finish();
}

using Check = LemmaReport (*)(Context&);

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> r{
      {"obs1", obs1},
      {"obs2", obs2},
      {"lem4", lem4},
      {"lem8", lem8},
      {"lem9", lem9},
      {"lem5", lem5},
      {"lem6", lem6},
      {"lem10", lem10},
      {"lem13", lem13},
      {"lem16", lem16},
      {"lem19", lem19},
      {"lem17", lem17},
      {"lem18", lem18},
      {"lem21", lem21},
      {"lem22-split", lem22},
      {"lem23", lem23},
      {"lem24", lem24},
      {"appE-closed-form", app_e},
      {"appA-identity", app_a},
      {"appB-padding", app_b},
      {"cor5-claims", cor5},
      {"thm1-neg", thm1_neg},
      {"thm2-neg", thm2_neg},
      {"thm3-neg", thm3_neg},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

LemmaReport check_lemma(const std::string& id, const GenConfig& cfg, const LemmaHooks& hooks) {
  for (const auto& [name, fn] : registry()) {
    if (name != id) continue;
    Context ctx(cfg, hooks);
    return fn(ctx);
  }
  throw PreconditionError("unknown lemma id '" + id + "'");
}

std::string to_string(const LemmaReport& r) {
  std::ostringstream os;
  os << r.id << ": " << r.passed << "/" << r.run << " passed in " << r.elapsed.count() << " s";
  if (r.counterexample) os << "\ncounterexample:\n" << *r.counterexample;
  return os.str();
}

}  // namespace bagcq
