// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bagcq/bageval/eval.hpp"
#include "bagcq/lab/generate.hpp"
#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/reductions/reductions.hpp"
#include "bagcq/relcore/classify.hpp"
#include "bagcq/relcore/text.hpp"
#include "bagcq/xform/transform.hpp"
#include "bagcq/xform/trips.hpp"
#include "oracles.hpp"

namespace {

using namespace bagcq;

/// Keeps the first failure message; later ones are counted only.
class Check {
 public:
  void expect(bool ok, const std::function<std::string()>& describe) {
    ++cases_;
    if (ok) return;
    if (!first_) first_ = describe();
    ++failures_;
  }

  bool ok() const { return failures_ == 0; }
  std::size_t cases() const { return cases_; }

  std::string summary() const {
    std::ostringstream out;
    out << cases_ << " checks";
    if (failures_) out << ", " << failures_ << " failed; first: " << *first_;
    return out.str();
  }

 private:
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::optional<std::string> first_;
};

std::string str(const Count& c) { return c.str(); }

Signature small_base() {
  Signature s;
  s.add_relation("A", 1);
  s.add_relation("E", 2);
  s.add_constant("a");
  return s;
}

Structure saturn_structure() {
  Structure m = marsify(oracle::example_structure());
  StructureBuilder b(m.signature());
  b.add_all(m);
  for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"venus", "s"}, {"s", "venus"}, {"mars", "s"}, {"s", "mars"}})
    b.add_fact("R", {x, y});
  return b.build();
}

/// Every image sequence of j aliens into planets that forms an R-clique, by
/// backtracking directly over the facts.
std::vector<std::vector<VertexId>> oracle_trips(std::size_t j, const Structure& d) {
  const VertexId venus = d.constant("venus");
  std::vector<VertexId> ps;
  for (VertexId v = 0; v < d.size(); ++v)
    if (d.holds("R", {venus, v}) && d.holds("R", {v, venus})) ps.push_back(v);
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> cur;
  std::function<void()> go = [&] {
    if (cur.size() == j) {
      out.push_back(cur);
      return;
    }
    for (VertexId p : ps) {
      bool ok = true;
      for (VertexId q : cur) ok = ok && d.holds("R", {p, q}) && d.holds("R", {q, p});
      if (!ok) continue;
      cur.push_back(p);
      go();
      cur.pop_back();
    }
  };
  go();
  return out;
}

std::size_t away_count(const std::vector<VertexId>& images, VertexId venus) {
  std::size_t n = 0;
  for (VertexId v : images) n += v != venus;
  return n;
}

/// Count of cq(q)[h] on d, by substituting the aliens and counting directly.
Count trip_value(const CQ& cq, const std::vector<VertexId>& images, const Structure& named) {
  std::map<std::string, std::string> h;
  for (std::size_t k = 0; k < images.size(); ++k) h[alien_name(k + 1)] = named.name(images[k]);
  return count_homs(with_signature(substitute(cq, h), named.signature()), named);
}

// ---------------------------------------------------------------------------

Check golden_example() {
  Check c;
  Structure d = oracle::example_structure();
  UCQ psi = oracle::example_query();
  Structure m = marsify(d);
  CQ cq = cqize(psi);
  c.expect(apply(psi, d) == 6, [&] { return "apply = " + str(apply(psi, d)); });
  c.expect(oracle::brute_apply(psi, d) == 6, [] { return "oracle apply differs"; });
  c.expect(count_homs(cq, m) == 7, [&] { return "cq count = " + str(count_homs(cq, m)); });
  c.expect(oracle::brute_count(cq, m) == 7, [] { return "oracle cq count differs"; });

  const VertexId mars = m.constant("mars"), venus = m.constant("venus");
  const std::vector<std::vector<VertexId>> order{
      {mars, venus, venus}, {venus, mars, venus}, {venus, venus, mars}, {venus, venus, venus}};
  const std::vector<Count> expected{2, 2, 2, 1};
  TripBreakdown b = count_by_trips(psi, m);
  c.expect(b.trips.size() == 4, [&] { return std::to_string(b.trips.size()) + " trips"; });
  Structure named = with_vertex_constants(m);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::optional<Count> got;
    for (std::size_t k = 0; k < b.trips.size(); ++k)
      if (b.trips[k].images == order[i]) got = b.per_trip[k];
    c.expect(got && *got == expected[i], [&] { return "trip " + std::to_string(i) + " value"; });
    c.expect(trip_value(cq, order[i], named) == expected[i], [&] { return "direct trip value " + std::to_string(i); });
  }
  c.expect(b.total == 7, [&] { return "trip total " + str(b.total); });
  return c;
}

Check saturn_trips() {
  Check c;
  Structure s = saturn_structure();
  const VertexId venus = s.constant("venus");
  std::size_t one = 0, far = 0;
  for (const auto& t : enumerate_trips(3, s)) {
    one += t.cls.kind == TripKind::OneAway;
    far += t.cls.kind == TripKind::TwoPlusAway;
  }
  c.expect(one == 6, [&] { return "Trips_1 = " + std::to_string(one); });
  c.expect(far == 6, [&] { return "Trips_2<= = " + std::to_string(far); });
  std::size_t o_one = 0, o_far = 0;
  for (const auto& images : oracle_trips(3, s)) {
    std::size_t away = away_count(images, venus);
    o_one += away == 1;
    o_far += away >= 2;
  }
  c.expect(o_one == 6 && o_far == 6, [] { return "oracle trip counts differ"; });
  return c;
}

Check plus_one() {
  Check c;
  Rng rng(101);
  GenConfig cfg;
  cfg.signature = small_base();
  cfg.max_vertices = 4;
  cfg.samples = 500;
  cfg.seed = 102;
  QueryShape shape;
  shape.max_atoms = 3;
  for (const auto& d : sample_structures(cfg)) {
    UCQ q = random_ucq(rng, small_base(), shape, 3);
    Count lhs = count_homs(cqize(q), marsify(d));
    Count rhs = 1 + oracle::brute_apply(q, d);
    c.expect(lhs == rhs, [&] { return to_string(q) + " on\n" + to_string(d) + ": " + str(lhs) + " vs " + str(rhs); });
  }
  return c;
}

Check oracle_equivalence() {
  Check c;
  Rng rng(201);
  GenConfig cfg;
  cfg.signature = small_base();
  cfg.max_vertices = 4;
  cfg.samples = 1000;
  cfg.seed = 202;
  QueryShape shape;
  shape.max_atoms = 4;
  shape.max_vars = 4;
  shape.pleasant = false;
  for (const auto& d : sample_structures(cfg)) {
    CQ q = random_cq(rng, small_base(), shape);
    Count fast = count_homs(q, d);
    c.expect(fast == count_homs_naive(q, d) && fast == oracle::brute_count(q, d),
             [&] { return to_string(q) + " on\n" + to_string(d); });
  }
  return c;
}

Check trip_decomposition() {
  Check c;
  Rng rng(301);
  GenConfig cfg;
  cfg.signature = small_base().extended();
  cfg.max_vertices = 5;
  cfg.required.good = true;
  cfg.samples = 300;
  cfg.seed = 302;
  for (const auto& d : sample_structures(cfg)) {
    UCQ q = random_ucq(rng, small_base(), QueryShape{}, 3);
    CQ cq = cqize(q);
    Count direct = count_homs(cq, d);
    Count by_trips = count_by_trips(q, d).total;
    c.expect(direct == by_trips, [&] { return to_string(q) + " on\n" + to_string(d); });

    Structure named = with_vertex_constants(d);
    Count summed = 0;
    for (const auto& images : oracle_trips(q.size(), d)) summed += trip_value(cq, images, named);
    c.expect(summed == direct, [&] { return "trip sum for " + to_string(q); });

    CQ psi = random_cq(rng, small_base(), QueryShape{});
    Count planet_sum = 0;
    for (VertexId p : planets(d))
      planet_sum += count_homs(relativize(Term::constant(d.name(p)), with_signature(psi, named.signature())), named);
    c.expect(count_homs(cqize(UCQ(psi)), d) == planet_sum, [&] { return "single CQ " + to_string(psi); });
  }
  return c;
}

Check polynomial_bridge() {
  Check c;
  Rng rng(401);
  PolyShape shape;
  shape.variables = 3;
  shape.max_terms = 4;
  shape.max_degree = 3;
  for (int i = 0; i < 300; ++i) {
    Polynomial p = random_polynomial(rng, shape);
    Valuation xi = random_valuation(rng, shape.variables, 4);
    Count value = oracle::poly_value(p, xi.values);
    Structure d = structure_of_valuation(xi);
    c.expect(apply(poly_to_ucq(p, shape.variables), d) == value, [&] { return to_string(p) + " at " + to_string(xi); });

    Structure m = marsify(d);
    VertexId mars = m.constant("mars");
    Valuation local = local_valuation(mars, m);
    c.expect(local == xi, [&] { return "local valuation " + to_string(local); });
    Count relativized = 0;
    for (const auto& mono : p.terms)
      relativized += count_homs(with_signature(relativize(Term::constant("mars"), mono_to_cq(mono, shape.variables)),
                                               m.signature()),
                                m);
    c.expect(oracle::poly_value(p, local.values) == relativized, [&] { return "relativized " + to_string(p); });
  }
  return c;
}

std::map<std::vector<std::uint32_t>, std::size_t> occurrences(const Polynomial& p) {
  std::map<std::vector<std::uint32_t>, std::size_t> out;
  for (const auto& m : p.terms) ++out[m.indices()];
  return out;
}

Check padding() {
  Check c;
  Rng rng(501);
  PolyShape shape;
  for (const Rational eps : {Rational(1), Rational(1, 2), Rational(1, 10)}) {
    const Rational cr = 1 + eps;
    const Rational cent = choose_cent(cr);
    c.expect(cent < cr && cent * cent >= cr, [&] { return "cent " + to_string(cent); });
    for (int i = 0; i < 50; ++i) {
      Polynomial ps0 = random_polynomial(rng, shape);
      Polynomial pb0 = random_polynomial(rng, shape);
      Padding pad = pad_polynomials(ps0, pb0, cr, cent);
      auto s = occurrences(pad.ps);
      auto b = occurrences(pad.pb);
      for (const auto& [mono, k] : s)
        c.expect(cent * k <= Rational(b[mono]), [&] { return "coefficients of " + to_string(pad.ps); });
      for (int v = 0; v < 100; ++v) {
        Valuation xi = random_valuation(rng, shape.variables, 5);
        bool before = oracle::poly_value(ps0, xi.values) <= oracle::poly_value(pb0, xi.values);
        bool after = cr * Rational(1 + oracle::poly_value(pad.ps, xi.values)) <=
                     Rational(1 + oracle::poly_value(pad.pb, xi.values));
        c.expect(before == after, [&] { return to_string(ps0) + " vs " + to_string(pb0) + " at " + to_string(xi); });
      }
    }
  }
  return c;
}

Check easy_directions() {
  Check c;
  Rng rng(601);
  PolyShape shape;
  shape.max_terms = 3;
  shape.max_degree = 2;
  std::size_t planted = 0;
  while (planted < 30) {
    Polynomial ps = random_polynomial(rng, shape);
    Polynomial pb = random_polynomial(rng, shape);
    Valuation xi = random_valuation(rng, shape.variables, 4);
    Count s = oracle::poly_value(ps, xi.values), b = oracle::poly_value(pb, xi.values);
    if (s <= 1 + b) continue;
    ++planted;
    Structure d = marsify(structure_of_valuation(xi));

    ReductionInstance t2 = build_thm2(ps, pb);
    Count l2 = apply(t2.qs, d), r2 = apply(t2.qb, d);
    c.expect(l2 == s && r2 == 1 + b, [&] { return "thm2 counts " + str(l2) + ", " + str(r2); });
    c.expect(!scaled_leq(t2.scale, l2, r2), [] { return "thm2 instance not violated"; });

    ReductionInstance t3 = build_thm3(ps, pb, Rational(1));
    Count l3 = apply(t3.qs, d), r3 = apply(t3.qb, d);
    c.expect(l3 == 1 + oracle::poly_value(t3.padding->ps, xi.values) &&
                 r3 == 1 + oracle::poly_value(t3.padding->pb, xi.values),
             [&] { return "thm3 counts " + str(l3) + ", " + str(r3); });
    c.expect(t3.scale * Rational(l3) > Rational(r3), [&] { return "thm3 instance not violated: " + to_string(ps); });
  }
  return c;
}

Check trip_combinatorics() {
  Check c;
  Rng rng(701);
  GenConfig cfg;
  cfg.signature = unary_signature(2).extended();
  cfg.required.very_good = true;
  cfg.required.non_trivial = true;
  cfg.max_vertices = 5;
  cfg.min_planets = 2;
  cfg.max_planets = 3;
  cfg.mars_is_planet = true;
  Rng srng(702);
  PolyShape s_shape;
  s_shape.max_terms = 2;
  s_shape.max_degree = 2;
  PolyShape b_shape = s_shape;
  b_shape.max_terms = 3;
  const Rational cr = 2;
  const Rational cent = choose_cent(cr);
  std::size_t far_classes = 0;
  for (int i = 0; i < 40; ++i) {
    Structure d = sample_structure(srng, cfg);
    const VertexId venus = d.constant("venus");
    std::vector<VertexId> away_planets;
    for (VertexId v : planets(d))
      if (v != venus) away_planets.push_back(v);
    c.expect(away_planets.size() >= 2 && away_planets.size() <= 3, [&] { return "planet count"; });
    Padding pad = pad_polynomials(random_polynomial(rng, s_shape), random_polynomial(rng, b_shape), cr, cent);
    Structure named = with_vertex_constants(d);

    using Key = std::vector<std::pair<VertexId, std::vector<std::uint32_t>>>;
    std::map<Key, Count> tally[2];
    for (int side = 0; side < 2; ++side) {
      const Polynomial& p = side == 0 ? pad.ps : pad.pb;
      CQ cq = cqize(poly_to_ucq(p, 2));
      std::map<Key, std::vector<Count>> groups;
      for (const auto& images : oracle_trips(p.terms.size(), d)) {
        Key key;
        for (std::size_t k = 0; k < images.size(); ++k)
          if (images[k] != venus) key.emplace_back(images[k], p.terms[k].indices());
        std::sort(key.begin(), key.end());
        std::set<VertexId> distinct;
        for (const auto& [v, m] : key) distinct.insert(v);
        c.expect(distinct.size() == key.size(), [] { return "planet receives two aliens"; });
        if (key.size() < 2) continue;
        groups[key].push_back(trip_value(cq, images, named));
      }
      for (const auto& [key, values] : groups) {
        ++far_classes;
        Count r = 1;
        for (const auto& [v, m] : key)
          r *= count_homs(with_signature(relativize(Term::constant(d.name(v)), mono_to_cq(Monomial(m), 2)),
                                         named.signature()),
                          named);
        for (const auto& value : values) c.expect(value == r, [&] { return "per-trip value differs from r"; });
        tally[side][key] = values.size();
      }
    }

    // Closed form over every destination set A (|A| >= 2) and map A -> monomials.
    std::set<std::vector<std::uint32_t>> monos;
    for (const auto* p : {&pad.ps, &pad.pb})
      for (const auto& m : p->terms) monos.insert(m.indices());
    std::vector<std::vector<std::uint32_t>> mono_list(monos.begin(), monos.end());
    for (std::uint32_t mask = 0; mask < (1u << away_planets.size()); ++mask) {
      std::vector<VertexId> a;
      for (std::size_t k = 0; k < away_planets.size(); ++k)
        if (mask >> k & 1) a.push_back(away_planets[k]);
      if (a.size() < 2) continue;
      bool clique = true;
      for (VertexId x : a)
        for (VertexId y : a) clique = clique && (x == y || d.holds("R", {x, y}));
      std::vector<std::size_t> idx(a.size(), 0);
      while (true) {
        Key key;
        std::map<std::vector<std::uint32_t>, std::uint64_t> per;
        for (std::size_t k = 0; k < a.size(); ++k) {
          key.emplace_back(a[k], mono_list[idx[k]]);
          ++per[mono_list[idx[k]]];
        }
        Count closed[2];
        for (int side = 0; side < 2; ++side) {
          auto occ = occurrences(side == 0 ? pad.ps : pad.pb);
          closed[side] = clique ? Count(1) : Count(0);
          for (const auto& [m, k] : per) closed[side] *= oracle::falling(occ[m], k);
          auto it = tally[side].find(key);
          Count counted = it == tally[side].end() ? Count(0) : it->second;
          c.expect(counted == closed[side], [&] { return "closed form " + str(closed[side]) + " vs " + str(counted); });
        }
        c.expect(cr * Rational(closed[0]) <= Rational(closed[1]), [&] { return "c t_s > t_b"; });
        std::size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == mono_list.size()) idx[--k] = 0;
        if (k == 0) break;
      }
    }
  }
  c.expect(far_classes > 20, [&] { return "only " + std::to_string(far_classes) + " far trip classes"; });
  return c;
}

Check believer_identity() {
  Check c;
  Rng rng(801);
  GenConfig cfg;
  cfg.signature = believer_signature(small_base());
  cfg.max_vertices = 4;
  cfg.samples = 200;
  cfg.seed = 802;
  cfg.fact_space_cap = 40;
  QueryShape shape;
  shape.pleasant = false;
  for (const auto& d : sample_structures(cfg)) {
    CQ phi = random_cq(rng, small_base(), shape);
    CQ primed = pleasantize(UCQ(phi))[0];
    Count sum = 0;
    for (VertexId v = 0; v < d.size(); ++v) sum += oracle::brute_count(phi, believer_slice(d, v));
    c.expect(oracle::brute_count(primed, d) == sum, [&] { return to_string(phi) + " on\n" + to_string(d); });
  }
  return c;
}

Check corollary_gadgets() {
  Check c;
  auto [alpha_s, alpha_b] = cor5_gadgets();
  GenConfig cfg;
  cfg.signature = alpha_s.signature();
  cfg.max_vertices = 3;
  cfg.exhaustive = true;
  enumerate_structures(cfg, [&](const Structure& d) {
    c.expect(oracle::brute_count(alpha_s, d) <= 2 * oracle::brute_count(alpha_b, d), [&] { return to_string(d); });
    return true;
  });
  c.expect(c.cases() > 50, [] { return "too few structures enumerated"; });
  Structure witness = parse_structure("sig P/1 ; const mars=m, venus=v\nP(m) P(v)\n");
  Count s = oracle::brute_count(alpha_s, witness), b = oracle::brute_count(alpha_b, witness);
  c.expect(s == 4 && b == 2, [&] { return "witness gives " + str(s) + " and " + str(b); });
  return c;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 when no limit is stated
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked example: 6, 7 and trip values (2,2,2,1)", 1, golden_example},
      {2, "Saturn trips: 6 one-away, 6 two-plus-away", 1, saturn_trips},
      {3, "plus one after marsification, 500 pairs", 60, plus_one},
      {4, "optimized count equals naive count, 1000 pairs", 120, oracle_equivalence},
      {5, "trip decomposition and single-alien sums, 300 cases", 0, trip_decomposition},
      {6, "polynomial bridge, 300 cases", 0, polynomial_bridge},
      {7, "coefficient padding, 50 pairs x 3 eps", 0, padding},
      {8, "easy directions of the polynomial reductions, 30 planted", 0, easy_directions},
      {9, "far-trip combinatorics on very good structures", 0, trip_combinatorics},
      {10, "believer identity, 200 cases", 0, believer_identity},
      {11, "gadget claims, exhaustive up to 3 vertices", 0, corollary_gadgets},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    std::string error;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = cr.limit_seconds == 0 || secs < cr.limit_seconds;
    bool pass = error.empty() && result.ok() && result.cases() > 0 && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s, %.3f s", pass ? "PASS" : "FAIL", cr.id, cr.name,
                error.empty() ? result.summary().c_str() : ("exception: " + error).c_str(), secs);
    if (cr.limit_seconds > 0) std::printf(" (limit %.0f s)", cr.limit_seconds);
    std::printf("\n");
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
