#include <gtest/gtest.h>

#include "bagcq/bageval/eval.hpp"
#include "bagcq/lab/generate.hpp"
#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/reductions/reductions.hpp"
#include "bagcq/relcore/text.hpp"
#include "bagcq/xform/transform.hpp"
#include "oracles.hpp"

namespace {

using namespace bagcq;

Signature small_base() {
  Signature s;
  s.add_relation("A", 1);
  s.add_relation("E", 2);
  s.add_constant("a");
  return s;
}

std::size_t count_relation(const CQ& q, const std::string& rel) {
  std::size_t n = 0;
  for (const auto& a : q.relational_atoms()) n += a.relation == rel;
  return n;
}

TEST(Thm1, ShapeForSingleCq) {
  CQ psi_s = parse_cq("E(y,z) & E(z,y)");
  UCQ psi_b = parse_query("E(y,y)");
  ReductionInstance inst = build_thm1(psi_s, psi_b);
  ASSERT_EQ(inst.qs.size(), 1u);
  ASSERT_EQ(inst.qb.size(), 1u);
  EXPECT_EQ(inst.scale, 1);
  EXPECT_EQ(inst.mode, ContainmentMode::AllStructures);
  std::size_t cq_atoms = cqize(psi_b).atoms().size();
  EXPECT_EQ(inst.qb[0].atoms().size(), cq_atoms + 1);
  EXPECT_EQ(count_relation(inst.qb[0], "V"), count_relation(cqize(psi_b), "V") + 1);
  std::size_t good = good_query(Signature::merge(psi_s.signature(), psi_b.signature())).atoms().size();
  EXPECT_EQ(inst.qs[0].atoms().size(), good + cqize(UCQ(psi_s)).atoms().size());
}

TEST(Thm1, EtaMatchesDisjunctCount) {
  UCQ psi_b = parse_query("E(y,y) | A(y) | E(y,z)");
  ReductionInstance inst = build_thm1(parse_cq("A(y)"), psi_b);
  EXPECT_EQ(inst.qb[0].atoms().size(), cqize(psi_b).atoms().size() + 3);
}

TEST(Thm1, RejectsUnpleasantInput) {
  EXPECT_THROW(build_thm1(parse_cq("A(y)"), parse_query("A(@a) & E(y,y)")), PreconditionError);
}

TEST(Thm1, CounterexamplesTransport) {
  Rng rng(51);
  GenConfig cfg;
  cfg.signature = small_base();
  cfg.max_vertices = 3;
  cfg.samples = 120;
  QueryShape one;
  one.max_atoms = 2;
  one.max_vars = 2;
  std::size_t violations = 0;
  for (const auto& d : sample_structures(cfg)) {
    CQ psi_s = random_cq(rng, small_base(), one);
    UCQ psi_b = random_ucq(rng, small_base(), one, 2);
    if (oracle::brute_count(psi_s, d) <= oracle::brute_apply(psi_b, d)) continue;
    ++violations;
    ReductionInstance inst = build_thm1(psi_s, psi_b);
    Structure m = marsify(d);
    EXPECT_GT(apply(inst.qs, m), apply(inst.qb, m)) << to_string(psi_s) << " vs " << to_string(psi_b);
  }
  EXPECT_GT(violations, 10u);
}

TEST(Pleasantize, ConstantOnlyAtom) {
  UCQ q = pleasantize(parse_query("A(@a)"));
  ASSERT_EQ(q.size(), 1u);
  ASSERT_EQ(q[0].atoms().size(), 1u);
  const auto& atom = std::get<RelAtom>(q[0].atoms()[0]);
  EXPECT_EQ(atom.relation, "A'");
  ASSERT_EQ(atom.args.size(), 2u);
  EXPECT_TRUE(atom.args[0].is_var());
  EXPECT_EQ(atom.args[1], Term::constant("a"));
  EXPECT_TRUE(is_pleasant(q));
  EXPECT_EQ(q.signature().arity("A'"), 2);
}

TEST(Pleasantize, OneBelieverPerDisjunct) {
  UCQ q = pleasantize(parse_query("A(y) & E(y,z) | E(@a,@a)"));
  ASSERT_EQ(q.size(), 2u);
  const auto atoms = q[0].relational_atoms();
  EXPECT_EQ(atoms[0].args[0], atoms[1].args[0]);
  EXPECT_NE(q[0].variables()[0], q[1].variables()[0]);
  EXPECT_THROW(pleasantize(parse_query("A(y) & A(z) & y != z")), PreconditionError);
}

TEST(Believer, LiftThenSlice) {
  GenConfig cfg;
  cfg.signature = small_base();
  cfg.samples = 40;
  for (const auto& d : sample_structures(cfg)) {
    Structure lifted = believer_lift(d, "zz");
    EXPECT_EQ(believer_slice(lifted, lifted.vertex("zz")), [&] {
      StructureBuilder b(d.signature());
      b.add_all(d).add_vertex("zz");
      return b.build();
    }());
  }
}

TEST(Believer, IdentityOverSlices) {
  Rng rng(52);
  GenConfig cfg;
  cfg.signature = believer_signature(small_base());
  cfg.max_vertices = 4;
  cfg.samples = 60;
  cfg.fact_space_cap = 40;
  QueryShape shape;
  shape.pleasant = false;
  for (const auto& d : sample_structures(cfg)) {
    UCQ q = random_ucq(rng, small_base(), shape, 2);
    UCQ primed = pleasantize(q);
    Count sum = 0;
    for (VertexId c = 0; c < d.size(); ++c) sum += oracle::brute_apply(q, believer_slice(d, c));
    EXPECT_EQ(oracle::brute_apply(primed, d), sum) << to_string(q);
  }
}

TEST(Thm2, Shape) {
  ReductionInstance inst = build_thm2(parse_polynomial("x1*x2 + x1"), parse_polynomial("x2"));
  EXPECT_EQ(inst.qs.size(), 2u);
  EXPECT_EQ(inst.qb.size(), 1u);
  EXPECT_EQ(inst.mode, ContainmentMode::NonTrivialOnly);
  EXPECT_EQ(inst.scale, 1);
  EXPECT_THROW(build_thm2(Polynomial{}, parse_polynomial("x1")), PreconditionError);
}

TEST(Thm2, ValuesOnMarsifiedValuation) {
  Rng rng(53);
  std::size_t violations = 0;
  for (int i = 0; i < 60; ++i) {
    Polynomial ps = random_polynomial(rng, PolyShape{});
    Polynomial pb = random_polynomial(rng, PolyShape{});
    ReductionInstance inst = build_thm2(ps, pb);
    Valuation xi = random_valuation(rng, 2, 3);
    Structure d = marsify(structure_of_valuation(xi));
    Count s = apply(inst.qs, d), b = apply(inst.qb, d);
    EXPECT_EQ(s, oracle::poly_value(ps, xi.values));
    EXPECT_EQ(b, 1 + oracle::poly_value(pb, xi.values));
    if (oracle::poly_value(ps, xi.values) > 1 + oracle::poly_value(pb, xi.values)) {
      ++violations;
      EXPECT_GT(s, b);
    }
  }
  EXPECT_GT(violations, 5u);
}

TEST(ChooseCent, Values) {
  EXPECT_EQ(choose_cent(Rational(2)), Rational(3, 2));
  EXPECT_EQ(choose_cent(Rational(3, 2)), Rational(4, 3));
  EXPECT_EQ(choose_cent(Rational(11, 10)), Rational(12, 11));
  EXPECT_EQ(choose_cent(Rational(4)), Rational(2));
  EXPECT_THROW(choose_cent(Rational(1)), PreconditionError);
}

TEST(ChooseCent, SmallestDenominator) {
  for (int den = 2; den <= 40; ++den) {
    Rational c = 1 + Rational(1, den);
    Rational cent = choose_cent(c);
    EXPECT_LT(cent, c);
    EXPECT_GE(cent * cent, c);
    auto q = boost::multiprecision::denominator(cent);
    for (int smaller = 1; smaller < q; ++smaller)
      for (int num = smaller; num <= 2 * smaller; ++num) {
        Rational r(num, smaller);
        EXPECT_FALSE(r < c && r * r >= c) << to_string(r) << " beats " << to_string(cent);
      }
  }
}

TEST(Thm3, ShapeAndParameters) {
  ReductionInstance inst = build_thm3(parse_polynomial("x1"), parse_polynomial("x1*x1"), Rational(1));
  EXPECT_EQ(inst.scale, 2);
  EXPECT_EQ(inst.mode, ContainmentMode::NonTrivialOnly);
  ASSERT_TRUE(inst.padding.has_value());
  EXPECT_EQ(inst.params.at("cent"), "3/2");
  EXPECT_EQ(inst.params.at("u"), to_string(Rational(inst.padding->u)));
  EXPECT_THROW(build_thm3(parse_polynomial("x1"), parse_polynomial("x1"), Rational(0)), PreconditionError);
  EXPECT_THROW(build_thm3(parse_polynomial("x1"), parse_polynomial("x1"), Rational(3, 2)), PreconditionError);
}

TEST(Thm3, EasyDirectionOnMarsifiedValuation) {
  const std::vector<std::pair<const char*, const char*>> pairs{
      {"x1", "x1*x1"}, {"x1*x2", "x1 + x2"}, {"x1 + x1", "x1*x1 + 1"}, {"x2", "x1"}};
  Rng rng(54);
  std::size_t violations = 0;
  for (const auto& [s0, b0] : pairs) {
    ReductionInstance inst = build_thm3(parse_polynomial(s0), parse_polynomial(b0), Rational(1));
    const Padding& pad = *inst.padding;
    CQ eta = eta1(inst.qb.signature());
    for (int i = 0; i < 6; ++i) {
      Valuation xi = random_valuation(rng, 2, 2);
      Structure d = marsify(structure_of_valuation(xi));
      EXPECT_EQ(count_homs(with_signature(eta, d.signature()), d), 1);
      Count s = apply(inst.qs, d), b = apply(inst.qb, d);
      EXPECT_EQ(s, 1 + oracle::poly_value(pad.ps, xi.values));
      EXPECT_EQ(b, 1 + oracle::poly_value(pad.pb, xi.values));
      bool violated = oracle::poly_value(parse_polynomial(s0), xi.values) >
                      oracle::poly_value(parse_polynomial(b0), xi.values);
      violations += violated;
      EXPECT_EQ(violated, !scaled_leq(inst.scale, s, b));
    }
  }
  EXPECT_GT(violations, 0u);
}

TEST(Cor5, Gadgets) {
  auto [alpha_s, alpha_b] = cor5_gadgets();
  Structure two = parse_structure("sig P/1 ; const mars=m, venus=v\nP(m) P(v)\n");
  EXPECT_EQ(oracle::brute_count(alpha_s, two), 4);
  EXPECT_EQ(oracle::brute_count(alpha_b, two), 2);
  Structure trivial = parse_structure("sig P/1 ; const mars=v, venus=v\nP(v) P(w)\n");
  EXPECT_EQ(oracle::brute_count(alpha_s, trivial), 0);
}

TEST(Cor5, ClaimOneExhaustive) {
  auto [alpha_s, alpha_b] = cor5_gadgets();
  GenConfig cfg;
  cfg.signature = alpha_s.signature();
  cfg.max_vertices = 4;
  cfg.exhaustive = true;
  std::size_t n = 0;
  enumerate_structures(cfg, [&](const Structure& d) {
    ++n;
    EXPECT_LE(oracle::brute_count(alpha_s, d), 2 * oracle::brute_count(alpha_b, d)) << to_string(d);
    return true;
  });
  EXPECT_GT(n, 100u);
}

TEST(Cor5, Compose) {
  CQ bs = parse_cq("E(y,y)");
  CQ bb = parse_cq("E(y,z)");
  ReductionInstance inst = cor5_compose(bs, bb);
  EXPECT_EQ(inst.mode, ContainmentMode::AllStructures);
  EXPECT_EQ(inst.scale, 1);
  EXPECT_EQ(inst.qs[0].atoms().size(), 1u + cor5_gadgets().first.atoms().size());
  EXPECT_EQ(inst.qb[0].variable_set().size(), 4u);
  EXPECT_THROW(cor5_compose(parse_cq("P(y)"), bb), SignatureError);
}

}  // namespace
