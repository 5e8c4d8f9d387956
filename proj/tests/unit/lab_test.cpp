#include <gtest/gtest.h>

#include <map>

#include "bagcq/bageval/eval.hpp"
#include "bagcq/lab/generate.hpp"
#include "bagcq/lab/lemmas.hpp"
#include "bagcq/lab/search.hpp"
#include "bagcq/polyrep/polynomial.hpp"
#include "bagcq/reductions/reductions.hpp"
#include "bagcq/relcore/classify.hpp"
#include "bagcq/relcore/text.hpp"
#include "bagcq/xform/transform.hpp"
#include "oracles.hpp"

namespace {

using namespace bagcq;

Signature sig_of(std::initializer_list<std::pair<const char*, int>> rels) {
  Signature s;
  for (const auto& [r, a] : rels) s.add_relation(r, a);
  return s;
}

std::size_t count_all(const GenConfig& cfg) {
  std::size_t n = 0;
  enumerate_structures(cfg, [&](const Structure&) {
    ++n;
    return true;
  });
  return n;
}

// Pairs in the same bucket of an isomorphism invariant (size, fact counts).
void expect_pairwise_non_isomorphic(const std::vector<Structure>& reps) {
  std::map<std::vector<std::size_t>, std::vector<const Structure*>> buckets;
  for (const auto& d : reps) {
    std::vector<std::size_t> key{d.size()};
    for (const auto& [name, ar] : d.signature().relations) key.push_back(d.facts(name).size());
    buckets[key].push_back(&d);
  }
  for (const auto& [key, group] : buckets)
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j)
        ASSERT_FALSE(oracle::isomorphic(*group[i], *group[j])) << to_string(*group[i]) << "\n"
                                                               << to_string(*group[j]);
}

bool satisfies_good(const Structure& d) {
  return oracle::brute_count(with_signature(good_query(d.signature().base()), d.signature()), d) == 1;
}

TEST(Enumerate, UnaryOnOneVertex) {
  GenConfig cfg;
  cfg.signature = sig_of({{"P", 1}});
  cfg.min_vertices = cfg.max_vertices = 1;
  EXPECT_EQ(count_all(cfg), 2u);
}

TEST(Enumerate, BinaryOnTwoVertices) {
  GenConfig cfg;
  cfg.signature = sig_of({{"E", 2}});
  cfg.min_vertices = cfg.max_vertices = 2;
  EXPECT_EQ(count_all(cfg), 16u);
}

TEST(Enumerate, GoodStructuresMatchFilteredEnumeration) {
  GenConfig all;
  all.signature = sig_of({{"P", 1}}).extended();
  all.min_vertices = all.max_vertices = 2;
  std::size_t filtered = 0;
  enumerate_structures(all, [&](const Structure& d) {
    filtered += satisfies_good(d);
    return true;
  });
  GenConfig good = all;
  good.required.good = true;
  std::size_t direct = 0;
  enumerate_structures(good, [&](const Structure& d) {
    EXPECT_TRUE(satisfies_good(d)) << to_string(d);
    ++direct;
    return true;
  });
  EXPECT_EQ(direct, filtered);
  EXPECT_GT(direct, 0u);
}

TEST(Enumerate, IsoReductionCountsDigraphs) {
  GenConfig cfg;
  cfg.signature = sig_of({{"E", 2}});
  cfg.iso_reduce = true;
  cfg.max_vertices = 3;
  std::vector<Structure> reps = enumerate_all(cfg);
  // Directed graphs with loops up to isomorphism: 2, 10 and 104 on 1, 2, 3 vertices.
  EXPECT_EQ(reps.size(), 116u);
  expect_pairwise_non_isomorphic(reps);
}

TEST(Enumerate, IsoReductionWithConstants) {
  GenConfig cfg;
  cfg.signature = sig_of({{"P", 1}}).extended();
  cfg.iso_reduce = true;
  cfg.max_vertices = 3;
  cfg.required.very_good = true;
  cfg.required.non_trivial = true;
  std::vector<Structure> reps = enumerate_all(cfg);
  EXPECT_FALSE(reps.empty());
  for (const auto& d : reps) {
    StructureFlags f = classify_structure(d);
    EXPECT_TRUE(f.very_good && f.non_trivial);
  }
  expect_pairwise_non_isomorphic(reps);
}

TEST(Enumerate, CapExceeded) {
  GenConfig cfg;
  cfg.signature = sig_of({{"T", 3}});
  cfg.max_vertices = 3;
  EXPECT_THROW(count_all(cfg), CapExceeded);
}

TEST(Sample, DeterministicForSeed) {
  GenConfig cfg;
  cfg.signature = sig_of({{"A", 1}, {"E", 2}}).extended();
  cfg.samples = 10;
  cfg.seed = 77;
  auto a = sample_structures(cfg);
  auto b = sample_structures(cfg);
  EXPECT_EQ(a, b);
  cfg.seed = 78;
  EXPECT_NE(sample_structures(cfg), a);
}

TEST(Sample, VeryGoodByConstruction) {
  GenConfig cfg;
  cfg.signature = sig_of({{"A", 1}, {"E", 2}}).extended();
  cfg.required.very_good = true;
  cfg.max_vertices = 6;
  cfg.samples = 200;
  for (const auto& d : sample_structures(cfg)) EXPECT_TRUE(classify_structure(d).very_good) << to_string(d);
}

TEST(Sample, GoodSatisfiesEveryVenusAtom) {
  GenConfig cfg;
  cfg.signature = sig_of({{"A", 1}, {"E", 2}}).extended();
  cfg.signature.add_constant("a");
  cfg.required.good = true;
  cfg.samples = 1000;
  for (const auto& d : sample_structures(cfg)) ASSERT_TRUE(satisfies_good(d)) << to_string(d);
}

TEST(Lemmas, RegistryIsComplete) {
  std::vector<std::string> expected{"obs1",  "obs2",  "lem4",  "lem8",        "lem9",         "lem5",
                                    "lem6",  "lem10", "lem13", "lem16",       "lem19",        "lem17",
                                    "lem18", "lem21", "lem22-split", "lem23", "lem24",        "appE-closed-form",
                                    "appA-identity", "appB-padding", "cor5-claims", "thm1-neg", "thm2-neg",
                                    "thm3-neg"};
  EXPECT_EQ(lemma_ids(), expected);
  EXPECT_THROW(check_lemma("lem99", GenConfig{}), PreconditionError);
}

TEST(Lemmas, EveryLemmaPasses) {
  GenConfig cfg;
  cfg.samples = 40;
  cfg.max_vertices = 4;
  cfg.seed = 9;
  for (const auto& id : lemma_ids()) {
    LemmaReport r = check_lemma(id, cfg);
    EXPECT_GT(r.run, 0u) << id;
    EXPECT_EQ(r.passed, r.run) << to_string(r);
    EXPECT_FALSE(r.counterexample.has_value()) << id;
  }
}

TEST(Lemmas, PlusOneOverManyPairs) {
  GenConfig cfg;
  cfg.samples = 200;
  LemmaReport r = check_lemma("lem10", cfg);
  EXPECT_EQ(r.run, 200u);
  EXPECT_EQ(r.passed, 200u);
}

TEST(Lemmas, FactorizationExhaustive) {
  GenConfig cfg;
  cfg.exhaustive = true;
  cfg.max_vertices = 2;
  cfg.samples = 30;
  LemmaReport r = check_lemma("obs1", cfg);
  EXPECT_GT(r.run, 0u);
  EXPECT_EQ(r.passed, r.run);
}

// CQ-ization with R between aliens in one direction only.
CQ one_way_cqize(const UCQ& q) {
  CQ full = cqize(q);
  std::vector<Atom> kept;
  for (const auto& a : full.atoms()) {
    const auto* r = std::get_if<RelAtom>(&a);
    if (r && r->relation == "R" && r->args[0].is_var() && r->args[1].is_var() &&
        is_alien_name(r->args[0].name) && is_alien_name(r->args[1].name) && r->args[0].name > r->args[1].name)
      continue;
    kept.push_back(a);
  }
  return CQ(kept, full.signature());
}

TEST(Lemmas, OneWayCliqueMutantIsCaught) {
  GenConfig cfg;
  cfg.samples = 200;
  cfg.max_vertices = 5;
  LemmaHooks hooks{one_way_cqize};
  for (const char* id : {"lem5", "lem6"}) {
    LemmaReport r = check_lemma(id, cfg, hooks);
    EXPECT_LT(r.passed, r.run) << id;
    EXPECT_TRUE(r.counterexample.has_value()) << id;
  }
}

TEST(Search, FindsPlantedPolynomialViolation) {
  Polynomial ps = parse_polynomial("x1*x1");
  Polynomial pb = parse_polynomial("x1");
  ReductionInstance inst = build_thm2(ps, pb);
  Valuation xi{{3}};
  Structure seed = marsify(structure_of_valuation(xi));
  GenConfig cfg;
  cfg.samples = 0;
  auto hit = search_counterexample(inst, cfg, {seed});
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->lhs, 9);
  EXPECT_EQ(hit->rhs, 4);
  EXPECT_EQ(oracle::brute_apply(inst.qs, hit->d), hit->lhs);
}

TEST(Search, ReflexiveInstanceHasNoCounterexample) {
  UCQ q = parse_query("E(x,y) & E(y,z) | A(x)");
  ReductionInstance inst(q, q);
  GenConfig cfg;
  cfg.max_vertices = 3;
  cfg.samples = 200;
  EXPECT_FALSE(search_counterexample(inst, cfg).has_value());
  cfg.exhaustive = true;
  cfg.max_vertices = 2;
  EXPECT_FALSE(search_counterexample(inst, cfg).has_value());
}

TEST(Search, WellOfPositivity) {
  ReductionInstance inst(parse_query("A(y) | E(y,z)"), parse_query("A(y) & E(y,z)"));
  Structure well = parse_structure("sig A/1, E/2\nA(w) E(w,w)\n");
  EXPECT_EQ(apply(inst.qs, well), 2);
  EXPECT_EQ(apply(inst.qb, well), 1);
  GenConfig cfg;
  cfg.exhaustive = true;
  cfg.max_vertices = 1;
  auto hit = search_counterexample(inst, cfg);
  ASSERT_TRUE(hit.has_value());
  EXPECT_GT(hit->lhs, hit->rhs);
}

TEST(Search, HitsReverifyNaively) {
  Rng rng(61);
  Signature base = sig_of({{"A", 1}, {"E", 2}});
  GenConfig cfg;
  cfg.max_vertices = 3;
  cfg.samples = 50;
  std::size_t hits = 0;
  for (int i = 0; i < 40; ++i) {
    ReductionInstance inst(random_ucq(rng, base, QueryShape{}, 2), random_ucq(rng, base, QueryShape{}, 2));
    cfg.seed = i;
    if (auto hit = search_counterexample(inst, cfg)) {
      ++hits;
      EXPECT_EQ(apply_naive(inst.qs, hit->d), hit->lhs);
      EXPECT_EQ(apply_naive(inst.qb, hit->d), hit->rhs);
      EXPECT_GT(hit->lhs, hit->rhs);
    }
  }
  EXPECT_GT(hits, 5u);
}

TEST(Search, NonTrivialModeSkipsCollapsedConstants) {
  ReductionInstance inst(parse_query("A(@mars) & A(@venus)"), parse_query("A(y) & E(y,y)"));
  inst.mode = ContainmentMode::NonTrivialOnly;
  Structure collapsed = parse_structure("sig A/1, E/2 ; const mars=v, venus=v\nA(v)\n");
  GenConfig cfg;
  cfg.samples = 0;
  EXPECT_FALSE(search_counterexample(inst, cfg, {collapsed}).has_value());
  inst.mode = ContainmentMode::AllStructures;
  EXPECT_TRUE(search_counterexample(inst, cfg, {collapsed}).has_value());
}

}  // namespace
