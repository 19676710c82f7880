#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sconvex/convexity.hpp"
#include "sconvex/harness.hpp"
#include "sconvex/triple_system.hpp"
#include "sconvex/witness.hpp"

using namespace sconvex;

namespace {

std::vector<bool> only(std::size_t n, std::size_t f) {
  std::vector<bool> v(n, false);
  v[f] = true;
  return v;
}

// Axioms A-D checked with plain loops over the cube.
bool axioms_hold(const triple_system& s) {
  const auto n = static_cast<state_id>(s.size());
  for (state_id p = 0; p < n; ++p)
    for (state_id q = 0; q < n; ++q) {
      if (!s.contains(p, q, p)) return false;
      for (state_id r = 0; r < n; ++r) {
        if (s.contains(p, q, r) != s.contains(q, p, r)) return false;
        if (s.contains(p, q, r) && s.is_final(p) && s.is_final(q) && !s.is_final(r)) return false;
        for (state_id t = 0; t < n; ++t)
          if (s.contains(p, q, r) && s.contains(q, r, t) && !s.contains(p, q, t)) return false;
      }
    }
  return true;
}

bool is_preorder_with_top(const preorder& po) {
  const auto n = static_cast<state_id>(po.size());
  for (state_id p = 0; p < n; ++p) {
    if (!po.leq(p, p) || !po.leq(p, 0)) return false;
    for (state_id q = 0; q < n; ++q)
      for (state_id r = 0; r < n; ++r)
        if (po.leq(p, q) && po.leq(q, r) && !po.leq(p, r)) return false;
  }
  return true;
}

std::set<transformation> as_set(const semigroup& s) {
  return {s.elements.begin(), s.elements.end()};
}

template <typename Pred>
std::set<transformation> filter_all_maps(std::size_t n, Pred keep) {
  std::set<transformation> out;
  for (const auto& t : oracle::all_maps(n))
    if (keep(t)) out.insert(t);
  return out;
}

// K_p and K_q together inside K_r, by words up to max_len.
bool containment_by_words(const dfa& d, state_id p, state_id q, state_id r, std::size_t max_len) {
  bool ok = true;
  oracle::for_each_word(d.letter_count(), max_len, [&](const oracle::word& w) {
    if (ok && d.is_final(d.run(p, w)) && d.is_final(d.run(q, w)) && !d.is_final(d.run(r, w)))
      ok = false;
  });
  return ok;
}

}  // namespace

TEST(TripleSystem, MinimalSystemIsValid) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto s = triple_system::minimal(n, std::vector<bool>(n, true));
    EXPECT_TRUE(axioms_hold(s));
    EXPECT_TRUE(s.extra_triples().empty());
  }
}

TEST(TripleSystem, ReportsTheViolatedAxiom) {
  auto expect_violation = [](char axiom, std::vector<state_id> witness, auto build) {
    try {
      build();
      ADD_FAILURE() << "axiom " << axiom << " not detected";
    } catch (const axiom_violation& e) {
      EXPECT_EQ(e.axiom(), axiom);
      EXPECT_EQ(e.witness(), witness);
      EXPECT_EQ(e.code(), errc::axiom_violation);
    }
  };
  expect_violation('A', {0, 1, 0}, [] {
    triple_system::from_predicate(2, {false, false}, [](state_id p, state_id q, state_id r) {
      return (r == p || r == q) && !(p == 0 && q == 1 && r == 0);
    });
  });
  expect_violation('B', {1, 0, 2}, [] {
    triple_system::from_predicate(3, {false, false, false}, [](state_id p, state_id q, state_id r) {
      return r == p || r == q || (p == 0 && q == 1 && r == 2);
    });
  });
  // (0,2,1) and (2,1,3) without (0,2,3)
  expect_violation('C', {0, 2, 1, 3}, [] {
    triple_system::from_predicate(4, {false, false, false, false},
                                  [](state_id p, state_id q, state_id r) {
                                    if (r == p || r == q) return true;
                                    auto is = [&](state_id a, state_id b, state_id c) {
                                      return (p == a && q == b && r == c) || (p == b && q == a && r == c);
                                    };
                                    return is(0, 2, 1) || is(2, 1, 3);
                                  });
  });
  expect_violation('D', {0, 2, 1}, [] {
    triple_system::from_predicate(3, {true, false, true}, [](state_id p, state_id q, state_id r) {
      return r == p || r == q || (r == 1 && p + q == 2 && p != q);
    });
  });
}

TEST(TripleSystem, RejectsOutOfRangeTriples) {
  const std::vector<triple> bad{{0, 0, 3}};
  EXPECT_THROW(triple_system(3, {false, false, false}, bad), error);
}

TEST(TripleSystem, DesignedSystemsSatisfyAxioms) {
  for (std::size_t n = 3; n <= 8; ++n) {
    EXPECT_TRUE(axioms_hold(star_system(n))) << n;
    EXPECT_TRUE(axioms_hold(reversal_system(n))) << n;
    EXPECT_TRUE(axioms_hold(syntactic_system(n))) << n;
  }
}

TEST(Preorder, DerivedRelationsAndProperties) {
  for (std::size_t n = 3; n <= 8; ++n) {
    for (const auto& s : {star_system(n), reversal_system(n), syntactic_system(n)})
      EXPECT_TRUE(is_preorder_with_top(preorder_of(s)));
    EXPECT_EQ(preorder_of(star_system(n)), preorder::descending_chain(n));
    EXPECT_EQ(preorder_of(reversal_system(n)), reversal_order(n));
  }
  auto minimal = preorder_of(triple_system::minimal(4, only(4, 1)));
  EXPECT_EQ(minimal, preorder::flat(4));
  for (state_id p = 0; p < 4; ++p)
    for (state_id q = 0; q < 4; ++q) EXPECT_EQ(minimal.leq(p, q), q == 0 || p == q);
}

TEST(Preorder, ConstructorValidates) {
  EXPECT_THROW(preorder(2, {false, true, true, true}), error);   // not reflexive
  EXPECT_THROW(preorder(2, {true, false, false, true}), error);  // 1 not below 0
  // 3 below 2 below 1, but 3 not below 1
  const std::vector<bool> gap{1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 1, 1};
  EXPECT_THROW(preorder(4, gap), error);
  const std::vector<std::pair<state_id, state_id>> chain{{3, 2}, {2, 1}};
  auto closed = preorder::generated_by(4, chain);
  EXPECT_TRUE(closed.leq(3, 1));
  EXPECT_TRUE(closed.is_partial_order());
}

TEST(OrderProperties, Examples) {
  auto star = order_properties(preorder_of(star_system(5)));
  EXPECT_TRUE(star.is_total_comparability);
  EXPECT_TRUE(star.is_partial_order);

  auto rev = order_properties(preorder_of(reversal_system(5)));
  EXPECT_TRUE(rev.is_partial_order);
  EXPECT_FALSE(rev.is_total_comparability);
  EXPECT_EQ(rev.comparable_nonzero_pairs, (std::vector<std::pair<state_id, state_id>>{{2, 1}}));

  auto syn = order_properties(preorder_of(syntactic_system(4)));
  EXPECT_FALSE(syn.is_partial_order);
  // 0..n-2 are pairwise equivalent
  EXPECT_EQ(syn.symmetric_pairs, (std::vector<std::pair<state_id, state_id>>{{0, 1}, {0, 2}, {1, 2}}));
  auto syn6 = order_properties(preorder_of(syntactic_system(6)));
  EXPECT_EQ(syn6.symmetric_pairs.size(), 10u);
  auto po6 = preorder_of(syntactic_system(6));
  for (state_id p = 1; p <= 4; ++p) {
    EXPECT_TRUE(po6.leq(5, p));
    EXPECT_FALSE(po6.leq(p, 5));
  }
}

TEST(Respects, AgreesWithCubeOracleOnAllMaps) {
  for (std::size_t n = 3; n <= 4; ++n) {
    for (const auto& s : {star_system(n), reversal_system(n), syntactic_system(n),
                          triple_system::minimal(n, only(n, 1))}) {
      for (const auto& t : oracle::all_maps(n)) ASSERT_EQ(bool(respects(t, s)), oracle::respects(t, s));
    }
  }
}

TEST(Respects, Examples) {
  for (std::size_t n = 3; n <= 6; ++n)
    EXPECT_TRUE(respects(transformation::identity(n), syntactic_system(n)));
  auto star5 = star_witness(5);
  for (std::size_t a = 0; a < star5.letter_count(); ++a)
    EXPECT_TRUE(respects(transformation(star5.letter_image(a)), star_system(5)));
  EXPECT_TRUE(respects(parse_transformation("(Q_n->3)", 4), syntactic_system(4)));

  auto bad = parse_transformation("(1->4)", 5);
  auto verdict = respects(bad, star_system(5));
  EXPECT_FALSE(verdict.ok);
  EXPECT_EQ(verdict.ok, oracle::respects(bad, star_system(5)));
}

TEST(DfaRespects, Examples) {
  for (std::size_t n = 4; n <= 6; ++n) {
    EXPECT_TRUE(dfa_respects(star_witness(n), star_system(n)));
    EXPECT_TRUE(dfa_respects(reversal_witness(n), reversal_system(n)));
    EXPECT_TRUE(dfa_respects(syntactic_witness(n), syntactic_system(n)));
  }
  auto bad = dfa::from_images({"a"}, {parse_transformation("(1->3)", 4).image()}, only(4, 2));
  EXPECT_FALSE(dfa_respects(bad, star_system(4)));
  auto identity = dfa::from_images({"a"}, {{0, 1, 2, 3}}, only(4, 2));
  EXPECT_TRUE(dfa_respects(identity, star_system(4)));
  EXPECT_TRUE(dfa_respects(identity, triple_system::minimal(4, only(4, 2))));
}

TEST(CanonicalSystem, Examples) {
  auto universal = canonical_system(universal_dfa({"a"}));
  EXPECT_EQ(universal.triples(), (std::vector<triple>{{0, 0, 0}}));

  auto star4 = canonical_system(star_witness(4));
  const auto designed = star_system(4);
  for (const auto& t : designed.triples()) EXPECT_TRUE(star4.contains(t));

  auto rev4 = order_properties(preorder_of(canonical_system(reversal_witness(4))));
  EXPECT_TRUE(rev4.is_partial_order);
  EXPECT_EQ(rev4.comparable_nonzero_pairs, (std::vector<std::pair<state_id, state_id>>{{2, 1}}));
}

TEST(CanonicalSystem, MatchesWordLevelContainment) {
  for (const auto& d : {star_witness(4), reversal_witness(4), syntactic_witness(4)}) {
    auto s = canonical_system(d);
    for (state_id p = 0; p < 4; ++p)
      for (state_id q = 0; q < 4; ++q)
        for (state_id r = 0; r < 4; ++r)
          EXPECT_EQ(s.contains(p, q, r), containment_by_words(d, p, q, r, 5));
  }
}

TEST(CanonicalSystem, Preconditions) {
  auto code = [](const dfa& d) {
    try {
      canonical_system(d);
    } catch (const error& e) {
      return e.code();
    }
    return errc::malformed;
  };
  EXPECT_EQ(code(dfa::from_images({"a"}, {{1, 0}}, {true, true})), errc::not_minimal);
  // {a, baa}
  auto not_convex = dfa::from_images({"a", "b"}, {{1, 4, 3, 1, 4}, {2, 4, 4, 4, 4}},
                                     {false, true, false, false, false});
  EXPECT_EQ(code(not_convex), errc::not_suffix_convex);
}

TEST(CanonicalSystem, HoldsForRandomSuffixConvexDfas) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    dfa d = minimize(random_suffix_convex(2 + seed % 5, 1 + seed % 3, seed));
    auto s = canonical_system(d);
    EXPECT_TRUE(axioms_hold(s));
    EXPECT_TRUE(dfa_respects(d, s));
    EXPECT_TRUE(is_preorder_with_top(preorder_of(s)));
  }
}

TEST(MaximalSemigroup, MatchesExhaustiveFilter) {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& s : {triple_system::minimal(n, only(n, 1)), star_system(std::max<std::size_t>(n, 3)),
                          syntactic_system(std::max<std::size_t>(n, 3))}) {
      auto expected = filter_all_maps(s.size(), [&](const transformation& t) { return oracle::respects(t, s); });
      EXPECT_EQ(as_set(maximal_semigroup(s)), expected);
    }
  }
}

TEST(MaximalSemigroup, SmallestExampleByBruteForce) {
  auto s = triple_system::minimal(2, only(2, 1));
  auto brute = filter_all_maps(2, [&](const transformation& t) { return oracle::respects(t, s); });
  EXPECT_EQ(brute.size(), 3u);  // the swap breaks Condition 2
  EXPECT_FALSE(brute.count(parse_transformation("(0,1)", 2)));
  EXPECT_EQ(maximal_semigroup(s).size(), brute.size());
}

TEST(MaximalSemigroup, SizesMatchFormulas) {
  for (unsigned n = 3; n <= 7; ++n) {
    EXPECT_EQ(maximal_semigroup(syntactic_system(n)).size(), syntactic_bound(n)) << n;
    EXPECT_EQ(maximal_semigroup(star_system(n)).size(), chain_monotone_count(n)) << n;
  }
}

TEST(MaximalSemigroup, IsClosedUnderComposition) {
  for (const auto& s : {star_system(5), reversal_system(4), syntactic_system(4)}) {
    auto elems = as_set(maximal_semigroup(s));
    for (const auto& x : elems)
      for (const auto& y : elems) {
        auto xy = compose(x, y);
        ASSERT_TRUE(respects(xy, s));
        ASSERT_TRUE(elems.count(xy));
      }
  }
}

TEST(MaximalSemigroup, RefusesLargeN) {
  EXPECT_THROW(maximal_semigroup(star_system(10)), error);
}

TEST(MonotoneTransformations, Examples) {
  auto flat = preorder::flat(3);
  auto brute = filter_all_maps(3, [&](const transformation& t) { return oracle::monotone(t, flat); });
  EXPECT_EQ(brute.size(), 11u);
  EXPECT_EQ(as_set(monotone_transformations(flat)), brute);
  EXPECT_EQ(monotone_transformations(preorder::descending_chain(4)).size(), 35u);
  EXPECT_EQ(monotone_transformations(reversal_order(4)).size(), 40u);
}

TEST(MonotoneTransformations, RequiresPartialOrder) {
  try {
    monotone_transformations(preorder_of(syntactic_system(4)));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_partial_order);
  }
}

TEST(OrderSystem, ReproducesDesignedSystems) {
  for (std::size_t n = 3; n <= 7; ++n) {
    EXPECT_EQ(order_system(preorder::descending_chain(n), only(n, n - 2)), star_system(n));
    EXPECT_EQ(order_system(reversal_order(n), only(n, 1)), reversal_system(n));
  }
}

TEST(OrderSystem, RejectsNonConvexFinals) {
  try {
    order_system(preorder::descending_chain(3), {true, false, true});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::non_convex_finals);
  }
}

TEST(OrderSystem, PreorderRoundTrip) {
  seeded_rng rng(71);
  for (int i = 0; i < 30; ++i) {
    auto po = random_partial_order(2 + i % 5, rng);
    auto s = order_system(po, only(po.size(), 0));
    EXPECT_TRUE(axioms_hold(s));
    EXPECT_EQ(preorder_of(s), po);
  }
}

TEST(MonotoneDfa, Examples) {
  auto chain = monotone_dfa(preorder::descending_chain(3), only(3, 1));
  EXPECT_EQ(chain.letter_count(), 10u);
  EXPECT_EQ(chain.alphabet().front(), "t000");
  EXPECT_EQ(complexity(chain), 3u);
  EXPECT_TRUE(is_suffix_convex(chain).suffix_convex);

  auto rev = monotone_dfa(reversal_order(4), only(4, 1));
  EXPECT_EQ(rev.letter_count(), 40u);
  EXPECT_LE(atom_count(minimize(rev)), 14u);

  auto anti = monotone_dfa(preorder::flat(2), only(2, 1));
  EXPECT_TRUE(is_suffix_convex(anti).suffix_convex);
}

TEST(MonotoneDfa, SemigroupsAgree) {
  // Monotone DFA semigroup = monotone maps = T* of the order system.
  seeded_rng rng(73);
  int tested = 0;
  for (int i = 0; tested < 50; ++i) {
    const std::size_t n = 2 + i % 4;
    auto po = random_partial_order(n, rng);
    std::vector<bool> finals(n, false);
    finals[rng.below(n)] = true;
    if (!is_convex(po, finals)) continue;
    ++tested;
    auto d = monotone_dfa(po, finals);
    auto mono = as_set(monotone_transformations(po));
    EXPECT_EQ(as_set(transition_semigroup(d)), mono);
    EXPECT_EQ(as_set(maximal_semigroup(order_system(po, finals))), mono);
    EXPECT_TRUE(dfa_respects(d, order_system(po, finals)));
    EXPECT_TRUE(is_minimal(d));
    EXPECT_TRUE(is_suffix_convex(d).suffix_convex);
  }
}

TEST(Respecting, ImpliesSuffixConvex) {
  // Random DFAs whose letters are drawn from T* of a designed system.
  std::mt19937_64 rng(79);
  for (std::size_t n = 3; n <= 5; ++n) {
    for (const auto& s : {star_system(n), reversal_system(n), syntactic_system(n)}) {
      auto t_star = maximal_semigroup(s);
      std::uniform_int_distribution<std::size_t> pick(0, t_star.size() - 1);
      for (int i = 0; i < 10; ++i) {
        std::vector<std::vector<state_id>> images;
        for (int a = 0; a < 3; ++a) images.push_back(t_star.elements[pick(rng)].image());
        auto d = dfa::from_images(oracle::letters(3), images, s.final_mask());
        ASSERT_TRUE(dfa_respects(d, s));
        EXPECT_TRUE(is_suffix_convex(d).suffix_convex);
      }
    }
  }
}
