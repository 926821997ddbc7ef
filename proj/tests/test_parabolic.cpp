#include "weylglue/parabolic.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace weylglue;

namespace {

Elem w_of(const WeylGroup& W, std::initializer_list<int> word)
{
  return W.from_word(Word(word));
}

// Oracle: shortest element of an explicitly enumerated coset (ties cannot occur).
Elem brute_min(const WeylGroup& W, Elem w, Parabolic j, CosetSide side, Parabolic j0)
{
  const auto wj = parabolic_subgroup(W, j);
  const auto wj0 = parabolic_subgroup(W, j0);
  Elem best = w;
  auto consider = [&](Elem x) {
    if (W.length(x) < W.length(best))
      best = x;
  };
  if (side == CosetSide::kLeft)
    for (Elem a : wj)
      consider(W.multiply(w, a));
  else if (side == CosetSide::kRight)
    for (Elem a : wj)
      consider(W.multiply(a, w));
  else
    for (Elem a : wj0)
      for (Elem b : wj)
        consider(W.multiply(W.multiply(a, w), b));
  return best;
}

} // namespace

TEST_CASE("parabolic subsets")
{
  CHECK(Parabolic::parse("{1,3}", 3) == Parabolic::of({0, 2}));
  CHECK(Parabolic::parse("2", 3) == Parabolic::of({1}));
  CHECK(Parabolic::parse("", 3) == Parabolic{});
  CHECK(Parabolic::of({0, 2}).to_string() == "{1,3}");
  CHECK(all_parabolics(3, true).size() == 7);
  CHECK(all_parabolics(3, false).size() == 8);
  CHECK(parabolic_subgroup(make_weyl_group("B3"), Parabolic::of({1, 2})).size() == 8);
}

TEST_CASE("minimal coset representatives")
{
  const WeylGroup W = make_weyl_group("A2");
  for (Parabolic j : all_parabolics(2, false)) {
    CHECK(min_coset_rep(W, W.identity(), j, CosetSide::kLeft) == W.identity());
    CHECK(min_coset_rep(W, W.identity(), j, CosetSide::kRight) == W.identity());
    CHECK(min_coset_rep(W, W.identity(), j, CosetSide::kDouble, j) == W.identity());
  }
  CHECK(min_coset_rep(W, W.longest(), Parabolic::full(2), CosetSide::kDouble, Parabolic{}) == W.identity());
  CHECK(min_coset_rep(W, w_of(W, {0, 1}), Parabolic::of({1}), CosetSide::kLeft) == w_of(W, {0}));

  for (const char* t : {"A3", "B3", "G2"}) {
    const WeylGroup G = make_weyl_group(t);
    for (Parabolic j0 : all_parabolics(G.rank(), false))
      for (Parabolic j : all_parabolics(G.rank(), false))
        for (Elem w = 0; w < G.order(); ++w) {
          REQUIRE(min_coset_rep(G, w, j, CosetSide::kLeft) == brute_min(G, w, j, CosetSide::kLeft, {}));
          REQUIRE(min_coset_rep(G, w, j, CosetSide::kRight) == brute_min(G, w, j, CosetSide::kRight, {}));
          REQUIRE(min_coset_rep(G, w, j, CosetSide::kDouble, j0) == brute_min(G, w, j, CosetSide::kDouble, j0));
          REQUIRE(is_min_left(G, w, j) == (brute_min(G, w, j, CosetSide::kLeft, {}) == w));
        }
  }
}

TEST_CASE("W prime and its longest element")
{
  const WeylGroup W = make_weyl_group("A2");
  CHECK(w_prime_set(W, Parabolic{}).size() == 6);
  CHECK(w_prime_set(W, Parabolic::of({0})) == std::vector<Elem>{W.identity(), w_of(W, {1}), w_of(W, {1, 0})});
  CHECK(w_prime_set(W, Parabolic::full(2)) == std::vector<Elem>{W.identity()});
  CHECK(w0_prime(W, Parabolic{}) == W.longest());
  CHECK(w0_prime(W, Parabolic::full(2)) == W.identity());
  CHECK(w0_prime(W, Parabolic::of({0})) == w_of(W, {1, 0}));

  for (const char* t : {"A3", "B3", "D4"}) {
    const WeylGroup G = make_weyl_group(t);
    for (Parabolic j0 : all_parabolics(G.rank(), false)) {
      const auto wp = w_prime_set(G, j0);
      CHECK(wp.size() * parabolic_subgroup(G, j0).size() == G.order());
      const Elem top = w0_prime(G, j0);
      for (Elem w : wp)
        CHECK(G.bruhat_leq(w, top));
    }
  }
}

TEST_CASE("simple root partition")
{
  const WeylGroup W = make_weyl_group("A2");
  for (Parabolic j0 : all_parabolics(2, false)) {
    const SimplePartition p = simple_partition(W, W.identity(), j0);
    CHECK(p.zero == j0);
    CHECK(p.plus == Parabolic::full(2) - j0);
    CHECK(p.minus.mask == 0);
  }
  const SimplePartition top = simple_partition(W, W.longest(), Parabolic{});
  CHECK(top.plus.mask == 0);
  CHECK(top.minus == Parabolic::full(2));
  const SimplePartition s1 = simple_partition(W, w_of(W, {0}), Parabolic{});
  CHECK(s1.zero.mask == 0);
  CHECK(s1.plus == Parabolic::of({1}));
  CHECK(s1.minus == Parabolic::of({0}));
}

TEST_CASE("partition is disjoint and exhaustive")
{
  for (const char* t : {"A3", "B3", "C3", "G2"}) {
    const WeylGroup W = make_weyl_group(t);
    const Parabolic all = Parabolic::full(W.rank());
    for (Parabolic j0 : all_parabolics(W.rank(), false))
      for (Elem w = 0; w < W.order(); ++w) {
        const SimplePartition p = simple_partition(W, w, j0);
        REQUIRE((p.zero | p.plus | p.minus) == all);
        REQUIRE((p.zero & p.plus).mask == 0);
        REQUIRE((p.zero & p.minus).mask == 0);
        REQUIRE((p.plus & p.minus).mask == 0);
      }
  }
}

TEST_CASE("partition criterion for e and w'0")
{
  for (const char* t : {"A2", "A3", "B2", "B3"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Parabolic j0 : all_parabolics(W.rank(), false)) {
      const Elem top = w0_prime(W, j0);
      std::size_t plus_empty = 0;
      for (Elem w : w_prime_set(W, j0)) {
        const SimplePartition p = simple_partition(W, w, j0);
        CHECK((p.minus.mask == 0) == (w == W.identity()));
        CHECK((p.plus.mask == 0) == (w == top));
        plus_empty += p.plus.mask == 0;
      }
      CHECK(plus_empty == 1);
    }
  }
}

TEST_CASE("stratum index examples")
{
  const WeylGroup W = make_weyl_group("A2");
  for (Parabolic j0 : all_parabolics(2, false))
    for (Parabolic j : all_parabolics(2, false))
      if (j0.subset_of(j)) {
        const StratumIndex s = stratum_index(W, j0, j, W.identity());
        CHECK(s.reps == std::vector<Elem>{W.identity()});
        CHECK(s.polynomial(W) == Polynomial{{1}});
      }
  CHECK(stratum_index(W, Parabolic::of({0}), Parabolic{}, w_of(W, {1})).polynomial(W) == Polynomial{{0, 1, 1}});
  CHECK(stratum_index(W, Parabolic{}, Parabolic::of({0}), w_of(W, {0})).empty());
}

TEST_CASE("lemma verdict examples")
{
  const WeylGroup W = make_weyl_group("A2");
  const SchubertVerdict a = check_lemma_sch(W, Parabolic{}, Parabolic::of({1}), w_of(W, {0}));
  CHECK(a.j_tilde == Parabolic{});
  CHECK(a.poly_j == Polynomial{{0, 1}});
  CHECK(a.poly_j_tilde == Polynomial{{0, 1}});
  CHECK(a.passed());
  const SchubertVerdict b = check_lemma_sch(W, Parabolic{}, Parabolic::of({0}), w_of(W, {0}));
  CHECK(b.emptiness_applies);
  CHECK(b.poly_j.is_zero());
  CHECK(b.passed());
  for (Parabolic j0 : all_parabolics(2, false))
    for (Parabolic j : all_parabolics(2, false))
      CHECK_FALSE(check_lemma_sch(W, j0, j, W.identity()).emptiness_applies);
}

TEST_CASE("lemma holds exhaustively")
{
  for (const char* t : {"A2", "A3", "B2", "B3"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Parabolic j0 : all_parabolics(W.rank(), false))
      for (Parabolic j : all_parabolics(W.rank(), false))
        for (Elem w = 0; w < W.order(); ++w) {
          const SchubertVerdict v = check_lemma_sch(W, j0, j, w);
          INFO(std::string(t), " J0=", j0.to_string(), " J=", j.to_string(), " w=", W.word_string(w), " ", v.witness);
          REQUIRE(v.passed());
          if (v.emptiness_applies)
            REQUIRE(v.poly_j.is_zero());
        }
  }
}

TEST_CASE("Poincaré polynomials")
{
  CHECK(poincare_polynomial(make_weyl_group("A1"), Parabolic{}) == Polynomial{{1, 1}});
  const WeylGroup a2 = make_weyl_group("A2");
  CHECK(poincare_polynomial(a2, Parabolic{}) == Polynomial{{1, 2, 2, 1}});
  CHECK(poincare_polynomial(a2, Parabolic::full(2)) == Polynomial{{1}});
  for (const char* t : {"A3", "B3", "G2", "D4"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Parabolic j : all_parabolics(W.rank(), false)) {
      const Polynomial p = poincare_polynomial(W, j);
      CHECK(p.at_one() * static_cast<std::int64_t>(parabolic_subgroup(W, j).size()) == static_cast<std::int64_t>(W.order()));
    }
  }
}

TEST_CASE("strata partition the flag variety")
{
  for (const char* t : {"A2", "A3", "B3", "G2"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Parabolic j0 : all_parabolics(W.rank(), false))
      for (Parabolic j : all_parabolics(W.rank(), false)) {
        std::set<Elem> seen;
        for (Elem w = 0; w < W.order(); ++w)
          if (min_coset_rep(W, w, j, CosetSide::kDouble, j0) == w)
            for (Elem u : stratum_index(W, j0, j, w).reps)
              REQUIRE(seen.insert(u).second);
        Polynomial sum;
        for (Elem w = 0; w < W.order(); ++w)
          if (min_coset_rep(W, w, j, CosetSide::kDouble, j0) == w)
            sum += stratum_index(W, j0, j, w).polynomial(W);
        CHECK(sum == poincare_polynomial(W, j));
        CHECK(seen.size() == static_cast<std::size_t>(poincare_polynomial(W, j).at_one()));
      }
  }
}
