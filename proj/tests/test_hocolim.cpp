#include "weylglue/error.hpp"
#include "weylglue/hocolim.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace weylglue;

namespace {

SetDiagram point_diagram(std::size_t n)
{
  std::vector<std::string> set;
  for (std::size_t i = 0; i < n; ++i)
    set.push_back("x" + std::to_string(i));
  return SetDiagram::from_cover_maps(FinitePoset({"a"}, {}), {set}, {});
}

// Diagram with a top node t: F(a) = X × {0..c_a-1}, mapping (x, t) to (π_b^-1 π_a x, min(t, c_b - 1)).
// c is weakly decreasing along the order, so the maps compose. The hocolim is |X| points.
SetDiagram terminal_diagram(std::mt19937_64& rng, std::size_t& top_size)
{
  const std::size_t n = 2 + rng() % 4;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    pairs.emplace_back(i, n - 1);
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      if (rng() % 2)
        pairs.emplace_back(i, j);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back("n" + std::to_string(i));
  FinitePoset p(labels, pairs);

  const std::size_t x = 1 + rng() % 3;
  top_size = x;
  std::vector<std::size_t> c(n, 1);
  for (std::size_t a = n - 1; a-- > 0;) {
    for (std::size_t b = a + 1; b < n; ++b)
      if (p.leq(a, b))
        c[a] = std::max(c[a], c[b]);
    c[a] += rng() % 2;
  }
  std::vector<std::vector<std::uint32_t>> perm(n, std::vector<std::uint32_t>(x));
  for (auto& q : perm) {
    std::iota(q.begin(), q.end(), 0u);
    std::shuffle(q.begin(), q.end(), rng);
  }
  std::vector<std::vector<std::string>> sets(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t e = 0; e < x * c[a]; ++e)
      sets[a].push_back(std::to_string(e));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> covers;
  for (auto [a, b] : p.cover_pairs()) {
    std::vector<std::uint32_t> m;
    for (std::uint32_t e = 0; e < x * c[a]; ++e) {
      const std::uint32_t pt = perm[a][e % x], t = e / static_cast<std::uint32_t>(x);
      const auto back = static_cast<std::uint32_t>(std::find(perm[b].begin(), perm[b].end(), pt) - perm[b].begin());
      m.push_back(back + static_cast<std::uint32_t>(x) * std::min<std::uint32_t>(t, static_cast<std::uint32_t>(c[b] - 1)));
    }
    covers[{a, b}] = m;
  }
  return SetDiagram::from_cover_maps(p, sets, covers);
}

long chain_euler(const SetDiagram& d)
{
  long chi = 0;
  const auto chains = d.poset.strict_chains();
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (const Chain& c : chains[n])
      chi += (n % 2 ? -1 : 1) * static_cast<long>(d.size(c.front()));
  return chi;
}

long betti_euler(const std::vector<std::size_t>& b)
{
  long chi = 0;
  for (std::size_t k = 0; k < b.size(); ++k)
    chi += (k % 2 ? -1 : 1) * static_cast<long>(b[k]);
  return chi;
}

std::vector<std::size_t> trimmed(std::vector<std::size_t> b)
{
  while (!b.empty() && b.back() == 0)
    b.pop_back();
  return b;
}

} // namespace

TEST_CASE("one-node and two-node diagrams")
{
  CHECK(trimmed(betti_numbers(hocolim_complex(point_diagram(3)).cx)) == std::vector<std::size_t>{3});

  // {0 < 1} with F(0) = {a, b} -> F(1) = {c}: an interval with both ends glued to c, i.e. two edges into one point.
  const SetDiagram d = SetDiagram::from_cover_maps(FinitePoset({"0", "1"}, {{0, 1}}), {{"a", "b"}, {"c"}},
                                                   {{{0, 1}, {0, 0}}});
  const HocolimComplex hc = hocolim_complex(d);
  CHECK(hc.cx.dim(0) == 3);
  CHECK(hc.cx.dim(1) == 2);
  CHECK(trimmed(betti_numbers(hc.cx)) == std::vector<std::size_t>{1});
  REQUIRE(hc.find(1, {0, 1}, 1).has_value());
  CHECK_FALSE(hc.find(1, {0, 1}, 2).has_value());
}

TEST_CASE("diagrams are validated")
{
  FinitePoset p({"0", "1", "2"}, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(SetDiagram::from_cover_maps(p, {{"a"}, {"b"}, {"c"}}, {{{0, 1}, {0}}}), Error);
  CHECK_THROWS_AS(SetDiagram::from_cover_maps(p, {{"a"}, {"b"}, {"c"}}, {{{0, 1}, {0}}, {{1, 2}, {3}}}), Error);
  CHECK_THROWS_AS(FinitePoset({"0", "1"}, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("glued node order and set sizes")
{
  const WeylGroup a2 = make_weyl_group("A2");
  const SetDiagram d2 = weyl_glued_diagram(a2);
  std::vector<std::size_t> sizes;
  for (std::size_t a = 0; a < d2.poset.size(); ++a)
    sizes.push_back(d2.size(a));
  CHECK(sizes == std::vector<std::size_t>{6, 3, 3});

  const WeylGroup a3 = make_weyl_group("A3");
  const SetDiagram d3 = weyl_glued_diagram(a3);
  sizes.clear();
  for (std::size_t a = 0; a < d3.poset.size(); ++a)
    sizes.push_back(d3.size(a));
  CHECK(sizes == std::vector<std::size_t>{24, 12, 12, 12, 4, 6, 4});
  CHECK(glued_nodes(a3).front().mask == 0);
  d3.validate();
}

TEST_CASE("glued homology is a sphere with sign character on top")
{
  const std::vector<std::pair<const char*, std::vector<std::size_t>>> expect = {
      {"A1", {2}}, {"A2", {1, 1}}, {"A3", {1, 0, 1}}, {"B2", {1, 1}}, {"G2", {1, 1}}};
  for (const auto& [t, betti] : expect) {
    const WeylGroup W = make_weyl_group(t);
    const GluedHomologyReport r = glued_homology_report(W, t);
    INFO(std::string(t));
    CHECK(trimmed(r.betti) == betti);
    CHECK(r.passed());
    CHECK(r.equivariant);
    CHECK(r.sign_multiplicity.back() == 1);
    // For A1 the two points carry the regular character.
    if (W.rank() > 1)
      CHECK(r.characters.back() == ClassFunction::sign(W));
  }
  const GluedHomologyReport a2 = glued_homology_report(make_weyl_group("A2"));
  CHECK(a2.chain_dims == std::vector<std::size_t>{12, 12});
  CHECK(a2.triv_multiplicity.front() == 1);
}

TEST_CASE("terminal object collapses the hocolim")
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t top = 0;
    const SetDiagram d = terminal_diagram(rng, top);
    d.validate();
    const auto b = betti_numbers(hocolim_complex(d).cx);
    INFO("trial ", trial);
    CHECK(trimmed(b) == std::vector<std::size_t>{top});
    CHECK(betti_euler(b) == chain_euler(d));
  }
}

TEST_CASE("Euler characteristic of glued complexes")
{
  for (const char* t : {"A2", "A3", "B2", "B3", "G2"}) {
    const SetDiagram d = weyl_glued_diagram(make_weyl_group(t));
    const auto b = betti_numbers(hocolim_complex(d).cx);
    CHECK(betti_euler(b) == chain_euler(d));
  }
}

TEST_CASE("equivariance of the glued action")
{
  for (const char* t : {"A2", "B2", "A3"}) {
    const WeylGroup W = make_weyl_group(t);
    const SetDiagram d = weyl_glued_diagram(W);
    const HocolimComplex hc = hocolim_complex(d);
    const GroupAction act = hocolim_action(d, hc);
    CHECK(is_chain_action(hc.cx, act));
    CHECK(respects_multiplication(W, act));
  }
}

TEST_CASE("stratum masks differ exactly on the double coset of w")
{
  for (const char* t : {"A2", "A3", "B2"}) {
    const WeylGroup W = make_weyl_group(t);
    const SetDiagram d = weyl_glued_diagram(W);
    const auto nodes = glued_nodes(W);
    for (Parabolic j0 : all_parabolics(W.rank(), true))
      for (Elem w : w_prime_set(W, j0)) {
        const DiagramMask leq = stratum_mask(W, d, j0, w, false);
        const DiagramMask lt = stratum_mask(W, d, j0, w, true);
        for (std::size_t a = 0; a < nodes.size(); ++a) {
          std::uint32_t x = 0;
          for (Elem u = 0; u < W.order(); ++u) {
            if (!is_min_left(W, u, nodes[a]))
              continue;
            const bool on_w = min_coset_rep(W, u, nodes[a], CosetSide::kDouble, j0) == w;
            REQUIRE((leq.keeps(a, x) && !lt.keeps(a, x)) == on_w);
            REQUIRE((lt.keeps(a, x) && !leq.keeps(a, x)) == false);
            ++x;
          }
        }
      }
  }
}

TEST_CASE("stratification steps")
{
  const WeylGroup W = make_weyl_group("A2");
  const Parabolic j0 = Parabolic::of({0});
  const Elem s2 = W.from_word({1});
  CHECK(trimmed(betti_numbers(stratified_glued_complex(W, j0, W.identity(), StratumMode::kLeq))) ==
        std::vector<std::size_t>{1});
  CHECK(trimmed(betti_numbers(stratified_glued_complex(W, j0, s2, StratumMode::kQuotient))) ==
        std::vector<std::size_t>{1});
  CHECK_THROWS_AS(stratified_glued_complex(W, j0, W.from_word({0}), StratumMode::kLeq), Error);

  for (const char* t : {"A2", "A3", "B2"}) {
    const WeylGroup G = make_weyl_group(t);
    for (Parabolic p : all_parabolics(G.rank(), true)) {
      const StratInductionReport r = strat_induction(G, p);
      INFO(std::string(t), " J0=", p.to_string());
      CHECK(r.passed());
      CHECK(r.exhaustive);
      CHECK(r.steps.size() == w_prime_set(G, p).size());
    }
  }
}

TEST_CASE("cofinality")
{
  const WeylGroup W = make_weyl_group("A2");
  const SetDiagram d = weyl_glued_diagram(W);
  const std::size_t n = d.poset.size();
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  const CofinalityVerdict all = cofinality_check(d, {}, std::vector<char>(n, 1), id);
  CHECK(all.passed());

  // Nodes {∅, {1}} with r({2}) = ∅: a right adjoint, but F(∅) -> F({2}) is not bijective.
  const CofinalityVerdict part = cofinality_check(d, {}, {1, 1, 0}, {0, 1, 0});
  CHECK(part.adjunction_ok);
  CHECK_FALSE(part.counit_bijective);
  CHECK_THROWS_AS(cofinality_check(d, {}, {1, 1, 0}, {0, 1, 1}), Error);
  CHECK_THROWS_AS(cofinality_check(d, {}, {0, 1, 1}, {1, 1, 2}), Error);

  CHECK(strat_induction(W, Parabolic::of({0})).base_case.passed());
  CHECK(strat_induction(make_weyl_group("A3"), Parabolic::of({0, 1})).base_case.passed());
}
