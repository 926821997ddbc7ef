#include "weylglue/error.hpp"
#include "weylglue/glue.hpp"

#include <doctest.h>

#include <random>

using namespace weylglue;

namespace {

std::vector<std::string> names(std::size_t n)
{
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i)
    v.push_back("s" + std::to_string(i));
  return v;
}

SetDiagram terminal()
{
  return SetDiagram::from_cover_maps(FinitePoset({"t"}, {}), {{"x"}}, {});
}

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
  SparseMatrix m = SparseMatrix::zero(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (const long v = static_cast<long>(rng() % 5) - 2; v != 0)
        m.set(i, j, Q(v));
  return m;
}

// Lax object concentrated in degree 0 on a chain 0 < 1 (< 2); composites are forced, so any cover maps work.
LaxObject degree_zero_object(std::mt19937_64& rng, const SetDiagram& d)
{
  LaxObject x;
  x.diagram = d;
  x.values.resize(d.poset.size());
  for (std::size_t a = 0; a < d.poset.size(); ++a)
    for (std::size_t s = 0; s < d.size(a); ++s)
      x.values[a].push_back(ChainComplex::concentrated(0, rng() % 3));
  const std::size_t n = d.poset.size();
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::uint32_t s = 0; s < d.size(a); ++s) {
      ChainMap m;
      m.parts[0] = random_matrix(rng, x.value(a, s).dim(0), x.value(a + 1, d.push(a, a + 1, s)).dim(0));
      x.structure[{a, a + 1}].push_back(m);
    }
  for (std::size_t a = 0; a + 2 < n; ++a)
    for (std::uint32_t s = 0; s < d.size(a); ++s) {
      const std::uint32_t t = d.push(a, a + 1, s);
      const ChainComplex& src = x.value(a + 2, d.push(a, a + 2, s));
      x.structure[{a, a + 2}].push_back(
          compose(x.xi(a, a + 1, s), x.xi(a + 1, a + 2, t), src, x.value(a + 1, t), x.value(a, s)));
    }
  x.validate();
  return x;
}

SetDiagram random_chain_diagram(std::mt19937_64& rng, std::size_t n)
{
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a + 1 < n; ++a)
    pairs.emplace_back(a, a + 1);
  std::vector<std::vector<std::string>> sets;
  for (std::size_t a = 0; a < n; ++a)
    sets.push_back(names(1 + rng() % 3));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> covers;
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t s = 0; s < sets[a].size(); ++s)
      covers[{a, a + 1}].push_back(static_cast<std::uint32_t>(rng() % sets[a + 1].size()));
  return SetDiagram::from_cover_maps(FinitePoset(names(n), pairs), sets, covers);
}

// Oracle: dimension of the space of families f_a(s) with ξ^Y f_b(F s) = f_a(s) ξ^X for all a < b.
std::size_t coherent_families(const LaxObject& x, const LaxObject& y)
{
  const SetDiagram& d = x.diagram;
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> offset;
  std::size_t unknowns = 0;
  for (std::size_t a = 0; a < d.poset.size(); ++a)
    for (std::uint32_t s = 0; s < d.size(a); ++s) {
      offset[{a, s}] = unknowns;
      unknowns += y.value(a, s).dim(0) * x.value(a, s).dim(0);
    }
  // f_a(s) entry (i, j) is unknown offset + i * dim X + j.
  QMatrix eqs;
  for (auto [a, b] : d.poset.strict_pairs())
    for (std::uint32_t s = 0; s < d.size(a); ++s) {
      const std::uint32_t t = d.push(a, b, s);
      const std::size_t xa = x.value(a, s).dim(0), ya = y.value(a, s).dim(0);
      const std::size_t xb = x.value(b, t).dim(0), yb = y.value(b, t).dim(0);
      const QMatrix gx = x.xi(a, b, s).at(0, xa, xb).to_dense();
      const QMatrix gy = y.xi(a, b, s).at(0, ya, yb).to_dense();
      for (std::size_t i = 0; i < ya; ++i)
        for (std::size_t j = 0; j < xb; ++j) {
          QVector row(unknowns);
          for (std::size_t k = 0; k < yb; ++k)
            row[offset[{b, t}] + k * xb + j] += gy[i][k];
          for (std::size_t k = 0; k < xa; ++k)
            row[offset[{a, s}] + i * xa + k] -= gx[k][j];
          eqs.push_back(std::move(row));
        }
    }
  return unknowns - (eqs.empty() ? 0 : rank(eqs));
}

std::size_t h0(const GlueHomComplex& h)
{
  const auto c = h.cohomology();
  const auto it = c.find(0);
  return it == c.end() ? 0 : it->second;
}

FinitePoset chain3()
{
  return FinitePoset({"0", "1", "2"}, {{0, 1}, {1, 2}});
}

} // namespace

TEST_CASE("unit objects")
{
  const SetDiagram t = terminal();
  const LaxObject zero = unit_object(t, ChainComplex::concentrated(0, 0));
  CHECK(zero.total_dimension() == 0);
  CHECK(glue_hom(zero, zero).cohomology().empty());
  const LaxObject two = unit_object(t, ChainComplex::concentrated(0, 2));
  CHECK(glue_hom(two, two).cohomology() == std::map<int, std::size_t>{{0, 4}});
  CHECK(glue_hom(zero, two).cohomology().empty());

  const WeylGroup a2 = make_weyl_group("A2");
  const LaxObject u = unit_object(weyl_glued_diagram(a2), ChainComplex::concentrated(0, 1));
  CHECK(u.total_dimension() == 12);
  CHECK(glue_hom(u, u).cohomology() == std::map<int, std::size_t>{{0, 1}, {1, 1}});
}

TEST_CASE("degree zero Hom matches coherent families")
{
  std::mt19937_64 rng(31);
  std::size_t nonzero = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SetDiagram d = random_chain_diagram(rng, 1 + rng() % 3);
    const LaxObject x = degree_zero_object(rng, d), y = degree_zero_object(rng, d);
    const std::size_t expect = coherent_families(x, y);
    INFO("trial ", trial);
    CHECK(h0(glue_hom(x, y)) == expect);
    nonzero += expect > 0;
  }
  CHECK(nonzero >= 20);
}

TEST_CASE("Hom requires the same diagram")
{
  std::mt19937_64 rng(2);
  const LaxObject a = unit_object(terminal(), ChainComplex::concentrated(0, 1));
  const LaxObject b = unit_object(random_chain_diagram(rng, 2), ChainComplex::concentrated(0, 1));
  CHECK_THROWS_AS(glue_hom(a, b), Error);
}

TEST_CASE("string complex")
{
  const StringComplex s = string_left_adjoint(unit_object(terminal(), ChainComplex::concentrated(0, 3)));
  CHECK(betti_profile(s.cx) == std::map<int, std::size_t>{{0, 3}});

  // The left adjoint of the unit on F(k) is the hocolim.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const SetDiagram d = random_set_diagram(rng, 4, 4);
    const auto lhs = betti_profile(string_left_adjoint(unit_object(d, ChainComplex::concentrated(0, 1))).cx);
    CHECK(lhs == betti_profile(hocolim_complex(d).cx));
  }
}

TEST_CASE("fully faithful verdicts")
{
  const FFVerdict t = ff_verdict(terminal());
  CHECK(t.fully_faithful());
  CHECK(t.defect.empty());

  const SetDiagram empty = SetDiagram::from_cover_maps(FinitePoset({"t"}, {}), {{}}, {});
  const FFVerdict e = ff_verdict(empty);
  CHECK_FALSE(e.hocolim_is_point);
  CHECK_FALSE(e.fully_faithful());
  CHECK(e.agree());

  const WeylGroup a2 = make_weyl_group("A2");
  const FFVerdict w = ff_verdict(weyl_glued_diagram(a2));
  CHECK_FALSE(w.fully_faithful());
  CHECK(w.agree());
  CHECK(w.defect == std::map<int, std::size_t>{{1, 1}});
  REQUIRE(w.defect_characters.count(1) == 1);
  CHECK(w.defect_characters.at(1) == ClassFunction::sign(a2));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial)
    CHECK(ff_verdict(random_set_diagram(rng, 4, 4)).agree());
}

TEST_CASE("adjunction")
{
  const ChainComplex d(0, {{"a"}, {"b"}}, {SparseMatrix::zero(0, 1), SparseMatrix::zero(1, 1)});
  CHECK(adjunction_check(unit_object(terminal(), ChainComplex::concentrated(0, 2)), d).passed());

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    const SetDiagram g = random_chain_diagram(rng, 2);
    CHECK(adjunction_check(random_lax_object(rng, g), random_complex(rng)).passed());
  }
  const LaxObject u = unit_object(weyl_glued_diagram(make_weyl_group("A2")), ChainComplex::concentrated(0, 1));
  CHECK(adjunction_check(u, d).passed());

  try {
    adjunction_check(unit_object(weyl_glued_diagram(make_weyl_group("A3")), ChainComplex::concentrated(0, 2)), d);
    FAIL("cap ignored");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kResourceCap);
  }
}

TEST_CASE("recollement on small posets")
{
  const FinitePoset pt({"p"}, {});
  for (const std::vector<char>& open : {std::vector<char>{0}, std::vector<char>{1}})
    CHECK(recollement_round_trip(constant_sheaf(pt), open).passed());

  const FinitePoset sierpinski({"z", "u"}, {{0, 1}});
  for (const std::vector<char>& open : {std::vector<char>{0, 0}, std::vector<char>{0, 1}, std::vector<char>{1, 1}}) {
    const RecollementVerdict v = recollement_round_trip(constant_sheaf(sierpinski), open);
    INFO(v.witness);
    CHECK(v.passed());
  }

  std::mt19937_64 rng(12);
  const FinitePoset c3 = chain3();
  for (int trial = 0; trial < 10; ++trial) {
    const PosetSheaf f = random_sheaf(rng, c3, 6);
    CHECK(f.total_dimension() <= 6);
    for (const std::vector<char>& open : {std::vector<char>{0, 0, 1}, std::vector<char>{0, 1, 1}})
      CHECK(recollement_round_trip(f, open).passed());
  }
}

TEST_CASE("recollement pieces")
{
  const FinitePoset sierpinski({"z", "u"}, {{0, 1}});
  const PosetSheaf k = constant_sheaf(sierpinski);
  // j^* k = k on u, R(z) = k, so F1(z) = fib(k -> k) is acyclic.
  const GluedTriple t = glue_sheaf(k, {0, 1});
  CHECK(is_acyclic(t.f1[0]));
  const PosetSheaf g = unglue(t);
  CHECK(betti_profile(g.values[0]) == std::map<int, std::size_t>{{0, 1}});

  const PosetSheaf restricted = restrict_sheaf(k, {0, 1});
  CHECK(restricted.poset.size() == 1);
  CHECK(restricted.poset.label(0) == "u");
  const PosetSheaf extended = extend_by_zero(restricted, sierpinski, {0, 1});
  CHECK(extended.values[0].total_dimension() == 0);
  CHECK(extended.values[1].total_dimension() == 1);

  // Sections of the constant sheaf on the 3-chain are k.
  CHECK(betti_profile(derived_sections(constant_sheaf(chain3()), {1, 1, 1}).cx) == std::map<int, std::size_t>{{0, 1}});
}

TEST_CASE("recollement errors")
{
  const FinitePoset sierpinski({"z", "u"}, {{0, 1}});
  try {
    glue_sheaf(constant_sheaf(sierpinski), {1, 0});
    FAIL("down-set accepted as open");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
  const FinitePoset c3 = chain3();
  const PosetSheaf ends = restrict_sheaf(constant_sheaf(c3), {1, 0, 1});
  CHECK_THROWS_AS(extend_by_zero(ends, c3, {1, 0, 1}), Error);
  CHECK_THROWS_AS(recollement_round_trip(constant_sheaf(c3), {1, 1}), Error);
}
