#include "weylglue/coxeter.hpp"
#include "weylglue/error.hpp"

#include <doctest.h>

#include <set>

using namespace weylglue;

namespace {

// Oracle: all products of subwords of a reduced word of w.
std::set<Elem> subword_products(const WeylGroup& W, Elem w)
{
  const Word& word = W.word(w);
  std::set<Elem> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << word.size()); ++m) {
    Elem u = W.identity();
    for (std::size_t k = 0; k < word.size(); ++k)
      if ((m >> k) & 1u)
        u = W.mul_gen_right(u, static_cast<std::size_t>(word[k]));
    out.insert(u);
  }
  return out;
}

// Oracle: reflexive-transitive closure of u -> u t with l(u t) = l(u) + 1.
std::vector<std::vector<char>> cover_closure(const WeylGroup& W)
{
  std::set<Elem> reflections;
  for (Elem w = 0; w < W.order(); ++w)
    for (std::size_t i = 0; i < W.rank(); ++i)
      reflections.insert(W.multiply(W.multiply(w, W.generator(i)), W.inverse(w)));
  const std::size_t n = W.order();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (Elem u = 0; u < n; ++u)
    leq[u][u] = 1;
  // Elements are sorted by length, so one descending sweep closes the relation.
  for (Elem u = static_cast<Elem>(n); u-- > 0;)
    for (Elem t : reflections) {
      const Elem v = W.multiply(u, t);
      if (W.length(v) == W.length(u) + 1)
        for (Elem x = 0; x < n; ++x)
          if (leq[v][x])
            leq[u][x] = 1;
    }
  return leq;
}

} // namespace

TEST_CASE("root counts")
{
  CHECK(RootSystem(CartanSpec::named("A1")).num_roots() == 2);
  const RootSystem a2(CartanSpec::named("A2"));
  CHECK(a2.num_roots() == 6);
  CHECK(a2.num_positive() == 3);
  const RootSystem g2(CartanSpec::named("G2"));
  CHECK(g2.num_roots() == 12);
  CHECK(g2.num_positive() == 6);
  CHECK(RootSystem(CartanSpec::named("B3")).num_positive() == 9);
  CHECK(RootSystem(CartanSpec::named("D4")).num_positive() == 12);
  CHECK(RootSystem(CartanSpec::named("F4")).num_positive() == 24);
}

TEST_CASE("simple reflections follow the Cartan convention")
{
  for (const char* t : {"A2", "B2", "G2", "C3"}) {
    const RootSystem rs(CartanSpec::named(t));
    const auto& a = rs.spec().matrix;
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j) {
        Root expect = rs.root(j);
        expect[i] -= a[i][j];
        CHECK(rs.root(rs.reflect(i, j)) == expect);
      }
  }
}

TEST_CASE("group orders")
{
  const std::vector<std::pair<const char*, std::size_t>> orders = {
      {"A1", 2}, {"A2", 6}, {"A3", 24}, {"A4", 120}, {"B2", 8}, {"B3", 48}, {"C3", 48}, {"D4", 192}, {"G2", 12}, {"F4", 1152}};
  for (auto [t, n] : orders)
    CHECK(make_weyl_group(t).order() == n);
}

TEST_CASE("bad types")
{
  CHECK_THROWS_AS(CartanSpec::named("E6"), Error);
  try {
    CartanSpec::named("Q2");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kUnknownType);
  }
  try {
    RootSystem(CartanSpec::from_matrix({{2, -2}, {-2, 2}}));
    FAIL("affine type accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotFiniteType);
  }
  try {
    WeylGroup(RootSystem(CartanSpec::named("D4")), 100);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kResourceCap);
  }
}

TEST_CASE("length is the inversion count and w0 is unique")
{
  for (const char* t : {"A3", "B3", "G2", "D4"}) {
    const WeylGroup W = make_weyl_group(t);
    std::size_t longest = 0;
    for (Elem w = 0; w < W.order(); ++w) {
      CHECK(W.length(w) == W.inversion_count(w));
      CHECK(W.from_word(W.word(w)) == w);
      if (W.length(w) == W.roots().num_positive())
        ++longest;
    }
    CHECK(longest == 1);
    const Elem w0 = W.longest();
    for (std::size_t r = 0; r < W.roots().num_positive(); ++r)
      CHECK_FALSE(W.roots().is_positive(W.act(w0, r)));
  }
}

TEST_CASE("sign is a homomorphism")
{
  for (const char* t : {"A3", "B3", "C3", "G2"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Elem u = 0; u < W.order(); ++u)
      for (Elem v = 0; v < W.order(); ++v)
        REQUIRE(W.sign(W.multiply(u, v)) == W.sign(u) * W.sign(v));
  }
}

TEST_CASE("multiplication, inverses and generators")
{
  const WeylGroup W = make_weyl_group("B3");
  for (Elem u = 0; u < W.order(); ++u) {
    CHECK(W.multiply(u, W.inverse(u)) == W.identity());
    for (std::size_t i = 0; i < W.rank(); ++i) {
      CHECK(W.mul_gen_left(i, u) == W.multiply(W.generator(i), u));
      CHECK(W.mul_gen_right(u, i) == W.multiply(u, W.generator(i)));
    }
  }
  for (Elem a = 0; a < W.order(); a += 7)
    for (Elem b = 0; b < W.order(); b += 5)
      for (Elem c = 0; c < W.order(); c += 3)
        CHECK(W.multiply(W.multiply(a, b), c) == W.multiply(a, W.multiply(b, c)));
}

TEST_CASE("Bruhat order examples")
{
  const WeylGroup W = make_weyl_group("A2");
  const Elem s1 = W.from_word({0}), s2 = W.from_word({1}), s1s2 = W.from_word({0, 1});
  for (Elem w = 0; w < W.order(); ++w)
    CHECK(W.bruhat_leq(W.identity(), w));
  CHECK(W.bruhat_leq(s1, s1s2));
  CHECK_FALSE(W.bruhat_leq(s1, s2));
}

TEST_CASE("Bruhat order matches the subword property")
{
  for (const char* t : {"A3", "B3", "G2"}) {
    const WeylGroup W = make_weyl_group(t);
    for (Elem w = 0; w < W.order(); ++w) {
      const auto below = subword_products(W, w);
      for (Elem u = 0; u < W.order(); ++u)
        REQUIRE(W.bruhat_leq(u, w) == (below.count(u) == 1));
    }
  }
}

TEST_CASE("Bruhat order matches the closure of reflection covers")
{
  for (const char* t : {"A3", "B2"}) {
    const WeylGroup W = make_weyl_group(t);
    const auto leq = cover_closure(W);
    for (Elem u = 0; u < W.order(); ++u)
      for (Elem w = 0; w < W.order(); ++w)
        REQUIRE(W.bruhat_leq(u, w) == static_cast<bool>(leq[u][w]));
  }
}

TEST_CASE("weight action")
{
  const WeylGroup a1 = make_weyl_group("A1");
  const QVector rho1 = {Q(1)};
  CHECK(a1.act_on_weight(a1.identity(), rho1) == rho1);
  CHECK(a1.act_on_weight(a1.generator(0), rho1) == QVector{Q(-1)});

  for (const char* t : {"A2", "B2", "G2", "A3", "C3"}) {
    const WeylGroup W = make_weyl_group(t);
    const auto& a = W.roots().spec().matrix;
    const std::size_t r = W.rank();
    // Explicit formula: (s_i x)_j = x_j - x_i a_ji.
    QVector x(r);
    for (std::size_t k = 0; k < r; ++k)
      x[k] = Q(static_cast<long>(2 * k + 1)) / 3;
    for (std::size_t i = 0; i < r; ++i) {
      QVector expect = x;
      for (std::size_t j = 0; j < r; ++j)
        expect[j] -= x[i] * a[j][i];
      CHECK(W.act_on_weight(W.generator(i), x) == expect);
    }
    const QVector rho(r, Q(1));
    const QVector minus_rho(r, Q(-1));
    CHECK(W.act_on_weight(W.longest(), rho) == minus_rho);
    // Round trip through root coordinates.
    CHECK(W.root_to_weight(W.weight_to_root(x)) == x);
  }
}

TEST_CASE("longest element of A2 on weights, by explicit 2x2 products")
{
  const WeylGroup W = make_weyl_group("A2");
  // s1, s2 on fundamental-weight coordinates.
  const QMatrix s1 = {{Q(-1), Q(0)}, {Q(1), Q(1)}};
  const QMatrix s2 = {{Q(1), Q(1)}, {Q(0), Q(-1)}};
  auto mul = [](const QMatrix& a, const QMatrix& b) {
    QMatrix c(2, QVector(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return c;
  };
  const QMatrix w0 = mul(mul(s1, s2), s1);
  // -1 composed with the diagram flip.
  CHECK(w0 == QMatrix{{Q(0), Q(-1)}, {Q(-1), Q(0)}});
  for (const QVector& x : {QVector{Q(1), Q(0)}, QVector{Q(0), Q(1)}, QVector{Q(2), Q(-3)}})
    CHECK(W.act_on_weight(W.longest(), x) == QVector{w0[0][0] * x[0] + w0[0][1] * x[1], w0[1][0] * x[0] + w0[1][1] * x[1]});
}

TEST_CASE("Gram form is W-invariant")
{
  for (const char* t : {"B3", "G2", "C3", "D4"}) {
    const WeylGroup W = make_weyl_group(t);
    const std::size_t r = W.rank();
    for (Elem w = 0; w < W.order(); ++w) {
      const QMatrix m = W.root_matrix(w);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          QVector x(r), y(r), ei(r), ej(r);
          for (std::size_t k = 0; k < r; ++k) {
            x[k] = m[k][i];
            y[k] = m[k][j];
          }
          ei[i] = 1;
          ej[j] = 1;
          REQUIRE(W.roots().inner(x, y) == W.roots().inner(ei, ej));
        }
    }
  }
}
