#include "weylglue/error.hpp"
#include "weylglue/polytope.hpp"

#include <doctest.h>

using namespace weylglue;

namespace {

std::vector<std::size_t> trimmed(std::vector<std::size_t> b)
{
  while (!b.empty() && b.back() == 0)
    b.pop_back();
  return b;
}

} // namespace

TEST_CASE("rho and orbit examples")
{
  const WeylGroup a1 = make_weyl_group("A1");
  CHECK(rho(a1).coords == QVector{Q(1) / 2});
  const auto pts = orbit_points(a1, rho(a1));
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].coords == QVector{Q(1) / 2});
  CHECK(pts[1].coords == QVector{Q(-1) / 2});

  const WeylGroup a2 = make_weyl_group("A2");
  CHECK(rho(a2).coords == QVector{Q(1), Q(1)});
  CHECK(orbit_points(a2, rho(a2)).size() == 6);
  CHECK(orbit_points(a2, rho(a2))[a2.longest()].coords == QVector{Q(-1), Q(-1)});

  // B2: ρ = ω1 + ω2 in root coordinates.
  const WeylGroup b2 = make_weyl_group("B2");
  const QVector r = rho(b2).coords;
  CHECK(b2.root_to_weight(r) == QVector{Q(1), Q(1)});
}

TEST_CASE("non-generic points are rejected")
{
  const WeylGroup a2 = make_weyl_group("A2");
  CHECK_THROWS_AS(orbit_points(a2, {{Q(0), Q(0)}}), Error);
  // ω1 = (2/3, 1/3) is fixed by s2.
  try {
    orbit_points(a2, {{Q(2) / 3, Q(1) / 3}});
    FAIL("fixed point accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
  CHECK_THROWS_AS(orbit_points(a2, {{Q(1)}}), Error);
}

TEST_CASE("f-vectors match coset counts")
{
  const std::vector<std::pair<const char*, std::vector<std::size_t>>> expect = {
      {"A1", {2, 1}}, {"A2", {6, 6, 1}}, {"B2", {8, 8, 1}}, {"G2", {12, 12, 1}},
      {"A3", {24, 36, 14, 1}}, {"B3", {48, 72, 26, 1}}, {"C3", {48, 72, 26, 1}}};
  for (const auto& [t, f] : expect) {
    const WeylGroup W = make_weyl_group(t);
    const auto pts = orbit_points(W, rho(W));
    const FaceLattice lat = convex_hull(pts);
    INFO(std::string(t));
    CHECK(lat.f_vector() == f);
    const FaceIndexVerdict v = face_index_check(W, lat);
    CHECK(v.passed());
    CHECK(v.hull_counts == v.coset_counts);
  }
  const WeylGroup a2 = make_weyl_group("A2");
  CHECK(face_index_check(a2, convex_hull(orbit_points(a2, rho(a2)))).coset_counts[1] == 6);
  const WeylGroup a3 = make_weyl_group("A3");
  CHECK(face_index_check(a3, convex_hull(orbit_points(a3, rho(a3)))).coset_counts[2] == 14);
}

TEST_CASE("facets of a face")
{
  const WeylGroup a2 = make_weyl_group("A2");
  const FaceLattice lat = convex_hull(orbit_points(a2, rho(a2)));
  CHECK(lat.facets_of(2, 0).size() == 6);
  for (std::size_t e = 0; e < lat.faces[1].size(); ++e)
    CHECK(lat.facets_of(1, e).size() == 2);
}

TEST_CASE("boundary is a sphere")
{
  const std::vector<std::pair<const char*, std::vector<std::size_t>>> expect = {
      {"A1", {2}}, {"A2", {1, 1}}, {"B2", {1, 1}}, {"A3", {1, 0, 1}}, {"B3", {1, 0, 1}}};
  for (const auto& [t, b] : expect) {
    const WeylGroup W = make_weyl_group(t);
    const auto pts = orbit_points(W, rho(W));
    const FaceLattice lat = convex_hull(pts);
    INFO(std::string(t));
    CHECK(trimmed(boundary_homology(lat, pts)) == b);
    boundary_complex(lat, pts).validate();
  }
}

TEST_CASE("hull is W-invariant")
{
  for (const char* t : {"A2", "G2", "A3", "C3"}) {
    const WeylGroup W = make_weyl_group(t);
    CHECK(hull_is_invariant(W, convex_hull(orbit_points(W, rho(W)))));
  }
  // A generic non-ρ point gives the same combinatorics.
  const WeylGroup a3 = make_weyl_group("A3");
  const auto pts = orbit_points(a3, {{Q(3), Q(5), Q(4)}});
  CHECK(convex_hull(pts).f_vector() == std::vector<std::size_t>{24, 36, 14, 1});
}

TEST_CASE("high rank is refused without the flag")
{
  const WeylGroup a4 = make_weyl_group("A4");
  try {
    convex_hull(orbit_points(a4, rho(a4)));
    FAIL("rank 4 hull computed without the flag");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kResourceCap);
  }
}

TEST_CASE("degenerate input")
{
  const std::vector<RationalPoint> line = {{{Q(0), Q(0)}}, {{Q(1), Q(1)}}, {{Q(2), Q(2)}}};
  CHECK_THROWS_AS(convex_hull(line), Error);
  CHECK_THROWS_AS(convex_hull({}), Error);
  const std::vector<RationalPoint> ragged = {{{Q(0), Q(0)}}, {{Q(1)}}, {{Q(0), Q(1)}}};
  CHECK_THROWS_AS(convex_hull(ragged), Error);
}
