#include "weylglue/polytope.hpp"

#include "weylglue/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace weylglue {

namespace {

using i128 = __int128;
using IntPoint = std::vector<std::int64_t>;

i128 det_int(std::vector<std::vector<i128>> m)
{
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return m[0][0];
  i128 total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0)
      continue;
    std::vector<std::vector<i128>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<i128> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const i128 term = m[0][c] * det_int(std::move(minor));
    total += (c % 2 == 0) ? term : -term;
  }
  return total;
}

// Scales all points by a common denominator so the hull can be computed over the integers.
std::vector<IntPoint> integerize(const std::vector<RationalPoint>& points)
{
  mpz_class l = 1;
  for (const auto& p : points)
    for (const auto& c : p.coords)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<IntPoint> out;
  for (const auto& p : points) {
    IntPoint q;
    for (const auto& c : p.coords) {
      const mpz_class v = c.get_num() * (l / c.get_den());
      if (!v.fits_slong_p() || abs(v) > mpz_class(1000000))
        throw Error(ErrorKind::kResourceCap, "orbit coordinates too large for the exact hull");
      q.push_back(v.get_si());
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::size_t affine_rank(const std::vector<RationalPoint>& pts, const std::vector<std::uint32_t>& idx)
{
  if (idx.size() <= 1)
    return 0;
  QMatrix m;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    QVector row;
    for (std::size_t j = 0; j < pts[idx[0]].coords.size(); ++j)
      row.push_back(pts[idx[k]].coords[j] - pts[idx[0]].coords[j]);
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

QVector diff(const RationalPoint& a, const RationalPoint& b)
{
  QVector v(a.coords.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a.coords[i] - b.coords[i];
  return v;
}

// Coordinates of v (assumed in the span) with respect to the columns `basis`.
QVector coordinates_in(const std::vector<QVector>& basis, const QVector& v)
{
  const std::size_t k = basis.size();
  QMatrix g(k, QVector(k));
  QVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < v.size(); ++t)
        g[i][j] += basis[i][t] * basis[j][t];
    for (std::size_t t = 0; t < v.size(); ++t)
      rhs[i] += basis[i][t] * v[t];
  }
  return solve(std::move(g), std::move(rhs));
}

std::vector<QVector> face_basis(const std::vector<RationalPoint>& pts, const Face& f)
{
  std::vector<QVector> basis;
  QMatrix rows;
  for (std::size_t k = 1; k < f.vertices.size() && basis.size() < f.dim; ++k) {
    QVector v = diff(pts[f.vertices[k]], pts[f.vertices[0]]);
    rows.push_back(v);
    if (rank(rows) == basis.size() + 1)
      basis.push_back(std::move(v));
    else
      rows.pop_back();
  }
  if (basis.size() != f.dim)
    throw Error(ErrorKind::kInvariantViolation, "face has fewer independent directions than its dimension");
  return basis;
}

std::string face_label(const Face& f)
{
  std::string s = "f" + std::to_string(f.dim) + ":";
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(f.vertices[i]);
  }
  return s;
}

} // namespace

RationalPoint rho(const WeylGroup& W)
{
  return {W.weight_to_root(QVector(W.rank(), Q(1)))};
}

std::vector<RationalPoint> orbit_points(const WeylGroup& W, const RationalPoint& gamma)
{
  const auto& rs = W.roots();
  if (gamma.coords.size() != W.rank())
    throw Error(ErrorKind::kInvalidArgument, "point has the wrong dimension");
  for (std::size_t a = 0; a < rs.num_positive(); ++a) {
    QVector alpha(rs.rank());
    for (std::size_t j = 0; j < rs.rank(); ++j)
      alpha[j] = rs.root(a)[j];
    if (rs.inner(gamma.coords, alpha) == 0) {
      std::string coords;
      for (std::size_t j = 0; j < rs.rank(); ++j)
        coords += (j ? "," : "") + std::to_string(rs.root(a)[j]);
      throw Error(ErrorKind::kInvalidArgument, "point is fixed by the reflection in the root (" + coords + ")");
    }
  }
  std::vector<RationalPoint> out;
  out.reserve(W.order());
  for (Elem w = 0; w < W.order(); ++w) {
    const QMatrix m = W.root_matrix(w);
    RationalPoint p{QVector(W.rank())};
    for (std::size_t i = 0; i < W.rank(); ++i)
      for (std::size_t j = 0; j < W.rank(); ++j)
        p.coords[i] += m[i][j] * gamma.coords[j];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> FaceLattice::f_vector() const
{
  std::vector<std::size_t> f;
  for (const auto& level : faces)
    f.push_back(level.size());
  return f;
}

std::vector<std::size_t> FaceLattice::facets_of(std::size_t d, std::size_t i) const
{
  std::vector<std::size_t> out;
  if (d == 0)
    return out;
  const auto& big = faces[d][i].vertices;
  for (std::size_t k = 0; k < faces[d - 1].size(); ++k) {
    const auto& small = faces[d - 1][k].vertices;
    if (std::includes(big.begin(), big.end(), small.begin(), small.end()))
      out.push_back(k);
  }
  return out;
}

FaceLattice convex_hull(const std::vector<RationalPoint>& points, bool allow_high_rank)
{
  if (points.empty())
    throw Error(ErrorKind::kInvalidArgument, "empty point set");
  const std::size_t d = points[0].coords.size();
  if (d == 0)
    throw Error(ErrorKind::kInvalidArgument, "zero-dimensional ambient space");
  for (const auto& p : points)
    if (p.coords.size() != d)
      throw Error(ErrorKind::kInvalidArgument, "points have different dimensions");
  if (d > 3 && !allow_high_rank)
    throw Error(ErrorKind::kResourceCap, "hull above rank 3 needs the high-rank flag");
  std::vector<std::uint32_t> all(points.size());
  for (std::uint32_t i = 0; i < all.size(); ++i)
    all[i] = i;
  if (affine_rank(points, all) != d)
    throw Error(ErrorKind::kInvalidArgument, "point set is not full-dimensional");
  const auto ip = integerize(points);
  const std::size_t n = ip.size();

  std::set<std::vector<std::uint32_t>> facets;
  std::vector<std::size_t> combo(d);
  for (std::size_t i = 0; i < d; ++i)
    combo[i] = i;
  if (n < d)
    throw Error(ErrorKind::kInvalidArgument, "too few points");
  while (true) {
    // Normal of the hyperplane through the chosen points via cofactors.
    std::vector<std::vector<i128>> rows;
    for (std::size_t k = 1; k < d; ++k) {
      std::vector<i128> row;
      for (std::size_t j = 0; j < d; ++j)
        row.push_back(static_cast<i128>(ip[combo[k]][j]) - ip[combo[0]][j]);
      rows.push_back(std::move(row));
    }
    std::vector<i128> normal(d);
    bool nonzero = false;
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::vector<i128>> minor;
      for (const auto& row : rows) {
        std::vector<i128> r;
        for (std::size_t k = 0; k < d; ++k)
          if (k != j)
            r.push_back(row[k]);
        minor.push_back(std::move(r));
      }
      normal[j] = det_int(std::move(minor)) * ((j % 2 == 0) ? 1 : -1);
      nonzero = nonzero || normal[j] != 0;
    }
    if (nonzero) {
      auto value = [&](std::size_t p) {
        i128 s = 0;
        for (std::size_t j = 0; j < d; ++j)
          s += normal[j] * ip[p][j];
        return s;
      };
      const i128 b = value(combo[0]);
      bool above = false, below = false;
      std::vector<std::uint32_t> on;
      for (std::size_t p = 0; p < n && !(above && below); ++p) {
        const i128 v = value(p);
        if (v > b)
          above = true;
        else if (v < b)
          below = true;
        else
          on.push_back(static_cast<std::uint32_t>(p));
      }
      if (!(above && below))
        facets.insert(std::move(on));
    }
    // Next combination.
    std::size_t i = d;
    while (i > 0 && combo[i - 1] == n - d + i - 1)
      --i;
    if (i == 0)
      break;
    ++combo[i - 1];
    for (std::size_t k = i; k < d; ++k)
      combo[k] = combo[k - 1] + 1;
  }

  std::set<std::vector<std::uint32_t>> all_faces(facets.begin(), facets.end());
  std::vector<std::vector<std::uint32_t>> frontier(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    const std::vector<std::vector<std::uint32_t>> known(all_faces.begin(), all_faces.end());
    for (const auto& a : frontier)
      for (const auto& b : known) {
        std::vector<std::uint32_t> c;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
        if (!c.empty() && all_faces.insert(c).second)
          next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }

  FaceLattice lat;
  lat.ambient_dim = d;
  lat.faces.resize(d + 1);
  for (const auto& f : all_faces) {
    const std::size_t k = affine_rank(points, f);
    if (k >= d)
      throw Error(ErrorKind::kInvariantViolation, "proper face spans the whole space");
    lat.faces[k].push_back({f, k});
  }
  lat.faces[d].push_back({all, d});
  for (auto& level : lat.faces)
    std::sort(level.begin(), level.end(), [](const Face& a, const Face& b) { return a.vertices < b.vertices; });
  return lat;
}

FaceIndexVerdict face_index_check(const WeylGroup& W, const FaceLattice& lattice)
{
  FaceIndexVerdict v;
  v.hull_counts = lattice.f_vector();
  v.coset_counts.assign(W.rank() + 1, 0);
  for (Parabolic j : all_parabolics(W.rank(), false))
    v.coset_counts[j.size()] += static_cast<std::size_t>(poincare_polynomial(W, j).at_one());
  v.counts_match = v.hull_counts == v.coset_counts;
  if (!v.counts_match)
    v.witness = "face counts differ from coset counts";

  v.cosets_match = true;
  std::set<std::pair<Elem, std::uint64_t>> seen;
  for (const auto& level : lattice.faces)
    for (const auto& f : level) {
      Elem u = f.vertices[0];
      for (Elem x : f.vertices)
        if (W.length(x) < W.length(u))
          u = x;
      std::vector<Elem> translated;
      for (Elem x : f.vertices)
        translated.push_back(W.multiply(W.inverse(u), x));
      std::sort(translated.begin(), translated.end());
      Parabolic j;
      for (std::size_t i = 0; i < W.rank(); ++i)
        if (std::binary_search(translated.begin(), translated.end(), W.generator(i)))
          j.mask |= std::uint64_t{1} << i;
      const auto sub = parabolic_subgroup(W, j);
      const bool ok = j.size() == f.dim && sub == translated && is_min_left(W, u, j) && seen.insert({u, j.mask}).second;
      if (!ok && v.cosets_match) {
        v.cosets_match = false;
        v.witness = "face " + face_label(f) + " is not a coset u W_J with |J| = " + std::to_string(f.dim);
      }
    }
  return v;
}

ChainComplex boundary_complex(const FaceLattice& lattice, const std::vector<RationalPoint>& points)
{
  const std::size_t d = lattice.ambient_dim;
  std::vector<std::vector<std::string>> bases(d);
  std::vector<SparseMatrix> bds(d);
  std::vector<std::vector<std::vector<QVector>>> basis_of(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (const auto& f : lattice.faces[k]) {
      bases[k].push_back(face_label(f));
      basis_of[k].push_back(face_basis(points, f));
    }
  }
  bds[0] = SparseMatrix::zero(0, lattice.faces[0].size());
  for (std::size_t k = 1; k < d; ++k) {
    SparseMatrix m = SparseMatrix::zero(lattice.faces[k - 1].size(), lattice.faces[k].size());
    for (std::size_t i = 0; i < lattice.faces[k].size(); ++i) {
      const Face& f = lattice.faces[k][i];
      for (std::size_t g_idx : lattice.facets_of(k, i)) {
        const Face& g = lattice.faces[k - 1][g_idx];
        std::uint32_t q = 0;
        for (auto x : f.vertices)
          if (!std::binary_search(g.vertices.begin(), g.vertices.end(), x)) {
            q = x;
            break;
          }
        QMatrix cols;
        cols.push_back(coordinates_in(basis_of[k][i], diff(points[g.vertices[0]], points[q])));
        for (const auto& b : basis_of[k - 1][g_idx])
          cols.push_back(coordinates_in(basis_of[k][i], b));
        const int s = sign(determinant(cols));
        if (s == 0)
          throw Error(ErrorKind::kInvariantViolation, "cannot orient " + face_label(g) + " inside " + face_label(f));
        m.set(g_idx, i, Q(s));
      }
    }
    bds[k] = std::move(m);
  }
  ChainComplex cx(0, std::move(bases), std::move(bds));
  cx.validate();
  return cx;
}

std::vector<std::size_t> boundary_homology(const FaceLattice& lattice, const std::vector<RationalPoint>& points)
{
  return betti_numbers(boundary_complex(lattice, points));
}

bool hull_is_invariant(const WeylGroup& W, const FaceLattice& lattice)
{
  for (std::size_t i = 0; i < W.rank(); ++i)
    for (const auto& level : lattice.faces) {
      std::set<std::vector<std::uint32_t>> present;
      for (const auto& f : level)
        present.insert(f.vertices);
      for (const auto& f : level) {
        std::vector<std::uint32_t> image;
        for (auto x : f.vertices)
          image.push_back(W.mul_gen_left(i, x));
        std::sort(image.begin(), image.end());
        if (!present.count(image))
          return false;
      }
    }
  return true;
}

} // namespace weylglue
