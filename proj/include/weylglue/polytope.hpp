#pragma once

#include "weylglue/chainalg.hpp"
#include "weylglue/coxeter.hpp"
#include "weylglue/parabolic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace weylglue {

/// Point in simple-root coordinates.
struct RationalPoint {
  QVector coords;
};

/// ρ in simple-root coordinates (all fundamental-weight coordinates equal to 1).
RationalPoint rho(const WeylGroup& W);

/// Point i is element(i) applied to γ. Throws kInvalidArgument naming a reflection fixing γ.
std::vector<RationalPoint> orbit_points(const WeylGroup& W, const RationalPoint& gamma);

struct Face {
  std::vector<std::uint32_t> vertices; // sorted point indices
  std::size_t dim = 0;
};

/// Faces grouped by dimension; faces[rank] holds the whole polytope.
struct FaceLattice {
  std::size_t ambient_dim = 0;
  std::vector<std::vector<Face>> faces;

  std::vector<std::size_t> f_vector() const;
  /// Indices of (d-1)-faces contained in faces[d][i].
  std::vector<std::size_t> facets_of(std::size_t d, std::size_t i) const;
};

/// Exact hull of a full-dimensional point set. Rank above 3 requires allow_high_rank.
/// Throws kInvalidArgument for degenerate input and kResourceCap for a refused high rank.
FaceLattice convex_hull(const std::vector<RationalPoint>& points, bool allow_high_rank = false);

struct FaceIndexVerdict {
  std::vector<std::size_t> hull_counts;
  std::vector<std::size_t> coset_counts;
  bool counts_match = false;
  bool cosets_match = false; // each face is u W_J with |J| = dim, bijectively
  std::string witness;

  bool passed() const { return counts_match && cosets_match; }
};

FaceIndexVerdict face_index_check(const WeylGroup& W, const FaceLattice& lattice);

/// Oriented cellular chain complex of the proper faces. Throws kInvariantViolation if an
/// orientation cannot be assigned or d∘d != 0.
ChainComplex boundary_complex(const FaceLattice& lattice, const std::vector<RationalPoint>& points);

std::vector<std::size_t> boundary_homology(const FaceLattice& lattice, const std::vector<RationalPoint>& points);

/// Applies each simple reflection to every face and checks that the image is a face.
bool hull_is_invariant(const WeylGroup& W, const FaceLattice& lattice);

} // namespace weylglue
