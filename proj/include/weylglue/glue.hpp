#pragma once

#include "weylglue/chainalg.hpp"
#include "weylglue/hocolim.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace weylglue {

/// Object of the lax limit over I = P^op of the diagram a ↦ (complexes graded by F(a)).
/// For a < b in P and s in F(a) the structure map is x_b(F(a<=b) s) -> x_a(s).
struct LaxObject {
  SetDiagram diagram;
  std::vector<std::vector<ChainComplex>> values; // [node][element]
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ChainMap>> structure; // every a < b, indexed by s

  const ChainComplex& value(std::size_t node, std::uint32_t s) const { return values[node][s]; }
  const ChainMap& xi(std::size_t a, std::size_t b, std::uint32_t s) const { return structure.at({a, b})[s]; }
  std::size_t total_dimension() const;

  /// Throws kInvariantViolation if a structure map is not a chain map or a composite disagrees.
  void validate() const;
};

/// Constant V on every element with identity structure maps.
LaxObject unit_object(const SetDiagram& dgm, const ChainComplex& V);

/// Mapping complex between lax objects over the same diagram, stored homologically:
/// cohomological degree k is homological degree -k.
struct GlueHomComplex {
  ChainComplex cx;
  /// Nonzero cohomology dimensions keyed by cohomological degree.
  std::map<int, std::size_t> cohomology() const;
};

/// Throws kInvalidArgument when the diagrams differ.
GlueHomComplex glue_hom(const LaxObject& x, const LaxObject& y);

struct StringComplex {
  ChainComplex cx;
  TotalComplexBuilder builder{Totalization::kSimplicial};
  std::map<std::pair<Chain, std::uint32_t>, std::size_t> block_of;
};

/// Left adjoint of the unit functor: total complex over strings c0 < ... < cn, s in F(c0),
/// of x_cn(F(c0<=cn) s).
StringComplex string_left_adjoint(const LaxObject& x);

struct FFVerdict {
  std::vector<std::size_t> hocolim_betti;
  bool hocolim_is_point = false;
  bool counit_is_iso = false;
  std::map<int, std::size_t> defect; // homology of the fiber of the counit
  std::map<int, ClassFunction> defect_characters; // degrees with nonzero defect, when the diagram carries an action

  bool agree() const { return hocolim_is_point == counit_is_iso; }
  bool fully_faithful() const { return hocolim_is_point && counit_is_iso; }
};

FFVerdict ff_verdict(const SetDiagram& dgm);

struct AdjunctionVerdict {
  std::map<int, std::size_t> left;  // homology of Hom(F^L X, d)
  std::map<int, std::size_t> right; // homology of glue_hom(X, unit_object(d))
  bool passed() const { return left == right; }
};

/// Throws kResourceCap when X has total dimension above 64.
AdjunctionVerdict adjunction_check(const LaxObject& x, const ChainComplex& d);

/// Covariant functor from a finite poset to complexes: F(x) -> F(y) for x <= y.
/// Opens are up-closed subsets.
struct PosetSheaf {
  FinitePoset poset;
  std::vector<ChainComplex> values;
  std::map<std::pair<std::size_t, std::size_t>, ChainMap> maps; // every x < y

  ChainMap map(std::size_t x, std::size_t y) const;
  std::size_t total_dimension() const;
  /// Throws kInvariantViolation on a non-chain map or a functoriality failure.
  void validate() const;
};

/// Restriction to a subset; nodes keep their labels, in index order (j^* and i^*).
PosetSheaf restrict_sheaf(const PosetSheaf& f, const std::vector<char>& subset);
/// Extension by zero from a convex subset of Y (j_! for opens, i_* for closed sets).
PosetSheaf extend_by_zero(const PosetSheaf& part, const FinitePoset& y, const std::vector<char>& subset);

/// Normalized cochains computing the derived limit of F over `subset` (value at the top of each chain).
struct Cochains {
  ChainComplex cx;
  TotalComplexBuilder builder{Totalization::kCosimplicial};
  std::map<Chain, std::size_t> block_of;
};

Cochains derived_sections(const PosetSheaf& f, const std::vector<char>& subset);

/// (F_0, F_1, φ): F_0 = j^*F, F_1(z) = fib(F(z) -> R(z)), φ_z : R(z)[-1] -> F_1(z),
/// where R(z) = RΓ(U ∩ {v >= z}, F_0).
struct GluedTriple {
  std::vector<char> open;
  PosetSheaf sheaf; // F itself, kept for the unit
  std::vector<Cochains> r;       // per node of Y
  std::vector<ChainComplex> f1;  // per node of Z (empty elsewhere)
  std::vector<ChainMap> phi;     // per node of Z
};

/// Throws kInvalidArgument if `open` is not up-closed.
GluedTriple glue_sheaf(const PosetSheaf& f, const std::vector<char>& open);

/// G(u) = R(u) on U, G(z) = Cone(φ_z) on Z.
PosetSheaf unglue(const GluedTriple& t);

struct RecollementVerdict {
  bool inverse_valid = false;
  bool unit_natural = false;
  bool unit_quasi_iso = false;
  bool counit_quasi_iso = false;
  bool restriction_exact = false; // j^* j_! j^* F == j^* F and i^* i_* i^* F == i^* F
  std::string witness;

  bool passed() const { return inverse_valid && unit_natural && unit_quasi_iso && counit_quasi_iso && restriction_exact; }
};

RecollementVerdict recollement_round_trip(const PosetSheaf& f, const std::vector<char>& open);

// Seeded generators for the randomized corpora.
FinitePoset random_poset(std::mt19937_64& rng, std::size_t nodes);
SetDiagram random_set_diagram(std::mt19937_64& rng, std::size_t max_nodes = 4, std::size_t max_set = 5);
LaxObject random_lax_object(std::mt19937_64& rng, const SetDiagram& dgm);
ChainComplex random_complex(std::mt19937_64& rng);
PosetSheaf random_sheaf(std::mt19937_64& rng, const FinitePoset& y, std::size_t max_total_dim = 8);
/// Sheaf with value k on every node and identity maps.
PosetSheaf constant_sheaf(const FinitePoset& y);

} // namespace weylglue
