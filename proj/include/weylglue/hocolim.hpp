#pragma once

#include "weylglue/chainalg.hpp"
#include "weylglue/coxeter.hpp"
#include "weylglue/parabolic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weylglue {

using Chain = std::vector<std::uint32_t>;

/// Finite poset with a reflexive, transitively closed order.
class FinitePoset {
public:
  FinitePoset() = default;

  /// Takes the reflexive-transitive closure of `pairs` (a <= b). Throws kInvalidArgument on a cycle.
  FinitePoset(std::vector<std::string> nodes, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& label(std::size_t i) const { return nodes_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }
  /// b covers a.
  bool covers(std::size_t a, std::size_t b) const;
  std::vector<std::pair<std::size_t, std::size_t>> cover_pairs() const;
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

  bool is_up_closed(const std::vector<char>& subset) const;
  bool is_down_closed(const std::vector<char>& subset) const;
  /// Nodes in a linear extension (stable by index).
  std::vector<std::size_t> linear_extension() const;

  /// Strictly increasing chains through nodes with mask[i] set (all nodes when empty),
  /// grouped by length: result[n] holds chains with n+1 nodes, each group sorted lexicographically.
  std::vector<std::vector<Chain>> strict_chains(const std::vector<char>& mask = {}) const;

private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<char>> leq_;
};

/// Functor from a finite poset to finite sets. Maps are stored for every a < b.
struct SetDiagram {
  FinitePoset poset;
  std::vector<std::vector<std::string>> sets;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> maps;
  /// Optional group action: action[g][node][x] = g x. Must commute with the maps.
  std::vector<std::vector<std::vector<std::uint32_t>>> action;

  std::size_t size(std::size_t node) const { return sets[node].size(); }
  /// F(a <= b)(x); identity when a == b.
  std::uint32_t push(std::size_t a, std::size_t b, std::uint32_t x) const;

  /// Fills maps for non-covering pairs by composing cover maps; throws kInvalidArgument
  /// when two composites disagree or a cover map is missing or out of range.
  static SetDiagram from_cover_maps(FinitePoset poset, std::vector<std::vector<std::string>> sets,
                                    const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>>& covers);

  /// Throws kInvariantViolation on a functoriality or equivariance failure.
  void validate() const;
};

/// A hocolim cell: strictly increasing chain and an element of F(chain.front()).
struct HocolimCell {
  Chain chain;
  std::uint32_t element;
};

/// Restriction of a diagram to a subset of nodes and, per node, a subset of elements
/// closed under the maps. Empty vectors mean "keep everything".
struct DiagramMask {
  std::vector<char> nodes;
  std::vector<std::vector<char>> elements;

  bool keeps_node(std::size_t n) const { return nodes.empty() || nodes[n]; }
  bool keeps(std::size_t n, std::uint32_t x) const { return elements.empty() || elements[n][x]; }
};

struct HocolimComplex {
  ChainComplex cx;
  std::vector<std::vector<HocolimCell>> cells; // per degree, index = basis index
  std::vector<std::map<Chain, std::size_t>> chain_offset;
  std::vector<std::map<Chain, std::vector<std::int64_t>>> local_index; // element -> index within chain or -1

  std::optional<std::size_t> find(std::size_t degree, const Chain& chain, std::uint32_t element) const;
};

/// Normalized chains of the Grothendieck construction: degree n spanned by (J0 < ... < Jn, x in F(J0)),
/// d = Σ (-1)^k ∂_k, ∂_0 pushes x along F(J0 <= J1).
HocolimComplex hocolim_complex(const SetDiagram& dgm, const DiagramMask& mask = {});

/// Action of dgm.action on the hocolim complex (requires the mask to be invariant).
GroupAction hocolim_action(const SetDiagram& dgm, const HocolimComplex& hc);

/// Proper parabolics J ordered by (size, mask); F(J) = minimal left coset representatives of W/W_J.
SetDiagram weyl_glued_diagram(const WeylGroup& W);
/// Node order used by weyl_glued_diagram.
std::vector<Parabolic> glued_nodes(const WeylGroup& W);

struct GluedHomologyReport {
  std::string type;
  std::size_t rank = 0;
  std::vector<std::size_t> chain_dims;
  std::vector<std::size_t> betti;
  std::vector<ClassFunction> characters;
  std::vector<Q> triv_multiplicity; // per degree
  std::vector<Q> sign_multiplicity;
  bool equivariant = false;       // action by chain maps
  bool characters_consistent = false; // Hopf trace identity per group element
  bool betti_ok = false;
  bool characters_ok = false;
  bool euler_ok = false;

  bool passed() const { return equivariant && characters_consistent && betti_ok && characters_ok && euler_ok; }
};

GluedHomologyReport glued_homology_report(const WeylGroup& W, const std::string& type_label = "");

enum class StratumMode { kLeq, kLt, kQuotient };

/// Per node J keeps the cosets u W_J whose (J0, J) double coset minimum is <= w (kLeq) or < w (kLt).
DiagramMask stratum_mask(const WeylGroup& W, const SetDiagram& glued, Parabolic j0, Elem w, bool strict);

/// Throws kInvalidArgument unless w ∈ W'(J0). The quotient is cone(lt -> leq) plus a base point.
ChainComplex stratified_glued_complex(const WeylGroup& W, Parabolic j0, Elem w, StratumMode mode);

struct CofinalityVerdict {
  bool adjunction_ok = false;
  bool counit_bijective = false;
  std::vector<std::size_t> betti_full;
  std::vector<std::size_t> betti_sub;
  bool characters_compared = false;
  bool characters_match = true;
  std::string witness;

  bool passed() const { return adjunction_ok && counit_bijective && betti_full == betti_sub && characters_match; }
};

/// Compares hocolim over `mask` with hocolim over the nodes in `sub` (a subset of the kept nodes)
/// given a monotone right adjoint r of the inclusion. Throws kInvalidArgument when r is not a right adjoint.
CofinalityVerdict cofinality_check(const SetDiagram& dgm, const DiagramMask& mask, const std::vector<char>& sub,
                                   const std::vector<std::size_t>& r);

struct StratumStep {
  Elem w = 0;
  std::vector<std::size_t> betti_leq, betti_lt, betti_quotient;
  std::string expectation; // "point" or "sphere"
  bool passed = false;
};

struct StratInductionReport {
  Parabolic j0;
  Elem w0_prime = 0;
  std::vector<StratumStep> steps;
  CofinalityVerdict base_case;
  bool exhaustive = false; // leq at w'0 equals the full glued complex

  bool passed() const;
};

/// Replays the induction over W'(J0): point homology at w = e, point quotients for e != w != w'0,
/// and the base-case cofinality via J -> J ∩ J0.
StratInductionReport strat_induction(const WeylGroup& W, Parabolic j0);

} // namespace weylglue
