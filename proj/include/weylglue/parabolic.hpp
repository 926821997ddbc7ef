#pragma once

#include "weylglue/coxeter.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace weylglue {

/// A subset J of the simple roots, as a bitmask over generator indices.
struct Parabolic {
  std::uint64_t mask = 0;

  bool contains(std::size_t i) const { return (mask >> i) & 1u; }
  std::size_t size() const;
  bool proper(std::size_t rank) const { return mask != full(rank).mask; }
  bool subset_of(Parabolic other) const { return (mask & ~other.mask) == 0; }

  static Parabolic full(std::size_t rank) { return {rank >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank) - 1}; }
  static Parabolic of(std::initializer_list<std::size_t> ids);

  /// 1-based, e.g. "{1,3}".
  std::string to_string() const;
  /// Parses "1,3", "{1,3}", "" or "{}" (1-based ids).
  static Parabolic parse(const std::string& text, std::size_t rank);

  friend bool operator==(Parabolic a, Parabolic b) { return a.mask == b.mask; }
  friend Parabolic operator&(Parabolic a, Parabolic b) { return {a.mask & b.mask}; }
  friend Parabolic operator|(Parabolic a, Parabolic b) { return {a.mask | b.mask}; }
  friend Parabolic operator-(Parabolic a, Parabolic b) { return {a.mask & ~b.mask}; }
};

/// All subsets of S ordered by (size, mask); `proper_only` drops S itself.
std::vector<Parabolic> all_parabolics(std::size_t rank, bool proper_only);

/// Dense integer polynomial in q, lowest degree first, no trailing zeros.
struct Polynomial {
  std::vector<std::int64_t> coeffs;

  void add_monomial(std::size_t degree, std::int64_t c = 1);
  std::int64_t at_one() const;
  bool is_zero() const { return coeffs.empty(); }
  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& other);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void trim();
};

enum class CosetSide { kLeft, kRight, kDouble };

/// Unique minimal element of w W_J (kLeft), W_J w (kRight) or W_J0 w W_J (kDouble).
Elem min_coset_rep(const WeylGroup& W, Elem w, Parabolic j, CosetSide side, Parabolic j0 = {});

/// Minimal in w W_J  <=>  w(J) subset of R+.
bool is_min_left(const WeylGroup& W, Elem w, Parabolic j);
/// Minimal in W_J0 w  <=>  w^{-1}(J0) subset of R+.
bool is_min_right(const WeylGroup& W, Elem w, Parabolic j0);

/// Elements of the parabolic subgroup W_J, in element-table order.
std::vector<Elem> parabolic_subgroup(const WeylGroup& W, Parabolic j);

/// W' = {w : w^{-1}(J0) subset of R+}, sorted by (length, canonical word).
std::vector<Elem> w_prime_set(const WeylGroup& W, Parabolic j0);

/// The maximal element of W', i.e. the minimal element of W_J0 w0.
Elem w0_prime(const WeylGroup& W, Parabolic j0);

/// Roots whose support lies inside J.
bool root_in_parabolic(const RootSystem& rs, std::size_t root, Parabolic j);

struct SimplePartition {
  Parabolic zero;  // S ∩ w^{-1}(R_J0)
  Parabolic plus;  // S ∩ w^{-1}(R+ \ R_J0)
  Parabolic minus; // S ∩ w^{-1}(-R+ \ R_J0)
};

SimplePartition simple_partition(const WeylGroup& W, Elem w, Parabolic j0);

struct StratumIndex {
  Parabolic j0;
  Parabolic j;
  Elem w = 0;
  /// Minimal representatives u of u W_J inside W_J0 w W_J (empty unless w is the
  /// minimal element of its double coset).
  std::vector<Elem> reps;

  bool empty() const { return reps.empty(); }
  Polynomial polynomial(const WeylGroup& W) const;
};

StratumIndex stratum_index(const WeylGroup& W, Parabolic j0, Parabolic j, Elem w);

/// Outcome of the two-part check on one (J0, J, w).
struct SchubertVerdict {
  Parabolic j0, j, j_tilde;
  Elem w = 0;
  SimplePartition partition;
  bool emptiness_applies = false; // J ∩ S^- nonempty
  bool emptiness_holds = true;
  Polynomial poly_j;
  Polynomial poly_j_tilde;
  bool bijection_holds = true; // u -> min rep of u W_J is a length-preserving bijection
  std::string witness;         // first counterexample, empty when passing

  bool passed() const { return emptiness_holds && bijection_holds && poly_j == poly_j_tilde; }
};

SchubertVerdict check_lemma_sch(const WeylGroup& W, Parabolic j0, Parabolic j, Elem w);

/// Sum over minimal representatives of W/W_J of q^{l(u)}.
Polynomial poincare_polynomial(const WeylGroup& W, Parabolic j);

} // namespace weylglue
