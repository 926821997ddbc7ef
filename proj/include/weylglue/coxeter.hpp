#pragma once

#include "weylglue/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace weylglue {

using IntMatrix = std::vector<std::vector<int>>;

/// Cartan data: a_ij = <alpha_j, alpha_i^vee>, so s_i(alpha_j) = alpha_j - a_ij alpha_i.
struct CartanSpec {
  std::string label; // "A3", "G2", ... or "custom"
  IntMatrix matrix;

  std::size_t rank() const { return matrix.size(); }

  /// Named finite types: A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4), G2, F4.
  /// Bourbaki numbering. Throws Error(kUnknownType) for anything else.
  static CartanSpec named(std::string_view label);

  /// Validates shape, diagonal, sign and zero pattern. Finiteness is checked later
  /// by root generation.
  static CartanSpec from_matrix(IntMatrix m, std::string label = "custom");
};

/// Integer coordinates in the simple-root basis.
using Root = std::vector<std::int64_t>;

class RootSystem {
public:
  static constexpr std::size_t kRootCap = 10000;

  explicit RootSystem(CartanSpec spec);

  const CartanSpec& spec() const { return spec_; }
  std::size_t rank() const { return spec_.rank(); }
  std::size_t num_positive() const { return num_positive_; }
  std::size_t num_roots() const { return roots_.size(); }

  /// Positive roots occupy [0, N) sorted by height then reverse-lex coordinates, so the
  /// simple roots are 0..rank-1. Index N + k holds the negative of root k.
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(std::size_t i) const { return roots_[i]; }
  bool is_positive(std::size_t i) const { return i < num_positive_; }
  std::size_t negate(std::size_t i) const { return i < num_positive_ ? i + num_positive_ : i - num_positive_; }
  std::size_t index_of(const Root& r) const;

  /// Bitmask of simple roots with nonzero coefficient.
  std::uint64_t support(std::size_t i) const { return support_[i]; }

  /// Root index of s_i(root j).
  std::size_t reflect(std::size_t i, std::size_t j) const { return reflection_[i][j]; }

  /// Symmetrized Cartan form (alpha_i, alpha_j) = d_i a_ij, normalized so the shortest
  /// simple root has squared length 2.
  const QMatrix& gram() const { return gram_; }
  Q inner(const QVector& x, const QVector& y) const;

private:
  CartanSpec spec_;
  std::size_t num_positive_ = 0;
  std::vector<Root> roots_;
  std::vector<std::uint64_t> support_;
  std::vector<std::vector<std::size_t>> reflection_;
  std::unordered_map<std::string, std::size_t> lookup_;
  QMatrix gram_;
};

/// Index into the element table of a WeylGroup.
using Elem = std::uint32_t;
using Word = std::vector<int>;

/// A group element: its action on the indexed root list plus canonical reduced word.
struct WeylElement {
  std::vector<std::uint16_t> perm; // perm[r] = index of w(root r)
  Word word;
};

class WeylGroup {
public:
  /// Breadth-first closure over the simple reflections. Throws Error(kResourceCap) once
  /// more than `max_order` elements are found.
  explicit WeylGroup(RootSystem rs, std::size_t max_order = 100000);

  const RootSystem& roots() const { return rs_; }
  std::size_t rank() const { return rs_.rank(); }
  std::size_t order() const { return elements_.size(); }

  const WeylElement& element(Elem w) const { return elements_[w]; }
  const Word& word(Elem w) const { return elements_[w].word; }
  std::size_t length(Elem w) const { return elements_[w].word.size(); }
  int sign(Elem w) const { return length(w) % 2 ? -1 : 1; }

  Elem identity() const { return 0; }
  Elem longest() const { return longest_; }
  Elem generator(std::size_t i) const { return right_gen_[i]; }
  Elem mul_gen_right(Elem w, std::size_t i) const { return right_gen_[w * rank() + i]; }
  Elem mul_gen_left(std::size_t i, Elem w) const { return left_gen_[w * rank() + i]; }
  Elem inverse(Elem w) const { return inverse_[w]; }
  Elem multiply(Elem u, Elem v) const;

  /// Root index of w(root r).
  std::size_t act(Elem w, std::size_t r) const { return elements_[w].perm[r]; }

  /// Right descent: l(w s_i) < l(w), i.e. w(alpha_i) < 0.
  bool right_descent(Elem w, std::size_t i) const { return !rs_.is_positive(act(w, i)); }
  bool left_descent(Elem w, std::size_t i) const { return right_descent(inverse(w), i); }

  /// Number of positive roots sent to negative roots.
  std::size_t inversion_count(Elem w) const;

  Elem from_word(const Word& word) const;
  std::string word_string(Elem w) const; // "e" or "s1s2s1", 1-based

  /// Bruhat order via the lifting property along the canonical word of w.
  bool bruhat_leq(Elem u, Elem w) const;

  /// Matrix of w on simple-root coordinates: column i is w(alpha_i).
  QMatrix root_matrix(Elem w) const;

  /// Linear action on a vector of fundamental-weight coordinates.
  QVector act_on_weight(Elem w, const QVector& weight) const;

  /// Fundamental-weight coordinates -> simple-root coordinates and back.
  QVector weight_to_root(const QVector& weight) const;
  QVector root_to_weight(const QVector& coords) const;

private:
  std::string key_of(const std::vector<std::uint16_t>& perm) const;

  RootSystem rs_;
  std::vector<WeylElement> elements_;
  std::vector<Elem> right_gen_;
  std::vector<Elem> left_gen_;
  std::vector<Elem> inverse_;
  std::unordered_map<std::string, Elem> lookup_;
  Elem longest_ = 0;
  QMatrix cartan_inverse_;
};

/// Convenience: named type straight to a Weyl group.
WeylGroup make_weyl_group(std::string_view label, std::size_t max_order = 100000);

} // namespace weylglue
