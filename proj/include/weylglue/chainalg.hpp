#pragma once

#include "weylglue/coxeter.hpp"
#include "weylglue/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace weylglue {

/// Sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Q>>;

/// v <- v + c * w.
void axpy(SparseVec& v, const Q& c, const SparseVec& w);

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseVec> columns;

  static SparseMatrix zero(std::size_t rows, std::size_t cols);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const QMatrix& m, std::size_t cols_if_empty = 0);
  QMatrix to_dense() const;

  SparseVec apply(const SparseVec& v) const;
  bool is_zero() const;
  std::size_t nnz() const;
  void set(std::size_t row, std::size_t col, const Q& value);

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

/// a * b.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& m);
SparseMatrix scaled(SparseMatrix m, const Q& c);
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b);

/// Finite homologically graded complex over Q; d lowers degree by one.
class ChainComplex {
public:
  ChainComplex() = default;

  /// boundaries[k] maps degree min_degree+k to degree min_degree+k-1 (boundaries[0] has 0 rows).
  /// Missing trailing boundaries are filled with zero maps.
  ChainComplex(int min_degree, std::vector<std::vector<std::string>> bases,
               std::vector<SparseMatrix> boundaries = {});

  static ChainComplex zero() { return {}; }
  /// Q^dim in a single degree.
  static ChainComplex concentrated(int degree, std::size_t dim, const std::string& prefix = "e");

  bool empty() const { return bases_.empty(); }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(bases_.size()) - 1; }
  std::size_t dim(int n) const;
  std::size_t total_dimension() const;
  const std::vector<std::string>& basis(int n) const;

  /// d_n : C_n -> C_{n-1}; a zero matrix of the right shape outside the stored range.
  SparseMatrix boundary(int n) const;
  const SparseMatrix* boundary_ptr(int n) const;

  /// Throws Error(kInvariantViolation) naming the offending degree if shapes mismatch or d∘d != 0.
  void validate() const;

  long euler_characteristic() const;

private:
  int min_degree_ = 0;
  std::vector<std::vector<std::string>> bases_;
  std::vector<SparseMatrix> boundaries_;
};

/// Degree-preserving map; absent degrees are zero.
struct ChainMap {
  std::map<int, SparseMatrix> parts;

  SparseMatrix at(int n, std::size_t rows, std::size_t cols) const;
  static ChainMap identity(const ChainComplex& c);
  static ChainMap zero() { return {}; }
};

bool is_chain_map(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f);
/// g ∘ f.
ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& src, const ChainComplex& mid,
                 const ChainComplex& dst);
ChainMap negate(ChainMap f);

/// (C[k])_n = C_{n-k}, differential scaled by (-1)^k.
ChainComplex shift(const ChainComplex& c, int k);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

/// Cone_n = C_{n-1} ⊕ D_n with d(x, y) = (-d x, f(x) + d y). Throws on a non-chain map.
ChainComplex mapping_cone(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f);

/// Fib_n = C_n ⊕ D_{n+1} with d(x, y) = (d x, f(x) - d y). Throws on a non-chain map.
ChainComplex fiber(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f);

/// Internal Hom: degree m spanned by elementary maps A_p -> B_{p+m};
/// d f = d_B f - (-1)^m f d_A. Labels "hom(a,b)".
ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b);

/// Index of the elementary map a -> b (a in A_p, b in B_{p+m}) inside hom_complex(A, B)_m.
class HomLayout {
public:
  HomLayout(const ChainComplex& a, const ChainComplex& b);
  int min_degree() const { return min_; }
  int max_degree() const { return max_; }
  std::size_t dim(int m) const;
  std::size_t index(int m, int p, std::size_t a, std::size_t b) const;

private:
  const ChainComplex* a_;
  const ChainComplex* b_;
  int min_ = 0, max_ = -1;
  std::map<std::pair<int, int>, std::size_t> offset_; // (m, p) -> offset
  std::map<int, std::size_t> dims_;
};

/// f ↦ f ∘ g as a chain map Hom(A, B) -> Hom(A2, B), for a chain map g : A2 -> A.
ChainMap precompose_map(const ChainComplex& a, const ChainComplex& b, const ChainComplex& a2, const ChainMap& g);
/// f ↦ h ∘ f as a chain map Hom(A, B) -> Hom(A, B2), for a chain map h : B -> B2.
ChainMap postcompose_map(const ChainComplex& a, const ChainComplex& b, const ChainComplex& b2, const ChainMap& h);

class Homology;

/// Row-echelon basis keyed by the largest index of each vector.
class Echelon {
public:
  explicit Echelon(std::size_t ambient = 0) : owner_(ambient, -1) {}

  /// Reduces v in place against stored vectors; leaves the part not in the span.
  void reduce(SparseVec& v) const;
  /// Adds v if independent; returns true when added.
  bool insert(SparseVec v);
  std::size_t size() const { return vectors_.size(); }
  const std::vector<SparseVec>& vectors() const { return vectors_; }
  bool is_pivot(std::size_t i) const { return owner_[i] >= 0; }
  void resize_ambient(std::size_t n) { owner_.resize(n, -1); }

private:
  friend class Homology;
  friend Homology compute_homology(const ChainComplex& cx, bool with_representatives);
  std::vector<std::int64_t> owner_;
  std::vector<SparseVec> vectors_;
};

/// Betti numbers with explicit cycle representatives and a projection of cycles onto them.
class Homology {
public:
  int min_degree = 0;
  std::vector<std::size_t> betti; // betti[k] for degree min_degree + k
  std::vector<std::vector<SparseVec>> representatives;

  std::size_t betti_at(int n) const;
  int max_degree() const { return min_degree + static_cast<int>(betti.size()) - 1; }
  bool is_acyclic() const;

  /// Coordinates of the class of `cycle` in the representative basis.
  /// Throws Error(kInvariantViolation) if `cycle` is not a cycle.
  std::vector<Q> coordinates(int n, const SparseVec& cycle) const;

  friend Homology compute_homology(const ChainComplex& cx, bool with_representatives);

private:
  struct DegreeData {
    Echelon boundaries;
    Echelon reps;
    std::vector<std::vector<Q>> tracks;
  };
  std::vector<DegreeData> data_;
};

/// Exact homology over Q. Representatives are chosen deterministically (column order).
Homology compute_homology(const ChainComplex& cx, bool with_representatives = true);

/// Betti numbers only (cheaper).
std::vector<std::size_t> betti_numbers(const ChainComplex& cx);

/// Nonzero Betti numbers keyed by degree.
std::map<int, std::size_t> betti_profile(const ChainComplex& cx);

bool is_acyclic(const ChainComplex& cx);
bool is_quasi_isomorphism(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f);

struct SignedPermutation {
  std::vector<std::uint32_t> image;
  std::vector<std::int8_t> sign;

  static SignedPermutation identity(std::size_t n);
  SparseVec apply(const SparseVec& v) const;
  std::int64_t trace() const;
};

/// action[g][k] acts on degree min_degree + k of a fixed complex; g indexes group elements.
struct GroupAction {
  int min_degree = 0;
  std::vector<std::vector<SignedPermutation>> action;

  std::size_t group_order() const { return action.size(); }
  const SignedPermutation* at(std::size_t g, int n) const;
};

/// Checks that each element acts by chain maps on cx.
bool is_chain_action(const ChainComplex& cx, const GroupAction& act, std::vector<std::size_t> elements = {});
/// Checks act(s_i) ∘ act(w) = act(s_i w) for all w and all simple generators.
bool respects_multiplication(const WeylGroup& W, const GroupAction& act);

/// Real-valued class function on W, one rational per element.
struct ClassFunction {
  std::vector<Q> values;

  static ClassFunction trivial(const WeylGroup& W);
  static ClassFunction sign(const WeylGroup& W);
  bool is_constant_on_classes(const WeylGroup& W) const;
  ClassFunction operator+(const ClassFunction& other) const;
  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
};

/// (1/|W|) Σ χ(w) ψ(w).
Q multiplicity(const ClassFunction& chi, const ClassFunction& psi, const WeylGroup& W);

struct HomologyCharacters {
  Homology homology;
  std::vector<ClassFunction> characters; // per degree
  std::vector<ClassFunction> chain_traces; // trace on C_n, per degree
};

/// Per-degree trace of each group element on homology, from the projection onto
/// representatives. Throws if the action is not by chain maps; the chain-map check runs on
/// `verify_on` (all elements when empty).
HomologyCharacters homology_character(const ChainComplex& cx, const GroupAction& act,
                                      const std::vector<std::size_t>& verify_on = {});

/// Total complex of a (co)simplicial diagram of complexes given by blocks and face maps.
enum class Totalization {
  kSimplicial,   // total degree = internal + horizontal; D = Σ faces + (-1)^h d
  kCosimplicial, // total degree = internal - horizontal; D = d + (-1)^m Σ cofaces
};

class TotalComplexBuilder {
public:
  explicit TotalComplexBuilder(Totalization kind) : kind_(kind) {}

  std::size_t add_block(int horizontal, ChainComplex cx, std::string label);
  /// Adds coefficient * f : block `from` -> block `to`. Horizontal degree must change by one
  /// in the direction of the totalization.
  void add_map(std::size_t from, std::size_t to, ChainMap f, int coefficient);

  ChainComplex build();

  /// Valid after build().
  int total_degree(std::size_t block, int internal) const;
  std::size_t global_index(std::size_t block, int internal, std::size_t local) const;
  std::size_t num_blocks() const { return blocks_.size(); }
  const ChainComplex& block(std::size_t b) const { return blocks_[b].cx; }

private:
  struct Block {
    int horizontal;
    ChainComplex cx;
    std::string label;
  };
  struct Face {
    std::size_t from, to;
    ChainMap f;
    int coefficient;
  };
  Totalization kind_;
  std::vector<Block> blocks_;
  std::vector<Face> faces_;
  std::map<std::pair<std::size_t, int>, std::size_t> offset_; // (block, internal) -> offset in total degree
};

} // namespace weylglue
