#include "weylglue/chainalg.hpp"

#include "weylglue/error.hpp"

#include <algorithm>
#include <numeric>

namespace weylglue {

namespace {

void sort_and_merge(SparseVec& v)
{
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SparseVec out;
  out.reserve(v.size());
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, std::move(c));
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  v = std::move(out);
}

void invariant(bool ok, const std::string& what)
{
  if (!ok)
    throw Error(ErrorKind::kInvariantViolation, what);
}

} // namespace

void axpy(SparseVec& v, const Q& c, const SparseVec& w)
{
  if (c == 0 || w.empty())
    return;
  SparseVec out;
  out.reserve(v.size() + w.size());
  auto i = v.begin();
  auto j = w.begin();
  while (i != v.end() || j != w.end()) {
    if (j == w.end() || (i != v.end() && i->first < j->first)) {
      out.push_back(std::move(*i));
      ++i;
    } else if (i == v.end() || j->first < i->first) {
      out.emplace_back(j->first, c * j->second);
      ++j;
    } else {
      Q s = i->second + c * j->second;
      if (s != 0)
        out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

SparseMatrix SparseMatrix::zero(std::size_t rows, std::size_t cols)
{
  return SparseMatrix{rows, cols, std::vector<SparseVec>(cols)};
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
  SparseMatrix m = zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.columns[i].emplace_back(static_cast<std::uint32_t>(i), Q(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const QMatrix& d, std::size_t cols_if_empty)
{
  const std::size_t rows = d.size();
  const std::size_t cols = rows ? d[0].size() : cols_if_empty;
  SparseMatrix m = zero(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (d[i][j] != 0)
        m.columns[j].emplace_back(static_cast<std::uint32_t>(i), d[i][j]);
  return m;
}

QMatrix SparseMatrix::to_dense() const
{
  QMatrix d(rows, QVector(cols));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [i, c] : columns[j])
      d[i][j] = c;
  return d;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const
{
  SparseVec out;
  for (const auto& [j, c] : v)
    axpy(out, c, columns[j]);
  return out;
}

bool SparseMatrix::is_zero() const
{
  return std::all_of(columns.begin(), columns.end(), [](const SparseVec& c) { return c.empty(); });
}

std::size_t SparseMatrix::nnz() const
{
  std::size_t n = 0;
  for (const auto& c : columns)
    n += c.size();
  return n;
}

void SparseMatrix::set(std::size_t row, std::size_t col, const Q& value)
{
  auto& c = columns[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
  if (it != c.end() && it->first == row) {
    if (value == 0)
      c.erase(it);
    else
      it->second = value;
  } else if (value != 0) {
    c.insert(it, {static_cast<std::uint32_t>(row), value});
  }
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
  if (a.cols != b.rows)
    throw Error(ErrorKind::kInvalidArgument, "matrix product: shape mismatch");
  SparseMatrix out = SparseMatrix::zero(a.rows, b.cols);
  for (std::size_t j = 0; j < b.cols; ++j)
    out.columns[j] = a.apply(b.columns[j]);
  return out;
}

SparseMatrix transpose(const SparseMatrix& m)
{
  SparseMatrix t = SparseMatrix::zero(m.cols, m.rows);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (const auto& [i, c] : m.columns[j])
      t.columns[i].emplace_back(static_cast<std::uint32_t>(j), c);
  return t;
}

SparseMatrix scaled(SparseMatrix m, const Q& c)
{
  if (c == 0)
    return SparseMatrix::zero(m.rows, m.cols);
  for (auto& col : m.columns)
    for (auto& e : col)
      e.second *= c;
  return m;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b)
{
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(ErrorKind::kInvalidArgument, "matrix sum: shape mismatch");
  SparseMatrix out = a;
  for (std::size_t j = 0; j < a.cols; ++j)
    axpy(out.columns[j], Q(1), b.columns[j]);
  return out;
}

// ---------------------------------------------------------------------------

ChainComplex::ChainComplex(int min_degree, std::vector<std::vector<std::string>> bases,
                           std::vector<SparseMatrix> boundaries)
    : min_degree_(min_degree), bases_(std::move(bases)), boundaries_(std::move(boundaries))
{
  if (boundaries_.size() > bases_.size())
    throw Error(ErrorKind::kInvalidArgument, "more boundary maps than degrees");
  for (std::size_t k = boundaries_.size(); k < bases_.size(); ++k)
    boundaries_.push_back(SparseMatrix::zero(k ? bases_[k - 1].size() : 0, bases_[k].size()));
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const std::size_t rows = k ? bases_[k - 1].size() : 0;
    if (boundaries_[k].cols != bases_[k].size() || boundaries_[k].rows != rows ||
        boundaries_[k].columns.size() != boundaries_[k].cols)
      throw Error(ErrorKind::kInvariantViolation,
                  "boundary shape mismatch in degree " + std::to_string(min_degree_ + static_cast<int>(k)));
  }
}

ChainComplex ChainComplex::concentrated(int degree, std::size_t dim, const std::string& prefix)
{
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < dim; ++i)
    basis.push_back(prefix + std::to_string(i));
  return ChainComplex(degree, {basis});
}

std::size_t ChainComplex::dim(int n) const
{
  if (n < min_degree_ || n > max_degree())
    return 0;
  return bases_[static_cast<std::size_t>(n - min_degree_)].size();
}

std::size_t ChainComplex::total_dimension() const
{
  std::size_t s = 0;
  for (const auto& b : bases_)
    s += b.size();
  return s;
}

const std::vector<std::string>& ChainComplex::basis(int n) const
{
  static const std::vector<std::string> kEmpty;
  if (n < min_degree_ || n > max_degree())
    return kEmpty;
  return bases_[static_cast<std::size_t>(n - min_degree_)];
}

const SparseMatrix* ChainComplex::boundary_ptr(int n) const
{
  if (n <= min_degree_ || n > max_degree())
    return nullptr;
  return &boundaries_[static_cast<std::size_t>(n - min_degree_)];
}

SparseMatrix ChainComplex::boundary(int n) const
{
  if (auto p = boundary_ptr(n))
    return *p;
  return SparseMatrix::zero(dim(n - 1), dim(n));
}

void ChainComplex::validate() const
{
  for (int n = min_degree_ + 2; n <= max_degree(); ++n) {
    const SparseMatrix dd = multiply(*boundary_ptr(n - 1), *boundary_ptr(n));
    invariant(dd.is_zero(), "d∘d != 0 at degree " + std::to_string(n));
  }
}

long ChainComplex::euler_characteristic() const
{
  long chi = 0;
  for (int n = min_degree_; n <= max_degree(); ++n)
    chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(dim(n));
  return chi;
}

// ---------------------------------------------------------------------------

SparseMatrix ChainMap::at(int n, std::size_t rows, std::size_t cols) const
{
  auto it = parts.find(n);
  if (it == parts.end())
    return SparseMatrix::zero(rows, cols);
  if (it->second.rows != rows || it->second.cols != cols)
    throw Error(ErrorKind::kInvariantViolation, "chain map component has wrong shape in degree " + std::to_string(n));
  return it->second;
}

ChainMap ChainMap::identity(const ChainComplex& c)
{
  ChainMap f;
  if (c.empty())
    return f;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n)
    f.parts[n] = SparseMatrix::identity(c.dim(n));
  return f;
}

bool is_chain_map(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f)
{
  for (const auto& [n, m] : f.parts)
    if (m.cols != src.dim(n) || m.rows != dst.dim(n))
      return false;
  if (src.empty())
    return true;
  for (int n = src.min_degree(); n <= src.max_degree() + 1; ++n) {
    // d_D f_n = f_{n-1} d_C
    const SparseMatrix lhs = multiply(dst.boundary(n), f.at(n, dst.dim(n), src.dim(n)));
    const SparseMatrix rhs = multiply(f.at(n - 1, dst.dim(n - 1), src.dim(n - 1)), src.boundary(n));
    if (!(lhs == rhs))
      return false;
  }
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& src, const ChainComplex& mid,
                 const ChainComplex& dst)
{
  ChainMap out;
  if (src.empty())
    return out;
  for (int n = src.min_degree(); n <= src.max_degree(); ++n) {
    SparseMatrix m =
        multiply(g.at(n, dst.dim(n), mid.dim(n)), f.at(n, mid.dim(n), src.dim(n)));
    if (!m.is_zero())
      out.parts[n] = std::move(m);
  }
  return out;
}

ChainMap negate(ChainMap f)
{
  for (auto& [n, m] : f.parts)
    m = scaled(std::move(m), Q(-1));
  return f;
}

ChainComplex shift(const ChainComplex& c, int k)
{
  if (c.empty())
    return c;
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> bds;
  const Q s = (k % 2 == 0) ? 1 : -1;
  for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
    bases.push_back(c.basis(n));
    bds.push_back(scaled(c.boundary(n), s));
  }
  return ChainComplex(c.min_degree() + k, std::move(bases), std::move(bds));
}

namespace {

// Block layout for complexes whose degree n space is a concatenation of pieces.
struct Range {
  int lo = 0, hi = -1;
};

Range joint_range(std::initializer_list<std::pair<const ChainComplex*, int>> parts)
{
  Range r{0, -1};
  bool first = true;
  for (auto [c, off] : parts) {
    if (c->empty())
      continue;
    int lo = c->min_degree() + off, hi = c->max_degree() + off;
    if (first) {
      r = {lo, hi};
      first = false;
    } else {
      r.lo = std::min(r.lo, lo);
      r.hi = std::max(r.hi, hi);
    }
  }
  return r;
}

void append_shifted(SparseVec& out, const SparseVec& v, std::size_t offset, const Q& coef)
{
  for (const auto& [i, c] : v)
    out.emplace_back(static_cast<std::uint32_t>(i + offset), coef * c);
}

} // namespace

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b)
{
  Range r = joint_range({{&a, 0}, {&b, 0}});
  if (r.hi < r.lo)
    return {};
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> bds;
  for (int n = r.lo; n <= r.hi; ++n) {
    std::vector<std::string> basis = a.basis(n);
    basis.insert(basis.end(), b.basis(n).begin(), b.basis(n).end());
    SparseMatrix d = SparseMatrix::zero(a.dim(n - 1) + b.dim(n - 1), a.dim(n) + b.dim(n));
    if (n > r.lo) {
      const SparseMatrix da = a.boundary(n), db = b.boundary(n);
      for (std::size_t j = 0; j < a.dim(n); ++j)
        d.columns[j] = da.columns[j];
      for (std::size_t j = 0; j < b.dim(n); ++j)
        append_shifted(d.columns[a.dim(n) + j], db.columns[j], a.dim(n - 1), Q(1));
    } else {
      d.rows = 0;
    }
    bases.push_back(std::move(basis));
    bds.push_back(std::move(d));
  }
  return ChainComplex(r.lo, std::move(bases), std::move(bds));
}

ChainComplex mapping_cone(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f)
{
  if (!is_chain_map(src, dst, f))
    throw Error(ErrorKind::kInvariantViolation, "mapping cone of a non-chain map");
  Range r = joint_range({{&src, 1}, {&dst, 0}});
  if (r.hi < r.lo)
    return {};
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> bds;
  for (int n = r.lo; n <= r.hi; ++n) {
    // Cone_n = C_{n-1} ⊕ D_n
    std::vector<std::string> basis;
    for (const auto& l : src.basis(n - 1))
      basis.push_back("c:" + l);
    for (const auto& l : dst.basis(n))
      basis.push_back("d:" + l);
    const std::size_t rows = n > r.lo ? src.dim(n - 2) + dst.dim(n - 1) : 0;
    SparseMatrix d = SparseMatrix::zero(rows, basis.size());
    if (n > r.lo) {
      const SparseMatrix dc = src.boundary(n - 1);
      const SparseMatrix fn = f.at(n - 1, dst.dim(n - 1), src.dim(n - 1));
      const SparseMatrix dd = dst.boundary(n);
      for (std::size_t j = 0; j < src.dim(n - 1); ++j) {
        SparseVec col;
        append_shifted(col, dc.columns[j], 0, Q(-1));
        append_shifted(col, fn.columns[j], src.dim(n - 2), Q(1));
        d.columns[j] = std::move(col);
      }
      for (std::size_t j = 0; j < dst.dim(n); ++j)
        append_shifted(d.columns[src.dim(n - 1) + j], dd.columns[j], src.dim(n - 2), Q(1));
    }
    bases.push_back(std::move(basis));
    bds.push_back(std::move(d));
  }
  return ChainComplex(r.lo, std::move(bases), std::move(bds));
}

ChainComplex fiber(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f)
{
  if (!is_chain_map(src, dst, f))
    throw Error(ErrorKind::kInvariantViolation, "fiber of a non-chain map");
  Range r = joint_range({{&src, 0}, {&dst, -1}});
  if (r.hi < r.lo)
    return {};
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> bds;
  for (int n = r.lo; n <= r.hi; ++n) {
    // Fib_n = C_n ⊕ D_{n+1}
    std::vector<std::string> basis;
    for (const auto& l : src.basis(n))
      basis.push_back("c:" + l);
    for (const auto& l : dst.basis(n + 1))
      basis.push_back("d:" + l);
    const std::size_t rows = n > r.lo ? src.dim(n - 1) + dst.dim(n) : 0;
    SparseMatrix d = SparseMatrix::zero(rows, basis.size());
    if (n > r.lo) {
      const SparseMatrix dc = src.boundary(n);
      const SparseMatrix fn = f.at(n, dst.dim(n), src.dim(n));
      const SparseMatrix dd = dst.boundary(n + 1);
      for (std::size_t j = 0; j < src.dim(n); ++j) {
        SparseVec col;
        append_shifted(col, dc.columns[j], 0, Q(1));
        append_shifted(col, fn.columns[j], src.dim(n - 1), Q(1));
        d.columns[j] = std::move(col);
      }
      for (std::size_t j = 0; j < dst.dim(n + 1); ++j)
        append_shifted(d.columns[src.dim(n) + j], dd.columns[j], src.dim(n - 1), Q(-1));
    }
    bases.push_back(std::move(basis));
    bds.push_back(std::move(d));
  }
  return ChainComplex(r.lo, std::move(bases), std::move(bds));
}

// ---------------------------------------------------------------------------

HomLayout::HomLayout(const ChainComplex& a, const ChainComplex& b) : a_(&a), b_(&b)
{
  if (a.empty() || b.empty())
    return;
  min_ = b.min_degree() - a.max_degree();
  max_ = b.max_degree() - a.min_degree();
  for (int m = min_; m <= max_; ++m) {
    std::size_t off = 0;
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      offset_[{m, p}] = off;
      off += a.dim(p) * b.dim(p + m);
    }
    dims_[m] = off;
  }
}

std::size_t HomLayout::dim(int m) const
{
  auto it = dims_.find(m);
  return it == dims_.end() ? 0 : it->second;
}

std::size_t HomLayout::index(int m, int p, std::size_t a, std::size_t b) const
{
  return offset_.at({m, p}) + a * b_->dim(p + m) + b;
}

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b)
{
  HomLayout lay(a, b);
  if (a.empty() || b.empty())
    return {};
  std::vector<std::vector<std::string>> bases;
  std::vector<SparseMatrix> bds;
  // Row access to d_A: for a in A_p, the pairs (a', c) with d a' = ... + c a.
  std::map<int, SparseMatrix> dA_t;
  for (int p = a.min_degree(); p <= a.max_degree(); ++p)
    dA_t[p] = transpose(a.boundary(p + 1));
  for (int m = lay.min_degree(); m <= lay.max_degree(); ++m) {
    std::vector<std::string> basis(lay.dim(m));
    SparseMatrix d = SparseMatrix::zero(m > lay.min_degree() ? lay.dim(m - 1) : 0, lay.dim(m));
    const Q sgn = (m % 2 == 0) ? -1 : 1; // -(-1)^m
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      const auto& abasis = a.basis(p);
      const auto& bbasis = b.basis(p + m);
      if (abasis.empty() || bbasis.empty())
        continue;
      const SparseMatrix dB = b.boundary(p + m);
      for (std::size_t ia = 0; ia < abasis.size(); ++ia)
        for (std::size_t ib = 0; ib < bbasis.size(); ++ib) {
          const std::size_t col = lay.index(m, p, ia, ib);
          basis[col] = "hom(" + abasis[ia] + "," + bbasis[ib] + ")";
          if (m == lay.min_degree())
            continue;
          SparseVec v;
          // d_B ∘ E(b,a): a -> d b in B_{p+m-1}
          for (const auto& [ib2, c] : dB.columns[ib])
            v.emplace_back(static_cast<std::uint32_t>(lay.index(m - 1, p, ia, ib2)), c);
          // E(b,a) ∘ d_A: a' in A_{p+1} with coefficient of a in d a'
          if (p + 1 <= a.max_degree())
            for (const auto& [ia2, c] : dA_t[p].columns[ia])
              v.emplace_back(static_cast<std::uint32_t>(lay.index(m - 1, p + 1, ia2, ib)), sgn * c);
          sort_and_merge(v);
          d.columns[col] = std::move(v);
        }
    }
    bases.push_back(std::move(basis));
    bds.push_back(std::move(d));
  }
  return ChainComplex(lay.min_degree(), std::move(bases), std::move(bds));
}

ChainMap precompose_map(const ChainComplex& a, const ChainComplex& b, const ChainComplex& a2, const ChainMap& g)
{
  HomLayout from(a, b), to(a2, b);
  ChainMap out;
  if (a.empty() || b.empty() || a2.empty())
    return out;
  for (int m = from.min_degree(); m <= from.max_degree(); ++m) {
    SparseMatrix mat = SparseMatrix::zero(to.dim(m), from.dim(m));
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      if (b.dim(p + m) == 0 || a.dim(p) == 0 || a2.dim(p) == 0)
        continue;
      // (E(b,a) ∘ g)(a2) = g_{a,a2} b
      const SparseMatrix gt = transpose(g.at(p, a.dim(p), a2.dim(p)));
      for (std::size_t ia = 0; ia < a.dim(p); ++ia)
        for (std::size_t ib = 0; ib < b.dim(p + m); ++ib) {
          SparseVec v;
          for (const auto& [ia2, c] : gt.columns[ia])
            v.emplace_back(static_cast<std::uint32_t>(to.index(m, p, ia2, ib)), c);
          sort_and_merge(v);
          mat.columns[from.index(m, p, ia, ib)] = std::move(v);
        }
    }
    if (!mat.is_zero())
      out.parts[m] = std::move(mat);
  }
  return out;
}

ChainMap postcompose_map(const ChainComplex& a, const ChainComplex& b, const ChainComplex& b2, const ChainMap& h)
{
  HomLayout from(a, b), to(a, b2);
  ChainMap out;
  if (a.empty() || b.empty() || b2.empty())
    return out;
  for (int m = from.min_degree(); m <= from.max_degree(); ++m) {
    SparseMatrix mat = SparseMatrix::zero(to.dim(m), from.dim(m));
    for (int p = a.min_degree(); p <= a.max_degree(); ++p) {
      const int q = p + m;
      if (b.dim(q) == 0 || a.dim(p) == 0 || b2.dim(q) == 0)
        continue;
      const SparseMatrix hq = h.at(q, b2.dim(q), b.dim(q));
      for (std::size_t ia = 0; ia < a.dim(p); ++ia)
        for (std::size_t ib = 0; ib < b.dim(q); ++ib) {
          SparseVec v;
          for (const auto& [ib2, c] : hq.columns[ib])
            v.emplace_back(static_cast<std::uint32_t>(to.index(m, p, ia, ib2)), c);
          sort_and_merge(v);
          mat.columns[from.index(m, p, ia, ib)] = std::move(v);
        }
    }
    if (!mat.is_zero())
      out.parts[m] = std::move(mat);
  }
  return out;
}

// ---------------------------------------------------------------------------

void Echelon::reduce(SparseVec& v) const
{
  while (!v.empty()) {
    const auto p = v.back().first;
    const auto k = owner_[p];
    if (k < 0)
      return;
    const SparseVec& w = vectors_[static_cast<std::size_t>(k)];
    Q c = -v.back().second / w.back().second;
    axpy(v, c, w);
  }
}

bool Echelon::insert(SparseVec v)
{
  reduce(v);
  if (v.empty())
    return false;
  owner_[v.back().first] = static_cast<std::int64_t>(vectors_.size());
  vectors_.push_back(std::move(v));
  return true;
}

std::size_t Homology::betti_at(int n) const
{
  if (n < min_degree || n > max_degree())
    return 0;
  return betti[static_cast<std::size_t>(n - min_degree)];
}

bool Homology::is_acyclic() const
{
  return std::all_of(betti.begin(), betti.end(), [](std::size_t b) { return b == 0; });
}

std::vector<Q> Homology::coordinates(int n, const SparseVec& cycle) const
{
  const std::size_t h = betti_at(n);
  std::vector<Q> coords(h);
  if (h == 0)
    return coords; // every cycle is a boundary
  const DegreeData& dd = data_[static_cast<std::size_t>(n - min_degree)];
  SparseVec v = cycle;
  while (!v.empty()) {
    const auto p = v.back().first;
    if (dd.boundaries.owner_[p] >= 0) {
      const SparseVec& w = dd.boundaries.vectors_[static_cast<std::size_t>(dd.boundaries.owner_[p])];
      axpy(v, -v.back().second / w.back().second, w);
    } else if (dd.reps.owner_[p] >= 0) {
      const auto k = static_cast<std::size_t>(dd.reps.owner_[p]);
      const SparseVec& w = dd.reps.vectors_[k];
      Q c = v.back().second / w.back().second;
      for (std::size_t i = 0; i < h; ++i)
        coords[i] += c * dd.tracks[k][i];
      axpy(v, -c, w);
    } else {
      throw Error(ErrorKind::kInvariantViolation, "vector is not a cycle in degree " + std::to_string(n));
    }
  }
  return coords;
}

namespace {

struct ReducedBoundary {
  Echelon image;          // reduced nonzero columns, pivot = largest row index
  std::vector<char> kills; // columns of C_n (source) that are pivots of the next boundary
};

// Column reduction of d_n restricted to columns not cleared. Returns the reduced columns.
Echelon reduce_columns(const SparseMatrix& d, const std::vector<char>& cleared)
{
  Echelon e(d.rows);
  for (std::size_t j = 0; j < d.cols; ++j) {
    if (!cleared.empty() && cleared[j])
      continue;
    if (d.columns[j].empty())
      continue;
    e.insert(d.columns[j]);
  }
  return e;
}

} // namespace

Homology compute_homology(const ChainComplex& cx, bool with_representatives)
{
  Homology h;
  if (cx.empty())
    return h;
  const int lo = cx.min_degree(), hi = cx.max_degree();
  h.min_degree = lo;
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  h.betti.assign(count, 0);
  h.representatives.assign(count, {});
  h.data_.resize(count);

  // images[k] = echelon basis of im d_{lo+k+1} inside C_{lo+k}
  std::vector<Echelon> images(count);
  std::vector<std::size_t> ranks(count + 1, 0); // ranks[k] = rank of d_{lo+k}
  std::vector<char> cleared;
  for (int n = hi + 1; n > lo; --n) {
    const std::size_t k = static_cast<std::size_t>(n - 1 - lo); // target degree index
    if (n <= hi) {
      const SparseMatrix* d = cx.boundary_ptr(n);
      images[k] = reduce_columns(*d, cleared);
    } else {
      images[k] = Echelon(cx.dim(hi));
    }
    ranks[k + 1] = images[k].size();
    // Columns of C_{n-1} that are pivots of im d_n reduce to zero under d_{n-1}.
    cleared.assign(cx.dim(n - 1), 0);
    for (const auto& v : images[k].vectors())
      cleared[v.back().first] = 1;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const int n = lo + static_cast<int>(k);
    const std::size_t rank_out = k == 0 ? 0 : ranks[k];
    h.betti[k] = cx.dim(n) - rank_out - ranks[k + 1];
  }
  if (!with_representatives)
    return h;

  for (std::size_t k = 0; k < count; ++k) {
    const int n = lo + static_cast<int>(k);
    auto& dd = h.data_[k];
    dd.boundaries = std::move(images[k]);
    dd.reps = Echelon(cx.dim(n));
    const std::size_t want = h.betti[k];
    if (want == 0)
      continue;

    auto try_add = [&](SparseVec z) {
      SparseVec v = z;
      std::vector<Q> coords(want);
      while (!v.empty()) {
        const auto p = v.back().first;
        if (dd.boundaries.owner_[p] >= 0) {
          const SparseVec& w = dd.boundaries.vectors_[static_cast<std::size_t>(dd.boundaries.owner_[p])];
          axpy(v, -v.back().second / w.back().second, w);
        } else if (dd.reps.owner_[p] >= 0) {
          const auto idx = static_cast<std::size_t>(dd.reps.owner_[p]);
          const SparseVec& w = dd.reps.vectors_[idx];
          Q c = v.back().second / w.back().second;
          for (std::size_t i = 0; i < want; ++i)
            coords[i] += c * dd.tracks[idx][i];
          axpy(v, -c, w);
        } else {
          break;
        }
      }
      if (v.empty())
        return;
      // stored = z - Σ c_k stored_k  (mod boundaries)
      const std::size_t m = h.representatives[k].size();
      std::vector<Q> track(want);
      for (std::size_t i = 0; i < want; ++i)
        track[i] = -coords[i];
      track[m] += 1;
      dd.reps.owner_[v.back().first] = static_cast<std::int64_t>(dd.reps.vectors_.size());
      dd.reps.vectors_.push_back(std::move(v));
      dd.tracks.push_back(std::move(track));
      h.representatives[k].push_back(std::move(z));
    };

    const SparseMatrix* d = cx.boundary_ptr(n);
    if (d == nullptr || d->is_zero()) {
      for (std::size_t j = 0; j < cx.dim(n) && h.representatives[k].size() < want; ++j)
        if (!dd.boundaries.is_pivot(j))
          try_add(SparseVec{{static_cast<std::uint32_t>(j), Q(1)}});
      continue;
    }

    // Kernel vectors of d_n from column reduction with tracked column operations.
    Echelon reduced(d->rows);
    std::vector<SparseVec> ops;
    for (std::size_t j = 0; j < d->cols && h.representatives[k].size() < want; ++j) {
      if (dd.boundaries.is_pivot(j))
        continue; // its kernel vector is a boundary
      SparseVec v = d->columns[j];
      SparseVec track{{static_cast<std::uint32_t>(j), Q(1)}};
      while (!v.empty()) {
        const auto p = v.back().first;
        const auto owner = reduced.owner_[p];
        if (owner < 0)
          break;
        const auto idx = static_cast<std::size_t>(owner);
        Q c = -v.back().second / reduced.vectors_[idx].back().second;
        axpy(v, c, reduced.vectors_[idx]);
        axpy(track, c, ops[idx]);
      }
      if (v.empty()) {
        try_add(std::move(track));
      } else {
        reduced.owner_[v.back().first] = static_cast<std::int64_t>(reduced.vectors_.size());
        reduced.vectors_.push_back(std::move(v));
        ops.push_back(std::move(track));
      }
    }
    if (h.representatives[k].size() != want)
      throw Error(ErrorKind::kInvariantViolation, "homology representative search failed in degree " +
                                                      std::to_string(n));
  }
  return h;
}

std::vector<std::size_t> betti_numbers(const ChainComplex& cx)
{
  return compute_homology(cx, false).betti;
}

std::map<int, std::size_t> betti_profile(const ChainComplex& cx)
{
  const Homology h = compute_homology(cx, false);
  std::map<int, std::size_t> out;
  for (std::size_t k = 0; k < h.betti.size(); ++k)
    if (h.betti[k] != 0)
      out[h.min_degree + static_cast<int>(k)] = h.betti[k];
  return out;
}

bool is_acyclic(const ChainComplex& cx)
{
  return compute_homology(cx, false).is_acyclic();
}

bool is_quasi_isomorphism(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f)
{
  if (!is_chain_map(src, dst, f))
    return false;
  return is_acyclic(mapping_cone(src, dst, f));
}

// ---------------------------------------------------------------------------

SignedPermutation SignedPermutation::identity(std::size_t n)
{
  SignedPermutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), std::uint32_t{0});
  p.sign.assign(n, 1);
  return p;
}

SparseVec SignedPermutation::apply(const SparseVec& v) const
{
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, c] : v)
    out.emplace_back(image[i], sign[i] < 0 ? Q(-c) : c);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::int64_t SignedPermutation::trace() const
{
  std::int64_t t = 0;
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] == i)
      t += sign[i];
  return t;
}

const SignedPermutation* GroupAction::at(std::size_t g, int n) const
{
  const auto& per = action.at(g);
  if (n < min_degree || n >= min_degree + static_cast<int>(per.size()))
    return nullptr;
  return &per[static_cast<std::size_t>(n - min_degree)];
}

bool is_chain_action(const ChainComplex& cx, const GroupAction& act, std::vector<std::size_t> elements)
{
  if (elements.empty()) {
    elements.resize(act.group_order());
    std::iota(elements.begin(), elements.end(), std::size_t{0});
  }
  if (cx.empty())
    return true;
  for (std::size_t g : elements) {
    for (int n = cx.min_degree(); n <= cx.max_degree(); ++n) {
      const SignedPermutation* gn = act.at(g, n);
      if (!gn || gn->image.size() != cx.dim(n))
        return false;
      const SparseMatrix* d = cx.boundary_ptr(n);
      if (!d)
        continue;
      const SignedPermutation* gm = act.at(g, n - 1);
      if (!gm)
        return false;
      for (std::size_t j = 0; j < cx.dim(n); ++j) {
        // d(g e_j) == g(d e_j)
        SparseVec ge{{gn->image[j], Q(gn->sign[j])}};
        if (d->apply(ge) != gm->apply(d->columns[j]))
          return false;
      }
    }
  }
  return true;
}

bool respects_multiplication(const WeylGroup& W, const GroupAction& act)
{
  if (act.group_order() != W.order())
    return false;
  for (Elem w = 0; w < W.order(); ++w)
    for (std::size_t i = 0; i < W.rank(); ++i) {
      const Elem s = W.generator(i);
      const Elem sw = W.mul_gen_left(i, w);
      const auto& as = act.action[s];
      const auto& aw = act.action[w];
      const auto& asw = act.action[sw];
      for (std::size_t k = 0; k < aw.size(); ++k)
        for (std::size_t b = 0; b < aw[k].image.size(); ++b) {
          const auto mid = aw[k].image[b];
          if (as[k].image[mid] != asw[k].image[b] || as[k].sign[mid] * aw[k].sign[b] != asw[k].sign[b])
            return false;
        }
    }
  return true;
}

ClassFunction ClassFunction::trivial(const WeylGroup& W)
{
  return ClassFunction{std::vector<Q>(W.order(), Q(1))};
}

ClassFunction ClassFunction::sign(const WeylGroup& W)
{
  ClassFunction f;
  f.values.reserve(W.order());
  for (Elem w = 0; w < W.order(); ++w)
    f.values.emplace_back(W.sign(w));
  return f;
}

bool ClassFunction::is_constant_on_classes(const WeylGroup& W) const
{
  if (values.size() != W.order())
    return false;
  // Conjugation by generators generates conjugation by W.
  for (Elem w = 0; w < W.order(); ++w)
    for (std::size_t i = 0; i < W.rank(); ++i)
      if (values[W.mul_gen_right(W.mul_gen_left(i, w), i)] != values[w])
        return false;
  return true;
}

ClassFunction ClassFunction::operator+(const ClassFunction& other) const
{
  ClassFunction out = *this;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += other.values[i];
  return out;
}

Q multiplicity(const ClassFunction& chi, const ClassFunction& psi, const WeylGroup& W)
{
  if (chi.values.size() != W.order() || psi.values.size() != W.order())
    throw Error(ErrorKind::kInvalidArgument, "class function has wrong length");
  Q sum = 0;
  for (std::size_t i = 0; i < W.order(); ++i)
    sum += chi.values[i] * psi.values[i];
  return sum / static_cast<unsigned long>(W.order());
}

HomologyCharacters homology_character(const ChainComplex& cx, const GroupAction& act,
                                      const std::vector<std::size_t>& verify_on)
{
  if (!is_chain_action(cx, act, verify_on))
    throw Error(ErrorKind::kInvariantViolation, "group action is not by chain maps");
  HomologyCharacters out;
  out.homology = compute_homology(cx, true);
  if (cx.empty())
    return out;
  const std::size_t g_count = act.group_order();
  for (int n = cx.min_degree(); n <= cx.max_degree(); ++n) {
    ClassFunction chi{std::vector<Q>(g_count)};
    ClassFunction chain{std::vector<Q>(g_count)};
    const auto& reps = out.homology.representatives[static_cast<std::size_t>(n - cx.min_degree())];
    for (std::size_t g = 0; g < g_count; ++g) {
      const SignedPermutation* gn = act.at(g, n);
      chain.values[g] = gn->trace();
      for (std::size_t i = 0; i < reps.size(); ++i)
        chi.values[g] += out.homology.coordinates(n, gn->apply(reps[i]))[i];
    }
    out.characters.push_back(std::move(chi));
    out.chain_traces.push_back(std::move(chain));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t TotalComplexBuilder::add_block(int horizontal, ChainComplex cx, std::string label)
{
  blocks_.push_back(Block{horizontal, std::move(cx), std::move(label)});
  return blocks_.size() - 1;
}

void TotalComplexBuilder::add_map(std::size_t from, std::size_t to, ChainMap f, int coefficient)
{
  const int step = blocks_[to].horizontal - blocks_[from].horizontal;
  const int expected = kind_ == Totalization::kSimplicial ? -1 : 1;
  if (step != expected)
    throw Error(ErrorKind::kInvalidArgument, "face map changes horizontal degree incorrectly");
  faces_.push_back(Face{from, to, std::move(f), coefficient});
}

int TotalComplexBuilder::total_degree(std::size_t block, int internal) const
{
  const int h = blocks_[block].horizontal;
  return kind_ == Totalization::kSimplicial ? internal + h : internal - h;
}

std::size_t TotalComplexBuilder::global_index(std::size_t block, int internal, std::size_t local) const
{
  return offset_.at({block, internal}) + local;
}

ChainComplex TotalComplexBuilder::build()
{
  offset_.clear();
  int lo = 0, hi = -1;
  bool any = false;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& cx = blocks_[b].cx;
    if (cx.empty())
      continue;
    for (int m = cx.min_degree(); m <= cx.max_degree(); ++m) {
      if (cx.dim(m) == 0)
        continue;
      const int t = total_degree(b, m);
      if (!any) {
        lo = hi = t;
        any = true;
      }
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  if (!any)
    return {};

  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::vector<std::string>> bases(count);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& cx = blocks_[b].cx;
    if (cx.empty())
      continue;
    for (int m = cx.min_degree(); m <= cx.max_degree(); ++m) {
      if (cx.dim(m) == 0)
        continue;
      auto& basis = bases[static_cast<std::size_t>(total_degree(b, m) - lo)];
      offset_[{b, m}] = basis.size();
      for (const auto& l : cx.basis(m))
        basis.push_back(blocks_[b].label + "|" + l);
    }
  }

  std::vector<std::vector<std::size_t>> faces_from(blocks_.size());
  for (std::size_t f = 0; f < faces_.size(); ++f)
    faces_from[faces_[f].from].push_back(f);

  std::vector<SparseMatrix> bds(count);
  for (std::size_t k = 0; k < count; ++k)
    bds[k] = SparseMatrix::zero(k ? bases[k - 1].size() : 0, bases[k].size());

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& cx = blocks_[b].cx;
    if (cx.empty())
      continue;
    const int h = blocks_[b].horizontal;
    for (int m = cx.min_degree(); m <= cx.max_degree(); ++m) {
      if (cx.dim(m) == 0)
        continue;
      const int t = total_degree(b, m);
      if (t == lo)
        continue; // nothing below the bottom degree
      auto& target = bds[static_cast<std::size_t>(t - lo)];
      const Q sigma_int = kind_ == Totalization::kSimplicial ? Q(h % 2 == 0 ? 1 : -1) : Q(1);
      const Q sigma_face = kind_ == Totalization::kSimplicial ? Q(1) : Q(m % 2 == 0 ? 1 : -1);
      const SparseMatrix d = cx.boundary(m);
      for (std::size_t j = 0; j < cx.dim(m); ++j) {
        SparseVec col;
        if (cx.dim(m - 1) > 0) {
          const std::size_t off = offset_.at({b, m - 1});
          append_shifted(col, d.columns[j], off, sigma_int);
        }
        for (std::size_t fi : faces_from[b]) {
          const Face& face = faces_[fi];
          const auto& tcx = blocks_[face.to].cx;
          if (tcx.dim(m) == 0)
            continue;
          const auto it = face.f.parts.find(m);
          if (it == face.f.parts.end())
            continue;
          if (it->second.cols != cx.dim(m) || it->second.rows != tcx.dim(m))
            throw Error(ErrorKind::kInvariantViolation, "face map has wrong shape");
          const std::size_t off = offset_.at({face.to, m});
          append_shifted(col, it->second.columns[j], off, sigma_face * face.coefficient);
        }
        sort_and_merge(col);
        target.columns[offset_.at({b, m}) + j] = std::move(col);
      }
    }
  }
  return ChainComplex(lo, std::move(bases), std::move(bds));
}

} // namespace weylglue
