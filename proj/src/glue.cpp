#include "weylglue/glue.hpp"

#include "weylglue/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

namespace weylglue {

namespace {

std::string chain_label(const FinitePoset& p, const Chain& c)
{
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i)
    s += (i ? "<" : "") + p.label(c[i]);
  return s;
}

Chain without(const Chain& c, std::size_t p)
{
  Chain out = c;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(p));
  return out;
}

// Degree range covering both complexes.
std::pair<int, int> degree_span(const ChainComplex& a, const ChainComplex& b)
{
  if (a.empty() && b.empty())
    return {0, -1};
  if (a.empty())
    return {b.min_degree(), b.max_degree()};
  if (b.empty())
    return {a.min_degree(), a.max_degree()};
  return {std::min(a.min_degree(), b.min_degree()), std::max(a.max_degree(), b.max_degree())};
}

bool same_map(const ChainMap& f, const ChainMap& g, const ChainComplex& src, const ChainComplex& dst)
{
  auto [lo, hi] = degree_span(src, dst);
  for (int n = lo; n <= hi; ++n)
    if (!(f.at(n, dst.dim(n), src.dim(n)) == g.at(n, dst.dim(n), src.dim(n))))
      return false;
  return true;
}

bool same_complex(const ChainComplex& a, const ChainComplex& b)
{
  auto [lo, hi] = degree_span(a, b);
  for (int n = lo; n <= hi; ++n)
    if (a.dim(n) != b.dim(n) || !(a.boundary(n) == b.boundary(n)))
      return false;
  return true;
}

SparseMatrix block_diag(const std::vector<SparseMatrix>& blocks)
{
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows;
    cols += b.cols;
  }
  SparseMatrix m = SparseMatrix::zero(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.cols; ++j)
      for (const auto& [i, c] : b.columns[j])
        m.columns[c0 + j].emplace_back(static_cast<std::uint32_t>(r0 + i), c);
    r0 += b.rows;
    c0 += b.cols;
  }
  return m;
}

void require_same_diagram(const SetDiagram& a, const SetDiagram& b)
{
  if (a.poset.nodes() != b.poset.nodes() || a.poset.strict_pairs() != b.poset.strict_pairs() || a.sets != b.sets ||
      a.maps != b.maps)
    throw Error(ErrorKind::kInvalidArgument, "lax objects live over different diagrams");
}

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n)
{
  return n == 0 ? 0 : rng() % n;
}

} // namespace

// ---------------------------------------------------------------------------

std::size_t LaxObject::total_dimension() const
{
  std::size_t s = 0;
  for (const auto& node : values)
    for (const auto& v : node)
      s += v.total_dimension();
  return s;
}

void LaxObject::validate() const
{
  const auto& P = diagram.poset;
  if (values.size() != P.size())
    throw Error(ErrorKind::kInvariantViolation, "lax object needs values on every node");
  for (std::size_t a = 0; a < P.size(); ++a)
    if (values[a].size() != diagram.size(a))
      throw Error(ErrorKind::kInvariantViolation, "lax object needs a value for every element at " + P.label(a));
  for (auto [a, b] : P.strict_pairs()) {
    auto it = structure.find({a, b});
    if (it == structure.end() || it->second.size() != diagram.size(a))
      throw Error(ErrorKind::kInvariantViolation, "missing structure maps " + P.label(b) + " -> " + P.label(a));
    for (std::uint32_t s = 0; s < diagram.size(a); ++s)
      if (!is_chain_map(value(b, diagram.push(a, b, s)), value(a, s), xi(a, b, s)))
        throw Error(ErrorKind::kInvariantViolation, "structure map " + P.label(b) + " -> " + P.label(a) + " is not a chain map");
  }
  for (auto [a, b] : P.strict_pairs())
    for (std::size_t c = 0; c < P.size(); ++c) {
      if (!P.less(b, c))
        continue;
      for (std::uint32_t s = 0; s < diagram.size(a); ++s) {
        const std::uint32_t sb = diagram.push(a, b, s), sc = diagram.push(a, c, s);
        const ChainMap comp = compose(xi(a, b, s), xi(b, c, sb), value(c, sc), value(b, sb), value(a, s));
        if (!same_map(comp, xi(a, c, s), value(c, sc), value(a, s)))
          throw Error(ErrorKind::kInvariantViolation, "structure maps are not coherent on " + P.label(a) + " < " +
                                                          P.label(b) + " < " + P.label(c));
      }
    }
}

LaxObject unit_object(const SetDiagram& dgm, const ChainComplex& V)
{
  LaxObject x;
  x.diagram = dgm;
  x.values.resize(dgm.poset.size());
  for (std::size_t a = 0; a < dgm.poset.size(); ++a)
    x.values[a].assign(dgm.size(a), V);
  const ChainMap id = ChainMap::identity(V);
  for (auto [a, b] : dgm.poset.strict_pairs())
    x.structure[{a, b}].assign(dgm.size(a), id);
  return x;
}

std::map<int, std::size_t> GlueHomComplex::cohomology() const
{
  std::map<int, std::size_t> out;
  for (auto [n, b] : betti_profile(cx))
    out[-n] = b;
  return out;
}

GlueHomComplex glue_hom(const LaxObject& x, const LaxObject& y)
{
  require_same_diagram(x.diagram, y.diagram);
  const SetDiagram& D = x.diagram;
  const auto chains = D.poset.strict_chains();
  TotalComplexBuilder b(Totalization::kCosimplicial);
  std::map<std::pair<Chain, std::uint32_t>, std::size_t> block;
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (const auto& c : chains[n])
      for (std::uint32_t s = 0; s < D.size(c[0]); ++s) {
        const auto& src = x.value(c.back(), D.push(c[0], c.back(), s));
        const auto& dst = y.value(c[0], s);
        block[{c, s}] = b.add_block(static_cast<int>(n), hom_complex(src, dst),
                                    chain_label(D.poset, c) + "|" + D.sets[c[0]][s]);
      }
  for (std::size_t len = 1; len < chains.size(); ++len)
    for (const auto& c : chains[len]) {
      const std::size_t n = len - 1; // source chains have n + 1 nodes
      for (std::uint32_t s = 0; s < D.size(c[0]); ++s) {
        const std::size_t target = block.at({c, s});
        for (std::size_t p = 0; p <= n + 1; ++p) {
          const Chain cp = without(c, p);
          if (p == n + 1) {
            const std::size_t top = c[n + 1], below = c[n];
            const std::uint32_t s_below = D.push(c[0], below, s);
            const ChainMap f = precompose_map(x.value(below, s_below), y.value(c[0], s),
                                              x.value(top, D.push(c[0], top, s)), x.xi(below, top, s_below));
            b.add_map(block.at({cp, s}), target, f, 1);
          } else if (p == 0) {
            const std::uint32_t t = D.push(c[0], c[1], s);
            const ChainMap f = postcompose_map(x.value(c.back(), D.push(c[1], c.back(), t)), y.value(c[1], t),
                                               y.value(c[0], s), y.xi(c[0], c[1], s));
            b.add_map(block.at({cp, t}), target, f, (n + 1) % 2 == 0 ? 1 : -1);
          } else {
            const std::size_t source = block.at({cp, s});
            b.add_map(source, target, ChainMap::identity(b.block(source)), (n + 1 - p) % 2 == 0 ? 1 : -1);
          }
        }
      }
    }
  GlueHomComplex out;
  out.cx = b.build();
  return out;
}

StringComplex string_left_adjoint(const LaxObject& x)
{
  const SetDiagram& D = x.diagram;
  const auto chains = D.poset.strict_chains();
  StringComplex sc;
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (const auto& c : chains[n])
      for (std::uint32_t s = 0; s < D.size(c[0]); ++s)
        sc.block_of[{c, s}] = sc.builder.add_block(static_cast<int>(n), x.value(c.back(), D.push(c[0], c.back(), s)),
                                                   chain_label(D.poset, c) + "|" + D.sets[c[0]][s]);
  for (std::size_t n = 1; n < chains.size(); ++n)
    for (const auto& c : chains[n])
      for (std::uint32_t s = 0; s < D.size(c[0]); ++s) {
        const std::size_t source = sc.block_of.at({c, s});
        for (std::size_t p = 0; p <= n; ++p) {
          const Chain cp = without(c, p);
          if (p == n) {
            const std::uint32_t s_below = D.push(c[0], c[n - 1], s);
            sc.builder.add_map(source, sc.block_of.at({cp, s}), x.xi(c[n - 1], c[n], s_below), 1);
          } else if (p == 0) {
            sc.builder.add_map(source, sc.block_of.at({cp, D.push(c[0], c[1], s)}),
                               ChainMap::identity(sc.builder.block(source)), n % 2 == 0 ? 1 : -1);
          } else {
            sc.builder.add_map(source, sc.block_of.at({cp, s}), ChainMap::identity(sc.builder.block(source)),
                               (n - p) % 2 == 0 ? 1 : -1);
          }
        }
      }
  sc.cx = sc.builder.build();
  return sc;
}

FFVerdict ff_verdict(const SetDiagram& dgm)
{
  FFVerdict v;
  const HocolimComplex hc = hocolim_complex(dgm);
  v.hocolim_betti = betti_numbers(hc.cx);
  while (!v.hocolim_betti.empty() && v.hocolim_betti.back() == 0)
    v.hocolim_betti.pop_back();
  v.hocolim_is_point = v.hocolim_betti == std::vector<std::size_t>{1};

  const ChainComplex k = ChainComplex::concentrated(0, 1, "k");
  const StringComplex sc = string_left_adjoint(unit_object(dgm, k));
  ChainMap eps;
  if (sc.cx.dim(0) > 0) {
    SparseMatrix m = SparseMatrix::zero(1, sc.cx.dim(0));
    for (std::size_t j = 0; j < sc.cx.dim(0); ++j)
      m.columns[j].emplace_back(0, Q(1));
    eps.parts[0] = std::move(m);
  }
  v.counit_is_iso = is_quasi_isomorphism(sc.cx, k, eps);
  const ChainComplex fib = fiber(sc.cx, k, eps);
  v.defect = betti_profile(fib);

  if (!dgm.action.empty() && !fib.empty()) {
    GroupAction act;
    act.min_degree = fib.min_degree();
    for (std::size_t g = 0; g < dgm.action.size(); ++g) {
      std::vector<SignedPermutation> per;
      for (int n = fib.min_degree(); n <= fib.max_degree(); ++n) {
        SignedPermutation p = SignedPermutation::identity(fib.dim(n));
        for (const auto& [key, blk] : sc.block_of) {
          const auto& [c, s] = key;
          if (static_cast<int>(c.size()) - 1 != n)
            continue;
          const std::size_t to = sc.block_of.at({c, dgm.action[g][c[0]][s]});
          p.image[sc.builder.global_index(blk, 0, 0)] = static_cast<std::uint32_t>(sc.builder.global_index(to, 0, 0));
        }
        per.push_back(std::move(p));
      }
      act.action.push_back(std::move(per));
    }
    const HomologyCharacters hch = homology_character(fib, act);
    for (auto [n, b] : v.defect)
      v.defect_characters[n] = hch.characters[static_cast<std::size_t>(n - hch.homology.min_degree)];
  }
  return v;
}

AdjunctionVerdict adjunction_check(const LaxObject& x, const ChainComplex& d)
{
  if (x.total_dimension() > 64)
    throw Error(ErrorKind::kResourceCap, "adjunction check is limited to lax objects of total dimension 64");
  AdjunctionVerdict v;
  v.left = betti_profile(hom_complex(string_left_adjoint(x).cx, d));
  v.right = betti_profile(glue_hom(x, unit_object(x.diagram, d)).cx);
  return v;
}

// ---------------------------------------------------------------------------

ChainMap PosetSheaf::map(std::size_t x, std::size_t y) const
{
  if (x == y)
    return ChainMap::identity(values[x]);
  return maps.at({x, y});
}

std::size_t PosetSheaf::total_dimension() const
{
  std::size_t s = 0;
  for (const auto& v : values)
    s += v.total_dimension();
  return s;
}

void PosetSheaf::validate() const
{
  if (values.size() != poset.size())
    throw Error(ErrorKind::kInvariantViolation, "sheaf needs a complex on every node");
  for (const auto& v : values)
    v.validate();
  for (auto [x, y] : poset.strict_pairs()) {
    if (!maps.count({x, y}))
      throw Error(ErrorKind::kInvariantViolation, "missing map " + poset.label(x) + " -> " + poset.label(y));
    if (!is_chain_map(values[x], values[y], map(x, y)))
      throw Error(ErrorKind::kInvariantViolation, "map " + poset.label(x) + " -> " + poset.label(y) + " is not a chain map");
  }
  for (auto [x, y] : poset.strict_pairs())
    for (std::size_t z = 0; z < poset.size(); ++z)
      if (poset.less(y, z)) {
        const ChainMap comp = compose(map(y, z), map(x, y), values[x], values[y], values[z]);
        if (!same_map(comp, map(x, z), values[x], values[z]))
          throw Error(ErrorKind::kInvariantViolation, "functoriality fails on " + poset.label(x) + " < " +
                                                          poset.label(y) + " < " + poset.label(z));
      }
}

PosetSheaf restrict_sheaf(const PosetSheaf& f, const std::vector<char>& subset)
{
  std::vector<std::size_t> keep;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < f.poset.size(); ++i)
    if (subset[i]) {
      keep.push_back(i);
      labels.push_back(f.poset.label(i));
    }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      if (f.poset.less(keep[a], keep[b]))
        pairs.emplace_back(a, b);
  PosetSheaf out;
  out.poset = FinitePoset(labels, pairs);
  for (auto i : keep)
    out.values.push_back(f.values[i]);
  for (auto [a, b] : pairs)
    out.maps[{a, b}] = f.maps.at({keep[a], keep[b]});
  return out;
}

PosetSheaf extend_by_zero(const PosetSheaf& part, const FinitePoset& y, const std::vector<char>& subset)
{
  for (std::size_t a = 0; a < y.size(); ++a)
    for (std::size_t b = 0; b < y.size(); ++b)
      for (std::size_t c = 0; c < y.size(); ++c)
        if (subset[a] && subset[c] && !subset[b] && y.leq(a, b) && y.leq(b, c))
          throw Error(ErrorKind::kInvalidArgument, "extension by zero needs a convex subset");
  std::vector<std::int64_t> local(y.size(), -1);
  std::size_t k = 0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (subset[i])
      local[i] = static_cast<std::int64_t>(k++);
  if (k != part.poset.size())
    throw Error(ErrorKind::kInvalidArgument, "subset size does not match the sheaf");
  PosetSheaf out;
  out.poset = y;
  out.values.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    if (local[i] >= 0)
      out.values[i] = part.values[static_cast<std::size_t>(local[i])];
  for (auto [a, b] : y.strict_pairs()) {
    if (local[a] >= 0 && local[b] >= 0)
      out.maps[{a, b}] = part.map(static_cast<std::size_t>(local[a]), static_cast<std::size_t>(local[b]));
    else
      out.maps[{a, b}] = ChainMap::zero();
  }
  return out;
}

Cochains derived_sections(const PosetSheaf& f, const std::vector<char>& subset)
{
  Cochains r;
  const auto chains = f.poset.strict_chains(subset);
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (const auto& c : chains[n])
      r.block_of[c] = r.builder.add_block(static_cast<int>(n), f.values[c.back()], chain_label(f.poset, c));
  for (std::size_t len = 1; len < chains.size(); ++len)
    for (const auto& c : chains[len]) {
      const std::size_t target = r.block_of.at(c);
      for (std::size_t p = 0; p <= len; ++p) {
        const std::size_t source = r.block_of.at(without(c, p));
        const int coef = p % 2 == 0 ? 1 : -1;
        if (p == len)
          r.builder.add_map(source, target, f.map(c[len - 1], c[len]), coef);
        else
          r.builder.add_map(source, target, ChainMap::identity(f.values[c[len]]), coef);
      }
    }
  r.cx = r.builder.build();
  return r;
}

namespace {

std::vector<char> above_in(const FinitePoset& p, const std::vector<char>& open, std::size_t y)
{
  std::vector<char> s(p.size(), 0);
  for (std::size_t v = 0; v < p.size(); ++v)
    s[v] = open[v] && p.leq(y, v);
  return s;
}

// S -> R, landing in the blocks of one-node chains (v) with components m(v) : S -> F(v).
ChainMap into_cochains(const Cochains& r, const ChainComplex& s, const std::function<ChainMap(std::size_t)>& m,
                       const PosetSheaf& f)
{
  ChainMap out;
  if (s.empty())
    return out;
  for (int n = s.min_degree(); n <= s.max_degree(); ++n) {
    SparseMatrix mat = SparseMatrix::zero(r.cx.dim(n), s.dim(n));
    for (const auto& [c, blk] : r.block_of) {
      if (c.size() != 1 || f.values[c[0]].dim(n) == 0)
        continue;
      const SparseMatrix part = m(c[0]).at(n, f.values[c[0]].dim(n), s.dim(n));
      for (std::size_t j = 0; j < s.dim(n); ++j)
        for (const auto& [i, coef] : part.columns[j])
          mat.columns[j].emplace_back(static_cast<std::uint32_t>(r.builder.global_index(blk, n, i)), coef);
    }
    for (auto& col : mat.columns)
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!mat.is_zero())
      out.parts[n] = std::move(mat);
  }
  return out;
}

// Restriction of cochains from a larger subposet to a smaller one.
ChainMap restrict_cochains(const Cochains& from, const Cochains& to, const PosetSheaf& f)
{
  ChainMap out;
  if (to.cx.empty())
    return out;
  for (int t = to.cx.min_degree(); t <= to.cx.max_degree(); ++t)
    out.parts[t] = SparseMatrix::zero(to.cx.dim(t), from.cx.dim(t));
  for (const auto& [c, bt] : to.block_of) {
    const std::size_t bf = from.block_of.at(c);
    const auto& v = f.values[c.back()];
    if (v.empty())
      continue;
    const int h = static_cast<int>(c.size()) - 1;
    for (int m = v.min_degree(); m <= v.max_degree(); ++m)
      for (std::size_t i = 0; i < v.dim(m); ++i)
        out.parts[m - h].set(to.builder.global_index(bt, m, i), from.builder.global_index(bf, m, i), Q(1));
  }
  return out;
}

} // namespace

GluedTriple glue_sheaf(const PosetSheaf& f, const std::vector<char>& open)
{
  const FinitePoset& Y = f.poset;
  if (open.size() != Y.size() || !Y.is_up_closed(open))
    throw Error(ErrorKind::kInvalidArgument, "the open part must be an up-closed subset");
  GluedTriple t;
  t.open = open;
  t.sheaf = f;
  t.f1.resize(Y.size());
  t.phi.resize(Y.size());
  for (std::size_t y = 0; y < Y.size(); ++y)
    t.r.push_back(derived_sections(f, above_in(Y, open, y)));
  for (std::size_t z = 0; z < Y.size(); ++z) {
    if (open[z])
      continue;
    const ChainMap g = into_cochains(t.r[z], f.values[z], [&](std::size_t v) { return f.map(z, v); }, f);
    t.f1[z] = fiber(f.values[z], t.r[z].cx, g);
    const ChainComplex rs = shift(t.r[z].cx, -1);
    ChainMap phi;
    if (!rs.empty())
      for (int n = rs.min_degree(); n <= rs.max_degree(); ++n) {
        SparseMatrix m = SparseMatrix::zero(t.f1[z].dim(n), rs.dim(n));
        for (std::size_t i = 0; i < rs.dim(n); ++i)
          m.columns[i].emplace_back(static_cast<std::uint32_t>(f.values[z].dim(n) + i), Q(1));
        phi.parts[n] = std::move(m);
      }
    t.phi[z] = std::move(phi);
  }
  return t;
}

namespace {

ChainComplex closed_value(const GluedTriple& t, std::size_t z)
{
  return mapping_cone(shift(t.r[z].cx, -1), t.f1[z], t.phi[z]);
}

// F_1(z) -> F_1(z'): F(z -> z') on the first summand, restriction of cochains (shifted) on the second.
SparseMatrix f1_map(const GluedTriple& t, std::size_t z, std::size_t z2, int n)
{
  const PosetSheaf& f = t.sheaf;
  const ChainMap res = restrict_cochains(t.r[z], t.r[z2], f);
  return block_diag({f.map(z, z2).at(n, f.values[z2].dim(n), f.values[z].dim(n)),
                     res.at(n + 1, t.r[z2].cx.dim(n + 1), t.r[z].cx.dim(n + 1))});
}

} // namespace

PosetSheaf unglue(const GluedTriple& t)
{
  const FinitePoset& Y = t.sheaf.poset;
  PosetSheaf g;
  g.poset = Y;
  for (std::size_t y = 0; y < Y.size(); ++y)
    g.values.push_back(t.open[y] ? t.r[y].cx : closed_value(t, y));
  for (auto [x, y] : Y.strict_pairs()) {
    const ChainMap res = restrict_cochains(t.r[x], t.r[y], t.sheaf);
    ChainMap m;
    auto [lo, hi] = degree_span(g.values[x], g.values[y]);
    for (int n = lo; n <= hi; ++n) {
      const std::size_t rows = g.values[y].dim(n), cols = g.values[x].dim(n);
      if (rows == 0 || cols == 0)
        continue;
      const SparseMatrix rn = res.at(n, t.r[y].cx.dim(n), t.r[x].cx.dim(n));
      SparseMatrix part;
      if (t.open[x]) {
        part = rn;
      } else if (t.open[y]) {
        part = SparseMatrix::zero(rows, cols);
        const SparseMatrix neg = scaled(rn, Q(-1));
        for (std::size_t j = 0; j < neg.cols; ++j)
          part.columns[j] = neg.columns[j];
      } else {
        part = block_diag({rn, f1_map(t, x, y, n)});
      }
      if (part.rows != rows || part.cols != cols)
        throw Error(ErrorKind::kInvariantViolation, "glued map has the wrong shape");
      if (!part.is_zero())
        m.parts[n] = std::move(part);
    }
    g.maps[{x, y}] = std::move(m);
  }
  return g;
}

RecollementVerdict recollement_round_trip(const PosetSheaf& f, const std::vector<char>& open)
{
  RecollementVerdict v;
  const FinitePoset& Y = f.poset;
  const GluedTriple t = glue_sheaf(f, open);
  const PosetSheaf g = unglue(t);
  try {
    g.validate();
    v.inverse_valid = true;
  } catch (const Error& e) {
    v.witness = e.what();
    return v;
  }

  // Unit F -> G.
  std::vector<ChainMap> eta(Y.size());
  for (std::size_t y = 0; y < Y.size(); ++y) {
    const ChainMap coaug = into_cochains(t.r[y], f.values[y], [&](std::size_t w) { return f.map(y, w); }, f);
    if (open[y]) {
      eta[y] = coaug;
      continue;
    }
    const auto& fz = f.values[y];
    ChainMap m;
    if (!fz.empty())
      for (int n = fz.min_degree(); n <= fz.max_degree(); ++n) {
        const std::size_t rdim = t.r[y].cx.dim(n);
        SparseMatrix part = SparseMatrix::zero(g.values[y].dim(n), fz.dim(n));
        const SparseMatrix c = coaug.at(n, rdim, fz.dim(n));
        for (std::size_t j = 0; j < fz.dim(n); ++j) {
          for (const auto& [i, coef] : c.columns[j])
            part.columns[j].emplace_back(i, -coef);
          part.columns[j].emplace_back(static_cast<std::uint32_t>(rdim + j), Q(1));
        }
        m.parts[n] = std::move(part);
      }
    eta[y] = std::move(m);
  }
  v.unit_natural = true;
  for (auto [x, y] : Y.strict_pairs()) {
    const ChainMap lhs = compose(g.map(x, y), eta[x], f.values[x], g.values[x], g.values[y]);
    const ChainMap rhs = compose(eta[y], f.map(x, y), f.values[x], f.values[y], g.values[y]);
    if (!same_map(lhs, rhs, f.values[x], g.values[y])) {
      v.unit_natural = false;
      v.witness = "unit is not natural on " + Y.label(x) + " <= " + Y.label(y);
      break;
    }
  }
  v.unit_quasi_iso = true;
  for (std::size_t y = 0; y < Y.size(); ++y)
    if (!is_quasi_isomorphism(f.values[y], g.values[y], eta[y])) {
      v.unit_quasi_iso = false;
      if (v.witness.empty())
        v.witness = "unit is not a quasi-isomorphism at " + Y.label(y);
    }

  // Counit (F_0, F_1) -> glued data of G.
  const GluedTriple tg = glue_sheaf(g, open);
  v.counit_quasi_iso = true;
  for (std::size_t y = 0; y < Y.size() && v.counit_quasi_iso; ++y) {
    bool ok = false;
    if (open[y]) {
      ok = is_quasi_isomorphism(f.values[y], g.values[y], eta[y]);
    } else {
      const ChainComplex& src = t.f1[y];
      const ChainComplex& dst = tg.f1[y];
      ChainMap m;
      if (!src.empty())
        for (int n = src.min_degree(); n <= src.max_degree(); ++n) {
          SparseMatrix part = SparseMatrix::zero(dst.dim(n), src.dim(n));
          const std::size_t offset = t.r[y].cx.dim(n); // G(z)_n = R(z)_n ⊕ F_1(z)_n
          for (std::size_t j = 0; j < src.dim(n); ++j)
            part.columns[j].emplace_back(static_cast<std::uint32_t>(offset + j), Q(1));
          m.parts[n] = std::move(part);
        }
      ok = is_quasi_isomorphism(src, dst, m);
    }
    if (!ok) {
      v.counit_quasi_iso = false;
      if (v.witness.empty())
        v.witness = "counit is not a quasi-isomorphism at " + Y.label(y);
    }
  }

  std::vector<char> closed(Y.size());
  for (std::size_t y = 0; y < Y.size(); ++y)
    closed[y] = !open[y];
  v.restriction_exact = true;
  for (const std::vector<char>* part : std::array<const std::vector<char>*, 2>{&open, &closed}) {
    const PosetSheaf r = restrict_sheaf(f, *part);
    const PosetSheaf back = restrict_sheaf(extend_by_zero(r, Y, *part), *part);
    for (std::size_t i = 0; i < r.poset.size(); ++i)
      if (!same_complex(r.values[i], back.values[i]))
        v.restriction_exact = false;
    for (auto [a, b] : r.poset.strict_pairs())
      if (!same_map(r.map(a, b), back.map(a, b), r.values[a], r.values[b]))
        v.restriction_exact = false;
  }
  if (!v.restriction_exact && v.witness.empty())
    v.witness = "restriction after extension by zero changed the sheaf";
  return v;
}

// ---------------------------------------------------------------------------

FinitePoset random_poset(std::mt19937_64& rng, std::size_t nodes)
{
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nodes; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = i + 1; j < nodes; ++j)
      if (pick(rng, 2) == 0)
        pairs.emplace_back(i, j);
  }
  return FinitePoset(labels, pairs);
}

SetDiagram random_set_diagram(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_set)
{
  const std::size_t n = 1 + pick(rng, max_nodes);
  const FinitePoset P = random_poset(rng, n);
  std::vector<std::vector<std::string>> sets(n);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>> covers;
  // Index order is a linear extension, so nodes are generated from the top down.
  for (std::size_t a = n; a-- > 0;) {
    std::vector<std::size_t> cov;
    for (std::size_t b = 0; b < n; ++b)
      if (P.covers(a, b))
        cov.push_back(b);
    // Enumerate compatible tuples of images over the covers.
    std::vector<std::vector<std::uint32_t>> tuples;
    std::vector<std::uint32_t> cur(cov.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == cov.size()) {
        for (std::size_t i = 0; i < cov.size(); ++i)
          for (std::size_t j = i + 1; j < cov.size(); ++j)
            for (std::size_t c = 0; c < n; ++c)
              if (P.leq(cov[i], c) && P.leq(cov[j], c)) {
                auto push = [&](std::size_t from, std::uint32_t x) -> std::uint32_t {
                  if (from == c)
                    return x;
                  std::size_t node = from;
                  std::uint32_t val = x;
                  while (node != c) {
                    std::size_t next = n;
                    for (std::size_t b = 0; b < n; ++b)
                      if (P.covers(node, b) && P.leq(b, c)) {
                        next = b;
                        break;
                      }
                    val = covers.at({node, next})[val];
                    node = next;
                  }
                  return val;
                };
                if (push(cov[i], cur[i]) != push(cov[j], cur[j]))
                  return;
              }
        tuples.push_back(cur);
        return;
      }
      for (std::uint32_t y = 0; y < sets[cov[k]].size(); ++y) {
        cur[k] = y;
        rec(k + 1);
      }
    };
    rec(0);
    std::size_t size = pick(rng, 8) == 0 ? 0 : 1 + pick(rng, max_set);
    if (tuples.empty())
      size = 0;
    for (std::size_t x = 0; x < size; ++x)
      sets[a].push_back(P.label(a) + "." + std::to_string(x));
    for (auto b : cov)
      covers[{a, b}] = {};
    for (std::size_t x = 0; x < size; ++x) {
      const auto& tup = tuples[pick(rng, tuples.size())];
      for (std::size_t i = 0; i < cov.size(); ++i)
        covers[{a, cov[i]}].push_back(tup[i]);
    }
  }
  SetDiagram d = SetDiagram::from_cover_maps(P, sets, covers);
  d.validate();
  return d;
}

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
  SparseMatrix m = SparseMatrix::zero(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      const long v = static_cast<long>(pick(rng, 4)) - 1;
      if (v != 0)
        m.columns[j].emplace_back(static_cast<std::uint32_t>(i), Q(v));
    }
  return m;
}

ChainComplex graded_space(std::size_t d0, std::size_t d1, const std::string& prefix)
{
  std::vector<std::vector<std::string>> bases(2);
  for (std::size_t i = 0; i < d0; ++i)
    bases[0].push_back(prefix + "a" + std::to_string(i));
  for (std::size_t i = 0; i < d1; ++i)
    bases[1].push_back(prefix + "b" + std::to_string(i));
  return ChainComplex(0, bases);
}

} // namespace

LaxObject random_lax_object(std::mt19937_64& rng, const SetDiagram& dgm)
{
  const auto& P = dgm.poset;
  LaxObject x;
  x.diagram = dgm;
  x.values.resize(P.size());
  for (std::size_t a = 0; a < P.size(); ++a)
    for (std::uint32_t s = 0; s < dgm.size(a); ++s)
      x.values[a].push_back(graded_space(pick(rng, 3), pick(rng, 2), "x" + std::to_string(a) + "_" + std::to_string(s)));

  // Pairs ordered so that composites through a cover are available.
  auto pairs = P.strict_pairs();
  std::sort(pairs.begin(), pairs.end(), [&](auto p, auto q) { return p.second - p.first < q.second - q.first || (p.second - p.first == q.second - q.first && p < q); });
  for (int attempt = 0; attempt < 20; ++attempt) {
    x.structure.clear();
    bool ok = true;
    for (auto [a, b] : pairs) {
      auto& maps = x.structure[{a, b}];
      for (std::uint32_t s = 0; s < dgm.size(a); ++s) {
        const auto& src = x.value(b, dgm.push(a, b, s));
        const auto& dst = x.value(a, s);
        ChainMap f;
        if (P.covers(a, b)) {
          if (pick(rng, 3) != 0)
            for (int n = 0; n <= 1; ++n)
              f.parts[n] = random_matrix(rng, dst.dim(n), src.dim(n));
        } else {
          std::optional<ChainMap> comp;
          for (std::size_t c = 0; c < P.size() && ok; ++c) {
            if (!P.covers(a, c) || !P.less(c, b))
              continue;
            const std::uint32_t sc = dgm.push(a, c, s);
            ChainMap h = compose(x.xi(a, c, s), x.xi(c, b, sc), src, x.value(c, sc), dst);
            if (comp && !same_map(*comp, h, src, dst))
              ok = false;
            comp = std::move(h);
          }
          if (comp)
            f = std::move(*comp);
        }
        maps.push_back(std::move(f));
      }
      if (!ok)
        break;
    }
    if (ok) {
      x.validate();
      return x;
    }
  }
  x.structure.clear();
  for (auto [a, b] : pairs)
    x.structure[{a, b}].assign(dgm.size(a), ChainMap::zero());
  x.validate();
  return x;
}

ChainComplex random_complex(std::mt19937_64& rng)
{
  while (true) {
    const int lo = static_cast<int>(pick(rng, 2)) - 1;
    const std::size_t d0 = pick(rng, 3), d1 = pick(rng, 3);
    if (d0 + d1 == 0)
      continue;
    std::vector<std::vector<std::string>> bases(2);
    for (std::size_t i = 0; i < d0; ++i)
      bases[0].push_back("d" + std::to_string(i));
    for (std::size_t i = 0; i < d1; ++i)
      bases[1].push_back("e" + std::to_string(i));
    return ChainComplex(lo, bases, {SparseMatrix::zero(0, d0), random_matrix(rng, d0, d1)});
  }
}

PosetSheaf constant_sheaf(const FinitePoset& y)
{
  PosetSheaf f;
  f.poset = y;
  const ChainComplex k = ChainComplex::concentrated(0, 1, "k");
  f.values.assign(y.size(), k);
  for (auto [a, b] : y.strict_pairs())
    f.maps[{a, b}] = ChainMap::identity(k);
  return f;
}

namespace {

QMatrix random_invertible(std::mt19937_64& rng, std::size_t n)
{
  while (true) {
    QMatrix m(n, QVector(n));
    for (auto& row : m)
      for (auto& e : row)
        e = static_cast<long>(pick(rng, 4)) - 1;
    if (n == 0 || determinant(m) != 0)
      return m;
  }
}

SparseMatrix dense_product(const QMatrix& a, const SparseMatrix& m, const QMatrix& b)
{
  // a * m * b with a, b dense square.
  const SparseMatrix sa = SparseMatrix::from_dense(a, a.size());
  const SparseMatrix sb = SparseMatrix::from_dense(b, b.size());
  return multiply(multiply(sa, m), sb);
}

} // namespace

PosetSheaf random_sheaf(std::mt19937_64& rng, const FinitePoset& y, std::size_t max_total_dim)
{
  constexpr int kLo = -2, kHi = 2;
  constexpr std::size_t kLevels = kHi - kLo + 1;
  struct Summand {
    std::vector<char> support;
    int degree;
    bool acyclic; // k[degree] -> k[degree - 1]
  };
  std::vector<Summand> parts;
  std::size_t used = 0;
  for (int tries = 0; tries < 12; ++tries) {
    std::size_t a = pick(rng, y.size()), b = pick(rng, y.size());
    if (!y.leq(a, b))
      std::swap(a, b);
    if (!y.leq(a, b))
      b = a;
    const std::uint64_t shape = pick(rng, 4); // interval, up-set, down-set
    Summand s;
    s.support.assign(y.size(), 0);
    std::size_t size = 0;
    for (std::size_t v = 0; v < y.size(); ++v)
      if ((shape == 2 || y.leq(a, v)) && (shape == 1 || y.leq(v, b))) {
        s.support[v] = 1;
        ++size;
      }
    s.acyclic = pick(rng, 4) == 0;
    s.degree = static_cast<int>(pick(rng, 3)) - 1 + (s.acyclic ? 1 : 0);
    const std::size_t cost = size * (s.acyclic ? 2 : 1);
    if (used + cost > max_total_dim)
      continue;
    used += cost;
    parts.push_back(std::move(s));
  }

  PosetSheaf f;
  f.poset = y;
  // position[node][summand][level] = index in that degree, or -1.
  std::vector<std::vector<std::array<std::int64_t, kLevels>>> position(y.size());
  std::vector<std::array<std::size_t, kLevels>> dims(y.size());
  for (std::size_t v = 0; v < y.size(); ++v) {
    dims[v].fill(0);
    for (const auto& s : parts) {
      std::array<std::int64_t, kLevels> pos;
      pos.fill(-1);
      if (s.support[v]) {
        pos[static_cast<std::size_t>(s.degree - kLo)] = static_cast<std::int64_t>(dims[v][static_cast<std::size_t>(s.degree - kLo)]++);
        if (s.acyclic)
          pos[static_cast<std::size_t>(s.degree - 1 - kLo)] =
              static_cast<std::int64_t>(dims[v][static_cast<std::size_t>(s.degree - 1 - kLo)]++);
      }
      position[v].push_back(pos);
    }
  }
  std::vector<std::vector<QMatrix>> basis_change(y.size()), inverse_change(y.size());
  for (std::size_t v = 0; v < y.size(); ++v)
    for (std::size_t l = 0; l < kLevels; ++l) {
      basis_change[v].push_back(random_invertible(rng, dims[v][l]));
      inverse_change[v].push_back(dims[v][l] ? inverse(basis_change[v][l]) : QMatrix{});
    }

  for (std::size_t v = 0; v < y.size(); ++v) {
    std::vector<std::vector<std::string>> bases(kLevels);
    for (std::size_t l = 0; l < kLevels; ++l)
      for (std::size_t i = 0; i < dims[v][l]; ++i)
        bases[l].push_back(y.label(v) + "_" + std::to_string(static_cast<int>(l) + kLo) + "_" + std::to_string(i));
    std::vector<SparseMatrix> bds;
    bds.push_back(SparseMatrix::zero(0, dims[v][0]));
    for (std::size_t l = 1; l < kLevels; ++l) {
      SparseMatrix d = SparseMatrix::zero(dims[v][l - 1], dims[v][l]);
      for (std::size_t k = 0; k < parts.size(); ++k)
        if (parts[k].acyclic && parts[k].support[v] && parts[k].degree - kLo == static_cast<int>(l))
          d.set(static_cast<std::size_t>(position[v][k][l - 1]), static_cast<std::size_t>(position[v][k][l]), Q(1));
      bds.push_back(dense_product(basis_change[v][l - 1], d, inverse_change[v][l]));
    }
    f.values.push_back(ChainComplex(kLo, bases, bds));
  }
  for (auto [a, b] : y.strict_pairs()) {
    ChainMap m;
    for (std::size_t l = 0; l < kLevels; ++l) {
      SparseMatrix part = SparseMatrix::zero(dims[b][l], dims[a][l]);
      for (std::size_t k = 0; k < parts.size(); ++k)
        if (parts[k].support[a] && parts[k].support[b] && position[a][k][l] >= 0)
          part.set(static_cast<std::size_t>(position[b][k][l]), static_cast<std::size_t>(position[a][k][l]), Q(1));
      part = dense_product(basis_change[b][l], part, inverse_change[a][l]);
      if (!part.is_zero())
        m.parts[static_cast<int>(l) + kLo] = std::move(part);
    }
    f.maps[{a, b}] = std::move(m);
  }
  f.validate();
  return f;
}

} // namespace weylglue
