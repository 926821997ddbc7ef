#include "weylglue/parabolic.hpp"

#include "weylglue/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <sstream>

namespace weylglue {

std::size_t Parabolic::size() const
{
  return static_cast<std::size_t>(std::popcount(mask));
}

Parabolic Parabolic::of(std::initializer_list<std::size_t> ids)
{
  Parabolic p;
  for (auto i : ids)
    p.mask |= std::uint64_t{1} << i;
  return p;
}

std::string Parabolic::to_string() const
{
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < 64; ++i)
    if (contains(i)) {
      if (!first)
        out += ',';
      out += std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

Parabolic Parabolic::parse(const std::string& text, std::size_t rank)
{
  Parabolic p;
  std::string cleaned;
  for (char c : text)
    if (c != '{' && c != '}' && c != ' ' && c != 's')
      cleaned += c;
  std::stringstream ss(cleaned);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      continue;
    std::size_t pos = 0;
    long id = 0;
    try {
      id = std::stol(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || id < 1 || static_cast<std::size_t>(id) > rank)
      throw Error(ErrorKind::kInvalidArgument, "bad simple root id '" + item + "'");
    p.mask |= std::uint64_t{1} << (id - 1);
  }
  return p;
}

std::vector<Parabolic> all_parabolics(std::size_t rank, bool proper_only)
{
  std::vector<Parabolic> out;
  const std::uint64_t top = Parabolic::full(rank).mask;
  for (std::uint64_t m = 0; m <= top; ++m) {
    if (proper_only && m == top)
      continue;
    out.push_back({m});
    if (m == top)
      break;
  }
  std::stable_sort(out.begin(), out.end(), [](Parabolic a, Parabolic b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a.mask < b.mask;
  });
  return out;
}

void Polynomial::add_monomial(std::size_t degree, std::int64_t c)
{
  if (coeffs.size() <= degree)
    coeffs.resize(degree + 1, 0);
  coeffs[degree] += c;
  trim();
}

std::int64_t Polynomial::at_one() const
{
  std::int64_t s = 0;
  for (auto c : coeffs)
    s += c;
  return s;
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
  if (coeffs.size() < other.coeffs.size())
    coeffs.resize(other.coeffs.size(), 0);
  for (std::size_t i = 0; i < other.coeffs.size(); ++i)
    coeffs[i] += other.coeffs[i];
  trim();
  return *this;
}

void Polynomial::trim()
{
  while (!coeffs.empty() && coeffs.back() == 0)
    coeffs.pop_back();
}

std::string Polynomial::to_string() const
{
  if (coeffs.empty())
    return "0";
  std::string out;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d] == 0)
      continue;
    if (!out.empty())
      out += " + ";
    if (d == 0 || coeffs[d] != 1)
      out += std::to_string(coeffs[d]);
    if (d >= 1)
      out += "q";
    if (d >= 2)
      out += "^" + std::to_string(d);
  }
  return out;
}

bool is_min_left(const WeylGroup& W, Elem w, Parabolic j)
{
  for (std::size_t i = 0; i < W.rank(); ++i)
    if (j.contains(i) && W.right_descent(w, i))
      return false;
  return true;
}

bool is_min_right(const WeylGroup& W, Elem w, Parabolic j0)
{
  for (std::size_t i = 0; i < W.rank(); ++i)
    if (j0.contains(i) && W.left_descent(w, i))
      return false;
  return true;
}

Elem min_coset_rep(const WeylGroup& W, Elem w, Parabolic j, CosetSide side, Parabolic j0)
{
  const std::size_t n = W.rank();
  bool changed = true;
  while (changed) {
    changed = false;
    if (side == CosetSide::kLeft || side == CosetSide::kDouble) {
      for (std::size_t i = 0; i < n; ++i)
        if (j.contains(i) && W.right_descent(w, i)) {
          w = W.mul_gen_right(w, i);
          changed = true;
        }
    }
    const Parabolic left_set = side == CosetSide::kRight ? j : j0;
    if (side == CosetSide::kRight || side == CosetSide::kDouble) {
      for (std::size_t i = 0; i < n; ++i)
        if (left_set.contains(i) && W.left_descent(w, i)) {
          w = W.mul_gen_left(i, w);
          changed = true;
        }
    }
  }
  return w;
}

std::vector<Elem> parabolic_subgroup(const WeylGroup& W, Parabolic j)
{
  std::vector<Elem> out;
  for (Elem w = 0; w < W.order(); ++w) {
    const auto& word = W.word(w);
    if (std::all_of(word.begin(), word.end(), [&](int i) { return j.contains(static_cast<std::size_t>(i)); }))
      out.push_back(w);
  }
  return out;
}

std::vector<Elem> w_prime_set(const WeylGroup& W, Parabolic j0)
{
  // Element-table order is already (length, lex word).
  std::vector<Elem> out;
  for (Elem w = 0; w < W.order(); ++w)
    if (is_min_right(W, w, j0))
      out.push_back(w);
  return out;
}

Elem w0_prime(const WeylGroup& W, Parabolic j0)
{
  return min_coset_rep(W, W.longest(), j0, CosetSide::kRight);
}

bool root_in_parabolic(const RootSystem& rs, std::size_t root, Parabolic j)
{
  return (rs.support(root) & ~j.mask) == 0;
}

SimplePartition simple_partition(const WeylGroup& W, Elem w, Parabolic j0)
{
  SimplePartition p;
  const auto& rs = W.roots();
  for (std::size_t i = 0; i < W.rank(); ++i) {
    const std::size_t image = W.act(w, i);
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (root_in_parabolic(rs, image, j0))
      p.zero.mask |= bit;
    else if (rs.is_positive(image))
      p.plus.mask |= bit;
    else
      p.minus.mask |= bit;
  }
  return p;
}

Polynomial StratumIndex::polynomial(const WeylGroup& W) const
{
  Polynomial p;
  for (Elem u : reps)
    p.add_monomial(W.length(u));
  return p;
}

StratumIndex stratum_index(const WeylGroup& W, Parabolic j0, Parabolic j, Elem w)
{
  StratumIndex s{j0, j, w, {}};
  if (min_coset_rep(W, w, j, CosetSide::kDouble, j0) != w)
    return s;

  // Orbit closure of w under left W_J0 and right W_J generators.
  std::vector<char> seen(W.order(), 0);
  std::deque<Elem> queue{w};
  seen[w] = 1;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    if (is_min_left(W, x, j))
      s.reps.push_back(x);
    for (std::size_t i = 0; i < W.rank(); ++i) {
      if (j0.contains(i)) {
        Elem y = W.mul_gen_left(i, x);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
      if (j.contains(i)) {
        Elem y = W.mul_gen_right(x, i);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  std::sort(s.reps.begin(), s.reps.end());
  return s;
}

SchubertVerdict check_lemma_sch(const WeylGroup& W, Parabolic j0, Parabolic j, Elem w)
{
  SchubertVerdict v;
  v.j0 = j0;
  v.j = j;
  v.w = w;
  v.partition = simple_partition(W, w, j0);
  v.j_tilde = j - v.partition.plus;

  const StratumIndex big = stratum_index(W, j0, j, w);
  const StratumIndex small = stratum_index(W, j0, v.j_tilde, w);
  v.poly_j = big.polynomial(W);
  v.poly_j_tilde = small.polynomial(W);

  v.emptiness_applies = (j & v.partition.minus).mask != 0;
  if (v.emptiness_applies && !big.empty()) {
    v.emptiness_holds = false;
    v.witness = "stratum for J=" + j.to_string() + " is nonempty although J meets S^-";
  }

  // Forgetful map u W_Jtilde -> u W_J on minimal representatives.
  std::map<Elem, Elem> image_of;
  std::vector<char> hit(W.order(), 0);
  for (Elem u : small.reps) {
    Elem v_rep = min_coset_rep(W, u, j, CosetSide::kLeft);
    if (!std::binary_search(big.reps.begin(), big.reps.end(), v_rep) || W.length(v_rep) != W.length(u) ||
        hit[v_rep]) {
      v.bijection_holds = false;
      if (v.witness.empty())
        v.witness = "rep " + W.word_string(u) + " maps to " + W.word_string(v_rep);
      continue;
    }
    hit[v_rep] = 1;
  }
  if (small.reps.size() != big.reps.size()) {
    v.bijection_holds = false;
    if (v.witness.empty())
      v.witness = "stratum sizes differ: " + std::to_string(small.reps.size()) + " vs " +
                  std::to_string(big.reps.size());
  }
  if (v.witness.empty() && v.poly_j != v.poly_j_tilde)
    v.witness = "polynomials differ: " + v.poly_j.to_string() + " vs " + v.poly_j_tilde.to_string();
  return v;
}

Polynomial poincare_polynomial(const WeylGroup& W, Parabolic j)
{
  Polynomial p;
  for (Elem u = 0; u < W.order(); ++u)
    if (is_min_left(W, u, j))
      p.add_monomial(W.length(u));
  return p;
}

} // namespace weylglue
