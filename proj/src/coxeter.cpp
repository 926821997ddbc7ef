#include "weylglue/coxeter.hpp"

#include "weylglue/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <numeric>

namespace weylglue {

namespace {

constexpr std::int64_t kCoordinateBound = 1000000;

std::string root_key(const Root& r)
{
  std::string key;
  key.reserve(r.size() * 4);
  for (auto c : r) {
    key += std::to_string(c);
    key += ',';
  }
  return key;
}

IntMatrix identity_cartan(std::size_t n)
{
  IntMatrix m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 2;
  return m;
}

void link(IntMatrix& m, std::size_t i, std::size_t j, int aij = -1, int aji = -1)
{
  m[i][j] = aij;
  m[j][i] = aji;
}

} // namespace

CartanSpec CartanSpec::named(std::string_view label)
{
  if (label.size() < 2)
    throw Error(ErrorKind::kUnknownType, "unknown type label '" + std::string(label) + "'");
  const char family = label[0];
  int n = 0;
  auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), n);
  if (ec != std::errc() || ptr != label.data() + label.size() || n < 1)
    throw Error(ErrorKind::kUnknownType, "unknown type label '" + std::string(label) + "'");

  const auto un = static_cast<std::size_t>(n);
  IntMatrix m = identity_cartan(un);
  switch (family) {
  case 'A':
    for (std::size_t i = 0; i + 1 < un; ++i)
      link(m, i, i + 1);
    break;
  case 'B':
    if (n < 2)
      break;
    for (std::size_t i = 0; i + 2 < un; ++i)
      link(m, i, i + 1);
    // alpha_n short
    link(m, un - 2, un - 1, -1, -2);
    break;
  case 'C':
    if (n < 2)
      break;
    for (std::size_t i = 0; i + 2 < un; ++i)
      link(m, i, i + 1);
    // alpha_n long
    link(m, un - 2, un - 1, -2, -1);
    break;
  case 'D':
    if (n < 4)
      break;
    for (std::size_t i = 0; i + 2 < un; ++i)
      link(m, i, i + 1);
    link(m, un - 3, un - 1);
    break;
  case 'G':
    if (n != 2)
      break;
    // alpha_1 short, alpha_2 long
    link(m, 0, 1, -3, -1);
    break;
  case 'F':
    if (n != 4)
      break;
    link(m, 0, 1);
    link(m, 1, 2, -1, -2);
    link(m, 2, 3);
    break;
  default:
    break;
  }

  const bool ok = (family == 'A') || (family == 'B' && n >= 2) || (family == 'C' && n >= 2) ||
                  (family == 'D' && n >= 4) || (family == 'G' && n == 2) || (family == 'F' && n == 4);
  if (!ok)
    throw Error(ErrorKind::kUnknownType, "unknown type label '" + std::string(label) + "'");
  return from_matrix(std::move(m), std::string(label));
}

CartanSpec CartanSpec::from_matrix(IntMatrix m, std::string label)
{
  const std::size_t n = m.size();
  if (n == 0)
    throw Error(ErrorKind::kInvalidArgument, "Cartan matrix must have positive rank");
  if (n > 64)
    throw Error(ErrorKind::kResourceCap, "Cartan matrix rank above 64 is not supported");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw Error(ErrorKind::kInvalidArgument, "Cartan matrix must be square");
    if (m[i][i] != 2)
      throw Error(ErrorKind::kInvalidArgument, "Cartan matrix diagonal entries must be 2");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        continue;
      if (m[i][j] > 0)
        throw Error(ErrorKind::kInvalidArgument, "Cartan matrix off-diagonal entries must be <= 0");
      if ((m[i][j] == 0) != (m[j][i] == 0))
        throw Error(ErrorKind::kInvalidArgument, "Cartan matrix zero pattern must be symmetric");
    }
  return CartanSpec{std::move(label), std::move(m)};
}

RootSystem::RootSystem(CartanSpec spec) : spec_(std::move(spec))
{
  const std::size_t n = rank();
  const auto& a = spec_.matrix;

  // Closure of the simple roots under simple reflections.
  std::vector<Root> found;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    seen.emplace(root_key(r), found.size());
    queue.push_back(found.size());
    found.push_back(std::move(r));
  }
  while (!queue.empty()) {
    const Root beta = found[queue.front()];
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t pairing = 0;
      for (std::size_t j = 0; j < n; ++j)
        pairing += a[i][j] * beta[j];
      if (pairing == 0)
        continue;
      Root image = beta;
      image[i] -= pairing;
      bool pos = false, neg = false;
      for (auto c : image) {
        if (std::llabs(c) > kCoordinateBound)
          throw Error(ErrorKind::kNotFiniteType, "not finite type: root coordinates diverge");
        pos |= c > 0;
        neg |= c < 0;
      }
      if (pos && neg)
        throw Error(ErrorKind::kNotFiniteType, "not finite type: root with mixed signs");
      auto key = root_key(image);
      if (seen.count(key))
        continue;
      if (found.size() >= kRootCap)
        throw Error(ErrorKind::kNotFiniteType, "not finite type: more than 10000 roots");
      seen.emplace(std::move(key), found.size());
      queue.push_back(found.size());
      found.push_back(std::move(image));
    }
  }

  std::vector<Root> positive;
  for (auto& r : found)
    if (std::any_of(r.begin(), r.end(), [](auto c) { return c > 0; }))
      positive.push_back(r);
  auto height = [](const Root& r) { return std::accumulate(r.begin(), r.end(), std::int64_t{0}); };
  std::sort(positive.begin(), positive.end(), [&](const Root& x, const Root& y) {
    auto hx = height(x), hy = height(y);
    if (hx != hy)
      return hx < hy;
    return x > y;
  });
  if (2 * positive.size() != found.size())
    throw Error(ErrorKind::kNotFiniteType, "not finite type: root set is not symmetric");

  num_positive_ = positive.size();
  roots_ = positive;
  for (const auto& r : positive) {
    Root neg = r;
    for (auto& c : neg)
      c = -c;
    roots_.push_back(std::move(neg));
  }
  support_.resize(roots_.size());
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    lookup_.emplace(root_key(roots_[k]), k);
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (roots_[k][i] != 0)
        mask |= std::uint64_t{1} << i;
    support_[k] = mask;
  }

  reflection_.assign(n, std::vector<std::size_t>(roots_.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      Root image = roots_[k];
      std::int64_t pairing = 0;
      for (std::size_t j = 0; j < n; ++j)
        pairing += a[i][j] * image[j];
      image[i] -= pairing;
      reflection_[i][k] = index_of(image);
    }

  // Symmetrizer: d_i a_ij = d_j a_ji, propagated along the Dynkin graph.
  std::vector<Q> d(n, Q(0));
  for (std::size_t start = 0; start < n; ++start) {
    if (d[start] != 0)
      continue;
    d[start] = 1;
    std::deque<std::size_t> q{start};
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0)
          continue;
        Q dj = d[i] * a[i][j] / a[j][i];
        if (d[j] == 0) {
          d[j] = dj;
          q.push_back(j);
        } else if (d[j] != dj) {
          throw Error(ErrorKind::kNotFiniteType, "not finite type: Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  Q dmin = *std::min_element(d.begin(), d.end());
  gram_.assign(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram_[i][j] = d[i] / dmin * a[i][j];
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix minor(k, QVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        minor[i][j] = gram_[i][j];
    if (determinant(minor) <= 0)
      throw Error(ErrorKind::kNotFiniteType, "not finite type: symmetrized form is not positive definite");
  }
}

std::size_t RootSystem::index_of(const Root& r) const
{
  auto it = lookup_.find(root_key(r));
  if (it == lookup_.end())
    throw Error(ErrorKind::kInvalidArgument, "vector is not a root");
  return it->second;
}

Q RootSystem::inner(const QVector& x, const QVector& y) const
{
  Q sum = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (gram_[i][j] != 0)
        sum += x[i] * gram_[i][j] * y[j];
  return sum;
}

WeylGroup::WeylGroup(RootSystem rs, std::size_t max_order) : rs_(std::move(rs))
{
  const std::size_t n = rank();
  const std::size_t nroots = rs_.num_roots();
  if (nroots > 65535)
    throw Error(ErrorKind::kResourceCap, "too many roots for the permutation encoding");

  std::vector<std::vector<std::uint16_t>> gens(n, std::vector<std::uint16_t>(nroots));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < nroots; ++r)
      gens[i][r] = static_cast<std::uint16_t>(rs_.reflect(i, r));

  WeylElement id;
  id.perm.resize(nroots);
  std::iota(id.perm.begin(), id.perm.end(), std::uint16_t{0});
  lookup_.emplace(key_of(id.perm), 0);
  elements_.push_back(std::move(id));

  // Queue order equals (length, lex word) order: parents are processed in that order and
  // generators are appended on the right in ascending order.
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint16_t> perm(nroots);
      const auto& wp = elements_[head].perm;
      for (std::size_t r = 0; r < nroots; ++r)
        perm[r] = wp[gens[i][r]];
      auto key = key_of(perm);
      auto it = lookup_.find(key);
      Elem target;
      if (it == lookup_.end()) {
        if (elements_.size() >= max_order)
          throw Error(ErrorKind::kResourceCap,
                      "Weyl group order exceeds the cap of " + std::to_string(max_order));
        target = static_cast<Elem>(elements_.size());
        lookup_.emplace(std::move(key), target);
        WeylElement e;
        e.perm = std::move(perm);
        e.word = elements_[head].word;
        e.word.push_back(static_cast<int>(i));
        elements_.push_back(std::move(e));
      } else {
        target = it->second;
      }
      right_gen_.resize(elements_.size() * n);
      right_gen_[head * n + i] = target;
    }
  }
  right_gen_.resize(elements_.size() * n);

  const std::size_t size = elements_.size();
  left_gen_.resize(size * n);
  inverse_.resize(size);
  for (Elem w = 0; w < size; ++w) {
    const auto& wp = elements_[w].perm;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint16_t> perm(nroots);
      for (std::size_t r = 0; r < nroots; ++r)
        perm[r] = gens[i][wp[r]];
      left_gen_[w * n + i] = lookup_.at(key_of(perm));
    }
    std::vector<std::uint16_t> inv(nroots);
    for (std::size_t r = 0; r < nroots; ++r)
      inv[wp[r]] = static_cast<std::uint16_t>(r);
    inverse_[w] = lookup_.at(key_of(inv));
    if (length(w) > length(longest_))
      longest_ = w;
  }

  QMatrix cartan(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cartan[i][j] = rs_.spec().matrix[i][j];
  cartan_inverse_ = weylglue::inverse(cartan);
}

std::string WeylGroup::key_of(const std::vector<std::uint16_t>& perm) const
{
  // The action is faithful on the span of the simple roots.
  std::string key(rank() * 2, '\0');
  for (std::size_t i = 0; i < rank(); ++i) {
    key[2 * i] = static_cast<char>(perm[i] & 0xff);
    key[2 * i + 1] = static_cast<char>(perm[i] >> 8);
  }
  return key;
}

Elem WeylGroup::multiply(Elem u, Elem v) const
{
  std::vector<std::uint16_t> images(rank());
  const auto& up = elements_[u].perm;
  const auto& vp = elements_[v].perm;
  for (std::size_t i = 0; i < rank(); ++i)
    images[i] = up[vp[i]];
  return lookup_.at(key_of(images));
}

std::size_t WeylGroup::inversion_count(Elem w) const
{
  std::size_t count = 0;
  for (std::size_t r = 0; r < rs_.num_positive(); ++r)
    if (!rs_.is_positive(act(w, r)))
      ++count;
  return count;
}

Elem WeylGroup::from_word(const Word& word) const
{
  Elem w = identity();
  for (int i : word) {
    if (i < 0 || static_cast<std::size_t>(i) >= rank())
      throw Error(ErrorKind::kInvalidArgument, "generator index out of range in word");
    w = mul_gen_right(w, static_cast<std::size_t>(i));
  }
  return w;
}

std::string WeylGroup::word_string(Elem w) const
{
  const auto& word = elements_[w].word;
  if (word.empty())
    return "e";
  std::string out;
  for (int i : word)
    out += "s" + std::to_string(i + 1);
  return out;
}

bool WeylGroup::bruhat_leq(Elem u, Elem w) const
{
  while (true) {
    if (u == w || u == identity())
      return true;
    if (length(u) >= length(w))
      return false;
    const auto s = static_cast<std::size_t>(elements_[w].word.front());
    const Elem sw = mul_gen_left(s, w);
    const Elem su = mul_gen_left(s, u);
    if (length(su) < length(u))
      u = su;
    w = sw;
  }
}

QMatrix WeylGroup::root_matrix(Elem w) const
{
  const std::size_t n = rank();
  QMatrix m(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Root& image = rs_.root(act(w, i));
    for (std::size_t j = 0; j < n; ++j)
      m[j][i] = image[j];
  }
  return m;
}

QVector WeylGroup::weight_to_root(const QVector& weight) const
{
  if (weight.size() != rank())
    throw Error(ErrorKind::kInvalidArgument, "weight has wrong dimension");
  QVector out(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      out[i] += cartan_inverse_[i][j] * weight[j];
  return out;
}

QVector WeylGroup::root_to_weight(const QVector& coords) const
{
  if (coords.size() != rank())
    throw Error(ErrorKind::kInvalidArgument, "vector has wrong dimension");
  // c_j = sum_i a_ji x_i, since alpha_i = sum_j a_ji omega_j.
  const auto& a = rs_.spec().matrix;
  QVector out(rank());
  for (std::size_t j = 0; j < rank(); ++j)
    for (std::size_t i = 0; i < rank(); ++i)
      out[j] += Q(a[j][i]) * coords[i];
  return out;
}

QVector WeylGroup::act_on_weight(Elem w, const QVector& weight) const
{
  const QVector x = weight_to_root(weight);
  const QMatrix m = root_matrix(w);
  QVector y(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      y[i] += m[i][j] * x[j];
  return root_to_weight(y);
}

WeylGroup make_weyl_group(std::string_view label, std::size_t max_order)
{
  return WeylGroup(RootSystem(CartanSpec::named(label)), max_order);
}

} // namespace weylglue
