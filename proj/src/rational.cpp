#include "weylglue/rational.hpp"

#include "weylglue/error.hpp"

#include <utility>

namespace weylglue {

std::string to_string(const Q& x)
{
  return x.get_str();
}

Q parse_rational(std::string_view text)
{
  std::string s(text);
  if (s.empty())
    throw Error(ErrorKind::kMalformedInput, "empty rational");
  Q out;
  if (out.set_str(s, 10) != 0 || out.get_den() == 0)
    throw Error(ErrorKind::kMalformedInput, "malformed rational '" + s + "'");
  out.canonicalize();
  return out;
}

namespace {

// Row-reduces in place; returns the rank and the determinant sign/product via `det` when requested.
std::size_t eliminate(QMatrix& m, Q* det)
{
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  if (det)
    *det = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0)
      ++piv;
    if (piv == rows) {
      if (det)
        *det = 0;
      continue;
    }
    if (piv != r) {
      std::swap(m[piv], m[r]);
      if (det)
        *det = -*det;
    }
    if (det)
      *det *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0)
        continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

} // namespace

std::size_t rank(QMatrix m)
{
  return eliminate(m, nullptr);
}

Q determinant(QMatrix m)
{
  if (m.empty())
    return 1;
  if (m.size() != m[0].size())
    throw Error(ErrorKind::kInvalidArgument, "determinant of a non-square matrix");
  Q det;
  std::size_t r = eliminate(m, &det);
  return r == m.size() ? det : Q(0);
}

QVector solve(QMatrix a, QVector b)
{
  const std::size_t n = a.size();
  if (b.size() != n)
    throw Error(ErrorKind::kInvalidArgument, "solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i)
    a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0)
      ++piv;
    if (piv == n)
      throw Error(ErrorKind::kInvalidArgument, "solve: singular matrix");
    std::swap(a[piv], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0)
        continue;
      Q f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j)
        a[i][j] -= f * a[c][j];
    }
  }
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a[i][n] / a[i][i];
  return x;
}

QMatrix inverse(const QMatrix& a)
{
  const std::size_t n = a.size();
  QMatrix out(n, QVector(n));
  for (std::size_t j = 0; j < n; ++j) {
    QVector e(n);
    e[j] = 1;
    QVector col = solve(a, e);
    for (std::size_t i = 0; i < n; ++i)
      out[i][j] = col[i];
  }
  return out;
}

} // namespace weylglue
