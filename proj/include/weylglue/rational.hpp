#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace weylglue {

using Q = mpq_class;
using QVector = std::vector<Q>;
using QMatrix = std::vector<QVector>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Q& x);

/// Parses "p", "-p" or "p/q"; throws Error(kMalformedInput) otherwise.
Q parse_rational(std::string_view text);

/// Rank of a dense rational matrix by fraction-free elimination on a copy.
std::size_t rank(QMatrix m);

/// Solves A x = b for square nonsingular A. Throws if A is singular.
QVector solve(QMatrix a, QVector b);

/// Determinant of a square matrix.
Q determinant(QMatrix m);

/// Inverse of a square nonsingular matrix.
QMatrix inverse(const QMatrix& a);

inline int sign(const Q& x) { return sgn(x); }

} // namespace weylglue
