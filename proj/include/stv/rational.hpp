#pragma once

#include <gmpxx.h>

#include <string>

namespace stv {

// All vote values and tally bounds are exact rationals. GMP keeps them in
// canonical form (normalized, positive denominator), which the serializers
// and the byte-identical-output guarantee rely on.
using BigInt = mpz_class;
using Rational = mpq_class;

// gmpxx has no long long overloads; long carries 64 bits on the platforms
// this builds for, so the casts are lossless.
inline BigInt toBigInt(long long v) { return BigInt(static_cast<long>(v)); }
inline Rational toRational(long long v) { return Rational(static_cast<long>(v)); }

// num/den reduced to canonical form; den must be nonzero.
Rational makeRational(long long num, long long den);

// Parses decimal integer strings (as produced by numeratorString/denominatorString).
Rational rationalFromStrings(const std::string& num, const std::string& den);

BigInt floorRational(const Rational& q);

// floor(q) as long long; throws std::overflow_error when it does not fit.
long long floorToLongLong(const Rational& q);

bool isIntegerRational(const Rational& q);

std::string numeratorString(const Rational& q);
std::string denominatorString(const Rational& q);

// "num/den", or just "num" for integers. Used in human-readable output.
std::string rationalString(const Rational& q);

// Rounds a nonnegative rational to `significant` decimal digits and strips
// trailing fraction zeros: 31/41 -> "0.756", 1/101 -> "0.0099", 6/25 -> "0.24".
std::string formatSignificant(const Rational& q, int significant = 3);

} // namespace stv
