#include "stv/rational.hpp"

#include <stdexcept>

namespace stv {

Rational makeRational(long long num, long long den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(toBigInt(num), toBigInt(den));
    q.canonicalize();
    return q;
}

Rational rationalFromStrings(const std::string& num, const std::string& den) {
    BigInt n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        throw std::invalid_argument("malformed rational component");
    }
    if (d == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
}

BigInt floorRational(const Rational& q) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return out;
}

long long floorToLongLong(const Rational& q) {
    BigInt f = floorRational(q);
    if (!f.fits_slong_p()) {
        throw std::overflow_error("tally does not fit in a machine integer");
    }
    return f.get_si();
}

bool isIntegerRational(const Rational& q) {
    return q.get_den() == 1;
}

std::string numeratorString(const Rational& q) {
    return q.get_num().get_str();
}

std::string denominatorString(const Rational& q) {
    return q.get_den().get_str();
}

std::string rationalString(const Rational& q) {
    if (isIntegerRational(q)) {
        return q.get_num().get_str();
    }
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

BigInt pow10(long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return p;
}

// e with 10^e <= num/den < 10^(e+1), for positive num, den.
long decimalExponent(const BigInt& num, const BigInt& den) {
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    auto atLeastPow = [&](long k) {
        // num/den >= 10^k ?
        if (k >= 0) return num >= den * pow10(k);
        return num * pow10(-k) >= den;
    };
    while (!atLeastPow(e)) --e;
    while (atLeastPow(e + 1)) ++e;
    return e;
}

} // namespace

std::string formatSignificant(const Rational& q, int significant) {
    if (significant < 1) significant = 1;
    if (q < 0) {
        throw std::invalid_argument("formatSignificant expects a nonnegative value");
    }
    if (q == 0) return "0";

    const BigInt& num = q.get_num();
    const BigInt& den = q.get_den();
    long e = decimalExponent(num, den);

    // m = round-half-up(q / 10^(e - significant + 1)), a `significant`-digit integer
    long shift = significant - 1 - e;
    BigInt a = num, b = den;
    if (shift >= 0) a *= pow10(shift); else b *= pow10(-shift);
    BigInt m;
    mpz_fdiv_q(m.get_mpz_t(), BigInt(2 * a + b).get_mpz_t(), BigInt(2 * b).get_mpz_t());
    if (m == pow10(significant)) { // rounding carried into an extra digit
        m /= 10;
        ++e;
    }

    std::string digits = m.get_str();
    std::string out;
    if (e >= significant - 1) {
        out = digits + std::string(static_cast<size_t>(e - significant + 1), '0');
    } else if (e >= 0) {
        out = digits.substr(0, static_cast<size_t>(e + 1)) + "." +
              digits.substr(static_cast<size_t>(e + 1));
    } else {
        out = "0." + std::string(static_cast<size_t>(-e - 1), '0') + digits;
    }
    if (out.find('.') != std::string::npos) {
        size_t last = out.find_last_not_of('0');
        if (out[last] == '.') --last;
        out.erase(last + 1);
    }
    return out;
}

} // namespace stv
