#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fthresh {

// All arithmetic in this library is exact. Integers and rationals are
// arbitrary precision; nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVector = std::vector<Int>;
using QVector = std::vector<Rational>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Budget exhaustion / partial results. The CLI maps these to exit code 2.
struct BudgetError : Error {
    using Error::Error;
};

inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw Error("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

// Canonical serialization: always "numerator/denominator" ("3/2", "-1/1", "0/1").
inline std::string fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Int(s));
        return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error("parse_rational: malformed rational '" + s + "'");
    }
}

inline Int floor_q(const Rational& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int ceil_q(const Rational& r) { return -floor_q(-r); }

inline QVector to_q(const IVector& v) {
    QVector out;
    out.reserve(v.size());
    for (const Int& x : v) out.emplace_back(x);
    return out;
}

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

inline bool is_integral(const QVector& v) {
    for (const auto& x : v)
        if (!is_integral(x)) return false;
    return true;
}

inline IVector to_int(const QVector& v) {
    IVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integral(x)) throw Error("to_int: non-integral coordinate");
        out.push_back(numerator(x));
    }
    return out;
}

inline bool is_zero(const IVector& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

namespace detail {
inline void check_same_size(std::size_t a, std::size_t b, const char* who) {
    if (a != b) throw Error(std::string(who) + ": dimension mismatch");
}
}  // namespace detail

inline Int dot(const IVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "dot");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const QVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const QVector& a, const QVector& b) {
    detail::check_same_size(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline IVector add(const IVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "add");
    IVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline IVector sub(const IVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "sub");
    IVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline IVector scale(const IVector& a, const Int& k) {
    IVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
    return out;
}

inline QVector sub(const QVector& a, const QVector& b) {
    detail::check_same_size(a.size(), b.size(), "sub");
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline QVector sub(const QVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "sub");
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline QVector add(const QVector& a, const IVector& b) {
    detail::check_same_size(a.size(), b.size(), "add");
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

// Divides out the gcd of the entries, preserving direction.
inline IVector primitive_vector(IVector v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) throw Error("ZeroVector: primitive_vector of the zero vector");
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

}  // namespace fthresh
