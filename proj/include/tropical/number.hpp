#pragma once

// Exact scalar and vector types. Everything in the library is computed over
// GMP-backed integers and rationals; there is no floating point anywhere.

#include "tropical/error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace tropical {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Integer coordinates in the ambient lattice N = Z^n.
using IntVector = std::vector<Integer>;
/// Rational coordinates in N_R = R^n (points of polyhedra).
using RatVector = std::vector<Rational>;

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// ceil(a / b) for b > 0.
inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q = a / b; // truncates toward zero
    if (q * b != a && a > 0) q += 1;
    return q;
}

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

inline IntVector unit_vector(std::size_t n, std::size_t i) {
    IntVector v(n, Integer(0));
    v[i] = 1;
    return v;
}

inline bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline void require_same_size(std::size_t a, std::size_t b, const char* where) {
    if (a != b)
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    require_same_size(a.size(), b.size(), "dot");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVector& a, const RatVector& b) {
    require_same_size(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
    require_same_size(a.size(), b.size(), "vector sum");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) {
    require_same_size(a.size(), b.size(), "vector difference");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVector operator-(const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVector operator*(const Integer& s, const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline RatVector operator+(const RatVector& a, const RatVector& b) {
    require_same_size(a.size(), b.size(), "vector sum");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVector operator-(const RatVector& a, const RatVector& b) {
    require_same_size(a.size(), b.size(), "vector difference");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVector operator*(const Rational& s, const RatVector& a) {
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline RatVector to_rational(const IntVector& v) {
    RatVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

inline Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

/// v divided by the gcd of its entries. Throws on the zero vector.
inline IntVector primitive(const IntVector& v) {
    Integer g = content(v);
    if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive of the zero vector");
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

/// Same as primitive() but maps zero to zero.
inline IntVector primitive_or_zero(const IntVector& v) {
    return is_zero(v) ? v : primitive(v);
}

/// Smallest positive multiple of a rational vector that is integral.
inline IntVector clear_denominators(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = numerator(v[i] * Rational(l));
    return r;
}

/// Primitive integer vector pointing along a nonzero rational vector.
inline IntVector primitive_direction(const RatVector& v) {
    return primitive(clear_denominators(v));
}

inline bool is_integral(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return denominator(x) == 1; });
}

inline IntVector to_integer(const RatVector& v) {
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (denominator(v[i]) != 1) throw Error(ErrorCode::NonIntegral, "vector is not integral");
        r[i] = numerator(v[i]);
    }
    return r;
}

/// Sign normalization: first nonzero entry positive.
inline IntVector sign_normalized(IntVector v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer p(text.substr(0, slash));
        Integer q(text.substr(slash + 1));
        if (q == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + text + "'");
        return Rational(p, q);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw Error(ErrorCode::Parse, "not a rational: '" + text + "'");
    }
}

template <class V>
std::string vector_to_string(const V& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

} // namespace tropical
