#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "csg/error.hpp"

namespace csg {

/// Arbitrary-precision rational in lowest terms with positive denominator.
/// GMP keeps results of arithmetic canonical; parse_rational canonicalizes input.
using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Interchange form: "a/b", or "a" when b = 1.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    if (s.front() == '+') s.erase(s.begin());
    auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t.front() == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-')
        throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
    Integer d(den);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vector operator+(const Vector& a, const Vector& b) {
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
    Vector r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vector operator*(const Rational& c, const Vector& a) {
    Vector r(a);
    for (auto& x : r) x *= c;
    return r;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n, Rational(0));
    v[i] = 1;
    return v;
}

} // namespace csg
