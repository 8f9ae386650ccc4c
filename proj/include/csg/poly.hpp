#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csg/error.hpp"
#include "csg/rational.hpp"

namespace csg {

/// Multivariate polynomial over ℚ in a fixed, ordered variable list.
/// Zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<unsigned>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const Rational& c) {
        MultiPoly p(std::move(vars));
        if (sgn(c) != 0) p.terms_[Exponents(p.vars_.size(), 0)] = c;
        return p;
    }

    static MultiPoly variable(std::vector<std::string> vars, std::string_view name) {
        MultiPoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.index_of(name)] = 1;
        p.terms_[e] = 1;
        return p;
    }

    const std::vector<std::string>& variables() const noexcept { return vars_; }
    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    std::size_t index_of(std::string_view name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw Error(ErrorKind::VariableUnknown, "unknown variable '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) {
            unsigned s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Variables with a nonzero exponent in some term.
    std::vector<std::string> used_variables() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (const auto& [e, c] : terms_)
                if (e[i] > 0) {
                    out.push_back(vars_[i]);
                    break;
                }
        return out;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (e.size() != vars_.size()) throw Error(ErrorKind::DimMismatch, "exponent vector length");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Rational eval(const std::vector<Rational>& point) const {
        if (point.size() != vars_.size()) throw Error(ErrorKind::DimMismatch, "point length differs from variable count");
        Rational sum = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
            sum += t;
        }
        return sum;
    }

    MultiPoly diff(std::size_t var) const {
        if (var >= vars_.size()) throw Error(ErrorKind::VariableUnknown, "variable index out of range");
        MultiPoly d(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            d.add_term(f, c * Rational(static_cast<long>(e[var])));
        }
        return d;
    }

    MultiPoly diff(std::string_view var) const { return diff(index_of(var)); }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a) {
        MultiPoly r(a.vars_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, s * c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(vars_, 1);
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Renders terms in descending graded-lex order, e.g. "-2*u1*t1 + 1/2*v2^2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            unsigned da = 0, db = 0;
            for (auto x : a.first) da += x;
            for (auto x : b.first) db += x;
            if (da != db) return da > db;
            return a.first > b.first;
        });
        std::string out;
        for (const auto& [e, c] : ts) {
            Rational mag = abs(c);
            if (out.empty()) out += sgn(c) < 0 ? "-" : "";
            else out += sgn(c) < 0 ? " - " : " + ";
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) out += mag.get_str();
            else if (mag == 1) out += mono;
            else out += mag.get_str() + "*" + mono;
        }
        return out;
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (vars_ != o.vars_) throw Error(ErrorKind::BadVariables, "polynomials over different variable lists");
    }

    std::vector<std::string> vars_;
    std::map<Exponents, Rational> terms_;
};

namespace detail {

/// Recursive-descent parser:
///   expr   := term (('+'|'-') term)*
///   term   := unary ('*' unary)*
///   unary  := '-' unary | '+' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer ('/' integer)? | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }
    MultiPoly term() {
        MultiPoly acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }
    MultiPoly unary() {
        if (accept('-')) return Rational(-1) * unary();
        if (accept('+')) return unary();
        return power();
    }
    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            std::string e = digits();
            if (e.size() > 3) fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return base;
    }
    MultiPoly atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num(digits());
            Integer den = 1;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                den = Integer(digits());
                if (den == 0) fail("zero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            return MultiPoly::constant(vars_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return MultiPoly::variable(vars_, s_.substr(start, pos_ - start));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses "+, -, *, ^n, a/b, parentheses" over the given variables.
inline MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
    return detail::PolyParser(text, vars).parse();
}

} // namespace csg
