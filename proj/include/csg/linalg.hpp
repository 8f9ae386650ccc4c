#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "csg/error.hpp"
#include "csg/matrix.hpp"
#include "csg/rational.hpp"

namespace csg {

/// Univariate polynomial with rational coefficients, ascending degree.
/// The zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly monomial(std::size_t degree, Rational coeff = 1) {
        std::vector<Rational> c(degree + 1, Rational(0));
        c[degree] = std::move(coeff);
        return UniPoly(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        return a + b * Rational(-1);
    }
    friend UniPoly operator*(const UniPoly& a, const Rational& s) {
        std::vector<Rational> r(a.c_);
        for (auto& x : r) x *= s;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }

    /// Euclidean division: a = q·b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw Error(ErrorKind::Singular, "polynomial division by zero");
        std::vector<Rational> rem(a.c_);
        long db = b.degree();
        std::vector<Rational> q(std::max<long>(a.degree() - db + 1, 0), Rational(0));
        for (long i = a.degree(); i >= db; --i) {
            if (sgn(rem[i]) == 0) continue;
            Rational f = rem[i] / b.leading();
            q[i - db] = f;
            for (long j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a * (Rational(1) / a.leading());
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// e.g. "x^3 - 2*x + 1/2"
    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (long i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<std::size_t>(i)];
            if (sgn(a) == 0) continue;
            Rational mag = abs(a);
            if (out.empty()) out += sgn(a) < 0 ? "-" : "";
            else out += sgn(a) < 0 ? " - " : " + ";
            bool unit = (mag == 1) && i > 0;
            if (!unit) out += mag.get_str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

namespace detail {

inline Integer lcm_of_denominators(const Rational* first, std::size_t n) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Integer& d = first[i].get_den();
        if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

/// Rows scaled by their denominators' lcm; rank is unaffected by row scaling.
inline std::vector<std::vector<Integer>> integer_rows(const Matrix& m, Integer* scale_product = nullptr) {
    std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
    if (scale_product) *scale_product = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = lcm_of_denominators(&m(i, 0), m.cols());
        if (scale_product) *scale_product *= l;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational scaled = m(i, j) * Rational(l);
            rows[i][j] = scaled.get_num();
        }
    }
    return rows;
}

/// Bareiss fraction-free elimination in place; returns the rank. Every division
/// by the previous pivot is exact. `swaps` counts row exchanges.
inline std::size_t bareiss_eliminate(std::vector<std::vector<Integer>>& a, std::size_t cols, int* swaps = nullptr) {
    const std::size_t n = a.size();
    Integer prev = 1;
    std::size_t r = 0;
    if (swaps) *swaps = 0;
    for (std::size_t c = 0; c < cols && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            if (swaps) ++*swaps;
        }
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

} // namespace detail

/// Exact rank over ℚ by fraction-free elimination.
inline std::size_t mat_rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto rows = detail::integer_rows(m);
    return detail::bareiss_eliminate(rows, m.cols());
}

inline Rational determinant(const Matrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer scale;
    auto rows = detail::integer_rows(m, &scale);
    int swaps = 0;
    if (detail::bareiss_eliminate(rows, n, &swaps) < n) return 0;
    Rational d(rows[n - 1][n - 1], scale);
    d.canonicalize();
    return (swaps % 2) ? Rational(-d) : d;
}

inline Matrix mat_inverse(const Matrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a(p, c)) == 0) ++p;
        if (p == n) throw Error(ErrorKind::Singular, "matrix is singular");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(a(c, j)) != 0) a(i, j) -= f * a(c, j);
                if (sgn(inv(c, j)) != 0) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

/// Monic det(λI − m) by Faddeev–LeVerrier.
inline UniPoly char_poly(const Matrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::DimMismatch, "characteristic polynomial of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Matrix mk(n, n); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A·M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A·M_k)/k
        Matrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        Matrix am = m * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return UniPoly(std::move(c));
}

/// Basis of the right null space {v : m·v = 0}, from the reduced row echelon form.
inline std::vector<Vector> null_space(const Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix a = m;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a(p, c)) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        Rational piv = a(r, c);
        for (std::size_t j = 0; j < cols; ++j) a(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<Vector> basis;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

struct Inertia {
    std::size_t n_neg = 0;
    std::size_t n_zero = 0;
    std::size_t n_pos = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Result of a congruence diagonalization: basisᵀ·S·basis = diag(diag).
/// Columns of `basis` form an S-orthogonal adapted basis.
struct CongruenceDiagonalization {
    Matrix basis;
    Vector diag;
};

/// Symmetric pivoting: a nonzero diagonal entry is preferred; when the remaining
/// block has zero diagonal, a pair (i, j) with S_ij ≠ 0 is split into
/// e_i ± e_j/(2 S_ij), which have norms ±1 and are mutually orthogonal.
inline CongruenceDiagonalization congruence_diagonalize(const Matrix& s) {
    if (!s.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "congruence diagonalization needs a symmetric matrix");
    const std::size_t n = s.rows();
    Matrix a = s;
    Matrix b = Matrix::identity(n);

    auto swap_index = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t t = 0; t < n; ++t) std::swap(a(i, t), a(j, t));
        for (std::size_t t = 0; t < n; ++t) std::swap(a(t, i), a(t, j));
        for (std::size_t t = 0; t < n; ++t) std::swap(b(t, i), b(t, j));
    };
    // col_j += f·col_i applied as a congruence (row and column).
    auto add_multiple = [&](std::size_t j, std::size_t i, const Rational& f) {
        for (std::size_t t = 0; t < n; ++t) a(t, j) += f * a(t, i);
        for (std::size_t t = 0; t < n; ++t) a(j, t) += f * a(i, t);
        for (std::size_t t = 0; t < n; ++t) b(t, j) += f * b(t, i);
    };
    auto eliminate = [&](std::size_t k) {
        for (std::size_t j = k + 1; j < n; ++j) {
            if (sgn(a(k, j)) == 0) continue;
            add_multiple(j, k, -a(k, j) / a(k, k));
        }
    };

    std::size_t k = 0;
    while (k < n) {
        std::size_t p = k;
        while (p < n && sgn(a(p, p)) == 0) ++p;
        if (p < n) {
            swap_index(k, p);
            eliminate(k);
            ++k;
            continue;
        }
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (std::size_t i = k; i < n && !pair; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (sgn(a(i, j)) != 0) {
                    pair = {i, j};
                    break;
                }
        if (!pair) break; // remaining block is zero
        auto [i, j] = *pair;
        swap_index(k, i);
        swap_index(k + 1, j);
        Rational t = Rational(1) / (2 * a(k, k + 1));
        // columns k, k+1 -> e_k + t e_{k+1}, e_k - t e_{k+1}
        Matrix e = Matrix::identity(n);
        e(k + 1, k) = t;
        e(k, k + 1) = 1;
        e(k + 1, k + 1) = -t;
        a = e.transpose() * a * e;
        b = b * e;
        eliminate(k);
        eliminate(k + 1);
        k += 2;
    }
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
    return {std::move(b), std::move(d)};
}

inline Inertia signature(const Matrix& s) {
    auto cd = congruence_diagonalize(s);
    Inertia in;
    for (const auto& x : cd.diag) {
        int sg = sgn(x);
        if (sg < 0) ++in.n_neg;
        else if (sg == 0) ++in.n_zero;
        else ++in.n_pos;
    }
    return in;
}

namespace detail {

inline std::vector<Integer> primitive_integer_coeffs(const UniPoly& p) {
    const auto& c = p.coeffs();
    Integer l = lcm_of_denominators(c.data(), c.size());
    std::vector<Integer> z(c.size());
    Integer content = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Rational s = c[i] * Rational(l);
        z[i] = s.get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[i].get_mpz_t());
    }
    if (content > 1)
        for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    return z;
}

/// Sign of P(h/2) for integral P; evaluates 2^d·P(h/2) by Horner.
inline int sign_at_half(const std::vector<Integer>& c, const Integer& h) {
    Integer acc = c.back(), pow2 = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        pow2 *= 2;
        acc = acc * h + c[i] * pow2;
    }
    return sgn(acc);
}

inline int sign_changes(const std::vector<std::vector<Integer>>& seq, const Integer& h) {
    int changes = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at_half(p, h);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

} // namespace detail

/// All rational roots of a nonzero polynomial, ascending.
///
/// With P primitive integral of leading coefficient a, μ = a·λ turns P into a
/// monic integral polynomial Q whose rational roots are integers. Integer
/// roots of Q are isolated by Sturm bisection on half-integer endpoints (never
/// roots of Q) inside the Cauchy bound, then confirmed by exact evaluation.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::Singular, "rational_roots of the zero polynomial");
    std::vector<Integer> z = detail::primitive_integer_coeffs(p);
    std::set<Rational> roots;
    std::size_t lo = 0;
    while (lo < z.size() && z[lo] == 0) ++lo;
    if (lo > 0) roots.insert(Rational(0));
    z.erase(z.begin(), z.begin() + static_cast<long>(lo));
    const std::size_t n = z.size() - 1;
    if (n >= 1) {
        const Integer a = z[n];
        std::vector<Rational> q(n + 1);
        Integer apow = 1; // a^{n-1-i}, built from i = n-1 downwards
        q[n] = 1;
        for (long i = static_cast<long>(n) - 1; i >= 0; --i) {
            q[static_cast<std::size_t>(i)] = Rational(z[static_cast<std::size_t>(i)] * apow);
            apow *= a;
        }
        UniPoly qp(q);
        UniPoly sqf = UniPoly::divmod(qp, UniPoly::gcd(qp, qp.derivative())).first;
        std::vector<UniPoly> sturm{sqf, sqf.derivative()};
        while (sturm.back().degree() > 0) {
            auto r = UniPoly::divmod(sturm[sturm.size() - 2], sturm.back()).second;
            if (r.is_zero()) break;
            sturm.push_back(r * Rational(-1));
        }
        // Positive rescaling keeps every sign, so the chain is evaluated over the integers.
        std::vector<std::vector<Integer>> chain;
        for (const auto& sp : sturm) chain.push_back(detail::primitive_integer_coeffs(sp));
        const std::vector<Integer>& sq = chain.front();
        Integer bound = 1;
        for (std::size_t i = 0; i < n; ++i) {
            Integer m = abs(q[i].get_num());
            if (m > bound) bound = m;
        }
        bound += 1;
        // Endpoints are half-integers h/2 with h odd; they are never roots since
        // Q is monic integral.
        auto check = [&](const Integer& hl) {
            Integer mu = (hl + 1) / 2;
            if (sgn(qp(Rational(mu))) == 0) roots.insert(Rational(mu) / Rational(a));
        };
        std::vector<std::pair<Integer, Integer>> stack{{-2 * bound - 1, 2 * bound + 1}};
        while (!stack.empty()) {
            auto [l, r] = stack.back();
            stack.pop_back();
            int count = detail::sign_changes(chain, l) - detail::sign_changes(chain, r);
            if (count <= 0) continue;
            if (count == 1) {
                // A single simple root of the squarefree part: plain sign bisection.
                int sl = detail::sign_at_half(sq, l);
                while (r - l > 2) {
                    Integer mid = l + 2 * ((r - l) / 4);
                    if (detail::sign_at_half(sq, mid) == sl) l = mid;
                    else r = mid;
                }
                check(l);
                continue;
            }
            if (r - l == 2) {
                check(l);
                continue;
            }
            Integer mid = l + 2 * ((r - l) / 4);
            stack.push_back({l, mid});
            stack.push_back({mid, r});
        }
    }
    return {roots.begin(), roots.end()};
}

} // namespace csg
