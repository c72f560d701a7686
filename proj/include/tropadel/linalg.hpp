#ifndef TROPADEL_LINALG_HPP
#define TROPADEL_LINALG_HPP

#include "tropadel/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace tropadel {

using QVec = std::vector<Rat>;
// Row-major dense rational matrix. All elimination is exact; no pivot thresholds.
using QMat = std::vector<QVec>;

inline QVec qvec_zero(std::size_t n) { return QVec(n, Rat(0)); }

inline bool is_zero(const QVec& v)
{
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline QVec operator+(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw Error("vector dimension mismatch in +");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec operator-(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw Error("vector dimension mismatch in -");
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec operator*(const Rat& c, const QVec& a)
{
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline QVec negate(const QVec& a) { return Rat(-1) * a; }

inline Rat dot(const QVec& a, const QVec& b)
{
    if (a.size() != b.size()) throw Error("vector dimension mismatch in dot");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Gaussian elimination to row echelon form (in place); returns pivot columns.
inline std::vector<std::size_t> row_reduce(QMat& m)
{
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        const Rat inv = Rat(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(QMat m) { return row_reduce(m).size(); }

inline std::size_t rank_of_vectors(const std::vector<QVec>& vs)
{
    return rank(QMat(vs.begin(), vs.end()));
}

// Solves A x = b for the matrix whose COLUMNS are `columns`. Returns a solution
// or nullopt if inconsistent. Free variables are set to zero.
inline std::optional<QVec> solve_columns(const std::vector<QVec>& columns, const QVec& b)
{
    const std::size_t k = columns.size();
    const std::size_t n = b.size();
    QMat aug(n, QVec(k + 1, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (columns[j].size() != n) throw Error("solve_columns: ragged input");
            aug[i][j] = columns[j][i];
        }
        aug[i][k] = b[i];
    }
    const auto pivots = row_reduce(aug);
    for (std::size_t c : pivots)
        if (c == k) return std::nullopt;  // pivot in augmented column: inconsistent
    QVec x(k, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][k];
    return x;
}

// Basis of the null space {x : M x = 0} for row-major M with n columns.
inline std::vector<QVec> null_space(QMat m, std::size_t cols)
{
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical primitive integer representative of a rational direction:
// clears denominators, divides by gcd, keeps orientation. Zero maps to zero.
inline QVec primitive(const QVec& v)
{
    Int lcm = 1;
    for (const auto& x : v) lcm = boost::multiprecision::lcm(lcm, rat_den(x));
    std::vector<Int> ints(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = rat_num(v[i]) * (lcm / rat_den(v[i]));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints[i]));
    }
    QVec out(v.size(), Rat(0));
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(ints[i] / g);
    return out;
}

inline bool is_primitive_integer(const QVec& v)
{
    if (is_zero(v)) return false;
    return v == primitive(v);
}

}  // namespace tropadel

#endif
