#pragma once

// Independent reference computations used to derive expected values.
// None of these call into the library's reduction code.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Z = mpz_class;
using Mat = std::vector<std::vector<Z>>;

/// Determinant by fraction-free Bareiss elimination.
inline Z det(Mat a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    Z prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Z v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out)
{
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

/**
 * Invariant factors via determinantal divisors: d_k = D_k / D_{k-1} with
 * D_k the gcd of all k×k minors. Exponential; only for small matrices.
 */
inline std::vector<Z> invariant_factors(const Mat& m)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<Z> out;
    Z prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        combinations(rows, k, rs);
        combinations(cols, k, cs);
        Z g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Mat sub(k, std::vector<Z>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        sub[i][j] = m[r[i]][c[j]];
                Z d = det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            }
        if (g == 0)
            break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

/**
 * Invariant factors by the textbook pivoting algorithm: move a smallest
 * nonzero entry to the corner, clear its row and column by division with
 * remainder, and fold in any entry it does not divide. Polynomial, unlike
 * the determinantal divisors, so it serves larger matrices.
 */
inline std::vector<Z> textbook_smith(Mat a)
{
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Z> out;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) {
                for (auto& d : out)
                    d = abs(d);
                return out;
            }
            std::swap(a[t], a[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Z q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Z q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (!clean)
                continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        out.push_back(a[t][t]);
    }
    for (auto& d : out)
        d = abs(d);
    return out;
}

/// Rank over F_p by plain Gaussian elimination.
inline std::size_t rank_mod(const Mat& m, std::uint64_t p)
{
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Z r;
            mpz_fdiv_r_ui(r.get_mpz_t(), m[i][j].get_mpz_t(), p);
            a[i][j] = r.get_ui();
        }
    auto power = [p](std::uint64_t b, std::uint64_t e) {
        unsigned __int128 r = 1, x = b;
        while (e) {
            if (e & 1)
                r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return static_cast<std::uint64_t>(r);
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        std::uint64_t inv = power(a[rank][c], p - 2);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            std::uint64_t f = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a[i][c]) * inv % p);
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = static_cast<std::uint64_t>(
                    (a[i][j] + static_cast<unsigned __int128>(p - f) * a[rank][j]) % p);
        }
        ++rank;
    }
    return rank;
}

/// Rank over Q, taken as the rank modulo a large prime.
inline std::size_t rank_q(const Mat& m) { return rank_mod(m, 2305843009213693951ULL); }

}  // namespace oracle
