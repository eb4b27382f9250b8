#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

using bigint = boost::multiprecision::cpp_int;

namespace detail {

/// Extended gcd: returns (g, a, b) with a*x + b*y = g > 0.
inline void ext_gcd(const bigint& x, const bigint& y, bigint& g, bigint& a, bigint& b)
{
    bigint r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        bigint q = r0 / r1;
        bigint tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    a = s0;
    b = t0;
}

inline bigint mod_symmetric(const bigint& x, const bigint& D)
{
    bigint r = x % D;
    if (r < 0)
        r += D;
    if (2 * r > D)
        r -= D;
    return r;
}

} // namespace detail

/// Elementary divisors of the square integer matrix M (rows generate a full-rank lattice L),
/// computed modulo D where D * Z^n is contained in L. Diagonal entries 1 are dropped.
inline std::vector<bigint> smith_diagonal(std::vector<std::vector<bigint>> M, const bigint& D)
{
    const std::size_t n = M.size();
    std::vector<bigint> diag;
    std::vector<bool> row_alive(n, true), col_alive(n, true);
    for (auto& row : M)
        for (auto& x : row)
            x = detail::mod_symmetric(x, D);
    for (std::size_t step = 0; step < n; ++step) {
        // pivot: smallest nonzero absolute value among live entries
        std::size_t pr = n, pc = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!row_alive[i])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!col_alive[j] || M[i][j] == 0)
                    continue;
                if (pr == n || abs(M[i][j]) < abs(M[pr][pc])) {
                    pr = i;
                    pc = j;
                    if (abs(M[i][j]) == 1)
                        break;
                }
            }
            if (pr != n && abs(M[pr][pc]) == 1)
                break;
        }
        if (pr == n) {
            // remaining block is zero modulo D
            for (std::size_t i = 0; i < n; ++i)
                if (row_alive[i])
                    diag.push_back(D);
            break;
        }
        for (;;) {
            bool clean = true;
            const bigint piv = M[pr][pc];
            for (std::size_t i = 0; i < n; ++i) {
                if (!row_alive[i] || i == pr || M[i][pc] == 0)
                    continue;
                const bigint q = M[i][pc] / piv;
                for (std::size_t j = 0; j < n; ++j)
                    if (col_alive[j] && M[pr][j] != 0)
                        M[i][j] = detail::mod_symmetric(M[i][j] - q * M[pr][j], D);
                if (M[i][pc] != 0)
                    clean = false;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!col_alive[j] || j == pc || M[pr][j] == 0)
                    continue;
                const bigint q = M[pr][j] / piv;
                for (std::size_t i = 0; i < n; ++i)
                    if (row_alive[i] && M[i][pc] != 0)
                        M[i][j] = detail::mod_symmetric(M[i][j] - q * M[i][pc], D);
                if (M[pr][j] != 0)
                    clean = false;
            }
            if (clean)
                break;
            // move pivot to a smaller remainder in its row or column
            for (std::size_t i = 0; i < n; ++i)
                if (row_alive[i] && M[i][pc] != 0 && abs(M[i][pc]) < abs(M[pr][pc]))
                    pr = i;
            for (std::size_t j = 0; j < n; ++j)
                if (col_alive[j] && M[pr][j] != 0 && abs(M[pr][j]) < abs(M[pr][pc]))
                    pc = j;
        }
        diag.push_back(abs(M[pr][pc]));
        row_alive[pr] = false;
        col_alive[pc] = false;
    }
    // The diagonal is not yet a divisibility chain; normalize through the group structure.
    std::vector<bigint> out;
    for (auto& d : diag) {
        bigint g = gcd(d, D);
        if (g > 1)
            out.push_back(g);
    }
    return out;
}

/// Relation lattice in Z^n kept in Hermite form incrementally: pivot row i (if present) has
/// zeros before column i and a positive entry at column i. Once of full rank its
/// determinant D is known and all entries are reduced modulo D.
class relation_lattice {
public:
    explicit relation_lattice(std::size_t ncols) : n_(ncols), pivots_(ncols) {}

    std::size_t dimension() const { return n_; }
    std::size_t rank() const { return rank_; }
    bool full_rank() const { return rank_ == n_; }
    std::size_t relations_added() const { return added_; }

    /// Index [Z^n : L]; only meaningful at full rank.
    const bigint& determinant() const
    {
        if (!full_rank())
            throw state_error("relation_lattice: determinant requested before full rank");
        return det_;
    }

    /// Adds a relation; returns true when the lattice grew.
    bool add(const std::vector<std::int64_t>& rel)
    {
        if (rel.size() != n_)
            throw domain_error("relation_lattice: relation has wrong length");
        ++added_;
        std::vector<bigint> v(rel.begin(), rel.end());
        if (full_rank())
            for (auto& x : v)
                x = detail::mod_symmetric(x, det_);
        bool grew = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (v[i] == 0)
                continue;
            auto& slot = pivots_[i];
            if (!slot) {
                if (v[i] < 0)
                    for (auto& x : v)
                        x = -x;
                slot = std::move(v);
                ++rank_;
                grew = true;
                break;
            }
            auto& r = *slot;
            if (v[i] % r[i] == 0) {
                const bigint q = v[i] / r[i];
                for (std::size_t j = i; j < n_; ++j)
                    v[j] -= q * r[j];
            } else {
                bigint g, a, b;
                detail::ext_gcd(r[i], v[i], g, a, b);
                const bigint ri = r[i] / g, vi = v[i] / g;
                for (std::size_t j = i; j < n_; ++j) {
                    bigint nr = a * r[j] + b * v[j];
                    bigint nv = ri * v[j] - vi * r[j];
                    r[j] = std::move(nr);
                    v[j] = std::move(nv);
                }
                grew = true;
            }
            if (full_rank())
                for (std::size_t j = i + 1; j < n_; ++j)
                    v[j] = detail::mod_symmetric(v[j], det_);
        }
        if (grew && full_rank())
            renormalize();
        return grew;
    }

    /// Structure of Z^n / L (requires full rank).
    abelian_group structure() const
    {
        const auto& D = determinant();
        if (D == 1)
            return {};
        // Eliminate unit pivots: e_i is expressed through later generators.
        std::vector<std::vector<bigint>> H(n_);
        for (std::size_t i = 0; i < n_; ++i)
            H[i] = *pivots_[i];
        std::vector<std::size_t> keep;
        for (std::size_t i = n_; i-- > 0;) {
            if (H[i][i] != 1) {
                keep.push_back(i);
                continue;
            }
            for (std::size_t k = 0; k < i; ++k) {
                if (H[k][i] == 0)
                    continue;
                const bigint c = H[k][i];
                for (std::size_t j = i + 1; j < n_; ++j)
                    if (H[i][j] != 0)
                        H[k][j] = detail::mod_symmetric(H[k][j] - c * H[i][j], D);
                H[k][i] = 0;
            }
        }
        std::reverse(keep.begin(), keep.end());
        std::vector<std::vector<bigint>> M(keep.size(), std::vector<bigint>(keep.size()));
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b)
                M[a][b] = H[keep[a]][keep[b]];
        std::vector<std::uint64_t> orders;
        for (auto& d : smith_diagonal(std::move(M), D)) {
            if (d > bigint(std::numeric_limits<std::uint64_t>::max()))
                throw resource_error("relation_lattice: cyclic factor exceeds 64 bits");
            orders.push_back(d.convert_to<std::uint64_t>());
        }
        return abelian_group::from_cyclic_orders(orders);
    }

    /// Current Hermite rows (for inspection and independent checks).
    std::vector<std::vector<bigint>> hermite_rows() const
    {
        std::vector<std::vector<bigint>> out;
        for (const auto& r : pivots_)
            if (r)
                out.push_back(*r);
        return out;
    }

private:
    void renormalize()
    {
        det_ = 1;
        for (std::size_t i = 0; i < n_; ++i)
            det_ *= (*pivots_[i])[i];
        for (std::size_t i = 0; i < n_; ++i) {
            auto& r = *pivots_[i];
            for (std::size_t j = i + 1; j < n_; ++j)
                r[j] = detail::mod_symmetric(r[j], det_);
        }
    }

    std::size_t n_;
    std::vector<std::optional<std::vector<bigint>>> pivots_;
    std::size_t rank_ = 0;
    std::size_t added_ = 0;
    bigint det_ = 0;
};

} // namespace fourrank
