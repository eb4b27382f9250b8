#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "fourrank/error.hpp"

namespace fourrank {

/// Small dense integer row-vector basis, dimension <= 4.
template <std::size_t N> using int_basis = std::vector<std::array<std::int64_t, N>>;

/// Hermite normal form (upper triangular, positive pivots) of the lattice spanned by gens
/// in Z^N. The lattice must have full rank.
template <std::size_t N> int_basis<N> hermite_basis(int_basis<N> gens)
{
    int_basis<N> out;
    for (std::size_t col = 0; col < N; ++col) {
        // Euclid on column col among remaining generators.
        for (;;) {
            std::size_t best = gens.size();
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (gens[i][col] != 0 && (best == gens.size() || std::llabs(gens[i][col]) < std::llabs(gens[best][col])))
                    best = i;
            if (best == gens.size())
                throw domain_error("hermite_basis: lattice is not of full rank");
            bool done = true;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (i == best || gens[i][col] == 0)
                    continue;
                const std::int64_t q = gens[i][col] / gens[best][col];
                for (std::size_t k = 0; k < N; ++k)
                    gens[i][k] -= q * gens[best][k];
                if (gens[i][col] != 0)
                    done = false;
            }
            if (done) {
                auto row = gens[best];
                if (row[col] < 0)
                    for (auto& x : row)
                        x = -x;
                out.push_back(row);
                gens.erase(gens.begin() + std::ptrdiff_t(best));
                break;
            }
        }
        gens.erase(std::remove_if(gens.begin(), gens.end(),
                                  [](const auto& r) { return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; }); }),
                   gens.end());
    }
    // reduce entries above pivots
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            std::int64_t q = out[i][j] / out[j][j];
            if (out[i][j] - q * out[j][j] < 0)
                --q;
            for (std::size_t k = 0; k < N; ++k)
                out[i][k] -= q * out[j][k];
        }
    return out;
}

/// Lower triangular variant: row i has zeros after column i, positive diagonal.
template <std::size_t N> int_basis<N> lower_hermite_basis(int_basis<N> gens)
{
    for (auto& g : gens)
        std::reverse(g.begin(), g.end());
    auto h = hermite_basis<N>(std::move(gens));
    for (auto& g : h)
        std::reverse(g.begin(), g.end());
    std::reverse(h.begin(), h.end());
    return h;
}

/// LLL reduction (delta = 0.99) of an integer basis with respect to the positive definite
/// quadratic form gram(x, y). Basis vectors are rows of integer coordinates.
template <std::size_t N, class Gram> int_basis<N> lll_reduce(int_basis<N> b, Gram&& gram)
{
    const std::size_t n = b.size();
    auto dot = [&](const std::array<std::int64_t, N>& x, const std::array<std::int64_t, N>& y) { return gram(x, y); };
    std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
    std::vector<double> bstar(n, 0.0);
    auto recompute = [&] {
        // Gram-Schmidt in terms of the form: mu_ij = <b_i, b*_j>/B_j
        std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double s = dot(b[i], b[j]);
                for (std::size_t k = 0; k < j; ++k)
                    s -= mu[j][k] * r[i][k];
                r[i][j] = s;
                mu[i][j] = s / bstar[j];
            }
            double s = dot(b[i], b[i]);
            for (std::size_t k = 0; k < i; ++k)
                s -= mu[i][k] * r[i][k];
            bstar[i] = s;
        }
    };
    recompute();
    std::size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000)
            break;
        for (std::size_t jj = k; jj-- > 0;) {
            const double q = std::round(mu[k][jj]);
            if (q != 0.0) {
                const auto qi = std::int64_t(q);
                for (std::size_t t = 0; t < N; ++t)
                    b[k][t] -= qi * b[jj][t];
                recompute();
            }
        }
        if (bstar[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            recompute();
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

} // namespace fourrank
