#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/int128.hpp"
#include "fourrank/arith/padic.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/classgroup/lattice.hpp"
#include "fourrank/error.hpp"
#include "fourrank/quadfield.hpp"

namespace fourrank {

/// Coordinates of a field element on the power basis (1, s, t, u) scaled by the order's
/// denominator: alpha = (c0 + c1 s + c2 t + c3 u) / den, with s^2 = m, t^2 = n,
/// u = s t / g, g = gcd(m, n). Quadratic orders only use c0, c1.
using scaled_vec = std::array<i128, 4>;

/// Coordinates on the order's integral basis.
using order_vec = std::array<std::int64_t, 4>;

/// A prime ideal of a quadratic or biquadratic maximal order.
///
/// Valuations are evaluated in one of three ways, chosen from the splitting of p in the
/// quadratic subfields: a p-adic embedding (residue degree 1, p totally split), the
/// valuation of the relative norm to the quadratic subfield where p splits, or the
/// absolute norm when p has a single prime above it.
struct prime_ideal {
    enum class method { embedding, relative_norm, absolute_norm };

    std::uint64_t p = 0;
    int e = 1;
    int f = 1;
    method how = method::absolute_norm;
    /// relative_norm: subfield index 0, 1, 2 for Q(sqrt m), Q(sqrt n), Q(sqrt k).
    int subfield = 0;
    /// embedding/relative_norm: image of sqrt(m) (resp. subfield radicand) in Z_p mod p^N.
    std::uint64_t root_a = 0;
    /// embedding (quartic): image of sqrt(n).
    std::uint64_t root_b = 0;
    /// Second element of a two-element representation P = (p, gamma), integral-basis coordinates.
    order_vec gamma{};
    /// Position in order::primes_above(p).
    int index = 0;

    std::uint64_t norm() const
    {
        std::uint64_t q = 1;
        for (int i = 0; i < f; ++i)
            q *= p;
        return q;
    }

    std::string label() const { return "P" + std::to_string(p) + "_" + std::to_string(index); }
};

/// Maximal order of Q(sqrt m) or Q(sqrt m, sqrt n).
class number_field_order {
public:
    /// Maximal order of the quadratic field Q(sqrt m).
    static number_field_order quadratic(std::int64_t m)
    {
        if (m == 0 || m == 1 || !is_squarefree(m))
            throw domain_error("quadratic order: m=" + std::to_string(m) + " must be squarefree and not 0, 1");
        number_field_order o;
        o.degree_ = 2;
        o.den_ = 2;
        o.rad_ = {1, m, 0, 0};
        o.m_ = m;
        o.disc_ = fundamental_discriminant(m);
        o.subfield_discs_ = {o.disc_, 0, 0};
        if (((m % 4) + 4) % 4 == 1)
            o.basis_ = {{{2, 0, 0, 0}}, {{1, 1, 0, 0}}};
        else
            o.basis_ = {{{2, 0, 0, 0}}, {{0, 2, 0, 0}}};
        o.finish();
        return o;
    }

    /// Maximal order of Q(sqrt m, sqrt n), from Z[sqrt m, sqrt n] refined at 2.
    static number_field_order biquadratic(std::int64_t m, std::int64_t n)
    {
        for (auto x : {m, n})
            if (x == 0 || !is_squarefree(x))
                throw domain_error("biquadratic order: radicands must be nonzero squarefree");
        const std::int64_t g = std::gcd(m, n);
        const std::int64_t k = (m / g) * (n / g);
        if (m == 1 || n == 1 || k == 1 || m == n)
            throw domain_error("biquadratic order: Q(sqrt " + std::to_string(m) + ", sqrt " + std::to_string(n) +
                               ") is not quartic");
        number_field_order o;
        o.degree_ = 4;
        o.den_ = 4;
        o.m_ = m;
        o.n_ = n;
        o.g_ = g;
        o.k_ = k;
        o.rad_ = {1, m, n, k};
        o.subfield_discs_ = {fundamental_discriminant(m), fundamental_discriminant(n), fundamental_discriminant(k)};
        o.disc_ = o.subfield_discs_[0] * o.subfield_discs_[1] * o.subfield_discs_[2];
        o.basis_ = {{{4, 0, 0, 0}}, {{0, 4, 0, 0}}, {{0, 0, 4, 0}}, {{0, 0, 0, 4}}};
        o.refine_at_two();
        o.finish();
        return o;
    }

    int degree() const { return degree_; }
    std::int64_t den() const { return den_; }
    std::int64_t disc() const { return disc_; }
    std::int64_t m() const { return m_; }
    std::int64_t n() const { return n_; }
    std::int64_t k() const { return k_; }
    std::int64_t g() const { return g_; }
    const std::array<std::int64_t, 3>& subfield_discs() const { return subfield_discs_; }
    /// Integral basis as rows of scaled power-basis coordinates.
    const int_basis<4>& basis() const { return basis_; }

    bool totally_real() const
    {
        return degree_ == 2 ? m_ > 0 : (m_ > 0 && n_ > 0);
    }

    /// Number of complex places.
    int complex_places() const { return totally_real() ? 0 : degree_ / 2; }

    double minkowski_bound() const
    {
        const double d = double(degree_);
        double fact = 1;
        for (int i = 2; i <= degree_; ++i)
            fact *= i;
        return fact / std::pow(d, d) * std::pow(4.0 / M_PI, complex_places()) * std::sqrt(std::fabs(double(disc_)));
    }

    /// |disc| of the lattice spanned by basis(), from its covolume in the power basis.
    bigint lattice_disc() const
    {
        bigint det = 1;
        for (int i = 0; i < degree_; ++i)
            det *= basis_[i][i];
        bigint power_disc = 1; // disc of Z[1, s, (t, u)]: deg^deg * prod radicands
        for (int i = 0; i < degree_; ++i)
            power_disc *= bigint(degree_) * rad_[i];
        bigint denom = 1;
        for (int i = 0; i < degree_; ++i)
            denom *= den_;
        // index [O : Z[...]] = denom / det
        return power_disc * det * det / (denom * denom);
    }

    scaled_vec to_scaled(const order_vec& c) const
    {
        scaled_vec out{0, 0, 0, 0};
        for (int i = 0; i < degree_; ++i)
            for (int j = 0; j < 4; ++j)
                out[j] += i128(c[i]) * basis_[i][j];
        return out;
    }

    /// Integral-basis coordinates of x; nullopt when x is not in the order.
    std::optional<order_vec> from_scaled(scaled_vec x) const
    {
        for (int j = degree_; j < 4; ++j)
            if (x[j] != 0)
                return std::nullopt;
        order_vec c{0, 0, 0, 0};
        for (int i = degree_ - 1; i >= 0; --i) {
            if (x[i] % basis_[i][i] != 0)
                return std::nullopt;
            const i128 q = x[i] / basis_[i][i];
            c[i] = std::int64_t(q);
            for (int j = 0; j <= i; ++j)
                x[j] -= q * basis_[i][j];
        }
        return c;
    }

    /// Product of scaled elements, rescaled (result is den * alpha * beta).
    scaled_vec multiply(const scaled_vec& x, const scaled_vec& y) const
    {
        const i128 m = m_, n = n_, k = k_, g = g_;
        scaled_vec r{};
        if (degree_ == 2) {
            r[0] = x[0] * y[0] + m * x[1] * y[1];
            r[1] = x[0] * y[1] + x[1] * y[0];
        } else {
            r[0] = x[0] * y[0] + m * x[1] * y[1] + n * x[2] * y[2] + k * x[3] * y[3];
            r[1] = x[0] * y[1] + x[1] * y[0] + (n / g) * (x[2] * y[3] + x[3] * y[2]);
            r[2] = x[0] * y[2] + x[2] * y[0] + (m / g) * (x[1] * y[3] + x[3] * y[1]);
            r[3] = x[0] * y[3] + x[3] * y[0] + g * (x[1] * y[2] + x[2] * y[1]);
        }
        for (auto& v : r) {
            if (v % den_ != 0)
                throw domain_error("multiply: product left the scaled lattice");
            v /= den_;
        }
        return r;
    }

    /// Relative norm of the scaled element x (= den*alpha) to subfield i, as A + B sqrt(rad):
    /// returns (A, B) for N(den * alpha).
    std::pair<i128, i128> relative_norm(const scaled_vec& x, int subfield) const
    {
        const i128 m = m_, n = n_, k = k_, g = g_;
        switch (subfield) {
        case 0:
            return {x[0] * x[0] + m * x[1] * x[1] - n * x[2] * x[2] - k * x[3] * x[3],
                    2 * x[0] * x[1] - 2 * x[2] * x[3] * (n / g)};
        case 1:
            return {x[0] * x[0] + n * x[2] * x[2] - m * x[1] * x[1] - k * x[3] * x[3],
                    2 * x[0] * x[2] - 2 * x[1] * x[3] * (m / g)};
        default:
            return {x[0] * x[0] + k * x[3] * x[3] - m * x[1] * x[1] - n * x[2] * x[2],
                    2 * x[0] * x[3] - 2 * g * x[1] * x[2]};
        }
    }

    std::int64_t subfield_radicand(int i) const { return i == 0 ? m_ : (i == 1 ? n_ : k_); }

    /// Exact absolute norm of alpha = x / den.
    bigint norm(const scaled_vec& x) const
    {
        if (degree_ == 2) {
            const bigint a = to_big(x[0]), b = to_big(x[1]);
            return (a * a - bigint(m_) * b * b) / (den_ * den_);
        }
        auto [A, B] = relative_norm(x, 0);
        const bigint a = to_big(A), b = to_big(B);
        return (a * a - bigint(m_) * b * b) / bigint(den_ * den_ * den_ * den_);
    }

    /// Fast absolute norm; nullopt when intermediate values would overflow 128 bits.
    std::optional<i128> norm_fast(const scaled_vec& x) const
    {
        constexpr i128 lim = i128(1) << 60;
        for (int i = 0; i < degree_; ++i)
            if (x[i] > (i128(1) << 24) || x[i] < -(i128(1) << 24))
                return std::nullopt;
        if (degree_ == 2)
            return (x[0] * x[0] - i128(m_) * x[1] * x[1]) / (den_ * den_);
        auto [A, B] = relative_norm(x, 0);
        if (A > lim || A < -lim || B > lim || B < -lim)
            return std::nullopt;
        const i128 B2 = B * B;
        if (B2 != 0 && std::abs(m_) > (i128(1) << 124) / B2)
            return std::nullopt;
        return (A * A - i128(m_) * B2) / (den_ * den_ * den_ * den_);
    }

    /// Trace form T2(x, y) = sum over embeddings of sigma(x) conj(sigma(y)) for scaled
    /// coordinates; the power basis is orthogonal for it.
    double t2(const scaled_vec& x, const scaled_vec& y) const
    {
        double s = 0;
        for (int i = 0; i < degree_; ++i)
            s += double(x[i]) * double(y[i]) * std::fabs(double(rad_[i]));
        return s * degree_ / double(den_ * den_);
    }

    double t2_order(const order_vec& a, const order_vec& b) const { return t2(to_scaled(a), to_scaled(b)); }

    bool is_integral(const scaled_vec& x) const
    {
        // alpha integral iff its trace and relative norm to Q(sqrt m) are integral there.
        if (degree_ == 2)
            return quadratic_integral(x[0], x[1], den_, m_);
        auto [A, B] = relative_norm(x, 0);
        return quadratic_integral(2 * x[0], 2 * x[1], den_, m_) && quadratic_integral(A, B, den_ * den_, m_);
    }

    /// Prime ideals above p with their splitting data.
    std::vector<prime_ideal> primes_above(std::uint64_t p) const
    {
        std::vector<prime_ideal> out;
        if (degree_ == 2)
            quadratic_primes(p, out);
        else
            quartic_primes(p, out);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i].index = int(i);
        for (auto& P : out)
            P.gamma = find_two_element_generator(P, out);
        return out;
    }

    /// v_P(alpha) for alpha = x / den, x != 0. Throws resource_error if the working
    /// p-adic precision is exhausted (only for elements of enormous norm).
    int valuation(const prime_ideal& P, const scaled_vec& x) const
    {
        const int shift = P.e * valuation_of_den(P.p);
        return valuation_scaled(P, x) - shift;
    }

    bool contains(const prime_ideal& P, const order_vec& c) const
    {
        const auto x = to_scaled(c);
        if (std::all_of(x.begin(), x.end(), [](i128 v) { return v == 0; }))
            return true;
        return valuation(P, x) >= 1;
    }

    /// Z-basis (integral-basis coordinates) of P, LLL-reduced for T2.
    int_basis<4> ideal_basis(const prime_ideal& P) const
    {
        const int N = degree_;
        const std::uint64_t p = P.p;
        // Collect elements of P modulo pO until their span has dimension N - f.
        std::vector<order_vec> echelon; // reduced mod p
        std::vector<int> pivots;
        std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (p * 1315423911ull) ^ std::uint64_t(P.index);
        auto next = [&] {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        int_basis<4> gens;
        for (int i = 0; i < N; ++i) {
            order_vec e{0, 0, 0, 0};
            e[i] = std::int64_t(p);
            gens.push_back(e);
        }
        gens.push_back(P.gamma);
        auto try_add = [&](order_vec v) {
            order_vec r = v;
            for (auto& x : r)
                x = ((x % std::int64_t(p)) + std::int64_t(p)) % std::int64_t(p);
            for (std::size_t i = 0; i < echelon.size(); ++i) {
                const int c = pivots[i];
                if (r[c] == 0)
                    continue;
                const std::int64_t fct = r[c];
                for (int j = 0; j < N; ++j)
                    r[j] = std::int64_t((r[j] - u128(fct) * u128(echelon[i][j]) % p + p) % p);
            }
            int piv = -1;
            for (int j = 0; j < N; ++j)
                if (r[j] != 0) {
                    piv = j;
                    break;
                }
            if (piv < 0)
                return;
            const std::uint64_t inv = inverse_mod(std::uint64_t(r[piv]), p);
            for (int j = 0; j < N; ++j)
                r[j] = std::int64_t(mulmod64(std::uint64_t(r[j]), inv, p));
            echelon.push_back(r);
            pivots.push_back(piv);
            gens.push_back(v);
        };
        try_add(P.gamma);
        const int want = N - P.f;
        // multiples gamma * omega_i are in P as well
        for (int i = 0; i < N && int(echelon.size()) < want; ++i) {
            order_vec e{0, 0, 0, 0};
            e[i] = 1;
            auto prod = from_scaled(multiply(to_scaled(P.gamma), to_scaled(e)));
            if (prod)
                try_add(*prod);
        }
        for (int tries = 0; int(echelon.size()) < want; ++tries) {
            if (tries > 200000)
                throw resource_error("ideal_basis: could not span " + P.label());
            order_vec v{0, 0, 0, 0};
            for (int j = 0; j < N; ++j)
                v[j] = std::int64_t(next() % p) - std::int64_t(p / 2);
            if (contains(P, v))
                try_add(v);
        }
        auto h = hermite_basis<4>(restrict_dim(gens));
        return lll_reduce<4>(pad(h), [this](const order_vec& a, const order_vec& b) { return t2_order(a, b); });
    }

    /// Reduced Z-basis of the whole order for T2.
    int_basis<4> reduced_basis() const
    {
        int_basis<4> b;
        for (int i = 0; i < degree_; ++i) {
            order_vec e{0, 0, 0, 0};
            e[i] = 1;
            b.push_back(e);
        }
        return lll_reduce<4>(b, [this](const order_vec& a, const order_vec& c) { return t2_order(a, c); });
    }

    std::string name() const
    {
        if (degree_ == 2)
            return "Q(sqrt(" + std::to_string(m_) + "))";
        return "Q(sqrt(" + std::to_string(m_) + "),sqrt(" + std::to_string(n_) + "))";
    }

private:
    number_field_order() = default;

    static bigint to_big(i128 v)
    {
        bigint r = bigint(std::uint64_t(abs_u128(v) >> 64));
        r <<= 64;
        r += std::uint64_t(abs_u128(v) & ~std::uint64_t(0));
        return v < 0 ? bigint(-r) : r;
    }

    /// (X + Y sqrt(m)) / D is an algebraic integer.
    static bool quadratic_integral(i128 X, i128 Y, i128 D, std::int64_t m)
    {
        if ((2 * X) % D != 0)
            return false;
        const bigint x = to_big(X), y = to_big(Y), d = to_big(D);
        const bigint nn = x * x - bigint(m) * y * y;
        return nn % (d * d) == 0;
    }

    int valuation_of_den(std::uint64_t p) const
    {
        int v = 0;
        std::int64_t d = den_;
        while (d % std::int64_t(p) == 0) {
            d /= std::int64_t(p);
            ++v;
        }
        return v;
    }

    int_basis<4> restrict_dim(const int_basis<4>& gens) const
    {
        if (degree_ == 4)
            return gens;
        // quadratic: pad unused coordinates so the 4-dim HNF sees a full-rank lattice
        int_basis<4> out = gens;
        out.push_back({0, 0, 1, 0});
        out.push_back({0, 0, 0, 1});
        return out;
    }

    int_basis<4> pad(const int_basis<4>& h) const
    {
        return int_basis<4>(h.begin(), h.begin() + degree_);
    }

    /// Valuation of the scaled element (den * alpha) at P.
    int valuation_scaled(const prime_ideal& P, const scaled_vec& x) const
    {
        const padic_precision prec(P.p);
        const int usable = prec.digits - (P.p == 2 ? 2 : 0);
        auto checked = [&](std::uint64_t r) {
            const int v = padic_valuation(r, prec);
            if (v >= usable)
                throw resource_error("valuation: p-adic precision exhausted at " + P.label());
            return v;
        };
        switch (P.how) {
        case prime_ideal::method::embedding: {
            const std::uint64_t M = prec.modulus;
            std::uint64_t acc = reduce_mod(x[0], M);
            acc = (acc + mulmod64(reduce_mod(x[1], M), P.root_a, M)) % M;
            if (degree_ == 4) {
                acc = (acc + mulmod64(reduce_mod(x[2], M), P.root_b, M)) % M;
                const std::uint64_t ginv = inverse_mod(reduce_mod(g_, M), M);
                const std::uint64_t ru = mulmod64(mulmod64(P.root_a, P.root_b, M), ginv, M);
                acc = (acc + mulmod64(reduce_mod(x[3], M), ru, M)) % M;
            }
            return checked(acc);
        }
        case prime_ideal::method::relative_norm: {
            auto [A, B] = relative_norm(x, P.subfield);
            const std::uint64_t M = prec.modulus;
            const std::uint64_t r = (reduce_mod(A, M) + mulmod64(reduce_mod(B, M), P.root_a, M)) % M;
            const int v = checked(r);
            if (v % P.f != 0)
                throw domain_error("valuation: relative norm valuation not divisible by residue degree");
            return v / P.f;
        }
        case prime_ideal::method::absolute_norm: {
            bigint nrm = norm(x); // norm of alpha; rescale to norm of den*alpha
            if (nrm == 0)
                throw domain_error("valuation of zero");
            int v = 0;
            while (nrm % P.p == 0) {
                nrm /= P.p;
                ++v;
            }
            v += degree_ * valuation_of_den(P.p);
            if (v % P.f != 0)
                throw domain_error("valuation: absolute norm valuation not divisible by residue degree");
            return v / P.f;
        }
        }
        return 0;
    }

    void quadratic_primes(std::uint64_t p, std::vector<prime_ideal>& out) const
    {
        const auto t = splitting_in_disc(disc_, p);
        if (t == splitting_type::split) {
            const padic_precision prec(p);
            const std::uint64_t r = padic_sqrt(m_, prec);
            for (int sgn : {1, -1}) {
                prime_ideal P;
                P.p = p;
                P.how = prime_ideal::method::embedding;
                P.root_a = sgn > 0 ? r : (prec.modulus - r) % prec.modulus;
                out.push_back(P);
            }
        } else {
            prime_ideal P;
            P.p = p;
            P.how = prime_ideal::method::absolute_norm;
            P.e = t == splitting_type::ramified ? 2 : 1;
            P.f = t == splitting_type::inert ? 2 : 1;
            out.push_back(P);
        }
    }

    void quartic_primes(std::uint64_t p, std::vector<prime_ideal>& out) const
    {
        std::array<splitting_type, 3> t;
        int ramified = 0, split = 0, split_index = -1, unram_index = -1;
        for (int i = 0; i < 3; ++i) {
            t[i] = splitting_in_disc(subfield_discs_[i], p);
            if (t[i] == splitting_type::ramified)
                ++ramified;
            else
                unram_index = i;
            if (t[i] == splitting_type::split) {
                ++split;
                split_index = i;
            }
        }
        const padic_precision prec(p);
        auto neg = [&](std::uint64_t r) { return (prec.modulus - r) % prec.modulus; };
        if (ramified == 0 && split == 3) {
            const std::uint64_t ra = padic_sqrt(m_, prec), rb = padic_sqrt(n_, prec);
            for (int sa : {1, -1})
                for (int sb : {1, -1}) {
                    prime_ideal P;
                    P.p = p;
                    P.how = prime_ideal::method::embedding;
                    P.root_a = sa > 0 ? ra : neg(ra);
                    P.root_b = sb > 0 ? rb : neg(rb);
                    out.push_back(P);
                }
            return;
        }
        auto two_over_split = [&](int sub, int e, int f) {
            const std::uint64_t r = padic_sqrt(subfield_radicand(sub), prec);
            for (int s : {1, -1}) {
                prime_ideal P;
                P.p = p;
                P.e = e;
                P.f = f;
                P.how = prime_ideal::method::relative_norm;
                P.subfield = sub;
                P.root_a = s > 0 ? r : neg(r);
                out.push_back(P);
            }
        };
        if (ramified == 0) {
            if (split != 1)
                throw domain_error("quartic_primes: impossible unramified splitting pattern");
            two_over_split(split_index, 1, 2);
            return;
        }
        if (ramified == 2) {
            if (t[unram_index] == splitting_type::split) {
                two_over_split(unram_index, 2, 1);
            } else {
                prime_ideal P;
                P.p = p;
                P.e = 2;
                P.f = 2;
                P.how = prime_ideal::method::absolute_norm;
                out.push_back(P);
            }
            return;
        }
        if (ramified == 3) {
            prime_ideal P;
            P.p = p;
            P.e = 4;
            P.f = 1;
            P.how = prime_ideal::method::absolute_norm;
            out.push_back(P);
            return;
        }
        throw domain_error("quartic_primes: impossible ramification pattern at p=" + std::to_string(p));
    }

    /// Small gamma with v_P(gamma) = 1 (any positive value if e = 1) and v_Q(gamma) = 0 for
    /// the other primes Q above p, so that P = pO + gamma O.
    order_vec find_two_element_generator(const prime_ideal& P, const std::vector<prime_ideal>& all) const
    {
        const int N = degree_;
        const std::int64_t p = std::int64_t(P.p);
        auto ok = [&](const order_vec& c) {
            const auto x = to_scaled(c);
            if (std::all_of(x.begin(), x.end(), [](i128 v) { return v == 0; }))
                return false;
            const int v = valuation(P, x);
            if (v < 1 || (P.e > 1 && v != 1))
                return false;
            for (const auto& Q : all)
                if (Q.index != P.index && valuation(Q, x) != 0)
                    return false;
            return true;
        };
        if (all.size() == 1 && P.e == 1) {
            // p itself generates P (inert-like); (p, p) is a valid representation.
            order_vec c{0, 0, 0, 0};
            c[0] = p; // first basis element is 1 in every order here
            return c;
        }
        // residue-class search: coordinates in [-p, p]; widen until found.
        for (std::int64_t B = 1;; B = std::min<std::int64_t>(B * 2, 4 * p + 4)) {
            std::array<std::int64_t, 4> c{0, 0, 0, 0};
            const std::int64_t width = 2 * B + 1;
            std::int64_t total = 1;
            for (int i = 0; i < N; ++i)
                total *= width;
            for (std::int64_t idx = 0; idx < total; ++idx) {
                std::int64_t t = idx;
                for (int i = 0; i < N; ++i) {
                    c[i] = t % width - B;
                    t /= width;
                }
                if (ok(c))
                    return c;
            }
            if (B >= 4 * p + 4)
                throw resource_error("no two-element generator found for " + P.label());
        }
    }

    void refine_at_two()
    {
        // Add integral elements of (1/2)L not in L until none remain.
        for (bool grew = true; grew;) {
            grew = false;
            for (int mask = 1; mask < (1 << degree_) && !grew; ++mask) {
                scaled_vec sum{0, 0, 0, 0};
                for (int i = 0; i < degree_; ++i)
                    if (mask >> i & 1)
                        for (int j = 0; j < 4; ++j)
                            sum[j] += basis_[i][j];
                if (std::any_of(sum.begin(), sum.end(), [](i128 v) { return v % 2 != 0; }))
                    continue;
                for (auto& v : sum)
                    v /= 2;
                if (from_scaled(sum) || !is_integral(sum))
                    continue;
                int_basis<4> gens = basis_;
                gens.push_back({std::int64_t(sum[0]), std::int64_t(sum[1]), std::int64_t(sum[2]), std::int64_t(sum[3])});
                basis_ = lower_hermite_basis<4>(gens);
                grew = true;
            }
        }
    }

    void finish()
    {
        if (basis_[0] != order_vec{den_, 0, 0, 0})
            throw domain_error("order basis must start with 1");
        if (lattice_disc() != bigint(disc_ < 0 ? -disc_ : disc_) && lattice_disc() != bigint(disc_))
            throw domain_error("order " + name() + ": lattice discriminant " + lattice_disc().str() +
                               " != " + std::to_string(disc_));
    }

    int degree_ = 2;
    std::int64_t den_ = 2;
    std::int64_t m_ = 0, n_ = 0, g_ = 1, k_ = 0;
    std::array<std::int64_t, 4> rad_{1, 0, 0, 0};
    std::int64_t disc_ = 0;
    std::array<std::int64_t, 3> subfield_discs_{0, 0, 0};
    int_basis<4> basis_;
};

} // namespace fourrank
