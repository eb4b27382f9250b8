#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/error.hpp"

namespace fourrank {

using bigint = boost::multiprecision::cpp_int;

enum class splitting_type { split, inert, ramified };

inline const char* to_string(splitting_type s)
{
    switch (s) {
    case splitting_type::split:
        return "split";
    case splitting_type::inert:
        return "inert";
    case splitting_type::ramified:
        return "ramified";
    }
    return "?";
}

/// Discriminant of Q(sqrt(n)) for squarefree n not in {0, 1}.
inline std::int64_t fundamental_discriminant(std::int64_t n)
{
    const std::int64_t r = ((n % 4) + 4) % 4;
    return r == 1 ? n : 4 * n;
}

/// Splitting of p in the quadratic field of discriminant disc.
inline splitting_type splitting_in_disc(std::int64_t disc, std::uint64_t p)
{
    const int k = kronecker(disc, std::int64_t(p));
    return k == 0 ? splitting_type::ramified : (k == 1 ? splitting_type::split : splitting_type::inert);
}

/// Fundamental unit (a + b sqrt(disc)) / 2 of a real quadratic order, with its norm.
struct fundamental_unit {
    bigint a;
    bigint b;
    int norm;

    /// Natural log of the unit (the regulator), accurate for arbitrarily large a.
    double log() const
    {
        // unit = (a + b sqrt(D)) / 2 ~ a when large; use the exact value while it fits.
        const auto bits = boost::multiprecision::msb(a);
        if (bits < 900) {
            const double da = a.convert_to<double>();
            const double db = b.convert_to<double>();
            const double disc_root = std::sqrt((da * da - norm * 4.0) / (db * db));
            return std::log((da + db * disc_root) / 2.0);
        }
        const unsigned shift = unsigned(bits) - 60;
        const double top = bigint(a >> shift).convert_to<double>();
        // unit = a - (norm/unit) ~ a for large a; log(a) to double precision.
        return std::log(top) + double(shift) * std::log(2.0);
    }
};

/// Smallest unit > 1 of the maximal order of Q(sqrt(disc)), disc > 0, from the continued
/// fraction of omega = (delta + sqrt(disc))/2: the first convergent p/q with
/// (2p - q delta)^2 - disc q^2 = +-4 gives the unit.
inline fundamental_unit compute_fundamental_unit(std::int64_t disc)
{
    if (disc <= 0)
        throw domain_error("fundamental unit requested for imaginary discriminant");
    const std::int64_t delta = disc % 2 == 0 ? 0 : 1;
    const bigint D = disc;
    const bigint s = boost::multiprecision::sqrt(D);
    // complete quotient (P + sqrt(D)) / Q
    bigint P = delta, Q = 2;
    bigint p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
    for (std::uint64_t iter = 0;; ++iter) {
        if (iter > 100'000'000ull)
            throw resource_error("fundamental unit: continued fraction did not close");
        bigint a = (P + s) / Q;
        bigint p_next = a * p_prev + p_cur;
        bigint q_next = a * q_prev + q_cur;
        p_cur = p_prev;
        q_cur = q_prev;
        p_prev = p_next;
        q_prev = q_next;
        const bigint ua = 2 * p_prev - q_prev * delta;
        const bigint ub = q_prev;
        const bigint nrm = ua * ua - D * ub * ub;
        if (nrm == 4 || nrm == -4)
            return {ua, ub, nrm == 4 ? 1 : -1};
        P = a * Q - P;
        Q = (D - P * P) / Q;
        if (Q <= 0)
            throw resource_error("fundamental unit: continued fraction left the reduced cycle");
    }
}

/// The fixed quadratic field K = Q(sqrt(z)).
class quadratic_field {
public:
    explicit quadratic_field(std::int64_t z) : z_(z)
    {
        if (z == 0 || z == 1)
            throw domain_error("quadratic_field: z must not be 0 or 1");
        if (!is_squarefree(z))
            throw domain_error("quadratic_field: z=" + std::to_string(z) + " is not squarefree");
        disc_ = fundamental_discriminant(z);
        disc_factored_ = factorize(disc_);
        if (z > 0)
            unit_ = compute_fundamental_unit(disc_);
    }

    std::int64_t z() const { return z_; }
    std::int64_t disc() const { return disc_; }
    bool is_real() const { return z_ > 0; }
    const factored_int& disc_factored() const { return disc_factored_; }

    /// omega(Delta): number of ramified primes.
    int omega_disc() const { return disc_factored_.omega(); }

    const std::optional<fundamental_unit>& unit() const { return unit_; }

    splitting_type splitting(std::uint64_t p) const { return splitting_in_disc(disc_, p); }

    /// Class group of K (wide), attached by classgroup::attach_class_group.
    const std::optional<abelian_group>& class_group() const { return cl_; }
    void set_class_group(abelian_group g) { cl_ = std::move(g); }

    std::string name() const { return "Q(sqrt(" + std::to_string(z_) + "))"; }

private:
    std::int64_t z_;
    std::int64_t disc_;
    factored_int disc_factored_;
    std::optional<fundamental_unit> unit_;
    std::optional<abelian_group> cl_;
};

/// Number of distinct prime divisors of m inert in K.
inline int omega_inert(const quadratic_field& field, const factored_int& m)
{
    if (m.value == 0)
        throw domain_error("omega_inert: zero");
    int c = 0;
    for (const auto& pp : m.factors)
        if (field.splitting(pp.prime) == splitting_type::inert)
            ++c;
    return c;
}

/// Discriminant of Q(sqrt(n)) for squarefree n outside {0, 1}.
inline std::int64_t disc_of_sqrt(std::int64_t n)
{
    if (n == 0 || n == 1)
        throw domain_error("disc_of_sqrt: n must not be 0 or 1");
    if (!is_squarefree(n))
        throw domain_error("disc_of_sqrt: n=" + std::to_string(n) + " is not squarefree");
    return fundamental_discriminant(n);
}

/// omega_inert(Delta_n) from an already factored squarefree n (avoids refactoring in batch loops).
inline int omega_inert_disc(const quadratic_field& field, const factored_int& n)
{
    int c = omega_inert(field, n);
    const bool n_is_1_mod_4 = ((n.value % 4) + 4) % 4 == 1;
    if (!n_is_1_mod_4 && !n.divisible_by(2) && field.splitting(2) == splitting_type::inert)
        ++c;
    return c;
}

} // namespace fourrank
