#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/symbols.hpp"
#include "fourrank/classgroup/abelian.hpp"
#include "fourrank/error.hpp"
#include "fourrank/quadfield.hpp"

namespace fourrank {

enum class condition_kind { zero, full, unramified, unramified_plus_chi_k, chi_n_plus_chi_k };

inline const char* to_string(condition_kind k)
{
    switch (k) {
    case condition_kind::zero:
        return "zero";
    case condition_kind::full:
        return "full";
    case condition_kind::unramified:
        return "unramified";
    case condition_kind::unramified_plus_chi_k:
        return "unramified+chi_K";
    case condition_kind::chi_n_plus_chi_k:
        return "chi_n+chi_K";
    }
    return "?";
}

/// The subspace L'_{v,n} of Q_v^*/Q_v^*2 (characters chi_g for the listed g).
struct local_condition_space {
    place v;
    condition_kind kind = condition_kind::zero;
    int dim = 0;
    /// Integers whose square classes span the space.
    std::vector<std::int64_t> generators;
};

/// X~_n (from the conditions on (d, -n)) or Y~_n (from (d, n)).
enum class selmer_variant { x, y };

inline const char* to_string(selmer_variant v) { return v == selmer_variant::x ? "X" : "Y"; }

/// Finite set of squarefree d, each standing for the character chi_d.
struct quad_character_set {
    std::int64_t z = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> members;

    std::size_t size() const { return members.size(); }
    bool is_trivial() const { return members.size() == 1 && members[0] == 1; }
    bool contains(std::int64_t d) const { return std::find(members.begin(), members.end(), d) != members.end(); }

    /// "{1, -2}"
    std::string to_string() const
    {
        std::ostringstream os;
        os << '{';
        for (std::size_t i = 0; i < members.size(); ++i)
            os << (i ? ", " : "") << members[i];
        os << '}';
        return os.str();
    }
};

namespace detail {

/// Coordinates of the class of x in Q_v^*/Q_v^*2 over F_2, packed into bits.
inline std::uint32_t square_class_bits(i128 x, place v)
{
    if (x == 0)
        throw domain_error("square_class_bits: zero");
    if (v.is_infinite())
        return x < 0 ? 1u : 0u;
    const i128 p = i128(v.p);
    std::uint32_t bits = 0;
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    if (e % 2)
        bits |= 1u;
    if (v.p == 2) {
        bits |= std::uint32_t(unit_eps(x)) << 1;
        bits |= std::uint32_t(unit_omega(x)) << 2;
        return bits;
    }
    i128 r = x % p;
    if (r < 0)
        r += p;
    if (kronecker(std::int64_t(r), std::int64_t(p)) == -1)
        bits |= 2u;
    return bits;
}

/// F_2-rank of the span of the given bit vectors.
inline int f2_rank(std::vector<std::uint32_t> rows)
{
    int rank = 0;
    for (std::uint32_t bit = 1; bit != 0 && bit <= (1u << 8); bit <<= 1) {
        auto it = std::find_if(rows.begin(), rows.end(), [bit](std::uint32_t r) { return r & bit; });
        if (it == rows.end())
            continue;
        const std::uint32_t piv = *it;
        rows.erase(it);
        for (auto& r : rows)
            if (r & bit)
                r ^= piv;
        ++rank;
    }
    return rank;
}

/// A unit u whose class generates the unramified classes of Q_p^*/Q_p^*2.
inline std::int64_t unramified_generator(std::uint64_t p)
{
    if (p == 2)
        return 5;
    for (std::int64_t u = 2;; ++u)
        if (kronecker(u, std::int64_t(p)) == -1)
            return u;
}

inline std::int64_t mod_positive(std::int64_t a, std::int64_t p)
{
    const std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

/// Primes of 2 * Delta * n in increasing order.
inline std::vector<std::uint64_t> primes_of_2_delta_n(const quadratic_field& field, const factored_int& n)
{
    std::vector<std::uint64_t> ps{2};
    for (const auto& pp : field.disc_factored().factors)
        ps.push_back(pp.prime);
    for (const auto& pp : n.factors)
        ps.push_back(pp.prime);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

/// Sort order for character sets: by |d|, positive first.
inline bool character_less(std::int64_t a, std::int64_t b)
{
    const std::int64_t aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    return aa != bb ? aa < bb : a > b;
}

} // namespace detail

/// Rejects n for which K(sqrt(n)) is not quartic or n is not squarefree.
inline void check_twist(const quadratic_field& field, const factored_int& n)
{
    if (n.value == 0)
        throw domain_error("n must be nonzero");
    if (!n.is_squarefree())
        throw domain_error("n=" + std::to_string(n.value) + " is not squarefree");
    if (n.value == 1)
        throw domain_error("n=1 is degenerate: K(sqrt(1)) = K");
    if (n.value == field.z())
        throw domain_error("n=" + std::to_string(n.value) + " equals z: K(sqrt(n)) = K");
}

/// Whether n is a square in K_w for a place w | p of K (p finite).
inline bool is_square_in_completion(const quadratic_field& field, std::int64_t n, std::uint64_t p)
{
    const place v = place::prime(p);
    if (is_local_square(i128(n), v))
        return true;
    if (field.splitting(p) == splitting_type::split)
        return false;
    return is_local_square(i128(n) * field.z(), v);
}

/// L'_{v,n}: characters of Q_v whose restriction to K_w lies in the local condition at w.
inline local_condition_space local_condition(const quadratic_field& field, const factored_int& n, place v)
{
    check_twist(field, n);
    local_condition_space out;
    out.v = v;
    if (v.is_infinite()) {
        if (field.is_real()) {
            out.kind = condition_kind::zero;
        } else {
            out.kind = condition_kind::full;
            out.generators = {-1};
        }
    } else {
        if (!is_prime(v.p))
            throw domain_error("local_condition: " + std::to_string(v.p) + " is not prime");
        const bool ramified_in_k = field.disc() % std::int64_t(v.p) == 0;
        if (is_square_in_completion(field, n.value, v.p)) {
            const std::int64_t u = detail::unramified_generator(v.p);
            if (ramified_in_k) {
                out.kind = condition_kind::unramified_plus_chi_k;
                out.generators = {u, field.z()};
            } else {
                out.kind = condition_kind::unramified;
                out.generators = {u};
            }
        } else {
            out.kind = condition_kind::chi_n_plus_chi_k;
            out.generators = {n.value, field.z()};
        }
    }
    std::vector<std::uint32_t> rows;
    for (auto g : out.generators)
        rows.push_back(detail::square_class_bits(g, v));
    out.dim = detail::f2_rank(rows);
    return out;
}

inline local_condition_space local_condition(const quadratic_field& field, std::int64_t n, place v)
{
    return local_condition(field, factorize(n), v);
}

/// L'_{v,n} at infinity and at every prime of 2 Delta n; at all other places the space is
/// the unramified line.
inline std::vector<local_condition_space> place_dimension_table(const quadratic_field& field, const factored_int& n)
{
    check_twist(field, n);
    std::vector<local_condition_space> out{local_condition(field, n, place::infinity())};
    for (auto p : detail::primes_of_2_delta_n(field, n))
        out.push_back(local_condition(field, n, place::prime(p)));
    return out;
}

/// Whether squarefree d | 2 Delta n satisfies the merged odd-prime conditions defining the
/// candidate set. `primes` are the primes of 2 Delta n; `d_mask` marks those dividing d.
inline bool passes_candidate_conditions(const quadratic_field& field, const factored_int& n,
                                        const std::vector<std::uint64_t>& primes, std::uint64_t d_mask,
                                        std::int64_t d, selmer_variant variant)
{
    const std::int64_t g = std::gcd(d, n.value);
    const std::int64_t d_g = d / g, n_g = n.value / g;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes[i];
        if (p == 2 || field.disc() % std::int64_t(p) == 0)
            continue;
        const std::int64_t ip = std::int64_t(p);
        if (d_mask >> i & 1) {
            if (field.splitting(p) != splitting_type::split)
                return false;
            std::int64_t a = detail::mod_positive(d_g, ip);
            if (variant == selmer_variant::y)
                a = (ip - a) % ip;
            const std::int64_t r = std::int64_t(mulmod64(std::uint64_t(a), std::uint64_t(detail::mod_positive(n_g, ip)),
                                                         std::uint64_t(p)));
            if (kronecker(r, ip) != 1)
                return false;
        } else if (n.divisible_by(p)) {
            if (kronecker(detail::mod_positive(d, ip), ip) != 1)
                return false;
        }
    }
    return true;
}

namespace detail {

/// Calls f(d, mask) for every squarefree d | 2 Delta n (both signs); stops early when f
/// returns false.
template <class F> void for_each_divisor_of_2_delta_n(const std::vector<std::uint64_t>& primes, F&& f)
{
    if (primes.size() > 40)
        throw resource_error("candidate enumeration: too many primes in 2*Delta*n");
    const std::uint64_t count = std::uint64_t(1) << primes.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::int64_t d = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask >> i & 1)
                d *= std::int64_t(primes[i]);
        if (!f(d, mask) || !f(-d, mask))
            return;
    }
}

} // namespace detail

namespace detail {

/// Calls f(d) for each member of the candidate set, without the degeneracy check on n
/// (the conditions make formal sense for n = 1 and n = z too).
template <class F>
void for_each_candidate(const quadratic_field& field, const factored_int& n, selmer_variant variant, F&& f)
{
    const auto primes = primes_of_2_delta_n(field, n);
    for_each_divisor_of_2_delta_n(primes, [&](std::int64_t d, std::uint64_t mask) {
        if (passes_candidate_conditions(field, n, primes, mask, d, variant))
            return f(d);
        return true;
    });
}

} // namespace detail

/// Candidate superset X~_n or Y~_n: squarefree d | 2 Delta n passing the merged conditions.
inline quad_character_set candidates(const quadratic_field& field, const factored_int& n, selmer_variant variant)
{
    check_twist(field, n);
    quad_character_set out{field.z(), n.value, {}};
    detail::for_each_candidate(field, n, variant, [&](std::int64_t d) {
        out.members.push_back(d);
        return true;
    });
    std::sort(out.members.begin(), out.members.end(), detail::character_less);
    return out;
}

inline quad_character_set xn_candidates(const quadratic_field& field, std::int64_t n)
{
    return candidates(field, factorize(n), selmer_variant::x);
}

inline quad_character_set yn_candidates(const quadratic_field& field, std::int64_t n)
{
    return candidates(field, factorize(n), selmer_variant::y);
}

/// Size of the candidate set; accepts every squarefree n including 1 and z.
inline std::size_t candidate_count(const quadratic_field& field, const factored_int& n, selmer_variant variant)
{
    std::size_t c = 0;
    detail::for_each_candidate(field, n, variant, [&](std::int64_t) {
        ++c;
        return true;
    });
    return c;
}

/// Whether the candidate set is {1}, stopping at the first nontrivial member.
inline bool candidates_trivial(const quadratic_field& field, const factored_int& n, selmer_variant variant)
{
    bool trivial = true;
    detail::for_each_candidate(field, n, variant, [&](std::int64_t d) {
        if (d != 1)
            trivial = false;
        return trivial;
    });
    return trivial;
}

/// Y~_n computed as the set of squarefree d | 2 Delta n orthogonal, under the Hilbert
/// pairing, to L'_{p,n} at every odd prime p not dividing Delta. Built from local_condition
/// only, as an independent route to the candidate-list description.
inline quad_character_set yn_candidates_dual(const quadratic_field& field, const factored_int& n)
{
    check_twist(field, n);
    const auto primes = detail::primes_of_2_delta_n(field, n);
    std::vector<local_condition_space> conds;
    for (auto p : primes)
        if (p != 2 && field.disc() % std::int64_t(p) != 0)
            conds.push_back(local_condition(field, n, place::prime(p)));
    quad_character_set out{field.z(), n.value, {}};
    detail::for_each_divisor_of_2_delta_n(primes, [&](std::int64_t d, std::uint64_t) {
        for (const auto& c : conds)
            for (auto g : c.generators)
                if (hilbert_symbol(d, g, c.v) != 1)
                    return true;
        out.members.push_back(d);
        return true;
    });
    std::sort(out.members.begin(), out.members.end(), detail::character_less);
    return out;
}

inline quad_character_set yn_candidates_dual(const quadratic_field& field, std::int64_t n)
{
    return yn_candidates_dual(field, factorize(n));
}

/// dim Sel_{chi_n}(G_K, Z/2) = omega(Delta) - 1 + omega_inert(Delta_n) - [K real], valid when
/// both candidate sets are trivial.
inline int sel_dim_formula(const quadratic_field& field, const factored_int& n)
{
    check_twist(field, n);
    const auto xs = candidates(field, n, selmer_variant::x);
    const auto ys = candidates(field, n, selmer_variant::y);
    if (!xs.is_trivial() || !ys.is_trivial())
        throw domain_error("sel_dim_formula: n=" + std::to_string(n.value) + " is not generic (|X~_n|=" +
                           std::to_string(xs.size()) + ", |Y~_n|=" + std::to_string(ys.size()) +
                           "); the formula needs both candidate sets trivial, use their actual sizes");
    return field.omega_disc() - 1 + omega_inert_disc(field, n) - (field.is_real() ? 1 : 0);
}

inline int sel_dim_formula(const quadratic_field& field, std::int64_t n) { return sel_dim_formula(field, factorize(n)); }

/// sum over places of (dim L'_{v,n} - 1), minus one: the Selmer dimension obtained from the
/// place table directly.
inline int sel_dim_from_places(const quadratic_field& field, const factored_int& n)
{
    int s = 0;
    for (const auto& c : place_dimension_table(field, n))
        s += c.dim - 1;
    return s - 1;
}

/// Predicted rk4 Cl(K(sqrt(n))) = omega_inert(Delta_n) + omega(Delta) + rk2 Cl(K) - (3 or 2).
/// Signed: for real K the expression can be negative at n where the formula does not apply.
inline int predicted_rk4(const quadratic_field& field, const factored_int& n)
{
    check_twist(field, n);
    if (!field.class_group())
        throw state_error("predicted_rk4: class group of " + field.name() + " not attached");
    return omega_inert_disc(field, n) + field.omega_disc() + field.class_group()->rank2() - (field.is_real() ? 3 : 2);
}

inline int predicted_rk4(const quadratic_field& field, std::int64_t n) { return predicted_rk4(field, factorize(n)); }

struct identity_report {
    std::int64_t n = 0;
    std::size_t x_size = 0;
    std::size_t y_size = 0;
    bool generic = false;
    int predicted = 0;
    std::optional<int> sel_dim;
    int oracle_rk4 = 0;
    bool agree = false;
    std::string note;
};

/// Compares rk4 of the oracle group of Cl(K(sqrt(n))) with sel_dim + rk2 Cl(K) - 1.
/// Mismatches and non-generic n are reported, never thrown.
inline identity_report generic_identity_check(const quadratic_field& field, const factored_int& n,
                                              const abelian_group& oracle)
{
    check_twist(field, n);
    if (!field.class_group())
        throw state_error("generic_identity_check: class group of " + field.name() + " not attached");
    identity_report r;
    r.n = n.value;
    r.x_size = candidates(field, n, selmer_variant::x).size();
    r.y_size = candidates(field, n, selmer_variant::y).size();
    r.generic = r.x_size == 1 && r.y_size == 1;
    r.predicted = predicted_rk4(field, n);
    r.oracle_rk4 = oracle.rank4();
    if (!r.generic) {
        r.note = "non-generic n: |X~_n|=" + std::to_string(r.x_size) + ", |Y~_n|=" + std::to_string(r.y_size);
        return r;
    }
    r.sel_dim = sel_dim_formula(field, n);
    const int formula_side = *r.sel_dim + field.class_group()->rank2() - 1;
    r.agree = formula_side == r.oracle_rk4;
    if (!r.agree)
        r.note = "mismatch: oracle group " + oracle.to_string() + " has rk4=" + std::to_string(r.oracle_rk4) +
                 ", formula side " + std::to_string(formula_side);
    return r;
}

} // namespace fourrank
