#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fourrank/error.hpp"

namespace fourrank {

/// Finite abelian group d1 | d2 | ... | dk with every di >= 2.
class abelian_group {
public:
    abelian_group() = default;

    /// From any list of cyclic orders (not necessarily a divisibility chain);
    /// normalized to invariant factors. Entries equal to 1 are dropped.
    static abelian_group from_cyclic_orders(std::vector<std::uint64_t> orders)
    {
        std::vector<std::pair<std::uint64_t, std::vector<int>>> primary; // prime -> exponents
        for (auto d : orders) {
            if (d == 0)
                throw domain_error("abelian_group: infinite cyclic factor");
            for (std::uint64_t p = 2; d > 1; ++p) {
                if (p * p > d)
                    p = d;
                if (d % p)
                    continue;
                int e = 0;
                while (d % p == 0) {
                    d /= p;
                    ++e;
                }
                auto it = std::find_if(primary.begin(), primary.end(), [p](const auto& x) { return x.first == p; });
                if (it == primary.end()) {
                    primary.push_back({p, {}});
                    it = primary.end() - 1;
                }
                it->second.push_back(e);
            }
        }
        std::size_t k = 0;
        for (auto& [p, es] : primary) {
            std::sort(es.begin(), es.end(), std::greater<>());
            k = std::max(k, es.size());
        }
        // invariant factors listed largest first, then reversed
        std::vector<std::uint64_t> inv(k, 1);
        for (auto& [p, es] : primary)
            for (std::size_t i = 0; i < es.size(); ++i)
                for (int j = 0; j < es[i]; ++j)
                    inv[i] *= p;
        std::reverse(inv.begin(), inv.end());
        abelian_group g;
        g.factors_ = std::move(inv);
        return g;
    }

    const std::vector<std::uint64_t>& invariant_factors() const { return factors_; }

    std::uint64_t order() const
    {
        std::uint64_t o = 1;
        for (auto d : factors_)
            o *= d;
        return o;
    }

    /// dim_F2 A/2A: number of even invariant factors.
    int rank2() const { return rank_at(2); }

    /// dim_F2 2A/4A: number of invariant factors divisible by 4.
    int rank4() const { return rank_at(4); }

    int rank_at(std::uint64_t m) const
    {
        return int(std::count_if(factors_.begin(), factors_.end(), [m](auto d) { return d % m == 0; }));
    }

    bool is_trivial() const { return factors_.empty(); }

    /// "[2,4]" style; "[]" for the trivial group.
    std::string to_string(char sep = ',') const
    {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < factors_.size(); ++i)
            os << (i ? std::string(1, sep) : "") << factors_[i];
        os << ']';
        return os.str();
    }

    friend bool operator==(const abelian_group&, const abelian_group&) = default;

private:
    std::vector<std::uint64_t> factors_;
};

} // namespace fourrank
