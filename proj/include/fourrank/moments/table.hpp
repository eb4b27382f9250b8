#pragma once

#include <cstdint>
#include <vector>

#include "fourrank/arith/factor.hpp"
#include "fourrank/arith/sieve.hpp"

namespace fourrank {

/// Positive squarefree integers up to X with their prime factors, stored flat.
class squarefree_table {
public:
    explicit squarefree_table(std::uint64_t X) : X_(X)
    {
        offsets_.push_back(0);
        positive_squarefree_sieve(X, [&](const factored_int& f) {
            values_.push_back(std::uint64_t(f.value));
            for (const auto& pp : f.factors)
                primes_.push_back(pp.prime);
            offsets_.push_back(primes_.size());
        });
    }

    std::uint64_t bound() const { return X_; }
    std::size_t size() const { return values_.size(); }
    std::uint64_t value(std::size_t i) const { return values_[i]; }

    /// Writes sign * value(i) with its factorization into out (reusing its storage).
    void load(std::size_t i, int sign, factored_int& out) const
    {
        out.value = sign * std::int64_t(values_[i]);
        out.sign = sign;
        out.factors.clear();
        for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
            out.factors.push_back({primes_[k], 1});
    }

private:
    std::uint64_t X_;
    std::vector<std::uint64_t> values_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint64_t> primes_;
};

} // namespace fourrank
