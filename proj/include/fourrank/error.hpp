#pragma once

#include <stdexcept>
#include <string>

namespace fourrank {

/// Input outside the mathematical domain of an operation (zero, non-squarefree,
/// degenerate extension, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured budget (time, memory, iteration count) was exhausted.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An object is missing data that the operation needs.
class state_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

[[noreturn]] inline void fail_domain(const std::string& what) { throw domain_error(what); }

} // namespace detail

} // namespace fourrank
