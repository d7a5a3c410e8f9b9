#pragma once

#include <stdexcept>
#include <string>

namespace partgraph {

/// A configured resource limit was exceeded (level cap, neighborhood cap, ...).
/// The message always names the cap and the offending value.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Arguments violate an operation's precondition (size mismatch, level too
/// small for a canonical family, zero denominator, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file or literal.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// A theorem-backed check failed. This never indicates bad input; it signals
/// a bug in the engine itself and is mapped to a distinct exit status.
class internal_check_error : public std::logic_error {
public:
    explicit internal_check_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace partgraph
