#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zetawalk {

// Invalid argument values (p outside (0,1], s <= 1/2, negative tolerances, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A request that is structurally fine but exceeds a hard resource cap.  Carries
// the cap that was exceeded so callers can report or re-plan.
class capacity_error : public std::length_error {
public:
    capacity_error(const std::string& what, std::uint64_t cap)
        : std::length_error(what), cap_(cap) {}
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t cap_;
};

// An evaluation point coincides with (or sits inside the exclusion radius of) a
// zero of the product; carries the offending location.
class singular_point_error : public std::runtime_error {
public:
    singular_point_error(const std::string& what, double where)
        : std::runtime_error(what), where_(where) {}
    double where() const noexcept { return where_; }

private:
    double where_;
};

// A stage could not obtain a prerequisite quantity (e.g. a trend constant).
class dependency_error : public std::runtime_error {
public:
    explicit dependency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zetawalk
