#pragma once

#include <stdexcept>
#include <string>

namespace lame {

// Thrown when an iterative solver fails to converge or a resolvent is
// requested too close to the discrete symbol range.  Maps to CLI exit 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed field file, bad magic, truncation.  Message carries the byte
// offset of the first inconsistency.  Maps to CLI exit 2.
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lame
