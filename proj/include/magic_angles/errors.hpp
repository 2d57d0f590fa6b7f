#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magic_angles {

// Base class of every exception thrown by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition on the *caller's* side was violated
// (wrong component class, wrong vein, degenerate input, ...).
class hypothesis_error : public error {
public:
    using error::error;
};

// The input value lies outside the mathematical domain of the
// requested map; distinct from hypothesis_error so harnesses can
// count data-dependent exclusions separately from caller misuse.
class membership_error : public error {
public:
    using error::error;
};

// Malformed textual input; position is a 0-based offset into the text.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// An internal invariant that is supposed to be unconditionally true
// failed; indicates a bug in the library, never bad input.
class internal_error : public error {
public:
    using error::error;
};

} // namespace magic_angles
