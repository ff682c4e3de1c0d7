#pragma once

#include <stdexcept>
#include <string>

namespace wlg {

/// Malformed or unsupported user input (files, command-line values).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A property guaranteed by construction was violated; signals a solver bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace wlg
