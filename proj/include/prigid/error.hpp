#pragma once

#include <stdexcept>
#include <string>

namespace prigid {

/// Caller violated an operation's contract (bad descriptor, wrong field kind, ...).
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size bound would be exceeded.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated series does not carry enough terms for the requested answer.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input lies outside the tame p-power setting handled here.
class out_of_scope_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal identity that must hold exactly did not.
class verification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace prigid
