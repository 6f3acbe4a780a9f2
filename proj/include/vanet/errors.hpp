#pragma once

#include <stdexcept>
#include <string>

namespace vanet {

/// Precondition violation on a physical or probabilistic argument.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A link whose per-slot success rate is exactly zero can never deliver.
class infeasible_link_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised while parsing or validating a run configuration; carries the
/// offending field path in the message.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vanet
