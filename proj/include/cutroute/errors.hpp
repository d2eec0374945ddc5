#ifndef CUTROUTE_ERRORS_HPP
#define CUTROUTE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cutroute {

// Malformed or invalid input (files, specs, orders). Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A predict/reveal call that breaks the alternation protocol of a session.
class ProtocolError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An internal consistency check failed. This is always a bug. Exit code 3.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace cutroute

#endif // CUTROUTE_ERRORS_HPP
