#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace laplim {

/// Raised by the tree-literal / spec-literal / expression parsers.
/// `position` is the byte offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// The O(n) linear-tree recurrence hit a value too close to zero to divide
/// through safely; callers fall back to the generic diagonalization.
class GuardTripped : public std::runtime_error {
public:
    explicit GuardTripped(int index)
        : std::runtime_error("recurrence guard tripped at S_" + std::to_string(index)),
          index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

/// A numeric result contradicts its own cross-check (e.g. no isolated
/// polynomial root matches the numeric limit estimate).
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A radius sequence that was expected to increase strictly did not.
class MonotonicityError : public InconsistencyError {
public:
    MonotonicityError(const std::string& msg, int index)
        : InconsistencyError(msg), index_(index) {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Precision auto-escalation reached its cap without resolving the request.
class PrecisionCapReached : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace laplim
