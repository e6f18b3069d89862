#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ybhom {

// Malformed user input: bad tables, bad parameters, unreadable files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource ceiling was hit. Reported, never silently truncated.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken internal invariant (nonzero composite boundary, UCT mismatch,
// failed certification of a builtin family). Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

//! Resource ceilings for matrix assembly and elimination.
struct Budget {
    std::int64_t max_entries = 50'000'000;  // stored nonzeros per matrix
    std::int64_t max_bits = 1 << 16;        // magnitude ceiling per entry
    std::int64_t wall_ms = 0;               // per-matrix elimination ceiling, 0 = off
};

}  // namespace ybhom
