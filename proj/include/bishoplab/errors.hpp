#ifndef BISHOPLAB_ERRORS_HPP
#define BISHOPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bishoplab {

// Thrown when a comparison or a value cannot be certified at the working
// precision; callers are expected to widen precision or widen the orbit
// truncation and retry.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the fast Birkhoff-sum evaluator (and other windowed routines)
// when the input lies outside the certified hypothesis window.  Refusal is
// explicit: no silent extrapolation.
class window_error : public std::runtime_error {
public:
    explicit window_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a partial-quotient prefix runs out before the requested depth
// and no continuation rule is attached.
class generator_exhausted : public std::runtime_error {
public:
    explicit generator_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a construction would need integers beyond the configured
// big-integer budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bishoplab

#endif
