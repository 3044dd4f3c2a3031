#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace boxhelly {

/// Reference to one box inside an instance.
struct BoxRef {
    std::size_t family = 0;
    std::size_t box = 0;

    friend bool operator==(const BoxRef&, const BoxRef&) = default;
    friend auto operator<=>(const BoxRef&, const BoxRef&) = default;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller broke a precondition (bad dimension, index out of range, ...).
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Malformed instance or report file.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A randomized generator exhausted its retry budget.
class GenerationFailed : public Error {
  public:
    using Error::Error;
};

/// A deterministic generator failed its own validity check.
class SelfCheckFailed : public Error {
  public:
    using Error::Error;
};

/// The input does not satisfy the theorem hypothesis. Carries a transversal
/// (one box per family) whose trace intersection is too small; it can be
/// re-checked independently through the trace engine.
class HypothesisViolated : public Error {
  public:
    HypothesisViolated(std::string message, std::vector<BoxRef> transversal)
        : Error(std::move(message)), transversal_(std::move(transversal)) {}

    const std::vector<BoxRef>& transversal() const { return transversal_; }

  private:
    std::vector<BoxRef> transversal_;
};

/// The per-axis split structure required for relabeling is inconsistent,
/// which certifies the hypothesis fails. Carries a violating transversal.
class StructureViolated : public Error {
  public:
    StructureViolated(std::string message, std::vector<BoxRef> transversal)
        : Error(std::move(message)), transversal_(std::move(transversal)) {}

    const std::vector<BoxRef>& transversal() const { return transversal_; }

  private:
    std::vector<BoxRef> transversal_;
};

}  // namespace boxhelly
