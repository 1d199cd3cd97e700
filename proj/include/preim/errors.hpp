#pragma once

#include <stdexcept>
#include <string>

namespace preim {

struct InvalidPrime : std::domain_error {
    explicit InvalidPrime(const std::string& msg) : std::domain_error(msg) {}
};

struct DegreeDrop : std::domain_error {
    explicit DegreeDrop(const std::string& msg) : std::domain_error(msg) {}
};

struct HypothesisViolated : std::domain_error {
    explicit HypothesisViolated(const std::string& msg) : std::domain_error(msg) {}
};

struct ExtensionUnsupported : std::domain_error {
    explicit ExtensionUnsupported(const std::string& msg) : std::domain_error(msg) {}
};

struct ChainBroken : std::domain_error {
    explicit ChainBroken(const std::string& msg) : std::domain_error(msg) {}
};

struct ZeroElement : std::domain_error {
    explicit ZeroElement(const std::string& msg) : std::domain_error(msg) {}
};

struct DegenerateRelation : std::domain_error {
    explicit DegenerateRelation(const std::string& msg) : std::domain_error(msg) {}
};

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotApplicable : std::domain_error {
    explicit NotApplicable(const std::string& msg) : std::domain_error(msg) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// series_sqrt precondition failure; tells the caller which fix applies.
struct NeedsExtension : std::domain_error {
    enum class Kind { OddExponent, NonSquareCoefficient };
    Kind kind;
    NeedsExtension(Kind k, const std::string& msg) : std::domain_error(msg), kind(k) {}
};

}  // namespace preim
