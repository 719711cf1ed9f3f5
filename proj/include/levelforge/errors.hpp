#ifndef LEVELFORGE_ERRORS_HPP
#define LEVELFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace levelforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a Groebner computation exceeds the configured pair or degree budget.
struct BudgetExceeded : Error {
    long pairs_processed = 0;
    int degree_reached = 0;
    BudgetExceeded(const std::string& what, long pairs, int degree)
        : Error(what), pairs_processed(pairs), degree_reached(degree) {}
};

struct NotZeroDimensional : Error {
    using Error::Error;
};

/// A ring map failed to send some defining relation to zero.
struct WellDefinednessError : Error {
    std::string relation;
    WellDefinednessError(const std::string& what, std::string rel)
        : Error(what), relation(std::move(rel)) {}
};

struct HopfAxiomError : Error {
    std::string axiom;
    std::string generator;
    HopfAxiomError(const std::string& what, std::string ax, std::string gen)
        : Error(what), axiom(std::move(ax)), generator(std::move(gen)) {}
};

struct PointConditionError : Error {
    using Error::Error;
};

struct DivisionFailed : Error {
    using Error::Error;
};

struct InconsistentSystem : Error {
    using Error::Error;
};

struct VerificationFailed : Error {
    std::string generator;
    VerificationFailed(const std::string& what, std::string gen)
        : Error(what), generator(std::move(gen)) {}
};

}  // namespace levelforge

#endif
