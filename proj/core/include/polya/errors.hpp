#pragma once

#include <stdexcept>
#include <string>

namespace polya {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polygon input fails validation (too few vertices, wrong orientation,
/// duplicate points, concavity beyond tolerance, degenerate area).
struct InvalidPolygon : Error {
    using Error::Error;
};

/// Exponent pair outside the admissible range for the requested operation.
struct InvalidExponents : Error {
    using Error::Error;
};

/// alpha == 1 in the inradius/diameter estimate; no control is possible there.
struct BorderlineExponent : Error {
    using Error::Error;
};

/// A profile or field that is identically zero where a quotient needs it.
struct DegenerateProfile : Error {
    using Error::Error;
};
struct DegenerateField : Error {
    using Error::Error;
};

/// Iterative solver failed to reach its stopping rule; carries the best value seen.
struct ConvergenceFailure : Error {
    ConvergenceFailure(const std::string& what, double best)
        : Error(what), best_value(best) {}
    double best_value;
};

/// Requested resolution would exceed the node budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Inner-parallel table too coarse to be internally consistent.
struct ProfileTooCoarse : Error {
    using Error::Error;
};

/// Shape maximization requires q > p; for q <= p there is no optimal shape.
struct QNotGreaterThanP : Error {
    using Error::Error;
};

/// A check whose verdict cannot be decided at the available resolution.
struct Inconclusive : Error {
    using Error::Error;
};

} // namespace polya
