#pragma once

#include <string_view>

namespace cyclesight {

/// Every numeric threshold the library uses. Passed explicitly; defaults are
/// sized for double precision.
struct Tolerances {
    double predicate = 1e-10;      // relative to max |entry|: predicates, Jordan kind
    double factorization = 1e-12;  // QR/LR residuals, shift singularity
    double psd = 1e-12;            // symmetry / negative-eigenvalue slack for LR
    double quadric = 1e-9;         // |Q(p)| on unit-norm Lie vectors
    double coordinate = 1e-12;     // zero test on unit-norm homogeneous coordinates
    double degenerate = 1e-6;      // collapsed gestures (radius, endpoint gap)
};

/// Parses "key=value,key=value" over the defaults in `base`. Throws
/// Error(BadRequest) on unknown keys or malformed numbers.
Tolerances parse_tolerances(std::string_view text, Tolerances base = {});

}  // namespace cyclesight
