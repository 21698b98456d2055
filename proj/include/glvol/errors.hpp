#pragma once

#include <stdexcept>

namespace glvol {

// An exact computation contradicted one of the identities this toolkit
// exists to check (contraction shape, basis-change determinant, comparison
// factor rationality). Never raised for bad arguments.
struct identity_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The unitary chart was evaluated on its measure-zero singular locus.
// Callers resample (Monte Carlo) or perturb the node (quadrature).
struct chart_degeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace glvol
