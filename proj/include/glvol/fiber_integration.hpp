#pragma once

#include "glvol/exterior.hpp"

#include <vector>

namespace glvol {

// Tangent data along the first-column fibration of the (n+1) x (n+1)
// unitary group over the unit sphere S^(2n+1): a real frame spanning the
// sphere directions at the base point (first column = first standard basis
// vector), and the complexified combinations used to contract the ambient
// top form. All entries are exact.
//
//   A_nu = E_{nu,0} - E_{0,nu}                (nu = 1..n)
//   B_0  = i E_{0,0},  B_nu = i E_{nu,0} + i E_{0,nu}
//   v~_0 = -E_{0,0},   v~_nu = E_{nu,0},  v~_{n+nu} = -E_{0,nu}
struct LiftFrame {
    int n = 0;                                 // sphere S^(2n+1), matrices (n+1) x (n+1)
    std::vector<TangentVector> real_a;         // A_1 .. A_n
    std::vector<TangentVector> real_b;         // B_0 .. B_n
    std::vector<TangentVector> complexified;   // v~_0 .. v~_2n
};

// One multiply step of the volume recursion, from size m to size m+1
// (stored in n = m+1).
struct RecursionTrace {
    int n = 0;
    Form contraction_result;       // meaningful only when contraction_checked
    bool contraction_checked = false;
    ExactScalar basis_change;      // exact determinant, +-i^(m+1)/2^m
    ExactScalar sphere_factor;     // 2 pi^(m+1) / m!
    ExactScalar c_value;           // running volume after this step
};

struct VolumeResult {
    int n = 0;
    ExactScalar value;
    std::vector<RecursionTrace> trace;  // steps 2 .. n, in order
};

LiftFrame lift_frame(int n);

// Contracts the ambient (n+1)-size top form by the 2n+1 complexified lift
// vectors, v~_0 first. The result must be a single blade supported on the
// lower-right n x n block with coefficient +-1; anything else throws
// identity_violation. Requires n + 1 <= 8.
Form contract_step(int n);

// Exact determinant of the change of basis from the real sphere frame
// (b_0, a_1, b_1, ..., a_n, b_n) to the complexified one on the 2n+1
// sphere directions. Must equal +-i^(n+1) / 2^n; otherwise throws
// identity_violation.
ExactScalar basis_change_factor(int n);

// Surface measure of the unit sphere S^(2n+1) in C^(n+1): 2 pi^(n+1) / n!.
ExactScalar sphere_surface(int n);

// The volume constant by the fibration recursion:
//   C(1) = 2 pi i,
//   C(m+1) = C(m) * basis_change_factor(m)^-1 * sphere_surface(m).
// The embedded contraction check runs for every step with m + 1 <= 4.
// Throws std::invalid_argument when n is outside [1, max_n].
VolumeResult volume_recursive(int n, int max_n = 8);

// The same constant in closed form: prod_{nu=0}^{n-1} (2 pi i)^(nu+1) / nu!.
ExactScalar volume_closed_form(int n);

// The comparison factor between the two top forms, derived by dividing
// (2 pi i)^(n(n+1)/2) by the closed-form volume. Checked to be the positive
// integer prod_{j=1}^{n} (j-1)!; identity_violation otherwise.
ExactScalar derive_alpha(int n);

// Same derivation from a caller-supplied volume value (used to confirm the
// result is orientation-independent). The volume must be a single
// pi-monomial of degree n(n+1)/2 and the quotient +- the expected factorial
// product; identity_violation otherwise.
ExactScalar alpha_from_volume(int n, const ExactScalar& volume);

}  // namespace glvol
