#pragma once

#include "glvol/exterior.hpp"

#include <vector>

namespace glvol {

// Matrix commutator [a, b] = ab - ba. For the basis matrices E_{ij} this is
// [E_ij, E_kl] = delta_jk E_il - delta_li E_kj.
TangentVector bracket(const TangentVector& a, const TangentVector& b);

// The coboundary of the complex computing Lie algebra cohomology of the
// full matrix algebra with trivial coefficients:
//   d(e^g) = - sum_{a<b} f^g_{ab} e^a ^ e^b,
// where f are the structure constants from bracket() in the basis E_{rc}
// (position-linearized, row-major), extended to all forms as a degree +1
// antiderivation. Satisfies d(d(f)) = 0.
Form ce_differential(const Form& f);

// The coboundaries of the n^2 generator one-forms, indexed by position.
// ce_differential is linear over these; exposed so the complex builder and
// the antiderivation share one definition.
std::vector<Form> generator_differentials(int n);

using IntMatrix = std::vector<std::vector<mpz_class>>;

// The whole cochain complex with integer structure-constant matrices.
// blades[k] lists the degree-k blades in ascending mask order; diff[k] is
// the matrix of d from degree k to degree k+1 in those bases
// (rows = degree k+1 blades, cols = degree k blades).
struct CEComplex {
    int n = 0;
    std::vector<std::vector<Blade>> blades;
    std::vector<IntMatrix> diff;

    static CEComplex build(int n);
};

struct BettiTable {
    int n = 0;
    std::vector<long> betti;  // degrees 0 .. n^2
};

// Coefficients of prod_{j=1}^{n} (1 + t^(2j-1)), degrees 0 .. n^2: the
// dimensions of the free exterior algebra on generators of degrees
// 1, 3, ..., 2n-1.
std::vector<long> expected_poincare(int n);

// Cohomology dimensions by exact rank computation,
// betti[k] = dim_k - rank d_k - rank d_{k-1}.
// Guarded: throws std::invalid_argument when n > max_n (the complex has
// 2^(n^2) blades).
BettiTable betti(int n, int max_n = 3);

// True when d vanishes identically on degree n^2 - 1, i.e. the top class
// survives with integral coefficients. Guarded like betti but allows n = 4.
bool top_integrality(int n, int max_n = 4);

// Rank over the rationals by fraction-free (Bareiss) elimination on exact
// integers.
int exact_rank(IntMatrix m);

// Diagonal of the Smith normal form (non-zero invariant factors, in
// divisibility order). Exact; intended for the small matrices of this
// complex.
std::vector<mpz_class> smith_normal_form(IntMatrix m);

}  // namespace glvol
