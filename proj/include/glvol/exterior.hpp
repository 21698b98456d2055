#pragma once

#include "glvol/exact_scalar.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace glvol {

// Sparse exterior algebra over the n^2 coordinate one-forms dz_{rc} on the
// space of complex n x n matrices, with coefficients in Q(i)[pi].
//
// A monomial wedge of distinct one-forms in increasing position order is a
// "blade", encoded as a bitmask over linearized positions p = row*n + col
// (row-major). Bit p set means dz at position p is a factor. This caps the
// supported matrix size at n <= 8 (64 positions), which is all the exact
// layer ever needs.
using Blade = std::uint64_t;

constexpr int kMaxN = 8;

inline int blade_degree(Blade b) { return std::popcount(b); }

// The full-degree blade dz_0 ^ dz_1 ^ ... ^ dz_{n^2-1}.
inline Blade full_blade(int n) {
    int bits = n * n;
    return bits == 64 ? ~Blade{0} : (Blade{1} << bits) - 1;
}

// Sign (+1/-1) picked up when the concatenation (a-factors, then b-factors),
// each side already in increasing order, is sorted into a single increasing
// product; 0 if the blades share a factor.
int blade_merge_sign(Blade a, Blade b);

// An n x n matrix over Q(i); the exact tangent vectors the forms are paired
// against. E_{rc} denotes the matrix unit with a single 1 at (r, c).
class TangentVector {
public:
    explicit TangentVector(int n);
    static TangentVector basis(int n, int row, int col);

    int n() const { return n_; }
    GaussianRational& at(int row, int col);
    const GaussianRational& at(int row, int col) const;

    friend TangentVector operator+(const TangentVector& a, const TangentVector& b);
    friend TangentVector operator-(const TangentVector& a, const TangentVector& b);
    TangentVector operator-() const;
    friend TangentVector operator*(const GaussianRational& s, const TangentVector& v);
    // matrix product
    friend TangentVector operator*(const TangentVector& a, const TangentVector& b);

    friend bool operator==(const TangentVector& a, const TangentVector& b) {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }

private:
    int n_;
    std::vector<GaussianRational> m_;  // row-major
};

// A differential form: finite sum of blades with ExactScalar coefficients.
// Canonical: zero coefficients are never stored.
class Form {
public:
    explicit Form(int n);
    Form(int n, Blade b, ExactScalar c);

    static Form one_form(int n, int row, int col);  // dz_{row,col}
    static Form constant(int n, ExactScalar c);     // degree-0 form

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Blade, ExactScalar>& terms() const { return terms_; }

    ExactScalar coeff(Blade b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? ExactScalar() : it->second;
    }

    // All stored blades have degree k (vacuously true when zero).
    bool is_homogeneous_of(int k) const;

    void add_term(Blade b, const ExactScalar& c);

    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    Form operator-() const;
    friend Form operator*(const ExactScalar& s, const Form& f);

    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    int n_;
    std::map<Blade, ExactScalar> terms_;
};

// Graded-anticommutative product. Throws std::invalid_argument on dimension
// mismatch.
Form wedge(const Form& f, const Form& g);

// Interior product (contraction) of f by the tangent vector v: the unique
// antiderivation with iota_v(dz_{rc}) = v_{rc}.
Form interior(const TangentVector& v, const Form& f);

// Pairs a homogeneous degree-k form with a k-frame by iterated contraction,
// frame[0] applied first. Throws std::invalid_argument if f is not
// homogeneous of degree frame.size() or dimensions mismatch.
ExactScalar evaluate(const Form& f, const std::vector<TangentVector>& frame);

// The top form dz_00 ^ dz_01 ^ ... ^ dz_{n-1,n-1} with coefficient 1.
Form rho(int n);

// The degree-(2j-1) invariant form
//   sum over all index cycles (a_1, ..., a_{2j-1}) in {0..n-1}
//   of dz_{a1 a2} ^ dz_{a2 a3} ^ ... ^ dz_{a_{2j-1} a1}.
// Requires 1 <= j <= n.
Form trace_form(int j, int n);

// Coefficient of the full-degree blade (zero when absent).
ExactScalar top_coefficient(const Form& f);

}  // namespace glvol
