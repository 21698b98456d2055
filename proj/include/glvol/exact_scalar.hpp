#pragma once

#include "glvol/rational.hpp"

#include <complex>
#include <map>
#include <string>

namespace glvol {

// An element of the ring Q(i)[pi]: a finite sum  sum_k q_k * pi^k  with
// Gaussian rational coefficients, stored sparsely by pi-degree. pi stays
// formal everywhere; it is only evaluated numerically in to_complex().
// The representation is canonical: zero coefficients are never stored, so
// equality is structural.
class ExactScalar {
public:
    ExactScalar() = default;                     // zero
    ExactScalar(long v) { insert(0, GaussianRational(v)); }  // NOLINT: implicit
    ExactScalar(GaussianRational q) { insert(0, std::move(q)); }  // NOLINT: implicit

    // q * pi^pi_deg
    static ExactScalar monomial(GaussianRational q, unsigned pi_deg) {
        ExactScalar s;
        s.insert(pi_deg, std::move(q));
        return s;
    }

    // (2*pi*i)^k = 2^k * i^k * pi^k, exactly.
    static ExactScalar two_pi_i_pow(unsigned k);

    bool is_zero() const { return terms_.empty(); }

    // Degree -> coefficient, ascending, no zero coefficients.
    const std::map<unsigned, GaussianRational>& terms() const { return terms_; }

    // Coefficient at pi^deg (zero if absent).
    GaussianRational coeff(unsigned deg) const {
        auto it = terms_.find(deg);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    // True iff the value is a single term q * pi^deg (or zero).
    bool is_monomial() const { return terms_.size() <= 1; }

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    ExactScalar operator-() const;
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    // Exact division by q * pi^pi_deg. Every term must have degree >= pi_deg;
    // otherwise (or if q == 0) throws std::domain_error.
    ExactScalar div_monomial(const GaussianRational& q, unsigned pi_deg) const;

    // Numerical value with pi at double precision.
    std::complex<double> to_complex() const;

    // Human-readable, e.g. "(1/2 - 3·i)·π^2 + 4·π". Deterministic.
    std::string str() const;

private:
    void insert(unsigned deg, const GaussianRational& q) {
        if (q.is_zero()) return;
        auto it = terms_.find(deg);
        if (it == terms_.end()) {
            terms_.emplace(deg, q);
        } else if ((it->second += q).is_zero()) {
            terms_.erase(it);
        }
    }

    std::map<unsigned, GaussianRational> terms_;
};

}  // namespace glvol
