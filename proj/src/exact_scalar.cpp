#include "glvol/exact_scalar.hpp"

#include <cmath>
#include <numbers>

namespace glvol {

ExactScalar ExactScalar::two_pi_i_pow(unsigned k) {
    mpz_class two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
    GaussianRational c = GaussianRational(mpq_class(two_k)) * GaussianRational::i_pow(k);
    return monomial(c, k);
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out = a;
    for (const auto& [deg, q] : b.terms_) out.insert(deg, q);
    return out;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out = a;
    for (const auto& [deg, q] : b.terms_) out.insert(deg, -q);
    return out;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar out;
    for (const auto& [deg, q] : terms_) out.terms_.emplace(deg, -q);
    return out;
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out;
    for (const auto& [da, qa] : a.terms_)
        for (const auto& [db, qb] : b.terms_) out.insert(da + db, qa * qb);
    return out;
}

ExactScalar ExactScalar::div_monomial(const GaussianRational& q, unsigned pi_deg) const {
    if (q.is_zero()) throw std::domain_error("div_monomial: zero divisor");
    GaussianRational qi = q.inv();
    ExactScalar out;
    for (const auto& [deg, c] : terms_) {
        if (deg < pi_deg)
            throw std::domain_error("div_monomial: pi-degree underflow (term of degree " +
                                    std::to_string(deg) + " / pi^" + std::to_string(pi_deg) + ")");
        out.insert(deg - pi_deg, c * qi);
    }
    return out;
}

std::complex<double> ExactScalar::to_complex() const {
    std::complex<double> out = 0.0;
    for (const auto& [deg, q] : terms_)
        out += q.to_complex() * std::pow(std::numbers::pi, static_cast<double>(deg));
    return out;
}

std::string ExactScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [deg, q] : terms_) {
        if (!out.empty()) out += " + ";
        // coefficient, parenthesized when it is a genuine sum
        std::string c = q.str();
        bool composite = q.re() != 0 && q.im() != 0;
        if (deg == 0) {
            out += composite ? "(" + c + ")" : c;
            continue;
        }
        std::string pi = deg == 1 ? "π" : "π^" + std::to_string(deg);
        if (composite) {
            out += "(" + c + ")·" + pi;
        } else if (c == "1") {
            out += pi;
        } else if (c == "-1") {
            out += "-" + pi;
        } else {
            out += c + "·" + pi;
        }
    }
    return out;
}

}  // namespace glvol
