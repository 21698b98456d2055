#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace glvol {

// num/den reduced to lowest terms with positive denominator.
inline mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// An element of Q(i). Components are exact rationals; mpq_class keeps each
// in lowest terms, so equality is structural.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT: implicit on purpose
    GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

    // i^k, any k >= 0.
    static GaussianRational i_pow(unsigned k) {
        switch (k % 4) {
            case 0: return {mpq_class(1), mpq_class(0)};
            case 1: return {mpq_class(0), mpq_class(1)};
            case 2: return {mpq_class(-1), mpq_class(0)};
            default: return {mpq_class(0), mpq_class(-1)};
        }
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

    // |z|^2 as an exact rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inv() const {
        if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n = norm();
        return {mpq_class(re_ / n), mpq_class(-im_ / n)};
    }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {mpq_class(a.re_ + b.re_), mpq_class(a.im_ + b.im_)};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {mpq_class(a.re_ - b.re_), mpq_class(a.im_ - b.im_)};
    }
    GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {mpq_class(a.re_ * b.re_ - a.im_ * b.im_),
                mpq_class(a.re_ * b.im_ + a.im_ * b.re_)};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        return a * b.inv();
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    // "0", "3/4", "i", "-2/3·i", "1/2 - 3·i", ...
    std::string str() const;

private:
    mpq_class re_;
    mpq_class im_;
};

inline std::string GaussianRational::str() const {
    auto imag_part = [](const mpq_class& v) -> std::string {
        if (v == 1) return "i";
        if (v == -1) return "-i";
        return v.get_str() + "·i";
    };
    if (is_zero()) return "0";
    if (im_ == 0) return re_.get_str();
    if (re_ == 0) return imag_part(im_);
    std::string out = re_.get_str();
    if (im_ > 0) {
        out += " + " + imag_part(im_);
    } else {
        out += " - " + imag_part(mpq_class(-im_));
    }
    return out;
}

}  // namespace glvol
