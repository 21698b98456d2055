#include "glvol/exterior.hpp"

#include <stdexcept>
#include <string>

namespace glvol {

namespace {

void check_n(int n) {
    if (n < 1 || n > kMaxN)
        throw std::invalid_argument("matrix size n must be in [1, " + std::to_string(kMaxN) +
                                    "], got " + std::to_string(n));
}

void check_pos(int n, int row, int col) {
    if (row < 0 || row >= n || col < 0 || col >= n)
        throw std::invalid_argument("matrix position (" + std::to_string(row) + ", " +
                                    std::to_string(col) + ") out of range for n = " +
                                    std::to_string(n));
}

// popcount of a restricted to bits strictly above position p, avoiding the
// undefined shift-by-64 when p == 63.
inline int bits_above(Blade a, int p) { return std::popcount(a >> p >> 1); }

}  // namespace

int blade_merge_sign(Blade a, Blade b) {
    if (a & b) return 0;
    int parity = 0;
    for (Blade rest = b; rest; rest &= rest - 1) {
        int p = std::countr_zero(rest);
        // each a-factor above position p hops over this b-factor once
        parity ^= bits_above(a, p) & 1;
    }
    return parity ? -1 : 1;
}

// --- TangentVector ---------------------------------------------------------

TangentVector::TangentVector(int n) : n_(n) {
    if (n < 1 || n > kMaxN + 1)
        throw std::invalid_argument("tangent vector size out of range: " + std::to_string(n));
    m_.resize(static_cast<std::size_t>(n) * n);
}

TangentVector TangentVector::basis(int n, int row, int col) {
    TangentVector v(n);
    check_pos(n, row, col);
    v.at(row, col) = GaussianRational(1);
    return v;
}

GaussianRational& TangentVector::at(int row, int col) {
    check_pos(n_, row, col);
    return m_[static_cast<std::size_t>(row) * n_ + col];
}

const GaussianRational& TangentVector::at(int row, int col) const {
    check_pos(n_, row, col);
    return m_[static_cast<std::size_t>(row) * n_ + col];
}

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("tangent vector size mismatch");
    TangentVector out(a.n_);
    for (std::size_t k = 0; k < out.m_.size(); ++k) out.m_[k] = a.m_[k] + b.m_[k];
    return out;
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("tangent vector size mismatch");
    TangentVector out(a.n_);
    for (std::size_t k = 0; k < out.m_.size(); ++k) out.m_[k] = a.m_[k] - b.m_[k];
    return out;
}

TangentVector TangentVector::operator-() const {
    TangentVector out(n_);
    for (std::size_t k = 0; k < m_.size(); ++k) out.m_[k] = -m_[k];
    return out;
}

TangentVector operator*(const GaussianRational& s, const TangentVector& v) {
    TangentVector out(v.n_);
    for (std::size_t k = 0; k < v.m_.size(); ++k) out.m_[k] = s * v.m_[k];
    return out;
}

TangentVector operator*(const TangentVector& a, const TangentVector& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("tangent vector size mismatch");
    int n = a.n_;
    TangentVector out(n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            if (a.at(r, k).is_zero()) continue;
            for (int c = 0; c < n; ++c) out.at(r, c) += a.at(r, k) * b.at(k, c);
        }
    return out;
}

// --- Form ------------------------------------------------------------------

Form::Form(int n) : n_(n) { check_n(n); }

Form::Form(int n, Blade b, ExactScalar c) : n_(n) {
    check_n(n);
    if (b & ~full_blade(n))
        throw std::invalid_argument("blade positions exceed n^2 for n = " + std::to_string(n));
    add_term(b, c);
}

Form Form::one_form(int n, int row, int col) {
    check_n(n);
    check_pos(n, row, col);
    return Form(n, Blade{1} << (row * n + col), ExactScalar(1));
}

Form Form::constant(int n, ExactScalar c) { return Form(n, Blade{0}, std::move(c)); }

bool Form::is_homogeneous_of(int k) const {
    for (const auto& [b, c] : terms_)
        if (blade_degree(b) != k) return false;
    return true;
}

void Form::add_term(Blade b, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(b);
    if (it == terms_.end()) {
        terms_.emplace(b, c);
    } else if ((it->second += c).is_zero()) {
        terms_.erase(it);
    }
}

Form operator+(const Form& a, const Form& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("form dimension mismatch");
    Form out = a;
    for (const auto& [blade, c] : b.terms_) out.add_term(blade, c);
    return out;
}

Form operator-(const Form& a, const Form& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("form dimension mismatch");
    Form out = a;
    for (const auto& [blade, c] : b.terms_) out.add_term(blade, -c);
    return out;
}

Form Form::operator-() const {
    Form out(n_);
    for (const auto& [blade, c] : terms_) out.terms_.emplace(blade, -c);
    return out;
}

Form operator*(const ExactScalar& s, const Form& f) {
    Form out(f.n_);
    for (const auto& [blade, c] : f.terms_) out.add_term(blade, s * c);
    return out;
}

// --- operations ------------------------------------------------------------

Form wedge(const Form& f, const Form& g) {
    if (f.n() != g.n()) throw std::invalid_argument("wedge: form dimension mismatch");
    Form out(f.n());
    for (const auto& [bf, cf] : f.terms())
        for (const auto& [bg, cg] : g.terms()) {
            if (bf & bg) continue;
            int s = blade_merge_sign(bf, bg);
            ExactScalar c = cf * cg;
            out.add_term(bf | bg, s < 0 ? -c : c);
        }
    return out;
}

Form interior(const TangentVector& v, const Form& f) {
    if (v.n() != f.n()) throw std::invalid_argument("interior: dimension mismatch");
    int n = f.n();
    Form out(n);
    for (const auto& [blade, c] : f.terms()) {
        int k = 0;  // index of the factor within the blade, from the left
        for (Blade rest = blade; rest; rest &= rest - 1, ++k) {
            int p = std::countr_zero(rest);
            const GaussianRational& entry = v.at(p / n, p % n);
            if (entry.is_zero()) continue;
            ExactScalar term = ExactScalar(entry) * c;
            out.add_term(blade & ~(Blade{1} << p), (k & 1) ? -term : term);
        }
    }
    return out;
}

ExactScalar evaluate(const Form& f, const std::vector<TangentVector>& frame) {
    int k = static_cast<int>(frame.size());
    if (!f.is_homogeneous_of(k))
        throw std::invalid_argument("evaluate: form is not homogeneous of degree " +
                                    std::to_string(k));
    Form cur = f;
    for (const auto& v : frame) cur = interior(v, cur);
    return cur.coeff(Blade{0});
}

Form rho(int n) {
    check_n(n);
    return Form(n, full_blade(n), ExactScalar(1));
}

Form trace_form(int j, int n) {
    check_n(n);
    if (j < 1 || j > n)
        throw std::invalid_argument("trace_form: j must be in [1, n], got j = " +
                                    std::to_string(j) + ", n = " + std::to_string(n));
    int deg = 2 * j - 1;
    Form out(n);
    std::vector<int> a(deg, 0);  // odometer over index cycles
    for (;;) {
        // factors dz_{a_0 a_1}, dz_{a_1 a_2}, ..., dz_{a_{deg-1} a_0}
        Blade acc = 0;
        int sign = 1;
        bool dead = false;
        for (int t = 0; t < deg && !dead; ++t) {
            int p = a[t] * n + a[(t + 1) % deg];
            Blade bit = Blade{1} << p;
            if (acc & bit) {
                dead = true;  // repeated one-form: the wedge vanishes
            } else {
                if (std::popcount(acc >> p >> 1) & 1) sign = -sign;
                acc |= bit;
            }
        }
        if (!dead) out.add_term(acc, ExactScalar(sign));
        int t = deg - 1;
        while (t >= 0 && ++a[t] == n) a[t--] = 0;
        if (t < 0) break;
    }
    return out;
}

ExactScalar top_coefficient(const Form& f) { return f.coeff(full_blade(f.n())); }

}  // namespace glvol
