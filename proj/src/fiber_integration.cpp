#include "glvol/fiber_integration.hpp"

#include "glvol/errors.hpp"

#include <stdexcept>
#include <string>

namespace glvol {

namespace {

void check_range(int n, int lo, int hi, const char* what) {
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) +
                                    " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
}

// Determinant over Q(i) by ordinary elimination (fields make this exact).
GaussianRational det_gaussian(std::vector<std::vector<GaussianRational>> m) {
    int n = static_cast<int>(m.size());
    GaussianRational det(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!m[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return GaussianRational(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        GaussianRational inv = m[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            GaussianRational f = m[r][c] * inv;
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

mpz_class factorial(int k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
}

}  // namespace

LiftFrame lift_frame(int n) {
    check_range(n, 1, kMaxN, "lift_frame");
    int m = n + 1;
    LiftFrame fr;
    fr.n = n;
    GaussianRational i = GaussianRational::i();

    for (int nu = 1; nu <= n; ++nu)
        fr.real_a.push_back(TangentVector::basis(m, nu, 0) - TangentVector::basis(m, 0, nu));

    fr.real_b.push_back(i * TangentVector::basis(m, 0, 0));
    for (int nu = 1; nu <= n; ++nu)
        fr.real_b.push_back(i * TangentVector::basis(m, nu, 0) +
                            i * TangentVector::basis(m, 0, nu));

    fr.complexified.push_back(-TangentVector::basis(m, 0, 0));
    for (int nu = 1; nu <= n; ++nu) fr.complexified.push_back(TangentVector::basis(m, nu, 0));
    for (int nu = 1; nu <= n; ++nu) fr.complexified.push_back(-TangentVector::basis(m, 0, nu));
    return fr;
}

Form contract_step(int n) {
    check_range(n, 1, kMaxN - 1, "contract_step");
    int m = n + 1;
    LiftFrame fr = lift_frame(n);
    Form f = rho(m);
    for (const auto& v : fr.complexified) f = interior(v, f);

    // expected: the top blade of the lower-right n x n block
    Blade block = 0;
    for (int r = 1; r < m; ++r)
        for (int c = 1; c < m; ++c) block |= Blade{1} << (r * m + c);

    if (f.terms().size() != 1)
        throw identity_violation("contract_step: result is not a single blade (n = " +
                                 std::to_string(n) + ")");
    const auto& [blade, coeff] = *f.terms().begin();
    if (blade != block)
        throw identity_violation("contract_step: result not supported on the lower-right block");
    if (coeff != ExactScalar(1) && coeff != ExactScalar(-1))
        throw identity_violation("contract_step: coefficient is not +-1: " + coeff.str());
    return f;
}

ExactScalar basis_change_factor(int n) {
    check_range(n, 1, kMaxN, "basis_change_factor");
    GaussianRational i = GaussianRational::i();
    GaussianRational half = GaussianRational(make_rational(1, 2));
    int d = 2 * n + 1;

    // Real coordinates on C^(n+1): x_nu at index 2 nu, y_nu at 2 nu + 1.
    // The sphere directions at the base point drop coordinate x_0; rows are
    // the remaining coordinates 1 .. 2n+1 against the frame order
    // (b_0, a_1, b_1, ..., a_n, b_n). Columns express
    //   v_0 = i b_0,  v_nu = (a_nu - i b_nu)/2,  v_{n+nu} = (a_nu + i b_nu)/2
    // where a_nu has a single 1 at coordinate 2 nu and b_nu at 2 nu + 1.
    std::vector<std::vector<GaussianRational>> m(d, std::vector<GaussianRational>(d));
    auto row_of = [](int coord) { return coord - 1; };
    m[row_of(1)][0] = i;  // v_0 = i b_0, b_0 = coordinate 1
    for (int nu = 1; nu <= n; ++nu) {
        int ra = row_of(2 * nu);
        int rb = row_of(2 * nu + 1);
        m[ra][nu] = half;
        m[rb][nu] = -(i * half);
        m[ra][n + nu] = half;
        m[rb][n + nu] = i * half;
    }

    GaussianRational det = det_gaussian(std::move(m));
    GaussianRational expected =
        GaussianRational::i_pow(static_cast<unsigned>(n + 1)) *
        GaussianRational(make_rational(1, mpz_class(1) << n));
    if (det != expected && det != -expected)
        throw identity_violation("basis_change_factor: determinant " + det.str() +
                                 " is not +-i^(n+1)/2^n for n = " + std::to_string(n));
    return ExactScalar(det);
}

ExactScalar sphere_surface(int n) {
    if (n < 0) throw std::invalid_argument("sphere_surface: n must be >= 0");
    return ExactScalar::monomial(GaussianRational(make_rational(2, factorial(n))),
                                 static_cast<unsigned>(n + 1));
}

VolumeResult volume_recursive(int n, int max_n) {
    check_range(n, 1, max_n, "volume_recursive");
    VolumeResult out;
    out.n = n;
    ExactScalar c = ExactScalar::two_pi_i_pow(1);  // size-1 value: the unit circle
    for (int m = 1; m < n; ++m) {
        RecursionTrace step{m + 1, Form(m + 1), false, ExactScalar(), ExactScalar(),
                            ExactScalar()};
        if (m + 1 <= 4) {
            step.contraction_result = contract_step(m);
            step.contraction_checked = true;
        }
        step.basis_change = basis_change_factor(m);
        step.sphere_factor = sphere_surface(m);

        // the basis change is a single nonzero degree-0 term; divide exactly
        c = (c * step.sphere_factor).div_monomial(step.basis_change.coeff(0), 0);
        step.c_value = c;
        out.trace.push_back(std::move(step));
    }
    out.value = c;
    return out;
}

ExactScalar volume_closed_form(int n) {
    check_range(n, 1, kMaxN, "volume_closed_form");
    ExactScalar acc(1);
    for (int nu = 0; nu < n; ++nu) {
        acc *= ExactScalar::two_pi_i_pow(static_cast<unsigned>(nu + 1));
        acc = acc.div_monomial(GaussianRational(mpq_class(factorial(nu))), 0);
    }
    return acc;
}

ExactScalar alpha_from_volume(int n, const ExactScalar& volume) {
    check_range(n, 1, kMaxN, "alpha_from_volume");
    unsigned total = static_cast<unsigned>(n * (n + 1) / 2);

    if (!volume.is_monomial() || volume.is_zero() || volume.coeff(total).is_zero())
        throw identity_violation("alpha_from_volume: volume " + volume.str() +
                                 " is not a single pi-monomial of degree " +
                                 std::to_string(total));
    ExactScalar quotient =
        ExactScalar::two_pi_i_pow(total).div_monomial(volume.coeff(total), total);

    GaussianRational q = quotient.coeff(0);
    if (!quotient.is_monomial() || !q.is_real() || q.re().get_den() != 1)
        throw identity_violation("alpha_from_volume: quotient " + quotient.str() +
                                 " is not +- an integer");
    mpz_class value = abs(mpz_class(q.re().get_num()));

    mpz_class expected = 1;
    for (int j = 1; j <= n; ++j) expected *= factorial(j - 1);
    if (value != expected)
        throw identity_violation("alpha_from_volume: |quotient| = " + value.get_str() +
                                 " differs from the factorial product " + expected.get_str());
    return ExactScalar(GaussianRational(mpq_class(value)));
}

ExactScalar derive_alpha(int n) { return alpha_from_volume(n, volume_closed_form(n)); }

}  // namespace glvol
