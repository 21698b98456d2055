#include "glvol/lie_cohomology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace glvol {

TangentVector bracket(const TangentVector& a, const TangentVector& b) {
    return a * b - b * a;
}

std::vector<Form> generator_differentials(int n) {
    int dim = n * n;
    std::vector<TangentVector> basis;
    basis.reserve(dim);
    for (int p = 0; p < dim; ++p) basis.push_back(TangentVector::basis(n, p / n, p % n));

    std::vector<Form> out(dim, Form(n));
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            TangentVector c = bracket(basis[a], basis[b]);
            Blade pair = (Blade{1} << a) | (Blade{1} << b);
            for (int g = 0; g < dim; ++g) {
                const GaussianRational& f = c.at(g / n, g % n);
                if (f.is_zero()) continue;
                out[g].add_term(pair, ExactScalar(-f));
            }
        }
    return out;
}

Form ce_differential(const Form& f) {
    int n = f.n();
    std::vector<Form> dgen = generator_differentials(n);
    Form out(n);
    for (const auto& [blade, c] : f.terms()) {
        int k = 0;  // position of the factor within the blade
        for (Blade rest = blade; rest; rest &= rest - 1, ++k) {
            int p = std::countr_zero(rest);
            Blade others = blade & ~(Blade{1} << p);
            // (-1)^k * d(e^p) ^ (blade without p)
            for (const auto& [b2, c2] : dgen[p].terms()) {
                int s = blade_merge_sign(b2, others);
                if (s == 0) continue;
                ExactScalar term = c * c2;
                if ((k & 1) != 0) term = -term;
                out.add_term(b2 | others, s < 0 ? -term : term);
            }
        }
    }
    return out;
}

namespace {

void check_size_limit(int n, int max_n, const char* what) {
    if (n < 1)
        throw std::invalid_argument(std::string(what) + ": n must be positive");
    if (n > max_n)
        throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) +
                                    " exceeds the size limit " + std::to_string(max_n));
}

}  // namespace

CEComplex CEComplex::build(int n) {
    check_size_limit(n, 4, "CEComplex::build");
    int dim = n * n;
    CEComplex cx;
    cx.n = n;
    cx.blades.assign(dim + 1, {});
    for (Blade b = 0, top = full_blade(n); ; ++b) {
        cx.blades[blade_degree(b)].push_back(b);
        if (b == top) break;
    }

    std::vector<Form> dgen = generator_differentials(n);
    cx.diff.resize(dim);  // d_k : degree k -> k+1, k = 0 .. dim-1
    for (int k = 0; k < dim; ++k) {
        const auto& dom = cx.blades[k];
        const auto& cod = cx.blades[k + 1];
        IntMatrix m(cod.size(), std::vector<mpz_class>(dom.size(), 0));
        for (std::size_t j = 0; j < dom.size(); ++j) {
            Form df = ce_differential(Form(n, dom[j], ExactScalar(1)));
            for (const auto& [blade, c] : df.terms()) {
                auto it = std::lower_bound(cod.begin(), cod.end(), blade);
                std::size_t row = static_cast<std::size_t>(it - cod.begin());
                // structure constants of the matrix algebra are 0 / +-1,
                // so every coefficient here is a plain integer
                GaussianRational q = c.coeff(0);
                if (q.re().get_den() != 1 || q.im() != 0)
                    throw std::logic_error("CEComplex::build: non-integer coefficient");
                m[row][j] = q.re().get_num();
            }
        }
        cx.diff[k] = std::move(m);
    }
    return cx;
}

std::vector<long> expected_poincare(int n) {
    if (n < 1) throw std::invalid_argument("expected_poincare: n must be positive");
    std::vector<long> p{1};
    for (int j = 1; j <= n; ++j) {
        int d = 2 * j - 1;
        std::vector<long> q(p.size() + d, 0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k];
            q[k + d] += p[k];
        }
        p = std::move(q);
    }
    return p;
}

BettiTable betti(int n, int max_n) {
    check_size_limit(n, max_n, "betti");
    CEComplex cx = CEComplex::build(n);
    int dim = n * n;
    std::vector<int> rank(dim + 1, 0);  // rank[k] = rank of d_k, rank[dim] unused
    for (int k = 0; k < dim; ++k) rank[k] = exact_rank(cx.diff[k]);

    BettiTable out;
    out.n = n;
    out.betti.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
        long d = static_cast<long>(cx.blades[k].size());
        out.betti[k] = d - rank[k] - (k > 0 ? rank[k - 1] : 0);
    }
    return out;
}

bool top_integrality(int n, int max_n) {
    check_size_limit(n, max_n, "top_integrality");
    Blade top = full_blade(n);
    for (int p = 0; p < n * n; ++p) {
        Form f(n, top & ~(Blade{1} << p), ExactScalar(1));
        if (!ce_differential(f).is_zero()) return false;
    }
    return true;
}

int exact_rank(IntMatrix m) {
    if (m.empty() || m[0].empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    mpz_class prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        // one-step fraction-free elimination: every division below is exact
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m[r][c] = (m[r][c] * m[rank][col] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

std::vector<mpz_class> smith_normal_form(IntMatrix m) {
    if (m.empty() || m[0].empty()) return {};
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());

    auto row_op = [&](int dst, int src, const mpz_class& f) {  // row dst -= f * row src
        for (int c = 0; c < cols; ++c) m[dst][c] -= f * m[src][c];
    };
    auto col_op = [&](int dst, int src, const mpz_class& f) {
        for (int r = 0; r < rows; ++r) m[r][dst] -= f * m[r][src];
    };

    std::vector<mpz_class> divisors;
    int t = 0;
    while (t < rows && t < cols) {
        // locate a pivot of minimal absolute value in the remaining block
        int pr = -1, pc = -1;
        mpz_class best;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c)
                if (m[r][c] != 0 && (pr < 0 || abs(m[r][c]) < best)) {
                    best = abs(m[r][c]);
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        std::swap(m[t], m[pr]);
        for (int r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);

        bool clean = true;
        for (int r = t + 1; r < rows; ++r)
            if (m[r][t] != 0) {
                row_op(r, t, mpz_class(m[r][t] / m[t][t]));
                if (m[r][t] != 0) clean = false;  // remainder left: pivot shrinks next pass
            }
        for (int c = t + 1; c < cols; ++c)
            if (m[t][c] != 0) {
                col_op(c, t, mpz_class(m[t][c] / m[t][t]));
                if (m[t][c] != 0) clean = false;
            }
        if (!clean) continue;  // repeat with a smaller pivot at (t, t)

        // enforce the divisibility chain: fold any bad entry into column t
        bool divides = true;
        for (int r = t + 1; r < rows && divides; ++r)
            for (int c = t + 1; c < cols; ++c)
                if (m[r][c] % m[t][t] != 0) {
                    row_op(t, r, mpz_class(-1));  // row t += row r
                    divides = false;
                    break;
                }
        if (!divides) continue;

        if (m[t][t] < 0) {
            for (int c = t; c < cols; ++c) m[t][c] = -m[t][c];
        }
        divisors.push_back(m[t][t]);
        ++t;
    }
    return divisors;
}

}  // namespace glvol
