#include "glvol/numint.hpp"

#include "glvol/errors.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace glvol {

namespace {

using cdouble = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateEps = 1e-12;
constexpr int kMaxChart = 8;  // the chart itself scales; the integrators cap far lower

void check_n(int n, int max_n, const char* what) {
    if (n < 1 || n > max_n)
        throw std::invalid_argument(std::string(what) + ": n = " + std::to_string(n) +
                                    " outside [1, " + std::to_string(max_n) + "]");
}

// --- small dense complex linear algebra -------------------------------------

cdouble det_lu(std::vector<cdouble> a, int n) {
    cdouble det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        double best = std::abs(a[static_cast<std::size_t>(c) * n + c]);
        for (int r = c + 1; r < n; ++r) {
            double v = std::abs(a[static_cast<std::size_t>(r) * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != c) {
            for (int k = 0; k < n; ++k)
                std::swap(a[static_cast<std::size_t>(piv) * n + k],
                          a[static_cast<std::size_t>(c) * n + k]);
            det = -det;
        }
        cdouble pivot = a[static_cast<std::size_t>(c) * n + c];
        det *= pivot;
        for (int r = c + 1; r < n; ++r) {
            cdouble f = a[static_cast<std::size_t>(r) * n + c] / pivot;
            if (f == cdouble{}) continue;
            for (int k = c + 1; k < n; ++k)
                a[static_cast<std::size_t>(r) * n + k] -= f * a[static_cast<std::size_t>(c) * n + k];
        }
    }
    return det;
}

std::vector<cdouble> mat_mul(const std::vector<cdouble>& a, const std::vector<cdouble>& b, int n) {
    std::vector<cdouble> out(static_cast<std::size_t>(n) * n, cdouble{});
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            cdouble v = a[static_cast<std::size_t>(r) * n + k];
            if (v == cdouble{}) continue;
            for (int c = 0; c < n; ++c)
                out[static_cast<std::size_t>(r) * n + c] += v * b[static_cast<std::size_t>(k) * n + c];
        }
    return out;
}

double unitarity_defect(const std::vector<cdouble>& m, int n) {
    double worst = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cdouble dot{};
            for (int k = 0; k < n; ++k)
                dot += std::conj(m[static_cast<std::size_t>(k) * n + r]) *
                       m[static_cast<std::size_t>(k) * n + c];
            if (r == c) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    return worst;
}

// --- chart -------------------------------------------------------------------

// Hyperspherical point of S^(2m+1) in C^(m+1) from its 2m+1 angles
// (2m polar, one azimuth): real coordinates
//   x_1 = cos f_1, x_2 = sin f_1 cos f_2, ..., x_{2m+2} = sin f_1 ... sin f_{2m+1},
// paired as u_j = x_{2j+1} + i x_{2j+2}.
std::vector<cdouble> sphere_point(int m, const double* angles) {
    int d = 2 * m + 1;
    std::vector<double> x(static_cast<std::size_t>(d) + 1);
    double run = 1.0;
    for (int k = 0; k < d; ++k) {
        x[k] = run * std::cos(angles[k]);
        run *= std::sin(angles[k]);
    }
    x[d] = run;
    std::vector<cdouble> u(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) u[j] = cdouble(x[2 * j], x[2 * j + 1]);
    return u;
}

// Smooth unitary completion with first column u and value I at u = e_0:
//   W(u) = -zeta (I - 2 w w* / |w|^2) diag(1, -I),  w = conj(zeta) u + e_0,
// with zeta = u_0 / |u_0|. The reflection is well conditioned because
// |w|^2 = 2 + 2|u_0| >= 2; the only seam is |u_0| = 0.
std::vector<cdouble> complete_column(const std::vector<cdouble>& u) {
    int n = static_cast<int>(u.size());
    double r = std::abs(u[0]);
    if (r < kDegenerateEps)
        throw chart_degeneracy("unitary chart: |u_0| = " + std::to_string(r) +
                               " at the completion seam");
    cdouble zeta = u[0] / r;
    std::vector<cdouble> w(u.size());
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        w[k] = std::conj(zeta) * u[k] + (k == 0 ? 1.0 : 0.0);
        s += std::norm(w[k]);
    }
    std::vector<cdouble> out(static_cast<std::size_t>(n) * n);
    for (int r2 = 0; r2 < n; ++r2)
        for (int c = 0; c < n; ++c) {
            cdouble h = (r2 == c ? 1.0 : 0.0) - 2.0 * w[r2] * std::conj(w[c]) / s;
            // trailing columns flipped so the completion fixes e_0 -> I
            out[static_cast<std::size_t>(r2) * n + c] = -zeta * h * (c == 0 ? 1.0 : -1.0);
        }
    return out;
}

std::vector<cdouble> chart_matrix(const ChartParams& p) {
    int n = p.n;
    AngleBox box = chart_box(n);
    if (static_cast<int>(p.angles.size()) != box.dim())
        throw std::invalid_argument("chart_point: expected " + std::to_string(box.dim()) +
                                    " angles, got " + std::to_string(p.angles.size()));
    // pad the box so finite-difference probes just outside stay legal
    constexpr double pad = 1e-3;
    for (int k = 0; k < box.dim(); ++k)
        if (p.angles[k] < box.lo[k] - pad || p.angles[k] > box.hi[k] + pad)
            throw std::invalid_argument("chart_point: angle " + std::to_string(k) +
                                        " = " + std::to_string(p.angles[k]) +
                                        " outside its range");

    // innermost factor: the U(1) phase
    std::vector<cdouble> u_cur{std::polar(1.0, p.angles.back())};
    int size = 1;
    // levels m = 1 .. n-1, consuming angle spans from the back
    std::size_t off = p.angles.size() - 1;
    for (int m = 1; m < n; ++m) {
        off -= static_cast<std::size_t>(2 * m + 1);
        std::vector<cdouble> u = sphere_point(m, p.angles.data() + off);
        std::vector<cdouble> w = complete_column(u);
        // W * diag(1, U_cur)
        int big = m + 1;
        std::vector<cdouble> next(static_cast<std::size_t>(big) * big);
        for (int r = 0; r < big; ++r) {
            next[static_cast<std::size_t>(r) * big] = w[static_cast<std::size_t>(r) * big];
            for (int c = 1; c < big; ++c) {
                cdouble acc{};
                for (int k = 1; k < big; ++k)
                    acc += w[static_cast<std::size_t>(r) * big + k] *
                           u_cur[static_cast<std::size_t>(k - 1) * size + (c - 1)];
                next[static_cast<std::size_t>(r) * big + c] = acc;
            }
        }
        u_cur = std::move(next);
        size = big;
    }
    return u_cur;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// uniform in [0, 1) from the top 53 bits, identical across platforms
double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct McPartial {
    cdouble sum{};
    double sum_sq = 0.0;  // sum of |value|^2
    std::int64_t count = 0;
};

constexpr std::int64_t kChunk = 65536;

}  // namespace

UnitaryPoint make_unitary(int n, std::vector<cdouble> entries) {
    check_n(n, 9, "make_unitary");
    if (entries.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("make_unitary: wrong entry count");
    double defect = unitarity_defect(entries, n);
    if (!(defect < 1e-12))
        throw std::invalid_argument("make_unitary: ||U*U - I|| = " + std::to_string(defect));
    return UnitaryPoint{n, std::move(entries)};
}

UnitaryPoint identity_unitary(int n) {
    check_n(n, 9, "identity_unitary");
    std::vector<cdouble> m(static_cast<std::size_t>(n) * n, cdouble{});
    for (int k = 0; k < n; ++k) m[static_cast<std::size_t>(k) * n + k] = 1.0;
    return UnitaryPoint{n, std::move(m)};
}

UnitaryPoint multiply(const UnitaryPoint& a, const UnitaryPoint& b) {
    if (a.n != b.n) throw std::invalid_argument("multiply: size mismatch");
    return UnitaryPoint{a.n, mat_mul(a.m, b.m, a.n)};
}

AngleBox chart_box(int n) {
    check_n(n, kMaxChart, "chart_box");
    AngleBox box;
    for (int m = n - 1; m >= 1; --m) {
        for (int k = 0; k < 2 * m; ++k) {  // polar
            box.lo.push_back(0.0);
            box.hi.push_back(kPi);
            box.periodic.push_back(false);
        }
        box.lo.push_back(0.0);  // azimuth
        box.hi.push_back(2.0 * kPi);
        box.periodic.push_back(true);
    }
    box.lo.push_back(0.0);  // U(1) phase
    box.hi.push_back(2.0 * kPi);
    box.periodic.push_back(true);
    return box;
}

UnitaryPoint chart_point(const ChartParams& p) {
    check_n(p.n, kMaxChart, "chart_point");
    std::vector<cdouble> m = chart_matrix(p);
    return make_unitary(p.n, std::move(m));
}

std::complex<double> pullback_density(const ChartParams& p, double step) {
    return pullback_density(p, step, identity_unitary(p.n));
}

std::complex<double> pullback_density(const ChartParams& p, double step,
                                      const UnitaryPoint& left) {
    check_n(p.n, kMaxChart, "pullback_density");
    if (!(step > 0.0 && step < 1.0))
        throw std::invalid_argument("pullback_density: step must be in (0, 1)");
    if (left.n != p.n) throw std::invalid_argument("pullback_density: translation size mismatch");
    int n = p.n;
    int d = n * n;
    AngleBox box = chart_box(n);

    // the chart is exactly 2 pi periodic in the azimuth and phase angles, so
    // probes past those edges wrap instead of tripping the range guard
    auto wrapped = [&box](int k, double a) {
        if (!box.periodic[static_cast<std::size_t>(k)]) return a;
        double period = box.hi[static_cast<std::size_t>(k)] - box.lo[static_cast<std::size_t>(k)];
        if (a < box.lo[static_cast<std::size_t>(k)]) a += period;
        if (a >= box.hi[static_cast<std::size_t>(k)]) a -= period;
        return a;
    };

    std::vector<cdouble> z = mat_mul(left.m, chart_matrix(p), n);
    std::vector<cdouble> jac(static_cast<std::size_t>(d) * d);
    ChartParams probe = p;
    for (int k = 0; k < d; ++k) {
        probe.angles[k] = wrapped(k, p.angles[k] + step);
        std::vector<cdouble> hi = mat_mul(left.m, chart_matrix(probe), n);
        probe.angles[k] = wrapped(k, p.angles[k] - step);
        std::vector<cdouble> lo = mat_mul(left.m, chart_matrix(probe), n);
        probe.angles[k] = p.angles[k];
        for (int e = 0; e < d; ++e)
            jac[static_cast<std::size_t>(e) * d + k] = (hi[e] - lo[e]) / (2.0 * step);
    }

    cdouble det_z = det_lu(z, n);
    cdouble denom = 1.0;
    for (int k = 0; k < n; ++k) denom *= det_z;
    return det_lu(std::move(jac), d) / denom;
}

IntegrationEstimate integrate_quadrature(int n, int nodes_per_axis, double fd_step) {
    check_n(n, 2, "integrate_quadrature");
    if (nodes_per_axis < 2)
        throw std::invalid_argument("integrate_quadrature: need at least 2 nodes per axis");
    if (!(fd_step > 0.0)) throw std::invalid_argument("integrate_quadrature: bad fd step");

    AngleBox box = chart_box(n);
    int d = box.dim();

    gsl_integration_glfixed_table* table =
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes_per_axis));
    std::vector<std::vector<double>> xs(d, std::vector<double>(nodes_per_axis));
    std::vector<std::vector<double>> ws(d, std::vector<double>(nodes_per_axis));
    for (int k = 0; k < d; ++k) {
        if (box.periodic[k]) {
            double h = (box.hi[k] - box.lo[k]) / nodes_per_axis;
            for (int j = 0; j < nodes_per_axis; ++j) {
                xs[k][j] = box.lo[k] + (j + 0.5) * h;  // offset keeps nodes off the seam
                ws[k][j] = h;
            }
        } else {
            for (int j = 0; j < nodes_per_axis; ++j)
                gsl_integration_glfixed_point(box.lo[k], box.hi[k], static_cast<std::size_t>(j),
                                              &xs[k][j], &ws[k][j], table);
        }
    }
    gsl_integration_glfixed_table_free(table);

    ChartParams p{n, std::vector<double>(static_cast<std::size_t>(d))};
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    cdouble acc{};
    std::int64_t evals = 0;
    for (;;) {
        double weight = 1.0;
        for (int k = 0; k < d; ++k) {
            p.angles[k] = xs[k][idx[k]];
            weight *= ws[k][idx[k]];
        }
        cdouble v;
        try {
            v = pullback_density(p, fd_step);
        } catch (const chart_degeneracy&) {
            // a node landed on the measure-zero seam: nudge it off
            ChartParams moved = p;
            for (int k = 0; k < d; ++k) moved.angles[k] += 3e-8 * (k + 1);
            v = pullback_density(moved, fd_step);
        }
        acc += weight * v;
        ++evals;
        int k = d - 1;
        while (k >= 0 && ++idx[k] == nodes_per_axis) idx[k--] = 0;
        if (k < 0) break;
    }
    IntegrationEstimate est;
    est.n = n;
    est.value = acc;
    est.std_error = 0.0;
    est.evaluations = evals;
    est.method = "quadrature";
    return est;
}

IntegrationEstimate integrate_mc(int n, std::int64_t samples, std::uint64_t seed,
                                 double fd_step) {
    check_n(n, 3, "integrate_mc");
    if (samples < 10000)
        throw std::invalid_argument("integrate_mc: need at least 10^4 samples");
    if (!(fd_step > 0.0)) throw std::invalid_argument("integrate_mc: bad fd step");

    AngleBox box = chart_box(n);
    int d = box.dim();
    double volume = 1.0;
    for (int k = 0; k < d; ++k) volume *= box.hi[k] - box.lo[k];

    std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<McPartial> partial(static_cast<std::size_t>(chunks));

    auto run_chunk = [&](std::int64_t ci) {
        std::int64_t begin = ci * kChunk;
        std::int64_t count = std::min(kChunk, samples - begin);
        std::mt19937_64 rng(splitmix64(seed + 0x9E3779B97F4A7C15ULL *
                                                  static_cast<std::uint64_t>(ci + 1)));
        ChartParams p{n, std::vector<double>(static_cast<std::size_t>(d))};
        McPartial acc;
        for (std::int64_t s = 0; s < count; ++s) {
            cdouble v;
            for (int attempt = 0;; ++attempt) {
                for (int k = 0; k < d; ++k)
                    p.angles[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * u01(rng);
                try {
                    v = pullback_density(p, fd_step);
                    break;
                } catch (const chart_degeneracy&) {
                    if (attempt >= 64) throw;  // statistically unreachable
                }
            }
            acc.sum += v;
            acc.sum_sq += std::norm(v);
            ++acc.count;
        }
        partial[static_cast<std::size_t>(ci)] = acc;
    };

    unsigned hw = std::thread::hardware_concurrency();
    unsigned nthreads = std::clamp<unsigned>(hw == 0 ? 1 : hw, 1,
                                             static_cast<unsigned>(std::min<std::int64_t>(chunks, 8)));
    if (nthreads <= 1) {
        for (std::int64_t ci = 0; ci < chunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (std::int64_t ci = t; ci < chunks; ci += nthreads) run_chunk(ci);
            });
        for (auto& th : pool) th.join();
    }

    // merge in chunk order: the result is independent of the thread count
    cdouble sum{};
    double sum_sq = 0.0;
    std::int64_t count = 0;
    for (const auto& part : partial) {
        sum += part.sum;
        sum_sq += part.sum_sq;
        count += part.count;
    }

    cdouble mean = sum / static_cast<double>(count);
    double var = (sum_sq - std::norm(sum) / static_cast<double>(count)) /
                 static_cast<double>(count - 1);
    var = std::max(var, 0.0);

    IntegrationEstimate est;
    est.n = n;
    est.value = volume * mean;
    est.std_error = volume * std::sqrt(var / static_cast<double>(count));
    est.evaluations = count;
    est.method = "montecarlo";
    est.seed = seed;
    return est;
}

UnitaryPoint haar_sample(int n, std::uint64_t seed) {
    check_n(n, 9, "haar_sample");
    std::mt19937_64 rng(splitmix64(seed));
    auto gaussian_pair = [&rng]() {
        double a = std::max(u01(rng), 0x1.0p-53);  // keep log finite
        double b = u01(rng);
        double r = std::sqrt(-2.0 * std::log(a));
        return cdouble(r * std::cos(2.0 * kPi * b), r * std::sin(2.0 * kPi * b));
    };

    // complex Ginibre matrix, columns orthonormalized in order
    std::vector<std::vector<cdouble>> col(static_cast<std::size_t>(n),
                                          std::vector<cdouble>(static_cast<std::size_t>(n)));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] =
            gaussian_pair() * std::numbers::sqrt2 / 2.0;

    for (int c = 0; c < n; ++c) {
        auto& v = col[static_cast<std::size_t>(c)];
        for (int pass = 0; pass < 2; ++pass)  // twice-is-enough reorthogonalization
            for (int k = 0; k < c; ++k) {
                const auto& q = col[static_cast<std::size_t>(k)];
                cdouble dot{};
                for (int r = 0; r < n; ++r) dot += std::conj(q[static_cast<std::size_t>(r)]) *
                                                   v[static_cast<std::size_t>(r)];
                for (int r = 0; r < n; ++r) v[static_cast<std::size_t>(r)] -=
                    dot * q[static_cast<std::size_t>(r)];
            }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(v[static_cast<std::size_t>(r)]);
        norm = std::sqrt(norm);
        // R_cc = norm > 0: this *is* the positive-diagonal QR phase convention
        for (int r = 0; r < n; ++r) v[static_cast<std::size_t>(r)] /= norm;
    }

    std::vector<cdouble> m(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m[static_cast<std::size_t>(r) * n + c] = col[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    return make_unitary(n, std::move(m));
}

}  // namespace glvol
