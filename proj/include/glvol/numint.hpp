#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glvol {

// A concrete point of the n x n unitary group. Construction through
// make_unitary enforces ||U* U - I||_max < 1e-12.
struct UnitaryPoint {
    int n = 0;
    std::vector<std::complex<double>> m;  // row-major

    std::complex<double>& at(int r, int c) { return m[static_cast<std::size_t>(r) * n + c]; }
    const std::complex<double>& at(int r, int c) const {
        return m[static_cast<std::size_t>(r) * n + c];
    }
};

UnitaryPoint make_unitary(int n, std::vector<std::complex<double>> entries);
UnitaryPoint identity_unitary(int n);
UnitaryPoint multiply(const UnitaryPoint& a, const UnitaryPoint& b);

// Chart angles for U(n), laid out level by level: the size-(m+1) level
// contributes 2m+1 angles (2m polar in [0, pi], then one azimuth in
// [0, 2 pi)), for m = n-1 down to 1, followed by the single U(1) angle.
// Total n^2 angles.
struct ChartParams {
    int n = 0;
    std::vector<double> angles;
};

// Integration box of the chart: bounds and periodicity per axis, in the
// ChartParams layout.
struct AngleBox {
    std::vector<double> lo, hi;
    std::vector<bool> periodic;
    int dim() const { return static_cast<int>(lo.size()); }
};

AngleBox chart_box(int n);

// The chart itself: U(m+1) = W(u) * diag(1, U(m)) where u is the
// hyperspherical point of S^(2m+1) for the level's angles and W(u) is a
// smooth unitary completion with first column u, equal to the identity at
// u = e_0. Throws chart_degeneracy when any level's |u_0| < 1e-12 (the
// measure-zero seam of the completion), std::invalid_argument for a wrong
// angle count or angles outside the (slightly padded) box.
UnitaryPoint chart_point(const ChartParams& p);

// det(J(theta)) / det(Z(theta))^n with J the n^2 x n^2 complex Jacobian of
// the flattened chart by central finite differences of half-width `step`,
// and Z the chart point itself — i.e. the density of the pulled-back
// holomorphic n^2-form against d(theta). The `left` overload translates the
// chart by a fixed unitary (Z = L * chart), which must not change the
// density.
std::complex<double> pullback_density(const ChartParams& p, double step);
std::complex<double> pullback_density(const ChartParams& p, double step, const UnitaryPoint& left);

struct IntegrationEstimate {
    int n = 0;
    std::complex<double> value;
    double std_error = 0.0;  // 0 for quadrature
    std::int64_t evaluations = 0;
    std::string method;      // "quadrature" | "montecarlo"
    std::optional<std::uint64_t> seed;
};

// Tensor-product quadrature over the chart box: Gauss-Legendre on the polar
// axes, midpoint-offset equispaced on the periodic axes. n <= 2 (the n = 3
// grid would need ~10^9 nodes to be useful).
IntegrationEstimate integrate_quadrature(int n, int nodes_per_axis, double fd_step);

// Monte Carlo over the chart box, n <= 3, samples >= 10^4. Deterministic for
// a fixed seed regardless of thread count: samples are processed in fixed
// chunks, each chunk's generator seeded by (seed, chunk index) alone, and
// partial sums merged in chunk order.
IntegrationEstimate integrate_mc(int n, std::int64_t samples, std::uint64_t seed, double fd_step);

// A Haar-distributed unitary: complex Gaussian matrix, then the unique QR
// factorization with positive-real diagonal of R (Gram-Schmidt yields it
// directly). Deterministic per seed.
UnitaryPoint haar_sample(int n, std::uint64_t seed);

}  // namespace glvol
