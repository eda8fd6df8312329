#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "pjacobi/operator.hpp"

namespace pjacobi {

/// Rectangular complex-plane grid, nodes inclusive of the bounds.
struct GridSpec {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    int nx = 2, ny = 2;

    double hx() const { return (re_max - re_min) / (nx - 1); }
    double hy() const { return (im_max - im_min) / (ny - 1); }
    double re_at(int ix) const { return re_min + ix * hx(); }
    double im_at(int iy) const { return im_min + iy * hy(); }
    Complex node(int ix, int iy) const { return {re_at(ix), im_at(iy)}; }
    long long node_count() const { return 1LL * nx * ny; }
    // Farthest any point of the rectangle can be from a node.
    double capture_radius() const { return 0.5 * std::hypot(hx(), hy()); }
};

/// Uniform angles theta_j = -pi + 2 pi j / n for j = 1..n (covers (-pi, pi]).
std::vector<double> theta_grid(int theta_count);

struct SpectrumSample {
    int theta_count = 0;
    // p eigenvalues per theta, thetas ascending, eigenvalues in kernel order.
    std::vector<std::pair<double, Complex>> points;

    // Axis-aligned bounding box of the point cloud (degenerate if empty).
    GridSpec bounding_box() const;
};

/// Exact eigensystem of the ring/shift couplings at one theta:
/// lambda_r = e^{i (2 r pi - theta)/p}, z_r = [lambda_r^{p-1}, ..., lambda_r, 1].
struct ClosedFormEigensystem {
    double alpha = 0.0;
    double k = 0.0;
    int p = 0;
    double theta = 0.0;
    std::vector<Complex> lambdas;
    std::vector<Vector> eigenvectors;
};

ClosedFormEigensystem closed_form_eigensystem(double alpha, double k, int p,
                                              double theta);

enum class ClosedFormWhich { Ring, Shift, RingPlusShift };

/// Closed-form spectra of coupling_ring(alpha), coupling_shift(k) and their
/// sum, sorted by (real, imag):
///   ring:  alpha lambda_r + alpha / lambda_r
///   shift: k lambda_r
///   sum:   (alpha + k) lambda_r + alpha / lambda_r
std::vector<Complex> closed_form_spectrum(double alpha, double k, int p,
                                          double theta, ClosedFormWhich which);

/// Eigenvalues of the symbol over the uniform theta grid.
SpectrumSample sample_spectrum(const PeriodicJacobiOperator& op, int theta_count);

/// Spectral bands and gaps of a self-adjoint operator (b == c).
struct BandGapReport {
    std::vector<std::pair<double, double>> bands;  // merged, sorted, disjoint
    std::vector<std::pair<double, double>> gaps;   // open intervals between bands
    double gamma_total = 0.0;                      // |gamma|: sum of gap lengths
    double gamma_max = 0.0;                        // largest single gap
};

/// Per-branch band extraction over theta_count angles (>= 64) with
/// golden-section refinement of each band endpoint. Throws on
/// non-self-adjoint input (use compute_field for those).
BandGapReport bands_and_gaps(const PeriodicJacobiOperator& op, int theta_count);

/// Psi(z) = min over sampled theta of sigma_min(zI - phi(theta)), per node.
struct PseudoField {
    GridSpec grid;
    int theta_count = 0;
    std::vector<double> psi;  // row-major: psi[iy * nx + ix]

    double at(int ix, int iy) const { return psi[size_t(iy) * grid.nx + ix]; }
    // Bilinear estimate between nodes; connectivity decisions never rely on it.
    double interpolate(Complex z) const;
};

/// Evaluate the field; nodes are independent and the result is deterministic
/// for any thread count. threads == 0 picks hardware concurrency.
PseudoField compute_field(const PeriodicJacobiOperator& op, const GridSpec& grid,
                          int theta_count, int threads = 0);

/// min over sampled theta of sigma_min(zI - phi(theta)) at a single point.
double resolvent_bound_at(const PeriodicJacobiOperator& op, Complex z,
                          int theta_count);

/// Lipschitz constant of theta -> sigma_min(zI - phi(theta)):
/// max(|b_{p-1}|, |c_{p-1}|), from the corner phase derivatives.
double theta_lipschitz(const PeriodicJacobiOperator& op);

}  // namespace pjacobi
