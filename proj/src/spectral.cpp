#include "pjacobi/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pjacobi/linalg.hpp"

namespace pjacobi {

namespace {

constexpr double kPi = std::numbers::pi;

bool lex_less(const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

// Workspace-reusing smallest-singular-value kernel; numerically identical to
// linalg's sigma_min (same decision rule and fallback).
struct SigmaMinKernel {
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    Eigen::JacobiSVD<Matrix> svd;
    Matrix gram;
    Vector tmp;

    double operator()(const Matrix& m) {
        const int n = static_cast<int>(m.rows());
        gram.noalias() = m.adjoint() * m;
        es.compute(gram);
        if (es.info() == Eigen::Success) {
            const auto& lam = es.eigenvalues();
            const double lam_max = std::max(lam(n - 1), 0.0);
            tmp.noalias() = m * es.eigenvectors().col(0);
            const double refined = tmp.norm();
            const double scale = std::sqrt(lam_max);
            const bool tiny = refined <= 1e-5 * (1.0 + scale);
            const bool clustered = (lam(1) - lam(0)) <= 1e-12 * (1.0 + lam_max);
            if (!tiny && !clustered) return refined;
        }
        svd.compute(m);
        return svd.singularValues()(n - 1);
    }
};

void run_rows(int nrows, int threads, const std::function<void(int, int)>& body) {
    // body(row, worker); workers pull rows from a shared counter. Each row's
    // output is independent, so scheduling does not affect results.
    if (threads <= 1) {
        for (int r = 0; r < nrows; ++r) body(r, 0);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (int r = next.fetch_add(1); r < nrows; r = next.fetch_add(1))
                body(r, w);
        });
    }
    for (auto& t : pool) t.join();
}

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

std::vector<double> theta_grid(int theta_count) {
    std::vector<double> thetas(theta_count);
    for (int j = 1; j <= theta_count; ++j)
        thetas[j - 1] = -kPi + 2.0 * kPi * j / theta_count;
    return thetas;
}

GridSpec SpectrumSample::bounding_box() const {
    GridSpec g;
    if (points.empty()) return g;
    double re_lo = points[0].second.real(), re_hi = re_lo;
    double im_lo = points[0].second.imag(), im_hi = im_lo;
    for (const auto& [theta, z] : points) {
        re_lo = std::min(re_lo, z.real());
        re_hi = std::max(re_hi, z.real());
        im_lo = std::min(im_lo, z.imag());
        im_hi = std::max(im_hi, z.imag());
    }
    g.re_min = re_lo;
    g.re_max = re_hi;
    g.im_min = im_lo;
    g.im_max = im_hi;
    return g;
}

ClosedFormEigensystem closed_form_eigensystem(double alpha, double k, int p,
                                              double theta) {
    if (p < 2) throw std::invalid_argument("closed_form_eigensystem: p must be >= 2");
    ClosedFormEigensystem sys;
    sys.alpha = alpha;
    sys.k = k;
    sys.p = p;
    sys.theta = theta;
    sys.lambdas.resize(p);
    sys.eigenvectors.resize(p);
    for (int r = 0; r < p; ++r) {
        const double arg = (2.0 * r * kPi - theta) / p;
        const Complex lam(std::cos(arg), std::sin(arg));
        sys.lambdas[r] = lam;
        Vector z(p);
        Complex pow = 1.0;
        for (int i = p - 1; i >= 0; --i) {
            z(i) = pow;
            pow *= lam;
        }
        sys.eigenvectors[r] = std::move(z);
    }
    return sys;
}

std::vector<Complex> closed_form_spectrum(double alpha, double k, int p,
                                          double theta, ClosedFormWhich which) {
    const auto sys = closed_form_eigensystem(alpha, k, p, theta);
    std::vector<Complex> vals(p);
    for (int r = 0; r < p; ++r) {
        const Complex lam = sys.lambdas[r];
        switch (which) {
            case ClosedFormWhich::Ring: vals[r] = alpha * lam + alpha / lam; break;
            case ClosedFormWhich::Shift: vals[r] = k * lam; break;
            case ClosedFormWhich::RingPlusShift:
                vals[r] = (alpha + k) * lam + alpha / lam;
                break;
        }
    }
    std::sort(vals.begin(), vals.end(), lex_less);
    return vals;
}

SpectrumSample sample_spectrum(const PeriodicJacobiOperator& op, int theta_count) {
    if (theta_count < 8)
        throw std::invalid_argument("sample_spectrum: theta_count must be >= 8");
    SpectrumSample sample;
    sample.theta_count = theta_count;
    sample.points.reserve(size_t(theta_count) * op.p());
    for (double theta : theta_grid(theta_count)) {
        try {
            const auto eig = eig_dense(build_symbol(op, theta).entries);
            for (const Complex& lam : eig.eigenvalues)
                sample.points.emplace_back(theta, lam);
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << e.what() << " at theta=" << theta;
            throw NumericalError(msg.str());
        }
    }
    return sample;
}

namespace {

// r-th sorted eigenvalue of the (self-adjoint) symbol at theta.
double branch_value(const PeriodicJacobiOperator& op, int r, double theta) {
    return eig_hermitian(build_symbol(op, theta).entries)[r];
}

// Golden-section minimization of f over [lo, hi] to tolerance tol in theta.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f((lo + hi) / 2.0);
}

}  // namespace

BandGapReport bands_and_gaps(const PeriodicJacobiOperator& op, int theta_count) {
    if (!op.self_adjoint())
        throw std::invalid_argument(
            "bands_and_gaps requires a self-adjoint operator (b == c); "
            "use compute_field for non-self-adjoint pseudospectra");
    if (theta_count < 64)
        throw std::invalid_argument("bands_and_gaps: theta_count must be >= 64");

    const int p = op.p();
    const auto thetas = theta_grid(theta_count);
    const double dtheta = 2.0 * kPi / theta_count;

    std::vector<std::vector<double>> branch(p, std::vector<double>(theta_count));
    for (int j = 0; j < theta_count; ++j) {
        const auto vals = eig_hermitian(build_symbol(op, thetas[j]).entries);
        for (int r = 0; r < p; ++r) branch[r][j] = vals[r];
    }

    // Refine each branch extremum by golden-section search around the
    // discrete winner; |gamma| enters inequalities, so endpoints matter.
    std::vector<std::pair<double, double>> bands(p);
    double scale = 0.0;
    for (int r = 0; r < p; ++r) {
        const auto& vals = branch[r];
        const int jmin = static_cast<int>(std::min_element(vals.begin(), vals.end()) -
                                          vals.begin());
        const int jmax = static_cast<int>(std::max_element(vals.begin(), vals.end()) -
                                          vals.begin());
        auto f = [&op, r](double t) { return branch_value(op, r, t); };
        auto g = [&f](double t) { return -f(t); };
        const double lo = bands[r].first =
            golden_min(f, thetas[jmin] - dtheta, thetas[jmin] + dtheta, 1e-10);
        const double hi = bands[r].second =
            -golden_min(g, thetas[jmax] - dtheta, thetas[jmax] + dtheta, 1e-10);
        scale = std::max({scale, std::abs(lo), std::abs(hi)});
    }

    std::sort(bands.begin(), bands.end());
    const double merge_tol = 1e-9 * (1.0 + scale);

    BandGapReport report;
    for (const auto& band : bands) {
        if (!report.bands.empty() && band.first <= report.bands.back().second + merge_tol)
            report.bands.back().second = std::max(report.bands.back().second, band.second);
        else
            report.bands.push_back(band);
    }
    for (size_t i = 0; i + 1 < report.bands.size(); ++i) {
        const double lo = report.bands[i].second;
        const double hi = report.bands[i + 1].first;
        report.gaps.emplace_back(lo, hi);
        report.gamma_total += hi - lo;
        report.gamma_max = std::max(report.gamma_max, hi - lo);
    }
    return report;
}

double PseudoField::interpolate(Complex z) const {
    const auto& g = grid;
    double fx = (z.real() - g.re_min) / g.hx();
    double fy = (z.imag() - g.im_min) / g.hy();
    fx = std::clamp(fx, 0.0, double(g.nx - 1));
    fy = std::clamp(fy, 0.0, double(g.ny - 1));
    const int ix = std::min(int(fx), g.nx - 2);
    const int iy = std::min(int(fy), g.ny - 2);
    const double tx = fx - ix, ty = fy - iy;
    return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
           (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

PseudoField compute_field(const PeriodicJacobiOperator& op, const GridSpec& grid,
                          int theta_count, int threads) {
    if (!std::isfinite(grid.re_min) || !std::isfinite(grid.re_max) ||
        !std::isfinite(grid.im_min) || !std::isfinite(grid.im_max))
        throw std::invalid_argument("compute_field: grid bounds must be finite");
    if (grid.nx < 2 || grid.ny < 2)
        throw std::invalid_argument("compute_field: nx and ny must be >= 2");
    if (grid.re_max <= grid.re_min || grid.im_max <= grid.im_min)
        throw std::invalid_argument("compute_field: empty grid rectangle");
    if (grid.node_count() > 100'000'000LL)
        throw std::invalid_argument("compute_field: grid exceeds 1e8 nodes");
    if (theta_count < 8)
        throw std::invalid_argument("compute_field: theta_count must be >= 8");

    const int p = op.p();
    const auto thetas = theta_grid(theta_count);
    std::vector<Matrix> symbols;
    symbols.reserve(theta_count);
    for (double t : thetas) symbols.push_back(build_symbol(op, t).entries);

    PseudoField field;
    field.grid = grid;
    field.theta_count = theta_count;
    field.psi.assign(size_t(grid.nx) * grid.ny, std::numeric_limits<double>::infinity());

    const int nthreads = resolve_threads(threads);

    // The symbol of a real operator satisfies phi(-theta) = conj(phi(theta)),
    // so sigma_min(zI - phi(-theta)) = sigma_min(conj(z)I - phi(theta)). On a
    // grid symmetric about the real axis the rows iy and ny-1-iy share every
    // kernel evaluation; the uniform theta grid pairs j with n-j.
    const bool mirror = (grid.im_min + grid.im_max == 0.0);

    if (mirror) {
        const int half_rows = (grid.ny + 1) / 2;
        run_rows(half_rows, nthreads, [&](int iy, int) {
            SigmaMinKernel kernel;
            Matrix shifted(p, p);
            const int iy_conj = grid.ny - 1 - iy;
            const bool axis = (iy == iy_conj);
            for (int ix = 0; ix < grid.nx; ++ix) {
                const Complex z = grid.node(ix, iy);
                const Complex zc = std::conj(z);
                double psi = std::numeric_limits<double>::infinity();
                double psi_conj = psi;
                for (int j = 0; j < theta_count; ++j) {
                    // theta_j >= 0 <=> 2j >= theta_count with thetas[j-1] layout
                    if (thetas[j] < 0.0) continue;
                    shifted = -symbols[j];
                    shifted.diagonal().array() += z;
                    const double sa = kernel(shifted);
                    psi = std::min(psi, sa);
                    const bool self_paired =
                        (thetas[j] == 0.0) || (j == theta_count - 1);
                    if (axis) {
                        if (!self_paired) psi = std::min(psi, sa);
                        continue;
                    }
                    shifted = -symbols[j];
                    shifted.diagonal().array() += zc;
                    const double sb = kernel(shifted);
                    psi_conj = std::min(psi_conj, sb);
                    if (!self_paired) {
                        psi = std::min(psi, sb);
                        psi_conj = std::min(psi_conj, sa);
                    }
                }
                field.psi[size_t(iy) * grid.nx + ix] = psi;
                if (!axis) field.psi[size_t(iy_conj) * grid.nx + ix] = psi_conj;
            }
        });
    } else {
        run_rows(grid.ny, nthreads, [&](int iy, int) {
            SigmaMinKernel kernel;
            Matrix shifted(p, p);
            for (int ix = 0; ix < grid.nx; ++ix) {
                const Complex z = grid.node(ix, iy);
                double psi = std::numeric_limits<double>::infinity();
                for (int j = 0; j < theta_count; ++j) {
                    shifted = -symbols[j];
                    shifted.diagonal().array() += z;
                    psi = std::min(psi, kernel(shifted));
                }
                field.psi[size_t(iy) * grid.nx + ix] = psi;
            }
        });
    }
    return field;
}

double resolvent_bound_at(const PeriodicJacobiOperator& op, Complex z,
                          int theta_count) {
    double best = std::numeric_limits<double>::infinity();
    for (double theta : theta_grid(theta_count)) {
        Matrix shifted = -build_symbol(op, theta).entries;
        shifted.diagonal().array() += z;
        best = std::min(best, sigma_min(shifted));
    }
    return best;
}

double theta_lipschitz(const PeriodicJacobiOperator& op) {
    const int p = op.p();
    return std::max(std::abs(op.b[p - 1]), std::abs(op.c[p - 1]));
}

}  // namespace pjacobi
