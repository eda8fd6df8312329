#include "pjacobi/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pjacobi/linalg.hpp"

namespace pjacobi {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const std::vector<double>& v, const char* name) {
    for (double x : v) {
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string("operator sequence '") + name +
                                        "' contains a non-finite entry");
    }
}

// "Constant" up to 1e-12 * (1 + max |entry|); exact float equality is brittle
// after file round-trips.
bool nearly_constant(const std::vector<double>& v) {
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double scale = std::max(std::abs(*mn), std::abs(*mx));
    return (*mx - *mn) <= 1e-12 * (1.0 + scale);
}

}  // namespace

PeriodicJacobiOperator::PeriodicJacobiOperator(std::vector<double> a_,
                                               std::vector<double> b_,
                                               std::vector<double> c_)
    : period(static_cast<int>(a_.size())),
      a(std::move(a_)),
      b(std::move(b_)),
      c(std::move(c_)) {
    if (period < 2)
        throw std::invalid_argument("operator period must be >= 2");
    if (b.size() != a.size() || c.size() != a.size())
        throw std::invalid_argument(
            "operator sequences a, b, c must all have length equal to the period");
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
}

bool PeriodicJacobiOperator::self_adjoint(double tol) const {
    for (int i = 0; i < period; ++i)
        if (std::abs(b[i] - c[i]) > tol * (1.0 + std::abs(b[i]))) return false;
    return true;
}

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::ConstantOffDiag: return "constant_off_diagonal";
        case CaseTag::ConstantDifference: return "constant_difference";
        case CaseTag::General: return "general";
        case CaseTag::FirstOrderFD: return "first_order_fd";
    }
    return "unknown";
}

double normalize_theta(double theta) {
    double r = std::fmod(theta + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;  // (-pi, pi]
}

SymbolMatrix build_symbol(const PeriodicJacobiOperator& op, double theta) {
    const int p = op.p();
    const double t = normalize_theta(theta);
    Matrix m = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i) m(i, i) = op.a[i];
    for (int i = 0; i + 1 < p; ++i) {
        m(i, i + 1) += op.b[i];
        m(i + 1, i) += op.c[i];
    }
    const Complex down(std::cos(t), -std::sin(t));  // e^{-i theta}
    const Complex up = std::conj(down);
    // For p == 2 these add onto the off-diagonal entries.
    m(0, p - 1) += op.c[p - 1] * down;
    m(p - 1, 0) += op.b[p - 1] * up;
    return SymbolMatrix{t, std::move(m)};
}

double oscillation(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("oscillation of an empty sequence");
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mx - *mn;
}

OscillationStats oscillation_stats(const PeriodicJacobiOperator& op) {
    OscillationStats s;
    s.omega_a = oscillation(op.a);
    s.omega_b = oscillation(op.b);
    s.omega_c = oscillation(op.c);
    for (int i = 0; i < op.p(); ++i) {
        s.omega_bc = std::max(s.omega_bc, std::abs(op.c[i] - op.b[0]));
        s.max_cb_gap = std::max(s.max_cb_gap, std::abs(op.c[i] - op.b[i]));
    }
    return s;
}

CaseTag classify_case(const PeriodicJacobiOperator& op) {
    if (nearly_constant(op.b) && nearly_constant(op.c))
        return CaseTag::ConstantOffDiag;
    std::vector<double> diff(op.p());
    for (int i = 0; i < op.p(); ++i) diff[i] = op.c[i] - op.b[i];
    if (nearly_constant(diff)) return CaseTag::ConstantDifference;
    return CaseTag::General;
}

Matrix coupling_ring(double alpha, int p, double theta) {
    PeriodicJacobiOperator ring(std::vector<double>(p, 0.0),
                                std::vector<double>(p, alpha),
                                std::vector<double>(p, alpha));
    return build_symbol(ring, theta).entries;
}

Matrix coupling_shift(double k, int p, double theta) {
    PeriodicJacobiOperator shift(std::vector<double>(p, 0.0),
                                 std::vector<double>(p, 0.0),
                                 std::vector<double>(p, k));
    return build_symbol(shift, theta).entries;
}

namespace {

// Self-adjoint companion: diagonal a, couplings b on both off-diagonals and
// in both corners. Shared by every converse split.
MatrixBuilder selfadjoint_part(const PeriodicJacobiOperator& op) {
    return [op](double theta) {
        PeriodicJacobiOperator sym(op.a, op.b, op.b);
        return build_symbol(sym, theta).entries;
    };
}

// Weighted cyclic down-shift with weights w_i at (i+1 mod p, i); the corner
// weight w_{p-1} carries the e^{-i theta} phase. Spectral norm = max |w_i|.
MatrixBuilder weighted_shift(std::vector<double> w) {
    return [w = std::move(w)](double theta) {
        const int p = static_cast<int>(w.size());
        Matrix m = Matrix::Zero(p, p);
        for (int i = 0; i + 1 < p; ++i) m(i + 1, i) += w[i];
        m(0, p - 1) += w[p - 1] * Complex(std::cos(theta), -std::sin(theta));
        return m;
    };
}

}  // namespace

Decomposition decompose(const PeriodicJacobiOperator& op, CaseTag tag) {
    const int p = op.p();
    const CaseTag natural = classify_case(op);
    if (tag == CaseTag::ConstantOffDiag && natural != CaseTag::ConstantOffDiag)
        throw std::invalid_argument(
            "constant_off_diagonal decomposition requires constant b and c");
    if (tag == CaseTag::ConstantDifference && natural == CaseTag::General)
        throw std::invalid_argument(
            "constant_difference decomposition requires c_i - b_i constant");

    Decomposition d;
    d.case_tag = tag;
    d.shift = op.a[0];

    // Converse split (same shape for every case): self-adjoint part plus a
    // weighted shift with weights c_i - b_i.
    std::vector<double> cb(p);
    for (int i = 0; i < p; ++i) cb[i] = op.c[i] - op.b[i];
    d.converse_normal = selfadjoint_part(op);
    d.converse_perturbation = weighted_shift(cb);
    d.converse_norm = 0.0;
    for (double w : cb) d.converse_norm = std::max(d.converse_norm, std::abs(w));

    switch (tag) {
        case CaseTag::ConstantOffDiag: {
            // Normal part: the symbol with the diagonal frozen at a_0;
            // perturbation: the diagonal remainder.
            const double a0 = op.a[0], b0 = op.b[0], c0 = op.c[0];
            d.normal_part = [p, a0, b0, c0](double theta) {
                PeriodicJacobiOperator frozen(std::vector<double>(p, a0),
                                              std::vector<double>(p, b0),
                                              std::vector<double>(p, c0));
                return build_symbol(frozen, theta).entries;
            };
            std::vector<double> da(op.a);
            for (double& x : da) x -= a0;
            d.perturbation_parts.push_back([da](double) {
                Matrix m = Matrix::Zero(da.size(), da.size());
                for (size_t i = 0; i < da.size(); ++i) m(i, i) = da[i];
                return m;
            });
            d.k = c0 - b0;
            break;
        }
        case CaseTag::ConstantDifference: {
            const double a0 = op.a[0], b0 = op.b[0];
            const double k = op.c[0] - op.b[0];
            d.k = k;
            d.normal_part = [p, a0, b0, k](double theta) {
                Matrix m = coupling_ring(b0, p, theta) + coupling_shift(k, p, theta);
                m.diagonal().array() += a0;
                return m;
            };
            // Remainder: symmetric b-differences plus the a-differences.
            PeriodicJacobiOperator rest = op;
            for (int i = 0; i < p; ++i) {
                rest.a[i] -= a0;
                rest.b[i] -= b0;
                rest.c[i] = rest.b[i];  // c_i - b_0 - k == b_i - b_0
            }
            d.perturbation_parts.push_back([rest](double theta) {
                return build_symbol(rest, theta).entries;
            });
            break;
        }
        case CaseTag::General:
        case CaseTag::FirstOrderFD: {
            const double a0 = op.a[0], b0 = op.b[0];
            d.normal_part = [p, a0, b0](double theta) {
                Matrix m = coupling_ring(b0, p, theta);
                m.diagonal().array() += a0;
                return m;
            };
            // Remainder carries a- and b-differences plus the c_i - b_0 shift.
            PeriodicJacobiOperator rest = op;
            for (int i = 0; i < p; ++i) {
                rest.a[i] -= a0;
                rest.b[i] -= b0;
                rest.c[i] -= b0;
            }
            d.perturbation_parts.push_back([rest](double theta) {
                return build_symbol(rest, theta).entries;
            });
            break;
        }
    }
    return d;
}

double frobenius_bound(const PeriodicJacobiOperator& op, CaseTag tag) {
    const int p = op.p();
    const OscillationStats s = oscillation_stats(op);
    switch (tag) {
        case CaseTag::ConstantOffDiag:
        case CaseTag::ConstantDifference:
            return std::sqrt((p - 1) *
                             (s.omega_a * s.omega_a + 2.0 * s.omega_b * s.omega_b));
        case CaseTag::General:
            return std::sqrt((p - 1) * (s.omega_a * s.omega_a + s.omega_b * s.omega_b +
                                        s.omega_bc * s.omega_bc));
        case CaseTag::FirstOrderFD: {
            double max_adjacent = 0.0;
            for (int i = 0; i < p; ++i)
                max_adjacent =
                    std::max(max_adjacent, std::abs(op.b[i] + op.b[(i + 1) % p]));
            return std::sqrt((p - 1) * (s.omega_a * s.omega_a + s.omega_b * s.omega_b +
                                        max_adjacent + 4.0 * op.b[0] * op.b[0]));
        }
    }
    throw std::logic_error("unreachable case tag");
}

}  // namespace pjacobi
