#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pjacobi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Period-p Jacobi operator data: diagonal a, super-diagonal b, sub-diagonal c.
/// Entry a_i sits on the diagonal, b_i immediately to its right, c_i
/// immediately below it. All sequences have length exactly p, p >= 2.
struct PeriodicJacobiOperator {
    int period = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;

    PeriodicJacobiOperator() = default;
    PeriodicJacobiOperator(std::vector<double> a_, std::vector<double> b_,
                           std::vector<double> c_);

    int p() const { return period; }
    bool self_adjoint(double tol = 1e-12) const;

    // Optional provenance: set by the first-order finite-difference frontend
    // so downstream verification can pick the matching norm bound.
    bool first_order_fd = false;
};

/// p x p symbol matrix at a fixed angle theta in (-pi, pi].
struct SymbolMatrix {
    double theta = 0.0;
    Matrix entries;
};

/// Oscillation statistics of the three coefficient sequences.
struct OscillationStats {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double omega_c = 0.0;
    double omega_bc = 0.0;     // max_i |c_i - b_0|
    double max_cb_gap = 0.0;   // max_i |c_i - b_i|
};

enum class CaseTag {
    ConstantOffDiag,     // b and c both constant
    ConstantDifference,  // c_i - b_i == k for all i
    General,
    FirstOrderFD,        // General shape arising from the first-order stencil
};

std::string to_string(CaseTag tag);

using MatrixBuilder = std::function<Matrix(double theta)>;

/// Splitting of the symbol into a normal part plus small perturbations,
/// together with the companion split used by the converse bounds
/// (self-adjoint part + an off-diagonal part of known spectral norm).
///
/// Invariants, at every theta:
///   normal_part(theta) + sum of perturbation_parts(theta) == symbol(theta)
///   converse_normal(theta) + converse_perturbation(theta) == symbol(theta)
///   normal_part and converse_normal are normal matrices.
struct Decomposition {
    CaseTag case_tag = CaseTag::General;
    double shift = 0.0;  // a_0; already folded into normal_part
    MatrixBuilder normal_part;
    std::vector<MatrixBuilder> perturbation_parts;
    MatrixBuilder converse_normal;
    MatrixBuilder converse_perturbation;
    // Spectral norm of converse_perturbation (theta-independent by construction).
    double converse_norm = 0.0;
    // Signed constant k = c_i - b_i when case_tag == ConstantDifference.
    double k = 0.0;
};

/// Reduce an angle to (-pi, pi].
double normalize_theta(double theta);

/// Assemble the symbol matrix: tridiagonal with corner phases
/// (0,p-1) = c_{p-1} e^{-i theta}, (p-1,0) = b_{p-1} e^{i theta}.
/// For p == 2 the corner terms add onto the off-diagonal entries.
SymbolMatrix build_symbol(const PeriodicJacobiOperator& op, double theta);

/// max_{i,j} |v_i - v_j| == max(v) - min(v). Throws on empty input.
double oscillation(std::span<const double> v);

OscillationStats oscillation_stats(const PeriodicJacobiOperator& op);

/// Route the operator to the decomposition family that applies.
/// ConstantOffDiag takes precedence over ConstantDifference. "Constant"
/// means oscillation <= 1e-12 * (1 + max |entry|).
CaseTag classify_case(const PeriodicJacobiOperator& op);

/// Build the case-specific splitting. `tag` must be consistent with `op`
/// (General and FirstOrderFD accept anything with the right shape).
Decomposition decompose(const PeriodicJacobiOperator& op, CaseTag tag);

/// Closed-form ceiling for the perturbation part of the given case:
///   ConstantOffDiag / ConstantDifference: sqrt((p-1) (omega_a^2 + 2 omega_b^2))
///   General:          sqrt((p-1) (omega_a^2 + omega_b^2 + omega_bc^2))
///   FirstOrderFD:     sqrt((p-1) (omega_a^2 + omega_b^2 + max_i|b_i+b_{i+1}| + 4 b_0^2))
double frobenius_bound(const PeriodicJacobiOperator& op, CaseTag tag);

// Building blocks shared by the decompositions: the symbol of a constant
// operator (0, alpha, alpha) and the weighted cyclic down-shift with phase
// corner (the symbol of (0, 0, k)).
Matrix coupling_ring(double alpha, int p, double theta);
Matrix coupling_shift(double k, int p, double theta);

}  // namespace pjacobi
