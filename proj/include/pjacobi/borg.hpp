#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pjacobi/connectivity.hpp"

namespace pjacobi {

enum class CertStatus { Pass, Fail, NotApplicable, Indeterminate };

std::string to_string(CertStatus s);

/// One evaluated inequality (or connectivity claim encoded as
/// component_count <= 1). Reproducible from inputs_digest.
struct BorgCertificate {
    std::string statement_id;  // stable key, e.g. "T2.2", "T1.3-b"
    double lhs = 0.0;
    double rhs = 0.0;
    bool inequality_holds = false;  // lhs <= rhs within 1e-12 slack
    CertStatus status = CertStatus::NotApplicable;
    std::string note;
    std::map<std::string, double> inputs_digest;
    std::optional<RegionReport> connectivity;
};

/// Case-determined connectivity threshold: omega_a for constant off-diagonals,
/// otherwise the max over sampled theta of the perturbation-part norm.
double eps_star(const PeriodicJacobiOperator& op, int theta_count);

/// Off-diagonal defect entering the converse bounds:
/// |b - c|, |k|, or max_i |c_i - b_i| depending on the case (all equal to
/// max_i |c_i - b_i| numerically; the case picks the statement id).
double converse_kappa(const PeriodicJacobiOperator& op);

/// Forward statement: the sublevel set at eps_star is path-connected.
/// lhs = component_count, rhs = 1. A Disconnected verdict on a covered case
/// is reported as a discretization alarm in `note`, not as a refutation.
BorgCertificate verify_forward(const PeriodicJacobiOperator& op,
                               const ConnectivityOptions& opts = {});

/// Converse statement: if the epsilon-sublevel set is connected then
/// omega_a <= 2 (epsilon + kappa)(p - 1). NotApplicable when the set is
/// disconnected; Indeterminate when connectivity is Indeterminate.
BorgCertificate verify_converse(const PeriodicJacobiOperator& op, double epsilon,
                                const ConnectivityOptions& opts = {});

/// Self-adjoint gap statements, evaluated from bands_and_gaps:
///   omega_b <= (p-1) |gamma|
///   omega_a <= p^2 sqrt(p) |gamma|
///   omega_a + omega_b >= |gamma| / 4
std::vector<BorgCertificate> verify_selfadjoint_gaps(
    const PeriodicJacobiOperator& op, int theta_count = 1024);

/// Frobenius-ceiling statement for the case at hand: the sampled max of the
/// perturbation-part norm against the closed-form bound.
BorgCertificate verify_frobenius(const PeriodicJacobiOperator& op,
                                 int theta_count = 256);

/// Everything that applies to `op`: forward, converse (at `epsilon`, or at
/// eps_star when epsilon is absent), the Frobenius ceiling, and the gap trio
/// when self-adjoint.
std::vector<BorgCertificate> verify_all(const PeriodicJacobiOperator& op,
                                        std::optional<double> epsilon,
                                        const ConnectivityOptions& opts = {});

}  // namespace pjacobi
