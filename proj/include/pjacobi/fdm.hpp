#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pjacobi/operator.hpp"

namespace pjacobi {

enum class OdeOrder { First, SecondConstG1, SecondGeneral };

/// Built-in coefficient generators, sampled at x0 + j h.
struct Generator {
    enum class Kind { Constant, Sine, Cosine, Sawtooth, Polynomial };
    Kind kind = Kind::Constant;
    double value = 0.0;      // Constant
    double amplitude = 1.0;  // Sine/Cosine/Sawtooth
    double frequency = 1.0;  // cycles per unit length
    double phase = 0.0;
    double offset = 0.0;
    std::vector<double> coefficients;  // Polynomial, ascending degree

    double operator()(double x) const;
};

using Coefficient = std::variant<double, std::vector<double>, Generator>;

/// Periodic-coefficient ODE with period normalized to 1 and step h = 1/p.
///   First:          g1 y' + g2 y = g3
///   Second*:        y'' + g1 y' + g2 y = g3
/// g3 only shifts the right-hand side and is ignored by the spectral
/// pipeline; parsers accept it and emit a notice.
struct OdeProblem {
    OdeOrder order = OdeOrder::First;
    int p = 0;
    double x0 = 0.0;
    Coefficient g1;  // scalar required for SecondConstG1
    Coefficient g2;

    double h() const { return 1.0 / p; }
};

/// Sample a coefficient at x0 + j h, j = 0..p-1. Pre-sampled arrays must
/// have length exactly p.
std::vector<double> sample_coefficient(const Coefficient& g, int p, double x0,
                                       const std::string& name);

/// Centered first-order stencil: a_j = 2h g2(x_j), b_j = g1(x_j),
/// c_j = -b_{j+1 mod p}. The result carries the first_order_fd flag.
PeriodicJacobiOperator discretize_first_order(const OdeProblem& problem);

/// Second-order stencil with constant g1: b = 2 + h g1, c = 2 - h g1,
/// a_j = 2 h^2 g2(x_j) - 4. Constant off-diagonals by construction.
PeriodicJacobiOperator discretize_second_order_const_g1(const OdeProblem& problem);

/// Second-order stencil with periodic g1: b_j = 2 + h u_j, c_j = 2 - h u_j,
/// a_j = 2 h^2 v_j - 4.
PeriodicJacobiOperator discretize_second_order_general(const OdeProblem& problem);

/// Dispatch on problem.order.
PeriodicJacobiOperator discretize(const OdeProblem& problem);

}  // namespace pjacobi
