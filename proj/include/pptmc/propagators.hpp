// propagators.hpp — The two integration back-ends behind one contract: exact
// Liouvillian exponentiation (standard method) and the order-2 midpoint
// completely positive stepping scheme.

#pragma once

#include "pptmc/gksl.hpp"

namespace pptmc::propagators {

using linalg::Matrix;
using linalg::Vector;

enum class Method { Standard, CaoLu };

struct PropagatorConfig {
    Method method{Method::CaoLu};
    double dx{1e-3};    // dimensionless step γΔt, 0 < dx < 1
    double x_max{10.0}; // search/censoring horizon, ≥ dx
};

void validate(const PropagatorConfig& cfg);

// D²×D² superoperator matrix in the column-major vec convention.
struct ChannelMatrix {
    int dim_d{0};
    Matrix matrix;
};

// e^{xM} evaluated through a one-time eigendecomposition of the Liouvillian.
// If the eigenvector matrix is ill-conditioned (> kConditionLimit) the exact
// scaling-and-squaring exponential is used instead.
class StandardPropagator {
public:
    explicit StandardPropagator(const gksl::GkslGenerator& gen);

    ChannelMatrix channel(double x) const;
    bool used_fallback() const { return fallback_; }
    const Matrix& liouvillian() const { return liouvillian_; }
    const linalg::GeneralEigen& eigen() const { return eigen_; }

    static constexpr double kConditionLimit = 1e12;

private:
    int dim_{0};
    Matrix liouvillian_;
    linalg::GeneralEigen eigen_;
    bool fallback_{false};
};

ChannelMatrix standard_channel(const gksl::GkslGenerator& gen, double x);

// One step of 𝒜^(2,MP) = 𝒦_{A″} + dx·𝒦_{A′}∘𝒬∘𝒦_{A′} + (dx²/2)·𝒬² applied to a
// D×D state in Kraus form, with A′ = 𝕀 + J dx/2, A″ = 𝕀 + J dx + J² dx²/2,
// J = −i H_eff. Requires Hermitian input, 0 ≤ dx < 1.
Matrix caolu_step(const gksl::GkslGenerator& gen, const Matrix& rho, double dx);

// Same scheme on a D²×D² Choi state; every operator acts as (·⊗𝕀).
Matrix caolu_step_choi(const gksl::GkslGenerator& gen, const Matrix& choi, double dx);

// Vec-representation matrix of one 𝒜^(2,MP) step (D²×D²). Iterating it from
// the identity yields the approximate channel matrix on the dx-grid.
Matrix caolu_step_superoperator(const gksl::GkslGenerator& gen, double dx);

// Evolve a D×D state to rescaled time x. CaoLu: ⌈x/dx⌉ steps with a shortened
// final step so the grid never overshoots.
Matrix propagate(const gksl::GkslGenerator& gen, const Matrix& rho0, double x,
                 const PropagatorConfig& cfg);

}  // namespace pptmc::propagators
