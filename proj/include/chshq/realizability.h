// Copyright 2026 The chshq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Quantum realizability of CHSH correlations for fixed qubit observables.
//
// For non-parallel pairs the correlations gamma are realizable by some
// two-qubit state iff
//
//     sqrt(gamma^T F(alpha, beta) gamma) + sqrt(gamma^T F(alpha, -beta) gamma) <= 2,
//
// where F is the 4x4 cosine matrix built by f_matrix(). Both quadratic forms
// are sums of two squares of the reduced frame coefficients w11, w21, w12,
// w22, and decide() evaluates them in that form:
//
//     gamma^T F(alpha,  beta) gamma = (w11 - w22)^2 + (w12 + w21)^2
//     gamma^T F(alpha, -beta) gamma = (w11 + w22)^2 + (w12 - w21)^2
//
// Parallel pairs collapse the condition to a disk plus linear equalities.

#ifndef CHSHQ_REALIZABILITY_H
#define CHSHQ_REALIZABILITY_H

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chshq/linalg.h"
#include "chshq/observables.h"
#include "chshq/tolerances.h"

namespace chshq {

/// Thrown when a witness is requested for correlations that are not realizable.
class InfeasibleError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Real symmetric 4x4 matrix, rows and columns in CorrVec order.
struct FMatrix {
    std::array<double, 16> entries{};

    double operator()(int row, int col) const {
        return entries[row * 4 + col];
    }
};

/// F(alpha, beta); pass -beta for the companion matrix. Throws
/// std::invalid_argument if |sin alpha| or |sin beta| is below tol::kParallel.
FMatrix f_matrix(double alpha, double beta);

/// g^T F g, with values in [-tol::kQuadFormClamp, 0) clamped to zero.
double quad_form(const FMatrix &f, const CorrVec &g);

/// w11, w21, w12, w22 of the zero-marginal state reproducing g.
struct ReducedCoeffs {
    double w11 = 0.0;
    double w21 = 0.0;
    double w12 = 0.0;
    double w22 = 0.0;
};

ReducedCoeffs reduced_coefficients(double alpha, double beta, const CorrVec &g);

/// sqrt(g^T F(alpha, +-beta) g) through the sum-of-squares form.
struct RealizabilityTerms {
    double plus = 0.0;
    double minus = 0.0;

    double lhs() const {
        return plus + minus;
    }
};

RealizabilityTerms realizability_terms(double alpha, double beta, const CorrVec &g);

struct W33Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct NamedResidual {
    std::string name;
    double value = 0.0;
};

struct Verdict {
    bool feasible = false;
    Branch branch = Branch::Generic;
    // Left-hand side of the realizability inequality. For parallel pairs it is
    // the same quantity on the scale where 2 is the threshold, and +infinity
    // when an equality constraint fails.
    double lhs = 0.0;
    double term_plus = 0.0;
    double term_minus = 0.0;
    // For parallel branches: the interval of the auxiliary non-parallel problem
    // that witness() solves.
    std::optional<W33Interval> w33_interval;
    std::vector<NamedResidual> constraint_residuals;
};

Verdict decide(const Setting &setting, const CorrVec &g, double slack = tol::kFeasibility);

/// Generic left-hand side at (alpha, beta_small) for g with g11 = g12 and
/// g21 = g22. Throws std::invalid_argument if g is off that subspace.
double decide_continuity_probe(double alpha, const CorrVec &g, double beta_small);

struct W33Choice {
    enum class Kind { Midpoint, Lo, Hi, Value };
    Kind kind = Kind::Midpoint;
    double value = 0.0;

    static W33Choice midpoint() {
        return {Kind::Midpoint, 0.0};
    }
    static W33Choice lo() {
        return {Kind::Lo, 0.0};
    }
    static W33Choice hi() {
        return {Kind::Hi, 0.0};
    }
    static W33Choice at(double v) {
        return {Kind::Value, v};
    }
};

/// Explicit state reproducing g with vanishing single-party means. Throws
/// InfeasibleError if decide() rejects g, and std::invalid_argument if a
/// W33Choice::at value lies outside the feasible interval.
DensityOperator witness(const Setting &setting, const CorrVec &g, W33Choice choice = W33Choice::midpoint());

/// Frame-coefficient state with w00 = 1, the reduced coefficients of g and
/// the given w33; all other coefficients zero. No positivity check.
Herm4 reduced_state(const Setting &setting, const CorrVec &g, double w33);

struct WitnessReport {
    double max_correlation_residual = 0.0;
    double trace_residual = 0.0;
    double min_eigenvalue = 0.0;
    // <A1~ (x) I>, <A2~ (x) I>, <I (x) B1~>, <I (x) B2~>
    std::array<double, 4> marginals{};

    double max_marginal() const;
};

WitnessReport verify_witness(const Setting &setting, const CorrVec &g, const DensityOperator &rho);

/// Unit vector orthogonal to v: Gram-Schmidt of e_x against v, or of e_y
/// when v is within 30 degrees of e_x.
Vec3 orthogonal_partner(const Vec3 &v);

}  // namespace chshq

#endif  // CHSHQ_REALIZABILITY_H
