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

// Comparison families for +-1 valued correlations C = (C11, C21, C12, C22):
// CHSH, Tsirelson, Tsirelson-Landau (algebraic, arcsin, two-inequality and
// Gram-matrix forms), Bell's original inequality and the probability form
// of CHSH.

#ifndef CHSHQ_INEQUALITIES_H
#define CHSHQ_INEQUALITIES_H

#include <array>
#include <optional>

#include "chshq/observables.h"
#include "chshq/realizability.h"

namespace chshq {

/// max over (k, l) of |C11 + C12 + C21 + C22 - 2 C_kl|.
double chsh_max(const CorrVec &c);

/// True iff every component lies in [-1, 1].
bool in_cube(const CorrVec &c);

/// rhs - lhs of |C11 C12 - C21 C22| <= sqrt(1-C11^2) sqrt(1-C12^2) + sqrt(1-C21^2) sqrt(1-C22^2).
/// Throws std::invalid_argument outside the cube.
double tl_algebraic_margin(const CorrVec &c);
bool tl_algebraic(const CorrVec &c);

/// pi - max over (k, l) of |sum arcsin C_ij - 2 arcsin C_kl|.
double tl_arcsin_margin(const CorrVec &c);
bool tl_arcsin(const CorrVec &c);

/// Either the product-chain inequality or the max-based inequality holds.
bool tl_thm22(const CorrVec &c);

enum class GramDomain { Real, Complex };

/// Searches the free entries x = <A1 A2>, y = <B1 B2> of the unit-diagonal
/// Gram matrix over a grid_n x grid_n grid of [-1, 1]^2 (or, for Complex, a
/// radius x phase grid of the unit disk), then refines around the best point
/// by repeated halving; true iff some point has minimum eigenvalue
/// >= -tol::kGramPsd.
bool gram_feasible(const CorrVec &c, int grid_n, GramDomain domain = GramDomain::Real);

/// Smallest eigenvalue of the Gram matrix with free entries x, y.
double gram_min_eigenvalue(const CorrVec &c, Complex x, Complex y);

/// |C(a,b) - C(a,c)| <= 1 + C(b,c).
bool bell_original(double c_ab, double c_ac, double c_bc);

/// Realizability of (C11, -1, C12, C22) for the given angles.
Verdict bell_setting_decide(double alpha, double beta, double c11, double c12, double c22);

/// Joint distribution of (a1, a2, b1, b2) in {+1, -1}^4.
struct JointDist222 {
    // Index 8*k(a1) + 4*k(a2) + 2*k(b1) + k(b2), k(+1) = 0, k(-1) = 1.
    std::array<double, 16> p{};

    void validate() const;
};

/// P(a, b) over {+1, -1}^2, index 2*k(a) + k(b).
using PairDist = std::array<double, 4>;

/// P_{A_i B_j} for i, j in {1, 2}, stored at [(i-1) + 2*(j-1)].
using PairDists = std::array<PairDist, 4>;

PairDists pair_marginals(const JointDist222 &joint);

/// P(a, b) = (1 + a mean_a + b mean_b + a b corr) / 4.
PairDist pair_from_moments(double mean_a, double mean_b, double corr);

/// All instances of the probability-form CHSH inequality with slack.
/// Throws std::invalid_argument on a malformed distribution.
bool fine_chsh_prob(const PairDists &pairs);

struct ClassifyReport {
    double chsh_max = 0.0;
    bool chsh_ok = false;
    bool tsirelson_ok = false;
    bool in_cube = false;
    // The TL fields are only meaningful inside the cube; outside it they are false.
    bool tl_algebraic_ok = false;
    bool tl_arcsin_ok = false;
    bool tl_thm22_ok = false;
    std::optional<bool> gram_ok;
};

/// gram_grid_n > 0 also runs the Gram search.
ClassifyReport classify(const CorrVec &c, int gram_grid_n = 0);

}  // namespace chshq

#endif  // CHSHQ_INEQUALITIES_H
