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

#include "chshq/realizability.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "chshq/inequalities.h"
#include "chshq/sampling.h"

using namespace chshq;

namespace {

const double kR = std::sqrt(2.0) / 2.0;

void expect_good_witness(const Setting &s, const CorrVec &g, const DensityOperator &rho) {
    const WitnessReport r = verify_witness(s, g, rho);
    EXPECT_LT(r.max_correlation_residual, 1e-9);
    EXPECT_LT(r.trace_residual, 1e-12);
    EXPECT_GE(r.min_eigenvalue, -1e-10);
    EXPECT_LT(r.max_marginal(), 1e-9);
}

CorrVec random_gamma(Rng &rng) {
    return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
}

}  // namespace

TEST(Realizability, CosineMatrixAtRightAngles) {
    const FMatrix f = f_matrix(M_PI / 2, M_PI / 2);
    const std::array<double, 16> expected{1, 0, 0, -1, 0, 1, 1, 0, 0, 1, 1, 0, -1, 0, 0, 1};
    for (int k = 0; k < 16; ++k) {
        EXPECT_NEAR(f.entries[k], expected[k], 1e-15);
    }
    EXPECT_THROW(f_matrix(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(f_matrix(1.0, M_PI), std::invalid_argument);
}

TEST(Realizability, QuadraticFormsAtRightAngles) {
    const FMatrix fp = f_matrix(M_PI / 2, M_PI / 2);
    const FMatrix fm = f_matrix(M_PI / 2, -M_PI / 2);
    const CorrVec eq{kR, kR, kR, -kR};
    EXPECT_NEAR(quad_form(fp, eq), 4.0, 1e-12);
    EXPECT_NEAR(quad_form(fm, eq), 0.0, 1e-12);
    const CorrVec v{1, 0, 1, 0};
    EXPECT_NEAR(quad_form(fp, v), 2.0, 1e-12);
    EXPECT_NEAR(quad_form(fm, v), 2.0, 1e-12);

    // (C11 - C22)^2 + (C12 + C21)^2 and (C11 + C22)^2 + (C12 - C21)^2.
    Rng rng(11, 0);
    for (int k = 0; k < 1000; ++k) {
        const CorrVec g = random_gamma(rng);
        EXPECT_NEAR(quad_form(fp, g), std::pow(g.g11 - g.g22, 2) + std::pow(g.g12 + g.g21, 2), 1e-12);
        EXPECT_NEAR(quad_form(fm, g), std::pow(g.g11 + g.g22, 2) + std::pow(g.g12 - g.g21, 2), 1e-12);
    }
}

TEST(Realizability, SumOfSquaresMatchesCosineMatrix) {
    Rng rng(12, 0);
    for (int k = 0; k < 2000; ++k) {
        const double a = rng.uniform(0.05, M_PI - 0.05), b = rng.uniform(0.05, M_PI - 0.05);
        const CorrVec g = random_gamma(rng);
        const RealizabilityTerms t = realizability_terms(a, b, g);
        EXPECT_NEAR(t.plus * t.plus, quad_form(f_matrix(a, b), g), 1e-9 * std::max(1.0, t.plus * t.plus));
        EXPECT_NEAR(t.minus * t.minus, quad_form(f_matrix(a, -b), g), 1e-9 * std::max(1.0, t.minus * t.minus));
    }
}

TEST(Realizability, DecideExamples) {
    const Setting right = canonical_setting(M_PI / 2, M_PI / 2);
    const Verdict boundary = decide(right, {kR, kR, kR, -kR});
    EXPECT_TRUE(boundary.feasible);
    EXPECT_NEAR(boundary.lhs, 2.0, 1e-12);
    EXPECT_NEAR(boundary.term_plus, 2.0, 1e-12);
    EXPECT_NEAR(boundary.term_minus, 0.0, 1e-12);
    ASSERT_TRUE(boundary.w33_interval.has_value());
    EXPECT_NEAR(boundary.w33_interval->lo, 1.0, 1e-12);
    EXPECT_NEAR(boundary.w33_interval->hi, 1.0, 1e-12);

    const Verdict over = decide(right, {1, 0, 1, 0});
    EXPECT_FALSE(over.feasible);
    EXPECT_NEAR(over.lhs, 2.0 * std::sqrt(2.0), 1e-12);

    const Verdict zero = decide(canonical_setting(1.0, 1.0), {0, 0, 0, 0});
    EXPECT_TRUE(zero.feasible);
    EXPECT_EQ(zero.lhs, 0.0);
    EXPECT_EQ(zero.w33_interval->lo, -1.0);
    EXPECT_EQ(zero.w33_interval->hi, 1.0);

    EXPECT_FALSE(decide(right, {NAN, 0, 0, 0}).feasible);
}

TEST(Realizability, ParallelBranches) {
    // b1 = b2, alpha = pi/2: a disk of radius sqrt(0.72) scaled by 2.
    const Setting bpar = canonical_setting(M_PI / 2, 0.0);
    ASSERT_EQ(bpar.branch, Branch::BParallel);
    const Verdict v = decide(bpar, {0.6, 0.6, 0.6, 0.6});
    EXPECT_TRUE(v.feasible);
    EXPECT_NEAR(v.term_plus, std::sqrt(0.72), 1e-12);
    EXPECT_NEAR(v.lhs, 2.0 * std::sqrt(0.72), 1e-12);
    const Verdict broken = decide(bpar, {0.6, 0.6, 0.5, 0.6});
    EXPECT_FALSE(broken.feasible);
    EXPECT_TRUE(std::isinf(broken.lhs));
    EXPECT_FALSE(decide(bpar, {0.9, 0.9, 0.9, 0.9}).feasible);

    const Setting apar = canonical_setting(M_PI, M_PI / 2);
    ASSERT_EQ(apar.branch, Branch::AParallel);
    EXPECT_TRUE(decide(apar, {0.3, -0.3, 0.5, -0.5}).feasible);
    EXPECT_FALSE(decide(apar, {0.3, 0.3, 0.5, -0.5}).feasible);

    const Setting both = canonical_setting(0.0, M_PI);
    ASSERT_EQ(both.branch, Branch::BothParallel);
    EXPECT_TRUE(decide(both, {0.4, 0.4, -0.4, -0.4}).feasible);
    EXPECT_FALSE(decide(both, {0.4, 0.4, 0.4, 0.4}).feasible);
    EXPECT_TRUE(decide(both, {1, 1, -1, -1}).feasible);
}

TEST(Realizability, ContinuityProbe) {
    EXPECT_NEAR(decide_continuity_probe(M_PI / 2, {0.5, 0.5, 0.5, 0.5}, 1e-5), std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(decide_continuity_probe(M_PI / 2, {1, 1, 1, 1}, 1e-5), 2.0 * std::sqrt(2.0), 1e-5);
    EXPECT_NEAR(decide(canonical_setting(M_PI / 2, 0.0), {0.5, 0.5, 0.5, 0.5}).lhs, std::sqrt(2.0), 1e-12);
    EXPECT_THROW(decide_continuity_probe(M_PI / 2, {0.5, 0.4, 0.5, 0.5}, 1e-5), std::invalid_argument);
}

TEST(Realizability, WitnessOfZeroIsMaximallyMixed) {
    const Setting s = canonical_setting(1.0, 2.0);
    const DensityOperator rho = witness(s, {0, 0, 0, 0});
    EXPECT_LE(max_abs(rho.matrix() - DensityOperator::maximally_mixed().matrix()), 1e-14);
    const WitnessReport r = verify_witness(s, {0, 0, 0, 0}, rho);
    EXPECT_LT(r.max_correlation_residual, 1e-15);
    EXPECT_NEAR(r.min_eigenvalue, 0.25, 1e-14);
}

TEST(Realizability, BoundaryWitnessIsRankOne) {
    const Setting s = canonical_setting(M_PI / 2, M_PI / 2);
    const CorrVec g{kR, kR, kR, -kR};
    const DensityOperator rho = witness(s, g);
    const auto ev = herm_eigenvalues(rho.herm());
    EXPECT_NEAR(ev[0], 0.0, 1e-10);
    EXPECT_NEAR(ev[1], 0.0, 1e-10);
    EXPECT_NEAR(ev[2], 0.0, 1e-10);
    EXPECT_NEAR(ev[3], 1.0, 1e-10);
    expect_good_witness(s, g, rho);
}

TEST(Realizability, WitnessChoicesAndErrors) {
    const Setting s = canonical_setting(1.1, 2.3);
    const CorrVec g{0.3, -0.2, 0.1, 0.4};
    const Verdict v = decide(s, g);
    ASSERT_TRUE(v.feasible);
    for (const W33Choice c : {W33Choice::midpoint(), W33Choice::lo(), W33Choice::hi(),
                              W33Choice::at(0.5 * (v.w33_interval->lo + v.w33_interval->hi))}) {
        expect_good_witness(s, g, witness(s, g, c));
    }
    EXPECT_THROW(witness(s, g, W33Choice::at(v.w33_interval->hi + 0.1)), std::invalid_argument);
    EXPECT_THROW(witness(canonical_setting(M_PI / 2, M_PI / 2), {1, 0, 1, 0}), InfeasibleError);
}

TEST(Realizability, WitnessSpectrumClosedForm) {
    const Setting s = canonical_setting(0.8, 2.0);
    const CorrVec g{0.2, 0.5, -0.3, 0.1};
    const Verdict v = decide(s, g);
    ASSERT_TRUE(v.feasible);
    const double w33 = 0.1 * v.w33_interval->lo + 0.9 * v.w33_interval->hi;
    std::array<double, 4> closed{0.25 * (1 + w33 + v.term_plus), 0.25 * (1 + w33 - v.term_plus),
                                 0.25 * (1 - w33 + v.term_minus), 0.25 * (1 - w33 - v.term_minus)};
    std::sort(closed.begin(), closed.end());
    const auto ev = herm_eigenvalues(witness(s, g, W33Choice::at(w33)).herm());
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(ev[k], closed[k], 1e-12);
    }
}

TEST(Realizability, ParallelWitnesses) {
    const Setting bpar = canonical_setting(M_PI / 2, 0.0);
    expect_good_witness(bpar, {0.6, 0.6, 0.6, 0.6}, witness(bpar, {0.6, 0.6, 0.6, 0.6}));
    const Setting apar = canonical_setting(M_PI, M_PI / 2);
    expect_good_witness(apar, {0.3, -0.3, 0.5, -0.5}, witness(apar, {0.3, -0.3, 0.5, -0.5}));
    const Setting both = canonical_setting(0.0, M_PI);
    expect_good_witness(both, {0.4, 0.4, -0.4, -0.4}, witness(both, {0.4, 0.4, -0.4, -0.4}));
    EXPECT_THROW(witness(bpar, {0.6, 0.6, 0.5, 0.6}), InfeasibleError);
}

TEST(Realizability, RandomFeasibleWitnesses) {
    for (std::uint64_t k = 0; k < 500; ++k) {
        Rng rng(13, k);
        const Setting s = random_setting(rng.uniform(0.05, M_PI - 0.05), rng.uniform(0.05, M_PI - 0.05), rng);
        const CorrVec g = random_gamma(rng);
        if (decide(s, g).feasible) {
            expect_good_witness(s, g, witness(s, g));
        } else {
            EXPECT_THROW(witness(s, g), InfeasibleError);
        }
    }
}

TEST(Realizability, VerdictIgnoresFrameOrientation) {
    // Swapping A1 and A2 flips E3 and permutes gamma; the verdict is unchanged.
    for (std::uint64_t k = 0; k < 1000; ++k) {
        Rng rng(14, k);
        const double a = rng.uniform(0.05, M_PI - 0.05), b = rng.uniform(0.05, M_PI - 0.05);
        const Setting s = random_setting(a, b, rng);
        const Setting swapped = build_setting(s.a2, s.a1, s.b1, s.b2);
        const CorrVec g = random_gamma(rng);
        const CorrVec gs{g.g21, g.g11, g.g22, g.g12};
        const Verdict v1 = decide(s, g), v2 = decide(swapped, gs);
        EXPECT_NEAR(v1.lhs, v2.lhs, 1e-9);
        if (std::abs(v1.lhs - 2.0) > 1e-9) {
            EXPECT_EQ(v1.feasible, v2.feasible);
        }
        // Any setting with the same angles gives the same verdict.
        const Verdict vc = decide(canonical_setting(s.alpha, s.beta), g);
        EXPECT_NEAR(v1.lhs, vc.lhs, 1e-9);
    }
}

TEST(Realizability, FeasibleImpliesTsirelsonAndTl) {
    for (std::uint64_t k = 0; k < 2000; ++k) {
        Rng rng(15, k);
        const Setting s = canonical_setting(rng.uniform(0.05, M_PI - 0.05), rng.uniform(0.05, M_PI - 0.05));
        const CorrVec g = random_gamma(rng);
        if (decide(s, g).feasible) {
            EXPECT_LE(chsh_max(g), 2.0 * std::sqrt(2.0) + 1e-9);
            EXPECT_TRUE(tl_algebraic(g));
        }
    }
}

TEST(Realizability, OrthogonalPartner) {
    for (const Vec3 v : {Vec3{1, 0, 0}, Vec3{0, 0, 2}, Vec3{0.3, -0.4, 0.5}}) {
        const Vec3 p = orthogonal_partner(v);
        EXPECT_NEAR(dot(p, v), 0.0, 1e-15);
        EXPECT_NEAR(norm(p), 1.0, 1e-15);
    }
}
