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

#include "chshq/transforms.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "chshq/qjp.h"
#include "chshq/realizability.h"
#include "chshq/sampling.h"

using namespace chshq;

namespace {

struct Sample {
    DensityOperator rho;
    Setting setting;
};

Sample random_sample(std::uint64_t seed, std::uint64_t k) {
    Rng rng(seed, k);
    DensityOperator rho = random_density(rng, 1 + static_cast<int>(k % 4));
    Setting s = random_setting(rng.uniform(0.05, M_PI - 0.05), rng.uniform(0.05, M_PI - 0.05), rng);
    return {rho, s};
}

Herm4 random_hermitian(Rng &rng) {
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            m(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return Herm4((m + adjoint(m)) * 0.5);
}

void expect_same_spectrum(const Herm4 &a, const Herm4 &b, double tol) {
    const auto ea = herm_eigenvalues(a);
    const auto eb = herm_eigenvalues(b);
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(ea[k], eb[k], tol);
    }
}

Mat4 e3f3(const Setting &s) {
    return tensor((*s.frame_e)[3], (*s.frame_f)[3]);
}

}  // namespace

TEST(Transforms, Conjugation) {
    const Sample x = random_sample(41, 0);
    EXPECT_LE(max_abs(ad(Mat4::identity(), x.rho.matrix()) - x.rho.matrix()), 1e-15);
    const Mat4 mixed = DensityOperator::maximally_mixed().matrix();
    EXPECT_LE(max_abs(ad(e3f3(x.setting), mixed) - mixed), 1e-14);
    EXPECT_THROW(ad(Mat4::identity() * 2.0, mixed), std::invalid_argument);
    EXPECT_LE(max_abs(ad(pauli::x(), pauli::z()) + pauli::z()), 1e-15);

    Rng rng(41, 1);
    for (int k = 0; k < 200; ++k) {
        const Herm4 h = random_hermitian(rng);
        const Mat4 u = expm(random_hermitian(rng).matrix() * Complex(0, 1));
        expect_same_spectrum(h, Herm4(ad(u, h.matrix())), 1e-10);
    }
}

TEST(Transforms, MaximallyMixedIsFixed) {
    const Setting s = canonical_setting(0.7, 2.5);
    const DensityOperator mixed = DensityOperator::maximally_mixed();
    EXPECT_LE(max_abs(t1(mixed.herm(), s).matrix() - mixed.matrix()), 1e-15);
    EXPECT_LE(max_abs(partial_transpose(mixed.herm(), s).matrix() - mixed.matrix()), 1e-15);
    EXPECT_LE(max_abs(t2(mixed.herm(), s).matrix() - mixed.matrix()), 1e-15);
    EXPECT_LE(max_abs(reduce(mixed, s).matrix() - mixed.matrix()), 1e-15);
    EXPECT_THROW(t1(mixed.herm(), canonical_setting(0.0, 1.0)), std::invalid_argument);
}

TEST(Transforms, T1ZeroesOddMoments) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const Sample x = random_sample(42, k);
        const Herm4 out = t1(x.rho.herm(), x.setting);
        ASSERT_NO_THROW(DensityOperator{out});
        const CharVec before = char_vec(x.rho, x.setting);
        const CharVec after = char_vec(out.matrix(), x.setting);
        for (int s = 0; s < 16; ++s) {
            const int order = std::popcount(static_cast<unsigned>(s));
            if (order % 2 == 1) {
                ASSERT_LE(std::abs(after.phi[s]), 1e-12);
            } else {
                ASSERT_LE(std::abs(after.phi[s] - before.phi[s]), 1e-12);
            }
        }
    }
}

TEST(Transforms, PartialTransposeCoefficientRule) {
    const Setting s = canonical_setting(1.3, 0.4);
    WCoeffs w{};
    w[0][0] = 1.0;
    w[3][0] = 0.4;
    const Herm4 h(compose_from_frame(w, s));
    const WCoeffs out = w_coefficients(partial_transpose(h, s), s);
    EXPECT_NEAR(out[0][0], 1.0, 1e-14);
    EXPECT_NEAR(out[3][0], -0.4, 1e-14);

    Rng rng(43, 0);
    for (int k = 0; k < 500; ++k) {
        const Herm4 r = random_hermitian(rng);
        const Herm4 pt = partial_transpose(r, s);
        expect_same_spectrum(r, pt, 1e-10);
        const WCoeffs a = w_coefficients(r, s), b = w_coefficients(pt, s);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                const double sign = ((mu == 3) != (nu == 3)) ? -1.0 : 1.0;
                ASSERT_NEAR(b[mu][nu], sign * a[mu][nu], 1e-12);
            }
        }
    }
}

TEST(Transforms, T2KeepsOnlyEvenThirdIndex) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const Sample x = random_sample(44, k);
        const Herm4 out = t2(x.rho.herm(), x.setting);
        ASSERT_NO_THROW(DensityOperator{out});
        const WCoeffs a = w_coefficients(x.rho.herm(), x.setting), b = w_coefficients(out, x.setting);
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                const double expected = ((mu == 3) != (nu == 3)) ? 0.0 : a[mu][nu];
                ASSERT_NEAR(b[mu][nu], expected, 1e-12);
            }
        }
    }
}

TEST(Transforms, Linearity) {
    Rng rng(45, 0);
    const Setting s = canonical_setting(1.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const Herm4 a = random_hermitian(rng), b = random_hermitian(rng);
        const Herm4 sum(a.matrix() * 0.3 + b.matrix() * -1.7);
        EXPECT_LE(max_abs(t1(sum, s).matrix() - (t1(a, s).matrix() * 0.3 + t1(b, s).matrix() * -1.7)), 1e-12);
        EXPECT_LE(max_abs(t2(sum, s).matrix() - (t2(a, s).matrix() * 0.3 + t2(b, s).matrix() * -1.7)), 1e-12);
    }
}

TEST(Transforms, ReduceMomentAudit) {
    for (std::uint64_t k = 0; k < 2000; ++k) {
        const Sample x = random_sample(46, k);
        const DensityOperator out = reduce(x.rho, x.setting);
        const CharVec before = char_vec(x.rho, x.setting);
        const CharVec after = char_vec(out, x.setting);
        for (int s = 0; s < 16; ++s) {
            if (std::popcount(static_cast<unsigned>(s)) % 2 == 1) {
                ASSERT_LE(std::abs(after.phi[s]), 1e-11);
            }
        }
        const CorrVec g0 = measure(x.rho, x.setting), g1 = measure(out, x.setting);
        for (int c = 0; c < 4; ++c) {
            ASSERT_NEAR(g0[c], g1[c], 1e-11);
        }
        const WCoeffs w0 = w_coefficients(x.rho.herm(), x.setting), w1 = w_coefficients(out.herm(), x.setting);
        ASSERT_NEAR(w1[3][3], w0[3][3], 1e-11);
        ASSERT_LE(std::abs(w1[0][3]), 1e-11);
        ASSERT_LE(std::abs(w1[3][0]), 1e-11);

        // Idempotent, and the verdict only sees the preserved correlations.
        ASSERT_LE(max_abs(reduce(out, x.setting).matrix() - out.matrix()), 1e-11);
        ASSERT_EQ(decide(x.setting, g0).feasible, decide(x.setting, g1).feasible);
    }
}

TEST(Transforms, WitnessesAreFixedPoints) {
    for (std::uint64_t k = 0; k < 300; ++k) {
        Rng rng(47, k);
        const Setting s = random_setting(rng.uniform(0.05, M_PI - 0.05), rng.uniform(0.05, M_PI - 0.05), rng);
        const CorrVec g{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (!decide(s, g).feasible) {
            continue;
        }
        const DensityOperator rho = witness(s, g);
        EXPECT_LE(max_abs(reduce(rho, s).matrix() - rho.matrix()), 1e-11);
    }
}
