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

// Random states and settings, plus the Monte Carlo sweeps that cross-check
// the library against brute-force computation.
//
// Every random draw comes from Rng(seed, stream): a std::mt19937_64 seeded
// through std::seed_seq with the 32-bit halves of seed and stream. Sweeps use
// the sample index as the stream, so sample k is the same whether the index
// range runs serially or is split across threads.

#ifndef CHSHQ_SAMPLING_H
#define CHSHQ_SAMPLING_H

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "chshq/inequalities.h"
#include "chshq/linalg.h"
#include "chshq/observables.h"
#include "chshq/realizability.h"

namespace chshq {

class Rng {
   public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    double normal();

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// G G^dagger / Tr[G G^dagger] for a 4 x rank matrix G of standard complex
/// Gaussians; rank in 1..4.
DensityOperator random_density(Rng &rng, int rank = 4);

Vec3 random_unit_vector(Rng &rng);

/// a1 uniform on the sphere, a2 at angle alpha from a1 along a random tangent
/// direction, and the same for the b pair. Unit norms, zero offsets. Throws
/// std::invalid_argument unless alpha, beta lie in (0, pi).
Setting random_setting(double alpha, double beta, Rng &rng);

/// The four normalized correlations.
CorrVec measure(const DensityOperator &rho, const Setting &setting);

/// For the audit sweeps the per-sample margin is 1 minus the worst residual
/// measured in units of its tolerance, so any negative margin is a violation.
struct SweepReport {
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    // Smallest margin seen; negative margins are violations.
    double worst_margin = INFINITY;
    std::uint64_t worst_index = 0;
    std::string worst_case;

    /// Associative and commutative: ties on the margin go to the lower index.
    void merge(const SweepReport &other);
    void record(std::uint64_t index, double margin, bool violated, const std::string &inputs);

    bool operator==(const SweepReport &other) const = default;
};

struct SweepOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    double angle_lo = 0.05;
    double angle_hi = M_PI - 0.05;
    // 1..4 fixes the Ginibre rank; 0 cycles through ranks 1..4 by sample index.
    int rank = 0;
};

/// Random state and setting; decide() must accept measure(rho), and the
/// sample must also satisfy the Tsirelson bound and the algebraic TL
/// inequality. Margin 2 - lhs.
SweepReport soundness_sweep(std::uint64_t n, const SweepOptions &opt);

/// Random setting and gamma; infeasible gamma is scaled into the region
/// (by 2u/lhs, u uniform on (0, 1]) or, with boundary = true, every gamma is
/// scaled onto lhs = 2. The witness must reproduce gamma with zero marginals;
/// on the boundary its smallest eigenvalue must also vanish.
SweepReport completeness_sweep(std::uint64_t n, const SweepOptions &opt, bool boundary = false);

/// Closed-form witness spectrum (1 + w33 +- t+)/4, (1 - w33 +- t-)/4 with t
/// taken from the cosine matrices, against the Jacobi spectrum.
SweepReport eigenvalue_sweep(std::uint64_t n, const SweepOptions &opt);

/// reduce() zeroes the odd moments, w03 and w30 and keeps the correlations
/// and w33.
SweepReport reduce_sweep(std::uint64_t n, const SweepOptions &opt);

/// char_vec / rho_from_phi round trip, w_from_phi against direct frame
/// coefficients, and validity of the four pair distributions.
SweepReport qjp_sweep(std::uint64_t n, const SweepOptions &opt);

/// Agreement of the algebraic, arcsin and two-inequality TL forms on uniform
/// cube samples whose arcsin and algebraic margins exceed band.
SweepReport tl_equivalence_sweep(std::uint64_t n, const SweepOptions &opt, double band = 1e-9);

/// Agreement of the Gram search with the algebraic TL form outside band.
SweepReport gram_equivalence_sweep(std::uint64_t n, const SweepOptions &opt, int grid_n = 201, double band = 1e-3);

struct UnionOptions {
    int cube_n = 41;
    int angle_n = 64;
    double inner_margin = 1e-3;
    int threads = 1;
};

/// Angle grid used by union_sweep: cell centres (k + 1/2) pi / n.
std::vector<double> union_angle_grid(int n);

/// Over a cube_n^4 grid: points at least inner_margin inside the TL region
/// (arcsin margin and distance to the cube faces) must be feasible at some
/// angle pair of the grid, and TL-infeasible points at none. Samples counts
/// the checked points.
struct UnionReport {
    SweepReport report;
    std::uint64_t inner = 0;
    std::uint64_t inner_missed = 0;
    std::uint64_t outer = 0;
    std::uint64_t outer_accepted = 0;
};

UnionReport union_sweep(const UnionOptions &opt);

/// Random gamma on the subspace g11 = s g12, g21 = s g22 with lhs at least
/// 1e-3 away from 2; the Generic verdict at beta = 1e-5 (s = +1) or
/// beta = pi - 1e-5 (s = -1) must match the BParallel verdict.
SweepReport continuity_sweep(std::uint64_t n, const SweepOptions &opt, int s_b);

}  // namespace chshq

#endif  // CHSHQ_SAMPLING_H
