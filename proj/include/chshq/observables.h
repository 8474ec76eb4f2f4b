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

// Binary qubit observables, measurement settings and their Pauli frames.

#ifndef CHSHQ_OBSERVABLES_H
#define CHSHQ_OBSERVABLES_H

#include <array>
#include <optional>
#include <string_view>

#include "chshq/linalg.h"
#include "chshq/tolerances.h"

namespace chshq {

using Vec3 = std::array<double, 3>;

double dot(const Vec3 &u, const Vec3 &v);
Vec3 cross(const Vec3 &u, const Vec3 &v);
double norm(const Vec3 &v);

/// v . sigma
Mat2 bloch_matrix(const Vec3 &v);

/// A = a0 I + a . sigma with a != 0.
struct BlochObservable {
    double a0 = 0.0;
    Vec3 a{};

    /// Throws std::invalid_argument for a zero or non-finite Bloch vector.
    void validate() const;
};

/// a0 I + a . sigma
Mat2 make_matrix(const BlochObservable &o);

/// (A - a0 I) / |a|: traceless, spectrum {-1, +1}.
Mat2 normalize(const BlochObservable &o);

/// Correlations (g11, g21, g12, g22). Index order is fixed repo-wide: the
/// party-A index varies fastest.
struct CorrVec {
    double g11 = 0.0;
    double g21 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;

    /// Slot k in (g11, g21, g12, g22) order.
    double operator[](int k) const;
    /// Correlation of A_i with B_j, i and j in {1, 2}.
    double at(int i, int j) const;
    std::array<double, 4> as_array() const {
        return {g11, g21, g12, g22};
    }
    static CorrVec from_array(const std::array<double, 4> &v) {
        return {v[0], v[1], v[2], v[3]};
    }
    bool is_finite() const;
};

enum class Branch { Generic, BParallel, AParallel, BothParallel };

std::string_view to_string(Branch b);

/// E0 = I, E1, E2, E3 obeying the Pauli algebra.
using Frame = std::array<Mat2, 4>;

/// A full CHSH measurement context derived from four Bloch observables.
struct Setting {
    BlochObservable a1, a2, b1, b2;
    std::array<Mat2, 2> a_tilde;  // normalized A_1, A_2
    std::array<Mat2, 2> b_tilde;  // normalized B_1, B_2
    double alpha = 0.0;           // angle between a1 and a2, in [0, pi]
    double beta = 0.0;            // angle between b1 and b2, in [0, pi]
    std::optional<int> s_a;       // sgn(a1 . a2) when a1 || a2
    std::optional<int> s_b;
    Branch branch = Branch::Generic;
    std::optional<Frame> frame_e;  // present when a1 and a2 are not parallel
    std::optional<Frame> frame_f;

    /// Throws std::invalid_argument unless both frames are present.
    void require_generic(std::string_view who) const;
};

/// Classifies parallelism by |sin| < parallel_tol and builds frames
/// E1 = A1~, E3 = (a1 x a2)/|a1 x a2| . sigma, E2 = (A2~ - A1~ cos alpha)/sin alpha
/// (and likewise F from the b pair).
Setting build_setting(const BlochObservable &a1, const BlochObservable &a2, const BlochObservable &b1,
                      const BlochObservable &b2, double parallel_tol = tol::kParallel);

/// Normalized observables a1 = z, a2 in the x-z plane at angle alpha, and the
/// same for b with beta. Verdicts depend on the angles only, so this stands in
/// for any setting with the given angles.
Setting canonical_setting(double alpha, double beta, double parallel_tol = tol::kParallel);

/// Frame coefficients c[mu][nu] = Tr[m E_mu (x) F_nu]. Real for Hermitian m.
using FrameCoeffs = std::array<std::array<Complex, 4>, 4>;

/// Real frame coefficients w[mu][nu] of a Hermitian operator.
using WCoeffs = std::array<std::array<double, 4>, 4>;

FrameCoeffs frame_coefficients(const Mat4 &m, const Setting &setting);

/// Real parts of frame_coefficients for a Hermitian operator.
WCoeffs w_coefficients(const Herm4 &m, const Setting &setting);

/// (1/4) sum_{mu nu} c[mu][nu] E_mu (x) F_nu.
Mat4 compose_from_frame(const FrameCoeffs &c, const Setting &setting);
Mat4 compose_from_frame(const WCoeffs &w, const Setting &setting);

/// gamma_ij = Tr[rho A_i~ (x) B_j~].
CorrVec correlations(const DensityOperator &rho, const Setting &setting);

/// Normalized correlation from the raw correlation C_ij = <A_i (x) B_j> and
/// the raw single-party means <A_i>, <B_j>.
double normalized_correlation(double c_ij, double mean_a, double mean_b, const BlochObservable &a,
                              const BlochObservable &b);

}  // namespace chshq

#endif  // CHSHQ_OBSERVABLES_H
