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

// Kirkwood-Dirac characteristic vectors for the four CHSH observables
// X = (A1~ (x) I, A2~ (x) I, I (x) B1~, I (x) B2~):
//
//     phi(s) = Tr[rho X1^s1 X2^s2 X3^s3 X4^s4],  s in {0, 1}^4,
//
// always in that operator order. Index s1*8 + s2*4 + s3*2 + s4. Outcome k in
// {0, 1} stands for the eigenvalue 1 - 2k.

#ifndef CHSHQ_QJP_H
#define CHSHQ_QJP_H

#include <array>
#include <vector>

#include "chshq/inequalities.h"
#include "chshq/linalg.h"
#include "chshq/observables.h"

namespace chshq {

struct CharVec {
    std::array<Complex, 16> phi{};

    static constexpr int index(int s1, int s2, int s3, int s4) {
        return s1 * 8 + s2 * 4 + s3 * 2 + s4;
    }
    Complex operator()(int s1, int s2, int s3, int s4) const {
        return phi[index(s1, s2, s3, s4)];
    }
};

/// Works on any operator (linear in m); requires a Generic setting.
CharVec char_vec(const Mat4 &m, const Setting &setting);
CharVec char_vec(const DensityOperator &rho, const Setting &setting);

/// Frame coefficients from phi by the closed-form inversion. Throws
/// std::invalid_argument for degenerate angles or when a coefficient has an
/// imaginary part above tol::kRealResidual.
WCoeffs w_from_phi(const CharVec &phi, double alpha, double beta);

/// (1/4) sum w_{mu nu} E_mu (x) F_nu with w = w_from_phi(phi).
Herm4 rho_from_phi(const CharVec &phi, const Setting &setting);

/// Characteristic vector restricted to the kept slots (1-based, ascending).
/// Entry order is binary in the kept slots, the first kept slot most
/// significant, so keep = {1, 3} gives (1, <B1~>, <A1~>, gamma11).
struct ReducedCharVec {
    std::vector<int> keep;
    std::vector<Complex> phi;
};

/// Throws std::invalid_argument for an empty, unsorted or out-of-range keep.
ReducedCharVec marginal_phi(const CharVec &full, const std::vector<int> &keep);

/// Forward transform on {0, 1}^n: phi(s) = sum_k (-1)^{s.k} p(k).
std::vector<Complex> dft2(const std::vector<Complex> &p);
/// Inverse: p(k) = 2^{-n} sum_s (-1)^{s.k} phi(s).
std::vector<Complex> idft2(const std::vector<Complex> &phi);

/// Kirkwood-Dirac quasi-probabilities over the 16 joint outcomes.
std::array<Complex, 16> kd_distribution(const CharVec &phi);

/// Joint outcome probabilities of (A_i, B_j) from the reduced vector on
/// slots {i, 2 + j}; layout as PairDist. Throws std::invalid_argument if an
/// entry has an imaginary part above tol::kRealResidual.
PairDist pair_probabilities(const CharVec &full, int i, int j);

}  // namespace chshq

#endif  // CHSHQ_QJP_H
