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

#ifndef CHSHQ_TOLERANCES_H
#define CHSHQ_TOLERANCES_H

namespace chshq::tol {

// Algebraic identities (products, traces, Pauli relations).
inline constexpr double kAlgebraic = 1e-12;
// Assertions on computed eigenvalues.
inline constexpr double kEigenvalue = 1e-10;
// Slack admitted below zero when testing positive semi-definiteness.
inline constexpr double kPsdSlack = 1e-10;
// Largest anti-Hermitian part a public constructor will symmetrize away.
inline constexpr double kHermitianReject = 1e-9;
// Trace-one check for density operators.
inline constexpr double kTrace = 1e-12;

// Jacobi eigensolver stopping rule.
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

// |sin| below which a Bloch pair is treated as parallel.
inline constexpr double kParallel = 1e-9;
// Cross-product norm below which frame construction refuses to proceed.
inline constexpr double kCrossProduct = 1e-14;

// Slack on the realizability comparison lhs <= 2.
inline constexpr double kFeasibility = 1e-12;
// Equality constraints of the parallel branches.
inline constexpr double kEqualityResidual = 1e-12;
// Tiny negative quadratic forms clamped to zero before a square root.
inline constexpr double kQuadFormClamp = 1e-12;

// Imaginary residue tolerated in quantities that must be real.
inline constexpr double kRealResidual = 1e-8;

// Slack on comparison-family inequalities (CHSH, TL, Bell, Fine).
inline constexpr double kInequality = 1e-12;
// Minimum Gram eigenvalue accepted as positive semi-definite.
inline constexpr double kGramPsd = 1e-9;

}  // namespace chshq::tol

#endif  // CHSHQ_TOLERANCES_H
