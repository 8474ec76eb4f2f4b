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

#include <stdexcept>

#include "chshq/tolerances.h"

namespace chshq {

template <int N>
Matrix<N> ad(const Matrix<N> &u, const Matrix<N> &rho) {
    const Matrix<N> u_dag = adjoint(u);
    if (max_abs(u * u_dag - Matrix<N>::identity()) > tol::kEigenvalue) {
        throw std::invalid_argument("ad: operator is not unitary");
    }
    return u * rho * u_dag;
}

template Matrix<2> ad(const Matrix<2> &, const Matrix<2> &);
template Matrix<4> ad(const Matrix<4> &, const Matrix<4> &);

Herm4 t1(const Herm4 &rho, const Setting &setting) {
    setting.require_generic("t1");
    const Mat4 u = tensor((*setting.frame_e)[3], (*setting.frame_f)[3]);
    return Herm4((rho.matrix() + ad(u, rho.matrix())) * 0.5);
}

Herm4 partial_transpose(const Herm4 &rho, const Setting &setting) {
    WCoeffs w = w_coefficients(rho, setting);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if ((mu == 3) != (nu == 3)) {
                w[mu][nu] = -w[mu][nu];
            }
        }
    }
    return Herm4(compose_from_frame(w, setting));
}

Herm4 t2(const Herm4 &rho, const Setting &setting) {
    return Herm4((rho.matrix() + partial_transpose(rho, setting).matrix()) * 0.5);
}

DensityOperator reduce(const DensityOperator &rho, const Setting &setting) {
    return DensityOperator(t2(t1(rho.herm(), setting), setting));
}

}  // namespace chshq
