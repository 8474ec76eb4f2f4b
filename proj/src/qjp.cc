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

#include "chshq/qjp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chshq/tolerances.h"

namespace chshq {

namespace {

const Complex kI(0.0, 1.0);

double real_or_throw(Complex z, const char *name) {
    if (!(std::abs(z.imag()) <= tol::kRealResidual)) {
        throw std::invalid_argument(std::string("w_from_phi: ") + name + " has an imaginary residual");
    }
    return z.real();
}

}  // namespace

CharVec char_vec(const Mat4 &m, const Setting &setting) {
    setting.require_generic("char_vec");
    const Mat2 id = Mat2::identity();
    const std::array<Mat4, 4> x{tensor(setting.a_tilde[0], id), tensor(setting.a_tilde[1], id),
                                tensor(id, setting.b_tilde[0]), tensor(id, setting.b_tilde[1])};
    CharVec out;
    for (int s = 0; s < 16; ++s) {
        Mat4 prod = Mat4::identity();
        for (int slot = 0; slot < 4; ++slot) {
            if ((s >> (3 - slot)) & 1) {
                prod = prod * x[slot];
            }
        }
        out.phi[s] = trace_of_product(m, prod);
    }
    return out;
}

CharVec char_vec(const DensityOperator &rho, const Setting &setting) {
    return char_vec(rho.matrix(), setting);
}

WCoeffs w_from_phi(const CharVec &p, double alpha, double beta) {
    const double sa = std::sin(alpha);
    const double sb = std::sin(beta);
    if (!std::isfinite(alpha) || !std::isfinite(beta) || std::abs(sa) < tol::kParallel ||
        std::abs(sb) < tol::kParallel) {
        throw std::invalid_argument("w_from_phi: degenerate angle");
    }
    const double ca = std::cos(alpha);
    const double cb = std::cos(beta);
    const double sab = sa * sb;

    WCoeffs w{};
    w[0][0] = real_or_throw(p(0, 0, 0, 0), "w00");
    w[1][0] = real_or_throw(p(1, 0, 0, 0), "w10");
    w[2][0] = real_or_throw((p(0, 1, 0, 0) - p(1, 0, 0, 0) * ca) / sa, "w20");
    w[3][0] = real_or_throw((p(1, 1, 0, 0) - p(0, 0, 0, 0) * ca) / (kI * sa), "w30");
    w[0][1] = real_or_throw(p(0, 0, 1, 0), "w01");
    w[1][1] = real_or_throw(p(1, 0, 1, 0), "w11");
    w[2][1] = real_or_throw((p(0, 1, 1, 0) - p(1, 0, 1, 0) * ca) / sa, "w21");
    w[3][1] = real_or_throw((p(1, 1, 1, 0) - p(0, 0, 1, 0) * ca) / (kI * sa), "w31");
    w[0][2] = real_or_throw((p(0, 0, 0, 1) - p(0, 0, 1, 0) * cb) / sb, "w02");
    w[1][2] = real_or_throw((p(1, 0, 0, 1) - p(1, 0, 1, 0) * cb) / sb, "w12");
    w[2][2] = real_or_throw(
        (p(0, 1, 0, 1) - p(1, 0, 0, 1) * ca - p(0, 1, 1, 0) * cb + p(1, 0, 1, 0) * ca * cb) / sab, "w22");
    w[3][2] = real_or_throw(
        (p(1, 1, 0, 1) - p(0, 0, 0, 1) * ca - p(1, 1, 1, 0) * cb + p(0, 0, 1, 0) * ca * cb) / (kI * sab), "w32");
    w[0][3] = real_or_throw((p(0, 0, 1, 1) - p(0, 0, 0, 0) * cb) / (kI * sb), "w03");
    w[1][3] = real_or_throw((p(1, 0, 1, 1) - p(1, 0, 0, 0) * cb) / (kI * sb), "w13");
    w[2][3] = real_or_throw(
        (p(0, 1, 1, 1) - p(1, 0, 1, 1) * ca - p(0, 1, 0, 0) * cb + p(1, 0, 0, 0) * ca * cb) / (kI * sab), "w23");
    w[3][3] = real_or_throw(
        (-p(1, 1, 1, 1) + p(0, 0, 1, 1) * ca + p(1, 1, 0, 0) * cb - p(0, 0, 0, 0) * ca * cb) / sab, "w33");
    return w;
}

Herm4 rho_from_phi(const CharVec &phi, const Setting &setting) {
    setting.require_generic("rho_from_phi");
    return Herm4(compose_from_frame(w_from_phi(phi, setting.alpha, setting.beta), setting));
}

ReducedCharVec marginal_phi(const CharVec &full, const std::vector<int> &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("marginal_phi: empty keep set");
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 1 || keep[k] > 4 || (k > 0 && keep[k] <= keep[k - 1])) {
            throw std::invalid_argument("marginal_phi: keep must be ascending slots in 1..4");
        }
    }
    const int n = static_cast<int>(keep.size());
    ReducedCharVec out{keep, std::vector<Complex>(std::size_t{1} << n)};
    for (int r = 0; r < (1 << n); ++r) {
        int s = 0;
        for (int k = 0; k < n; ++k) {
            if ((r >> (n - 1 - k)) & 1) {
                s |= 1 << (4 - keep[k]);
            }
        }
        out.phi[r] = full.phi[s];
    }
    return out;
}

namespace {

std::vector<Complex> walsh(const std::vector<Complex> &in, double scale) {
    const std::size_t n = in.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("dft2: length must be a power of two");
    }
    std::vector<Complex> out(n);
    for (std::size_t a = 0; a < n; ++a) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            acc += (__builtin_popcountll(a & b) & 1) ? -in[b] : in[b];
        }
        out[a] = acc * scale;
    }
    return out;
}

}  // namespace

std::vector<Complex> dft2(const std::vector<Complex> &p) {
    return walsh(p, 1.0);
}

std::vector<Complex> idft2(const std::vector<Complex> &phi) {
    return walsh(phi, 1.0 / static_cast<double>(phi.size()));
}

std::array<Complex, 16> kd_distribution(const CharVec &phi) {
    const std::vector<Complex> p = idft2(std::vector<Complex>(phi.phi.begin(), phi.phi.end()));
    std::array<Complex, 16> out;
    std::copy(p.begin(), p.end(), out.begin());
    return out;
}

PairDist pair_probabilities(const CharVec &full, int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 2) {
        throw std::invalid_argument("pair_probabilities: indices must be 1 or 2");
    }
    const std::vector<Complex> p = idft2(marginal_phi(full, {i, 2 + j}).phi);
    PairDist out{};
    for (int k = 0; k < 4; ++k) {
        if (!(std::abs(p[k].imag()) <= tol::kRealResidual)) {
            throw std::invalid_argument("pair_probabilities: complex marginal");
        }
        out[k] = p[k].real();
    }
    return out;
}

}  // namespace chshq
