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

#include "chshq/observables.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chshq {

double dot(const Vec3 &u, const Vec3 &v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

Vec3 cross(const Vec3 &u, const Vec3 &v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

double norm(const Vec3 &v) {
    return std::hypot(v[0], v[1], v[2]);
}

Mat2 bloch_matrix(const Vec3 &v) {
    return Mat2{v[2], Complex(v[0], -v[1]), Complex(v[0], v[1]), -v[2]};
}

void BlochObservable::validate() const {
    if (!std::isfinite(a0) || !std::isfinite(a[0]) || !std::isfinite(a[1]) || !std::isfinite(a[2])) {
        throw std::invalid_argument("BlochObservable: non-finite component");
    }
    if (norm(a) == 0.0) {
        throw std::invalid_argument("BlochObservable: zero Bloch vector");
    }
}

Mat2 make_matrix(const BlochObservable &o) {
    o.validate();
    return Mat2::identity() * Complex(o.a0) + bloch_matrix(o.a);
}

namespace {

Vec3 unit(const Vec3 &v) {
    const double n = norm(v);
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 scaled(const Vec3 &v, double s) {
    return {v[0] * s, v[1] * s, v[2] * s};
}

Vec3 minus(const Vec3 &u, const Vec3 &v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

struct PairGeometry {
    double angle = 0.0;
    std::optional<int> sign;
    std::optional<Frame> frame;
};

PairGeometry pair_geometry(const Vec3 &first, const Vec3 &second, double parallel_tol) {
    const Vec3 u = unit(first);
    const Vec3 v = unit(second);
    const Vec3 n = cross(u, v);
    const double s = norm(n);
    const double c = dot(u, v);

    PairGeometry g;
    g.angle = std::atan2(s, c);
    if (s < parallel_tol) {
        g.sign = c >= 0.0 ? 1 : -1;
        return g;
    }
    if (s < tol::kCrossProduct) {
        throw std::invalid_argument("build_setting: cross product vanishes for a non-parallel pair");
    }
    const Vec3 e3 = scaled(n, 1.0 / s);
    const Vec3 e2 = scaled(minus(v, scaled(u, c)), 1.0 / s);
    g.frame = Frame{Mat2::identity(), bloch_matrix(u), bloch_matrix(e2), bloch_matrix(e3)};
    return g;
}

}  // namespace

Mat2 normalize(const BlochObservable &o) {
    o.validate();
    return bloch_matrix(unit(o.a));
}

double CorrVec::operator[](int k) const {
    switch (k) {
        case 0:
            return g11;
        case 1:
            return g21;
        case 2:
            return g12;
        case 3:
            return g22;
        default:
            throw std::out_of_range("CorrVec: slot out of range");
    }
}

double CorrVec::at(int i, int j) const {
    if (i < 1 || i > 2 || j < 1 || j > 2) {
        throw std::out_of_range("CorrVec: index out of range");
    }
    return (*this)[(i - 1) + 2 * (j - 1)];
}

bool CorrVec::is_finite() const {
    return std::isfinite(g11) && std::isfinite(g21) && std::isfinite(g12) && std::isfinite(g22);
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Generic:
            return "Generic";
        case Branch::BParallel:
            return "BParallel";
        case Branch::AParallel:
            return "AParallel";
        case Branch::BothParallel:
            return "BothParallel";
    }
    return "?";
}

void Setting::require_generic(std::string_view who) const {
    if (!frame_e || !frame_f) {
        throw std::invalid_argument(std::string(who) + ": requires a setting with non-parallel pairs");
    }
}

Setting build_setting(const BlochObservable &a1, const BlochObservable &a2, const BlochObservable &b1,
                      const BlochObservable &b2, double parallel_tol) {
    a1.validate();
    a2.validate();
    b1.validate();
    b2.validate();

    Setting s;
    s.a1 = a1;
    s.a2 = a2;
    s.b1 = b1;
    s.b2 = b2;
    s.a_tilde = {normalize(a1), normalize(a2)};
    s.b_tilde = {normalize(b1), normalize(b2)};

    PairGeometry ga = pair_geometry(a1.a, a2.a, parallel_tol);
    PairGeometry gb = pair_geometry(b1.a, b2.a, parallel_tol);
    s.alpha = ga.angle;
    s.beta = gb.angle;
    s.s_a = ga.sign;
    s.s_b = gb.sign;
    s.frame_e = ga.frame;
    s.frame_f = gb.frame;

    const bool a_par = ga.sign.has_value();
    const bool b_par = gb.sign.has_value();
    if (a_par && b_par) {
        s.branch = Branch::BothParallel;
    } else if (a_par) {
        s.branch = Branch::AParallel;
    } else if (b_par) {
        s.branch = Branch::BParallel;
    } else {
        s.branch = Branch::Generic;
    }
    return s;
}

Setting canonical_setting(double alpha, double beta, double parallel_tol) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || alpha > M_PI || beta < 0.0 ||
        beta > M_PI) {
        throw std::invalid_argument("canonical_setting: angles must lie in [0, pi]");
    }
    const BlochObservable a1{0.0, {0.0, 0.0, 1.0}};
    const BlochObservable a2{0.0, {std::sin(alpha), 0.0, std::cos(alpha)}};
    const BlochObservable b1{0.0, {0.0, 0.0, 1.0}};
    const BlochObservable b2{0.0, {std::sin(beta), 0.0, std::cos(beta)}};
    return build_setting(a1, a2, b1, b2, parallel_tol);
}

FrameCoeffs frame_coefficients(const Mat4 &m, const Setting &setting) {
    setting.require_generic("frame_coefficients");
    FrameCoeffs c;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            c[mu][nu] = trace_of_product(m, tensor((*setting.frame_e)[mu], (*setting.frame_f)[nu]));
        }
    }
    return c;
}

WCoeffs w_coefficients(const Herm4 &m, const Setting &setting) {
    const FrameCoeffs c = frame_coefficients(m.matrix(), setting);
    WCoeffs w;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            w[mu][nu] = c[mu][nu].real();
        }
    }
    return w;
}

Mat4 compose_from_frame(const FrameCoeffs &c, const Setting &setting) {
    setting.require_generic("compose_from_frame");
    Mat4 out;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            if (c[mu][nu] != 0.0) {
                out += tensor((*setting.frame_e)[mu], (*setting.frame_f)[nu]) * (0.25 * c[mu][nu]);
            }
        }
    }
    return out;
}

Mat4 compose_from_frame(const WCoeffs &w, const Setting &setting) {
    FrameCoeffs c;
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            c[mu][nu] = w[mu][nu];
        }
    }
    return compose_from_frame(c, setting);
}

CorrVec correlations(const DensityOperator &rho, const Setting &setting) {
    auto g = [&](int i, int j) { return expectation(rho, tensor(setting.a_tilde[i], setting.b_tilde[j])); };
    return CorrVec{g(0, 0), g(1, 0), g(0, 1), g(1, 1)};
}

double normalized_correlation(double c_ij, double mean_a, double mean_b, const BlochObservable &a,
                              const BlochObservable &b) {
    a.validate();
    b.validate();
    return (c_ij - a.a0 * mean_b - b.a0 * mean_a + a.a0 * b.a0) / (norm(a.a) * norm(b.a));
}

}  // namespace chshq
