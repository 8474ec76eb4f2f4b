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

#include <algorithm>
#include <cmath>
#include <limits>

namespace chshq {

namespace {

void require_nondegenerate(double alpha, double beta, const char *who) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || std::abs(std::sin(alpha)) < tol::kParallel ||
        std::abs(std::sin(beta)) < tol::kParallel) {
        throw std::invalid_argument(std::string(who) + ": degenerate angle");
    }
}

W33Interval normalized_interval(const RealizabilityTerms &t) {
    W33Interval iv{-1.0 + t.plus, 1.0 - t.minus};
    if (iv.lo > iv.hi) {
        // Only reachable inside the feasibility slack.
        const double mid = 0.5 * (iv.lo + iv.hi);
        iv.lo = mid;
        iv.hi = mid;
    }
    return iv;
}

BlochObservable unit_observable(const Vec3 &v) {
    const double n = norm(v);
    return BlochObservable{0.0, {v[0] / n, v[1] / n, v[2] / n}};
}

// The non-parallel problem a parallel branch reduces to: each parallel pair
// (P1, P2 = s P1) is replaced by (P1, P*) with P* anticommuting with P1, and
// the correlations with P* are set to zero.
struct AuxiliaryProblem {
    Setting setting;
    CorrVec g;
};

AuxiliaryProblem auxiliary_problem(const Setting &s, const CorrVec &g) {
    const bool a_par = s.s_a.has_value();
    const bool b_par = s.s_b.has_value();
    const BlochObservable a1 = unit_observable(s.a1.a);
    const BlochObservable b1 = unit_observable(s.b1.a);
    const BlochObservable a2 = a_par ? unit_observable(orthogonal_partner(s.a1.a)) : unit_observable(s.a2.a);
    const BlochObservable b2 = b_par ? unit_observable(orthogonal_partner(s.b1.a)) : unit_observable(s.b2.a);

    AuxiliaryProblem p{build_setting(a1, a2, b1, b2), g};
    if (a_par) {
        p.g.g21 = 0.0;
        p.g.g22 = 0.0;
    }
    if (b_par) {
        p.g.g12 = 0.0;
        p.g.g22 = 0.0;
    }
    return p;
}

}  // namespace

FMatrix f_matrix(double alpha, double beta) {
    require_nondegenerate(alpha, beta, "f_matrix");
    const double ca = std::cos(alpha);
    const double cb = std::cos(beta);
    const double cp = std::cos(alpha + beta);
    const double cm = std::cos(alpha - beta);
    const double sa = std::sin(alpha);
    const double sb = std::sin(beta);
    const double k = 1.0 / (sa * sa * sb * sb);
    FMatrix f;
    f.entries = {
        k,       -k * ca, -k * cb, k * cp,   //
        -k * ca, k,       k * cm,  -k * cb,  //
        -k * cb, k * cm,  k,       -k * ca,  //
        k * cp,  -k * cb, -k * ca, k,
    };
    return f;
}

double quad_form(const FMatrix &f, const CorrVec &g) {
    const std::array<double, 4> v = g.as_array();
    double q = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            q += v[r] * f(r, c) * v[c];
        }
    }
    if (q < 0.0 && q >= -tol::kQuadFormClamp) {
        q = 0.0;
    }
    return q;
}

ReducedCoeffs reduced_coefficients(double alpha, double beta, const CorrVec &g) {
    require_nondegenerate(alpha, beta, "reduced_coefficients");
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    ReducedCoeffs w;
    w.w11 = g.g11;
    w.w21 = (g.g21 - g.g11 * ca) / sa;
    w.w12 = (g.g12 - g.g11 * cb) / sb;
    w.w22 = (g.g22 - g.g12 * ca - g.g21 * cb + g.g11 * ca * cb) / (sa * sb);
    return w;
}

RealizabilityTerms realizability_terms(double alpha, double beta, const CorrVec &g) {
    const ReducedCoeffs w = reduced_coefficients(alpha, beta, g);
    return {std::hypot(w.w11 - w.w22, w.w12 + w.w21), std::hypot(w.w11 + w.w22, w.w12 - w.w21)};
}

Verdict decide(const Setting &setting, const CorrVec &g, double slack) {
    Verdict v;
    v.branch = setting.branch;
    if (!g.is_finite()) {
        v.feasible = false;
        v.lhs = std::numeric_limits<double>::infinity();
        return v;
    }

    if (setting.branch == Branch::Generic) {
        const RealizabilityTerms t = realizability_terms(setting.alpha, setting.beta, g);
        v.term_plus = t.plus;
        v.term_minus = t.minus;
        v.lhs = t.lhs();
        v.feasible = v.lhs <= 2.0 + slack;
        v.w33_interval = normalized_interval(t);
        return v;
    }

    const int sa = setting.s_a.value_or(1);
    const int sb = setting.s_b.value_or(1);
    double radius = 0.0;
    if (setting.branch == Branch::BParallel) {
        v.constraint_residuals = {{"g11 - s_b*g12", g.g11 - sb * g.g12}, {"g21 - s_b*g22", g.g21 - sb * g.g22}};
        const double ca = std::cos(setting.alpha);
        const double disk = g.g11 * g.g11 + g.g21 * g.g21 - 2.0 * ca * g.g11 * g.g21;
        radius = std::sqrt(std::max(disk, 0.0)) / std::sin(setting.alpha);
    } else if (setting.branch == Branch::AParallel) {
        v.constraint_residuals = {{"g11 - s_a*g21", g.g11 - sa * g.g21}, {"g12 - s_a*g22", g.g12 - sa * g.g22}};
        const double cb = std::cos(setting.beta);
        const double disk = g.g11 * g.g11 + g.g12 * g.g12 - 2.0 * cb * g.g11 * g.g12;
        radius = std::sqrt(std::max(disk, 0.0)) / std::sin(setting.beta);
    } else {
        v.constraint_residuals = {{"g11 - s_a*g21", g.g11 - sa * g.g21},
                                  {"g11 - s_b*g12", g.g11 - sb * g.g12},
                                  {"g11 - s_a*s_b*g22", g.g11 - sa * sb * g.g22}};
        radius = std::abs(g.g11);
    }

    bool equalities = true;
    for (const NamedResidual &r : v.constraint_residuals) {
        equalities = equalities && std::abs(r.value) <= tol::kEqualityResidual;
    }
    v.term_plus = radius;
    v.term_minus = radius;
    v.lhs = equalities ? 2.0 * radius : std::numeric_limits<double>::infinity();
    v.feasible = equalities && v.lhs <= 2.0 + slack;
    if (equalities) {
        v.w33_interval = W33Interval{-1.0 + radius, 1.0 - radius};
        if (v.w33_interval->lo > v.w33_interval->hi) {
            const double mid = 0.5 * (v.w33_interval->lo + v.w33_interval->hi);
            v.w33_interval = W33Interval{mid, mid};
        }
    }
    return v;
}

double decide_continuity_probe(double alpha, const CorrVec &g, double beta_small) {
    if (std::abs(g.g11 - g.g12) > tol::kEqualityResidual || std::abs(g.g21 - g.g22) > tol::kEqualityResidual) {
        throw std::invalid_argument("decide_continuity_probe: requires g11 = g12 and g21 = g22");
    }
    return realizability_terms(alpha, beta_small, g).lhs();
}

Vec3 orthogonal_partner(const Vec3 &v) {
    const double n = norm(v);
    const Vec3 u{v[0] / n, v[1] / n, v[2] / n};
    Vec3 seed{1.0, 0.0, 0.0};
    if (std::abs(u[0]) > std::cos(M_PI / 6.0)) {
        seed = {0.0, 1.0, 0.0};
    }
    const double d = dot(seed, u);
    Vec3 e{seed[0] - d * u[0], seed[1] - d * u[1], seed[2] - d * u[2]};
    const double en = norm(e);
    return {e[0] / en, e[1] / en, e[2] / en};
}

Herm4 reduced_state(const Setting &setting, const CorrVec &g, double w33) {
    setting.require_generic("reduced_state");
    const ReducedCoeffs r = reduced_coefficients(setting.alpha, setting.beta, g);
    WCoeffs w{};
    w[0][0] = 1.0;
    w[1][1] = r.w11;
    w[2][1] = r.w21;
    w[1][2] = r.w12;
    w[2][2] = r.w22;
    w[3][3] = w33;
    return Herm4(compose_from_frame(w, setting));
}

DensityOperator witness(const Setting &setting, const CorrVec &g, W33Choice choice) {
    const Verdict v = decide(setting, g);
    if (!v.feasible) {
        throw InfeasibleError("witness: correlations are not realizable for this setting");
    }

    const W33Interval iv = *v.w33_interval;
    double w33 = 0.0;
    switch (choice.kind) {
        case W33Choice::Kind::Midpoint:
            w33 = 0.5 * (iv.lo + iv.hi);
            break;
        case W33Choice::Kind::Lo:
            w33 = iv.lo;
            break;
        case W33Choice::Kind::Hi:
            w33 = iv.hi;
            break;
        case W33Choice::Kind::Value:
            if (!std::isfinite(choice.value) || choice.value < iv.lo - tol::kFeasibility ||
                choice.value > iv.hi + tol::kFeasibility) {
                throw std::invalid_argument("witness: w33 value outside the feasible interval");
            }
            w33 = std::clamp(choice.value, iv.lo, iv.hi);
            break;
    }

    if (setting.branch == Branch::Generic) {
        return DensityOperator(reduced_state(setting, g, w33));
    }
    const AuxiliaryProblem aux = auxiliary_problem(setting, g);
    return DensityOperator(reduced_state(aux.setting, aux.g, w33));
}

double WitnessReport::max_marginal() const {
    double m = 0.0;
    for (double x : marginals) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

WitnessReport verify_witness(const Setting &setting, const CorrVec &g, const DensityOperator &rho) {
    WitnessReport r;
    const CorrVec measured = correlations(rho, setting);
    for (int k = 0; k < 4; ++k) {
        r.max_correlation_residual = std::max(r.max_correlation_residual, std::abs(measured[k] - g[k]));
    }
    r.trace_residual = std::abs(rho.herm().trace() - 1.0);
    r.min_eigenvalue = min_eigenvalue(rho.herm());
    const Mat2 id = Mat2::identity();
    r.marginals = {expectation(rho, tensor(setting.a_tilde[0], id)), expectation(rho, tensor(setting.a_tilde[1], id)),
                   expectation(rho, tensor(id, setting.b_tilde[0])), expectation(rho, tensor(id, setting.b_tilde[1]))};
    return r;
}

}  // namespace chshq
