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

#include "chshq/inequalities.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chshq/tolerances.h"

namespace chshq {

namespace {

void require_cube(const CorrVec &c, const char *who) {
    if (!in_cube(c)) {
        throw std::invalid_argument(std::string(who) + ": correlations must lie in [-1, 1]");
    }
}

double safe_sqrt1m(double x) {
    return std::sqrt(std::max(0.0, 1.0 - x * x));
}

}  // namespace

double chsh_max(const CorrVec &c) {
    const double total = c.g11 + c.g21 + c.g12 + c.g22;
    double best = 0.0;
    for (int k = 0; k < 4; ++k) {
        best = std::max(best, std::abs(total - 2.0 * c[k]));
    }
    return best;
}

bool in_cube(const CorrVec &c) {
    for (int k = 0; k < 4; ++k) {
        if (!(std::abs(c[k]) <= 1.0)) {
            return false;
        }
    }
    return true;
}

double tl_algebraic_margin(const CorrVec &c) {
    require_cube(c, "tl_algebraic");
    const double lhs = std::abs(c.g11 * c.g12 - c.g21 * c.g22);
    const double rhs = safe_sqrt1m(c.g11) * safe_sqrt1m(c.g12) + safe_sqrt1m(c.g21) * safe_sqrt1m(c.g22);
    return rhs - lhs;
}

bool tl_algebraic(const CorrVec &c) {
    return tl_algebraic_margin(c) >= -tol::kInequality;
}

double tl_arcsin_margin(const CorrVec &c) {
    require_cube(c, "tl_arcsin");
    std::array<double, 4> s;
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
        s[k] = std::asin(c[k]);
        total += s[k];
    }
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(total - 2.0 * s[k]));
    }
    return M_PI - worst;
}

bool tl_arcsin(const CorrVec &c) {
    return tl_arcsin_margin(c) >= -tol::kInequality;
}

bool tl_thm22(const CorrVec &c) {
    require_cube(c, "tl_thm22");
    const double c11 = c.g11, c21 = c.g21, c12 = c.g12, c22 = c.g22;
    double sum2 = 0.0, sum4 = 0.0, max2 = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double sq = c[k] * c[k];
        sum2 += sq;
        sum4 += sq * sq;
        max2 = std::max(max2, sq);
    }
    const double prod = c11 * c21 * c12 * c22;

    const double chain = (c12 * c21 - c11 * c22) * (c11 * c12 - c21 * c22) * (c11 * c21 - c12 * c22);
    const double bound = 0.25 * sum2 * sum2 - 0.5 * sum4 - 2.0 * prod;
    const bool first = chain >= -tol::kInequality && chain <= bound + tol::kInequality;

    const bool second = 2.0 * max2 * max2 - max2 * sum2 + 2.0 * prod >= -tol::kInequality;
    return first || second;
}

double gram_min_eigenvalue(const CorrVec &c, Complex x, Complex y) {
    const Mat4 g{1.0,   x,     c.g11, c.g12,  //
                 std::conj(x), 1.0,   c.g21, c.g22,  //
                 c.g11, c.g21, 1.0,   y,      //
                 c.g12, c.g22, std::conj(y), 1.0};
    return min_eigenvalue(Herm4(g));
}

namespace {

double real_gram_min_eigenvalue(const CorrVec &c, double x, double y) {
    return symmetric_eigenvalues<4>({1.0, x, c.g11, c.g12,  //
                                     x, 1.0, c.g21, c.g22,  //
                                     c.g11, c.g21, 1.0, y,  //
                                     c.g12, c.g22, y, 1.0})[0];
}

// Pattern search with step halving over a box-constrained parameter vector.
template <std::size_t D, typename Objective, typename Project>
double refine(std::array<double, D> best, double value, double step, Objective objective, Project project) {
    for (int iter = 0; iter < 200 && step > 1e-12; ++iter) {
        if (value >= -tol::kGramPsd) {
            break;
        }
        bool improved = false;
        for (std::size_t d = 0; d < D; ++d) {
            for (double dir : {-1.0, 1.0}) {
                std::array<double, D> trial = best;
                trial[d] += dir * step;
                trial = project(trial);
                const double v = objective(trial);
                if (v > value) {
                    value = v;
                    best = trial;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    return value;
}

}  // namespace

bool gram_feasible(const CorrVec &c, int grid_n, GramDomain domain) {
    require_cube(c, "gram_feasible");
    if (grid_n < 2) {
        throw std::invalid_argument("gram_feasible: grid_n must be at least 2");
    }
    const double h = 2.0 / (grid_n - 1);

    if (domain == GramDomain::Real) {
        auto objective = [&c](const std::array<double, 2> &p) { return real_gram_min_eigenvalue(c, p[0], p[1]); };
        auto project = [](std::array<double, 2> p) {
            for (double &v : p) {
                v = std::clamp(v, -1.0, 1.0);
            }
            return p;
        };
        std::array<double, 2> best{0.0, 0.0};
        double best_value = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid_n; ++i) {
            for (int j = 0; j < grid_n; ++j) {
                const std::array<double, 2> p{-1.0 + i * h, -1.0 + j * h};
                const double v = objective(p);
                if (v >= -tol::kGramPsd) {
                    return true;
                }
                if (v > best_value) {
                    best_value = v;
                    best = p;
                }
            }
        }
        return refine(best, best_value, h / 2.0, objective, project) >= -tol::kGramPsd;
    }

    // (Re x, Im x, Re y, Im y) restricted to the unit disk in each variable.
    constexpr int kPhases = 16;
    auto objective = [&c](const std::array<double, 4> &p) {
        return gram_min_eigenvalue(c, Complex(p[0], p[1]), Complex(p[2], p[3]));
    };
    auto project = [](std::array<double, 4> p) {
        for (int k = 0; k < 4; k += 2) {
            const double r = std::hypot(p[k], p[k + 1]);
            if (r > 1.0) {
                p[k] /= r;
                p[k + 1] /= r;
            }
        }
        return p;
    };
    const int radii = (grid_n + 1) / 2;
    std::array<double, 4> best{0.0, 0.0, 0.0, 0.0};
    double best_value = -std::numeric_limits<double>::infinity();
    for (int ri = 0; ri < radii; ++ri) {
        const double rx = radii == 1 ? 0.0 : static_cast<double>(ri) / (radii - 1);
        for (int pi = 0; pi < kPhases; ++pi) {
            const double tx = 2.0 * M_PI * pi / kPhases;
            for (int rj = 0; rj < radii; ++rj) {
                const double ry = radii == 1 ? 0.0 : static_cast<double>(rj) / (radii - 1);
                for (int pj = 0; pj < kPhases; ++pj) {
                    const double ty = 2.0 * M_PI * pj / kPhases;
                    const std::array<double, 4> p{rx * std::cos(tx), rx * std::sin(tx), ry * std::cos(ty),
                                                  ry * std::sin(ty)};
                    const double v = objective(p);
                    if (v >= -tol::kGramPsd) {
                        return true;
                    }
                    if (v > best_value) {
                        best_value = v;
                        best = p;
                    }
                }
            }
        }
    }
    return refine(best, best_value, h / 2.0, objective, project) >= -tol::kGramPsd;
}

bool bell_original(double c_ab, double c_ac, double c_bc) {
    return std::abs(c_ab - c_ac) <= 1.0 + c_bc + tol::kInequality;
}

Verdict bell_setting_decide(double alpha, double beta, double c11, double c12, double c22) {
    const Setting s = canonical_setting(alpha, beta);
    if (s.branch != Branch::Generic) {
        throw std::invalid_argument("bell_setting_decide: degenerate angles");
    }
    return decide(s, CorrVec{c11, -1.0, c12, c22});
}

namespace {

int outcome_index(int v) {
    return v > 0 ? 0 : 1;
}

void validate_pair(const PairDist &p) {
    double total = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < -tol::kInequality) {
            throw std::invalid_argument("pair distribution has a negative or non-finite entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > tol::kInequality) {
        throw std::invalid_argument("pair distribution does not sum to one");
    }
}

// P_A(a) from P_{AB}, P_B(b) from P_{AB}.
double first_marginal(const PairDist &p, int a) {
    return p[2 * outcome_index(a)] + p[2 * outcome_index(a) + 1];
}
double second_marginal(const PairDist &p, int b) {
    return p[outcome_index(b)] + p[2 + outcome_index(b)];
}

constexpr double kNoSignalling = 1e-9;

}  // namespace

void JointDist222::validate() const {
    double total = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < -tol::kInequality) {
            throw std::invalid_argument("JointDist222: negative or non-finite entry");
        }
        total += x;
    }
    if (std::abs(total - 1.0) > tol::kInequality) {
        throw std::invalid_argument("JointDist222: entries do not sum to one");
    }
}

PairDists pair_marginals(const JointDist222 &joint) {
    joint.validate();
    PairDists out{};
    for (int k = 0; k < 16; ++k) {
        const int ka1 = (k >> 3) & 1, ka2 = (k >> 2) & 1, kb1 = (k >> 1) & 1, kb2 = k & 1;
        const std::array<int, 2> ka{ka1, ka2};
        const std::array<int, 2> kb{kb1, kb2};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                out[i + 2 * j][2 * ka[i] + kb[j]] += joint.p[k];
            }
        }
    }
    return out;
}

PairDist pair_from_moments(double mean_a, double mean_b, double corr) {
    PairDist p{};
    for (int a : {1, -1}) {
        for (int b : {1, -1}) {
            p[2 * outcome_index(a) + outcome_index(b)] = (1.0 + a * mean_a + b * mean_b + a * b * corr) / 4.0;
        }
    }
    return p;
}

bool fine_chsh_prob(const PairDists &pairs) {
    for (const PairDist &p : pairs) {
        validate_pair(p);
    }
    auto pair = [&pairs](int i, int j) -> const PairDist & { return pairs[(i - 1) + 2 * (j - 1)]; };
    for (int i = 1; i <= 2; ++i) {
        for (int j = 1; j <= 2; ++j) {
            for (int a : {1, -1}) {
                if (std::abs(first_marginal(pair(i, 1), a) - first_marginal(pair(i, 2), a)) > kNoSignalling) {
                    throw std::invalid_argument("fine_chsh_prob: A marginals disagree across pairs");
                }
                if (std::abs(second_marginal(pair(1, j), a) - second_marginal(pair(2, j), a)) > kNoSignalling) {
                    throw std::invalid_argument("fine_chsh_prob: B marginals disagree across pairs");
                }
            }
        }
    }

    auto prob = [&](int i, int j, int a, int b) { return pair(i, j)[2 * outcome_index(a) + outcome_index(b)]; };
    for (int i = 1; i <= 2; ++i) {
        const int ip = 3 - i;
        for (int j = 1; j <= 2; ++j) {
            const int jp = 3 - j;
            for (int ai : {1, -1}) {
                for (int aip : {1, -1}) {
                    for (int bj : {1, -1}) {
                        for (int bjp : {1, -1}) {
                            const double v = prob(i, j, ai, bj) + prob(i, jp, ai, bjp) + prob(ip, jp, aip, bjp) -
                                             prob(ip, j, aip, bj) - first_marginal(pair(i, j), ai) -
                                             second_marginal(pair(i, jp), bjp);
                            if (v < -1.0 - tol::kInequality || v > tol::kInequality) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

ClassifyReport classify(const CorrVec &c, int gram_grid_n) {
    ClassifyReport r;
    r.chsh_max = chsh_max(c);
    r.chsh_ok = r.chsh_max <= 2.0 + tol::kInequality;
    r.tsirelson_ok = r.chsh_max <= 2.0 * M_SQRT2 + tol::kInequality;
    r.in_cube = in_cube(c);
    if (r.in_cube) {
        r.tl_algebraic_ok = tl_algebraic(c);
        r.tl_arcsin_ok = tl_arcsin(c);
        r.tl_thm22_ok = tl_thm22(c);
        if (gram_grid_n > 0) {
            r.gram_ok = gram_feasible(c, gram_grid_n);
        }
    }
    return r;
}

}  // namespace chshq
