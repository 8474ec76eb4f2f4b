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

#include "chshq/sampling.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chshq/qjp.h"
#include "chshq/tolerances.h"
#include "chshq/transforms.h"

namespace chshq {

namespace {

constexpr double kLhsSlack = 1e-9;
constexpr double kWitnessResidual = 1e-9;
constexpr double kWitnessTrace = 1e-12;
constexpr double kWitnessEigen = 1e-10;
constexpr double kWitnessMarginal = 1e-9;
constexpr double kBoundaryEigen = 1e-8;
constexpr double kSpectrumAgreement = 1e-9;
constexpr double kMomentAudit = 1e-11;
constexpr double kRoundTrip = 1e-10;

std::string num(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string describe_point(const CorrVec &g) {
    return "gamma=[" + num(g.g11) + "," + num(g.g21) + "," + num(g.g12) + "," + num(g.g22) + "]";
}

std::string describe(double alpha, double beta, const CorrVec &g) {
    return "alpha=" + num(alpha) + " beta=" + num(beta) + " " + describe_point(g);
}

// Runs body(index, report) over [0, n), splitting the range into contiguous
// blocks when threads > 1. The merged report does not depend on the split.
template <typename Body>
SweepReport run_indexed(std::uint64_t n, int threads, Body body) {
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
    std::vector<SweepReport> partial(workers);
    auto run_block = [&](std::uint64_t w) {
        const std::uint64_t lo = n * w / workers;
        const std::uint64_t hi = n * (w + 1) / workers;
        for (std::uint64_t k = lo; k < hi; ++k) {
            body(k, partial[w]);
        }
    };
    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back(run_block, w);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    SweepReport total;
    for (const SweepReport &r : partial) {
        total.merge(r);
    }
    return total;
}

int rank_for(const SweepOptions &opt, std::uint64_t index) {
    return opt.rank == 0 ? static_cast<int>(index % 4) + 1 : opt.rank;
}

Setting random_generic_setting(const SweepOptions &opt, Rng &rng) {
    const double alpha = rng.uniform(opt.angle_lo, opt.angle_hi);
    const double beta = rng.uniform(opt.angle_lo, opt.angle_hi);
    return random_setting(alpha, beta, rng);
}

CorrVec random_cube_point(Rng &rng) {
    CorrVec g;
    g.g11 = rng.uniform(-1.0, 1.0);
    g.g21 = rng.uniform(-1.0, 1.0);
    g.g12 = rng.uniform(-1.0, 1.0);
    g.g22 = rng.uniform(-1.0, 1.0);
    return g;
}

CorrVec scaled(const CorrVec &g, double s) {
    return {g.g11 * s, g.g21 * s, g.g12 * s, g.g22 * s};
}

// A random feasible gamma for the setting, scaled into (or onto) the region.
CorrVec random_feasible(const Setting &setting, Rng &rng, bool boundary) {
    for (;;) {
        const CorrVec g = random_cube_point(rng);
        const double lhs = decide(setting, g).lhs;
        if (!(lhs > 0.0)) {
            continue;
        }
        if (boundary) {
            return scaled(g, 2.0 / lhs);
        }
        if (lhs <= 2.0) {
            return g;
        }
        const double u = 1.0 - rng.uniform();
        return scaled(g, 2.0 * u / lhs);
    }
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double Rng::uniform() {
    return std::generate_canonical<double, 64>(engine_);
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double Rng::normal() {
    return normal_(engine_);
}

DensityOperator random_density(Rng &rng, int rank) {
    if (rank < 1 || rank > 4) {
        throw std::invalid_argument("random_density: rank must be in 1..4");
    }
    std::array<Complex, 16> g{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < rank; ++c) {
            const double re = rng.normal();
            const double im = rng.normal();
            g[r * 4 + c] = Complex(re, im);
        }
    }
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex acc = 0.0;
            for (int c = 0; c < rank; ++c) {
                acc += g[i * 4 + c] * std::conj(g[j * 4 + c]);
            }
            m(i, j) = acc;
        }
    }
    const double t = trace(m).real();
    return DensityOperator(Herm4(m * (1.0 / t)));
}

Vec3 random_unit_vector(Rng &rng) {
    for (;;) {
        const double x = rng.normal();
        const double y = rng.normal();
        const double z = rng.normal();
        const double n = std::hypot(x, y, z);
        if (n > 1e-6) {
            return {x / n, y / n, z / n};
        }
    }
}

Setting random_setting(double alpha, double beta, Rng &rng) {
    if (!(alpha > 0.0 && alpha < M_PI && beta > 0.0 && beta < M_PI)) {
        throw std::invalid_argument("random_setting: angles must lie in (0, pi)");
    }
    auto pair = [&rng](double angle) {
        const Vec3 u = random_unit_vector(rng);
        Vec3 t;
        for (;;) {
            const Vec3 r = random_unit_vector(rng);
            const double d = dot(r, u);
            t = {r[0] - d * u[0], r[1] - d * u[1], r[2] - d * u[2]};
            const double n = norm(t);
            if (n > 1e-3) {
                t = {t[0] / n, t[1] / n, t[2] / n};
                break;
            }
        }
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const Vec3 v{c * u[0] + s * t[0], c * u[1] + s * t[1], c * u[2] + s * t[2]};
        return std::pair<BlochObservable, BlochObservable>{{0.0, u}, {0.0, v}};
    };
    const auto [a1, a2] = pair(alpha);
    const auto [b1, b2] = pair(beta);
    return build_setting(a1, a2, b1, b2);
}

CorrVec measure(const DensityOperator &rho, const Setting &setting) {
    return correlations(rho, setting);
}

void SweepReport::merge(const SweepReport &other) {
    samples += other.samples;
    violations += other.violations;
    if (other.worst_margin < worst_margin ||
        (other.worst_margin == worst_margin && other.worst_index < worst_index && other.samples > 0)) {
        worst_margin = other.worst_margin;
        worst_index = other.worst_index;
        worst_case = other.worst_case;
    }
}

void SweepReport::record(std::uint64_t index, double margin, bool violated, const std::string &inputs) {
    SweepReport one;
    one.samples = 1;
    one.violations = violated ? 1 : 0;
    one.worst_margin = margin;
    one.worst_index = index;
    one.worst_case = inputs;
    merge(one);
}

SweepReport soundness_sweep(std::uint64_t n, const SweepOptions &opt) {
    return run_indexed(n, opt.threads, [&opt](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const DensityOperator rho = random_density(rng, rank_for(opt, k));
        const Setting setting = random_generic_setting(opt, rng);
        const CorrVec g = measure(rho, setting);
        const Verdict v = decide(setting, g);
        const bool ok = v.feasible && v.lhs <= 2.0 + kLhsSlack && chsh_max(g) <= 2.0 * M_SQRT2 + kLhsSlack &&
                        in_cube(g) && tl_algebraic(g);
        rep.record(k, 2.0 - v.lhs, !ok, describe(setting.alpha, setting.beta, g));
    });
}

SweepReport completeness_sweep(std::uint64_t n, const SweepOptions &opt, bool boundary) {
    return run_indexed(n, opt.threads, [&opt, boundary](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const Setting setting = random_generic_setting(opt, rng);
        const CorrVec g = random_feasible(setting, rng, boundary);
        const std::string inputs = describe(setting.alpha, setting.beta, g);
        try {
            const DensityOperator rho = witness(setting, g);
            const WitnessReport w = verify_witness(setting, g, rho);
            double worst = std::max({w.max_correlation_residual / kWitnessResidual,
                                     w.trace_residual / kWitnessTrace,
                                     std::max(0.0, -w.min_eigenvalue) / kWitnessEigen,
                                     w.max_marginal() / kWitnessMarginal});
            if (boundary) {
                worst = std::max(worst, std::abs(w.min_eigenvalue) / kBoundaryEigen);
            }
            rep.record(k, 1.0 - worst, worst > 1.0, inputs);
        } catch (const std::exception &e) {
            rep.record(k, -INFINITY, true, inputs + " error=" + e.what());
        }
    });
}

SweepReport eigenvalue_sweep(std::uint64_t n, const SweepOptions &opt) {
    return run_indexed(n, opt.threads, [&opt](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const Setting setting = random_generic_setting(opt, rng);
        const CorrVec g = random_feasible(setting, rng, false);
        const Verdict v = decide(setting, g);
        const double w33 = rng.uniform(v.w33_interval->lo, v.w33_interval->hi);
        const std::string inputs = describe(setting.alpha, setting.beta, g) + " w33=" + num(w33);
        try {
            const DensityOperator rho = witness(setting, g, W33Choice::at(w33));
            const std::array<double, 4> numeric = herm_eigenvalues(rho.herm());
            const double tp = std::sqrt(quad_form(f_matrix(setting.alpha, setting.beta), g));
            const double tm = std::sqrt(quad_form(f_matrix(setting.alpha, -setting.beta), g));
            std::array<double, 4> closed{0.25 * (1.0 + w33 + tp), 0.25 * (1.0 + w33 - tp), 0.25 * (1.0 - w33 + tm),
                                         0.25 * (1.0 - w33 - tm)};
            std::sort(closed.begin(), closed.end());
            double dev = 0.0;
            for (int i = 0; i < 4; ++i) {
                dev = std::max(dev, std::abs(closed[i] - numeric[i]));
            }
            rep.record(k, 1.0 - dev / kSpectrumAgreement, dev > kSpectrumAgreement, inputs);
        } catch (const std::exception &e) {
            rep.record(k, -INFINITY, true, inputs + " error=" + e.what());
        }
    });
}

SweepReport reduce_sweep(std::uint64_t n, const SweepOptions &opt) {
    return run_indexed(n, opt.threads, [&opt](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const DensityOperator rho = random_density(rng, rank_for(opt, k));
        const Setting setting = random_generic_setting(opt, rng);
        const CorrVec g = measure(rho, setting);
        const std::string inputs = describe(setting.alpha, setting.beta, g);
        try {
            const DensityOperator out = reduce(rho, setting);
            const CharVec phi = char_vec(out, setting);
            double dev = 0.0;
            // Single moments x_i and triple moments x_ijk.
            for (int s : {8, 4, 2, 1, 14, 13, 11, 7}) {
                dev = std::max(dev, std::abs(phi.phi[s]));
            }
            const WCoeffs w_in = w_coefficients(rho.herm(), setting);
            const WCoeffs w_out = w_coefficients(out.herm(), setting);
            dev = std::max({dev, std::abs(w_out[0][3]), std::abs(w_out[3][0]), std::abs(w_out[3][3] - w_in[3][3])});
            const CorrVec g_out = measure(out, setting);
            for (int i = 0; i < 4; ++i) {
                dev = std::max(dev, std::abs(g_out[i] - g[i]));
            }
            rep.record(k, 1.0 - dev / kMomentAudit, dev > kMomentAudit, inputs);
        } catch (const std::exception &e) {
            rep.record(k, -INFINITY, true, inputs + " error=" + e.what());
        }
    });
}

SweepReport qjp_sweep(std::uint64_t n, const SweepOptions &opt) {
    return run_indexed(n, opt.threads, [&opt](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const DensityOperator rho = random_density(rng, rank_for(opt, k));
        const Setting setting = random_generic_setting(opt, rng);
        const std::string inputs = describe(setting.alpha, setting.beta, measure(rho, setting));
        try {
            const CharVec phi = char_vec(rho, setting);
            double dev = max_abs(rho_from_phi(phi, setting).matrix() - rho.matrix());
            const WCoeffs w_phi = w_from_phi(phi, setting.alpha, setting.beta);
            const WCoeffs w_direct = w_coefficients(rho.herm(), setting);
            for (int mu = 0; mu < 4; ++mu) {
                for (int nu = 0; nu < 4; ++nu) {
                    dev = std::max(dev, std::abs(w_phi[mu][nu] - w_direct[mu][nu]));
                }
            }
            for (int i = 1; i <= 2; ++i) {
                for (int j = 1; j <= 2; ++j) {
                    const PairDist p = pair_probabilities(phi, i, j);
                    double total = 0.0;
                    for (double x : p) {
                        dev = std::max(dev, std::max(0.0, -x));
                        total += x;
                    }
                    dev = std::max(dev, std::abs(total - 1.0));
                }
            }
            rep.record(k, 1.0 - dev / kRoundTrip, dev > kRoundTrip, inputs);
        } catch (const std::exception &e) {
            rep.record(k, -INFINITY, true, inputs + " error=" + e.what());
        }
    });
}

SweepReport tl_equivalence_sweep(std::uint64_t n, const SweepOptions &opt, double band) {
    return run_indexed(n, opt.threads, [&opt, band](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const CorrVec g = random_cube_point(rng);
        const double m_alg = tl_algebraic_margin(g);
        const double m_arc = tl_arcsin_margin(g);
        if (std::abs(m_alg) < band || std::abs(m_arc) < band) {
            return;
        }
        const bool alg = tl_algebraic(g);
        const bool agree = alg == tl_arcsin(g) && alg == tl_thm22(g);
        const double margin = std::min(std::abs(m_alg), std::abs(m_arc));
        rep.record(k, agree ? margin : -margin, !agree, describe_point(g));
    });
}

SweepReport gram_equivalence_sweep(std::uint64_t n, const SweepOptions &opt, int grid_n, double band) {
    return run_indexed(n, opt.threads, [&opt, grid_n, band](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        CorrVec g;
        double margin = 0.0;
        do {
            g = random_cube_point(rng);
            margin = tl_arcsin_margin(g);
        } while (std::abs(margin) < band || std::abs(tl_algebraic_margin(g)) < band);
        const bool agree = gram_feasible(g, grid_n) == tl_algebraic(g);
        rep.record(k, agree ? std::abs(margin) : -std::abs(margin), !agree, describe_point(g));
    });
}

std::vector<double> union_angle_grid(int n) {
    if (n < 1) {
        throw std::invalid_argument("union_angle_grid: n must be positive");
    }
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        out[k] = (k + 0.5) * M_PI / n;
    }
    return out;
}

namespace {

// gamma -> (w11 - w22, w12 + w21, w11 + w22, w12 - w21) as a 4x4 row-major map.
struct AngleMap {
    double alpha = 0.0;
    double beta = 0.0;
    std::array<double, 16> m{};
};

AngleMap angle_map(double alpha, double beta) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    // Rows: w11, w21, w12, w22 in terms of (g11, g21, g12, g22).
    const std::array<double, 4> w11{1.0, 0.0, 0.0, 0.0};
    const std::array<double, 4> w21{-ca / sa, 1.0 / sa, 0.0, 0.0};
    const std::array<double, 4> w12{-cb / sb, 0.0, 1.0 / sb, 0.0};
    const double k = 1.0 / (sa * sb);
    const std::array<double, 4> w22{ca * cb * k, -cb * k, -ca * k, k};
    AngleMap a{alpha, beta, {}};
    for (int c = 0; c < 4; ++c) {
        a.m[0 + c] = w11[c] - w22[c];
        a.m[4 + c] = w12[c] + w21[c];
        a.m[8 + c] = w11[c] + w22[c];
        a.m[12 + c] = w12[c] - w21[c];
    }
    return a;
}

double angle_lhs(const AngleMap &a, const std::array<double, 4> &g) {
    double r[4];
    for (int i = 0; i < 4; ++i) {
        r[i] = a.m[4 * i] * g[0] + a.m[4 * i + 1] * g[1] + a.m[4 * i + 2] * g[2] + a.m[4 * i + 3] * g[3];
    }
    return std::sqrt(r[0] * r[0] + r[1] * r[1]) + std::sqrt(r[2] * r[2] + r[3] * r[3]);
}

}  // namespace

UnionReport union_sweep(const UnionOptions &opt) {
    if (opt.cube_n < 2) {
        throw std::invalid_argument("union_sweep: cube_n must be at least 2");
    }
    const std::vector<double> angles = union_angle_grid(opt.angle_n);
    std::vector<AngleMap> maps;
    for (double a : angles) {
        for (double b : angles) {
            maps.push_back(angle_map(a, b));
        }
    }
    const int n = opt.cube_n;
    const double h = 2.0 / (n - 1);
    const std::uint64_t blocks = static_cast<std::uint64_t>(n) * n;
    std::vector<UnionReport> parts(blocks);
    // Each block (fixed g11, g21) is one unit of work; the hint carries the
    // last successful angle pair across neighbouring points.
    run_indexed(blocks, opt.threads, [&](std::uint64_t block, SweepReport &) {
        UnionReport &part = parts[block];
        std::size_t hint = 0;
        const int i0 = static_cast<int>(block / n);
        const int i1 = static_cast<int>(block % n);
        for (int i2 = 0; i2 < n; ++i2) {
            for (int i3 = 0; i3 < n; ++i3) {
                const std::array<double, 4> g{-1.0 + i0 * h, -1.0 + i1 * h, -1.0 + i2 * h, -1.0 + i3 * h};
                const CorrVec c = CorrVec::from_array(g);
                const double tl_margin = tl_arcsin_margin(c);
                double face = 1.0;
                for (double x : g) {
                    face = std::min(face, 1.0 - std::abs(x));
                }
                const bool inner = std::min(tl_margin, face) >= opt.inner_margin;
                const bool outer = tl_margin < -tol::kInequality;
                if (!inner && !outer) {
                    continue;
                }
                const std::uint64_t index = block * n * n + i2 * n + i3;
                double best = INFINITY;
                std::size_t found = maps.size();
                for (std::size_t t = 0; t < maps.size(); ++t) {
                    const std::size_t p = (hint + t) % maps.size();
                    const double lhs = angle_lhs(maps[p], g);
                    best = std::min(best, lhs);
                    if (lhs <= 2.0 + tol::kFeasibility) {
                        found = p;
                        break;
                    }
                }
                if (inner) {
                    const bool ok = found < maps.size();
                    if (ok) {
                        hint = found;
                    }
                    ++part.inner;
                    part.inner_missed += ok ? 0 : 1;
                    part.report.record(index, 2.0 - best, !ok, describe_point(c) + " kind=inner");
                } else {
                    const bool ok = found == maps.size();
                    const std::string where =
                        ok ? "" : " alpha=" + num(maps[found].alpha) + " beta=" + num(maps[found].beta);
                    ++part.outer;
                    part.outer_accepted += ok ? 0 : 1;
                    part.report.record(index, best - 2.0, !ok, describe_point(c) + " kind=outer" + where);
                }
            }
        }
    });
    UnionReport total;
    for (const UnionReport &p : parts) {
        total.report.merge(p.report);
        total.inner += p.inner;
        total.inner_missed += p.inner_missed;
        total.outer += p.outer;
        total.outer_accepted += p.outer_accepted;
    }
    return total;
}

SweepReport continuity_sweep(std::uint64_t n, const SweepOptions &opt, int s_b) {
    if (s_b != 1 && s_b != -1) {
        throw std::invalid_argument("continuity_sweep: s_b must be +1 or -1");
    }
    const double beta = s_b == 1 ? 1e-5 : M_PI - 1e-5;
    return run_indexed(n, opt.threads, [&opt, s_b, beta](std::uint64_t k, SweepReport &rep) {
        Rng rng(opt.seed, k);
        const double alpha = rng.uniform(opt.angle_lo, opt.angle_hi);
        const BlochObservable a1{0.0, {0.0, 0.0, 1.0}};
        const BlochObservable a2{0.0, {std::sin(alpha), 0.0, std::cos(alpha)}};
        const BlochObservable b1{0.0, {0.0, 0.0, 1.0}};
        const BlochObservable b2{0.0, {0.0, 0.0, static_cast<double>(s_b)}};
        const Setting parallel = build_setting(a1, a2, b1, b2);
        const Setting generic = canonical_setting(alpha, beta);

        CorrVec g;
        Verdict vp;
        do {
            const double x = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(-1.0, 1.0);
            g = CorrVec{x, y, s_b * x, s_b * y};
            vp = decide(parallel, g);
        } while (std::abs(vp.lhs - 2.0) <= 1e-3);
        const Verdict vg = decide(generic, g);
        const bool agree = vp.feasible == vg.feasible && parallel.branch == Branch::BParallel &&
                           generic.branch == Branch::Generic;
        const double margin = std::abs(vp.lhs - 2.0);
        rep.record(k, agree ? margin : -margin, !agree, describe(alpha, beta, g));
    });
}

}  // namespace chshq
