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

#include "chshq/cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "chshq/inequalities.h"
#include "chshq/observables.h"
#include "chshq/realizability.h"
#include "chshq/sampling.h"

namespace chshq::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &text, const std::string &what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw UsageError(what + ": cannot parse number '" + text + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string &text, const std::string &what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(item, what));
    }
    return out;
}

int slot_of(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == "c11" || name == "g11") return 0;
    if (name == "c21" || name == "g21") return 1;
    if (name == "c12" || name == "g12") return 2;
    if (name == "c22" || name == "g22") return 3;
    throw UsageError("unknown correlation component '" + name + "'");
}

const char *kSlotNames[4] = {"C11", "C21", "C12", "C22"};

// Options shared by the subcommands that need a measurement setting.
struct SettingArgs {
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::string> a1, a2, b1, b2;
    bool degrees = false;
    double parallel_tol = tol::kParallel;

    void attach(CLI::App *app) {
        app->add_option("--alpha", alpha, "Angle between the Bloch vectors of A1 and A2 (radians)");
        app->add_option("--beta", beta, "Angle between the Bloch vectors of B1 and B2 (radians)");
        app->add_option("--a1", a1, "Observable A1 as x,y,z or a0,x,y,z");
        app->add_option("--a2", a2, "Observable A2 as x,y,z or a0,x,y,z");
        app->add_option("--b1", b1, "Observable B1 as x,y,z or a0,x,y,z");
        app->add_option("--b2", b2, "Observable B2 as x,y,z or a0,x,y,z");
        app->add_flag("--degrees", degrees, "Read --alpha and --beta in degrees");
        app->add_option("--parallel-tol", parallel_tol, "Threshold on |sin| below which a pair counts as parallel");
    }

    std::pair<double, double> angles() const {
        if (!alpha || !beta) {
            throw UsageError("both --alpha and --beta are required");
        }
        const double k = degrees ? M_PI / 180.0 : 1.0;
        return {*alpha * k, *beta * k};
    }

    Setting build() const {
        const bool any_angle = alpha || beta;
        const bool any_vector = a1 || a2 || b1 || b2;
        if (any_angle == any_vector) {
            throw UsageError("give either --alpha/--beta or all of --a1 --a2 --b1 --b2");
        }
        try {
            if (any_angle) {
                const auto [a, b] = angles();
                return canonical_setting(a, b, parallel_tol);
            }
            if (!a1 || !a2 || !b1 || !b2) {
                throw UsageError("all of --a1 --a2 --b1 --b2 are required");
            }
            return build_setting(observable(*a1, "--a1"), observable(*a2, "--a2"), observable(*b1, "--b1"),
                                 observable(*b2, "--b2"), parallel_tol);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }

    static BlochObservable observable(const std::string &text, const std::string &what) {
        const std::vector<double> v = parse_list(text, what);
        if (v.size() == 3) {
            return {0.0, {v[0], v[1], v[2]}};
        }
        if (v.size() == 4) {
            return {v[0], {v[1], v[2], v[3]}};
        }
        throw UsageError(what + ": expected 3 or 4 comma-separated values");
    }
};

CorrVec parse_gamma(const std::string &text) {
    const std::vector<double> v = parse_list(text, "--gamma");
    if (v.size() != 4) {
        throw UsageError("--gamma: expected g11,g21,g12,g22");
    }
    const CorrVec g{v[0], v[1], v[2], v[3]};
    if (!g.is_finite()) {
        throw UsageError("--gamma: values must be finite");
    }
    return g;
}

Json number(double x) {
    // Non-finite values have no JSON representation and are written as null.
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json gamma_json(const CorrVec &g) {
    return Json::array({g.g11, g.g21, g.g12, g.g22});
}

Json verdict_json(const Verdict &v) {
    Json j;
    j["feasible"] = v.feasible;
    j["branch"] = std::string(to_string(v.branch));
    j["lhs"] = number(v.lhs);
    j["term_plus"] = number(v.term_plus);
    j["term_minus"] = number(v.term_minus);
    j["w33_interval"] = v.w33_interval ? Json::array({v.w33_interval->lo, v.w33_interval->hi}) : Json(nullptr);
    Json res = Json::object();
    for (const NamedResidual &r : v.constraint_residuals) {
        res[r.name] = number(r.value);
    }
    j["residuals"] = res;
    return j;
}

Json header(const std::string &command) {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

void merge_into(Json &dst, const Json &src) {
    for (auto it = src.begin(); it != src.end(); ++it) {
        dst[it.key()] = it.value();
    }
}

Json report_json(const SweepReport &r) {
    Json j;
    j["samples"] = r.samples;
    j["violations"] = r.violations;
    j["worst_margin"] = number(r.worst_margin);
    j["worst_index"] = r.worst_index;
    j["worst_case"] = r.worst_case;
    return j;
}

// key = value lines; '#' starts a comment. Keys are long flag names without
// the leading dashes; boolean flags take true/false.
std::vector<std::pair<std::string, std::string>> read_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--config: cannot open '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--config: line " + std::to_string(lineno) + " is not key = value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

const std::vector<std::string> kFlags = {"degrees", "boundary"};

// Splices config entries between the subcommand and the explicit flags, so
// explicit flags win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (!path) {
        return args;
    }
    std::vector<std::string> injected;
    std::optional<std::string> command;
    for (const auto &[key, value] : read_config(*path)) {
        if (key == "command") {
            command = value;
        } else if (std::find(kFlags.begin(), kFlags.end(), key) != kFlags.end()) {
            if (value == "true" || value == "1") {
                injected.push_back("--" + key);
            } else if (value != "false" && value != "0") {
                throw UsageError("--config: " + key + " expects true or false");
            }
        } else {
            injected.push_back("--" + key + "=" + value);
        }
    }
    std::vector<std::string> out;
    std::size_t rest = 0;
    if (!args.empty() && args[0].rfind("-", 0) != 0) {
        out.push_back(args[0]);
        rest = 1;
    } else if (command) {
        out.push_back(*command);
    }
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(rest), args.end());
    return out;
}

int default_threads() {
    if (const char *env = std::getenv("CHSHQ_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception &) {
            return 1;
        }
    }
    return 1;
}

void write_text(const std::string &text, const std::optional<std::string> &path, std::ostream &out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) {
        throw UsageError("--out: cannot open '" + *path + "'");
    }
    f << text;
}

W33Choice parse_w33(const std::string &text) {
    if (text == "mid" || text == "midpoint") return W33Choice::midpoint();
    if (text == "lo") return W33Choice::lo();
    if (text == "hi") return W33Choice::hi();
    return W33Choice::at(parse_double(text, "--w33"));
}

struct RegionGrid {
    std::array<int, 2> axes{};
    std::array<std::array<double, 2>, 2> ranges{};
    int resolution = 0;
    std::array<double, 4> fixed{};
};

RegionGrid parse_region(const std::string &axes, const std::string &range, const std::optional<std::string> &x_range,
                        const std::optional<std::string> &y_range, int resolution, const std::string &fixed) {
    RegionGrid grid;
    std::stringstream ss(axes);
    std::string item;
    std::vector<int> ax;
    while (std::getline(ss, item, ',')) {
        ax.push_back(slot_of(trim(item)));
    }
    if (ax.size() != 2 || ax[0] == ax[1]) {
        throw UsageError("--axes: expected two distinct components, e.g. C11,C22");
    }
    grid.axes = {ax[0], ax[1]};
    if (resolution < 2) {
        throw UsageError("--resolution must be at least 2");
    }
    grid.resolution = resolution;

    auto parse_range = [](const std::string &text) {
        const std::vector<double> r = parse_list(text, "range");
        if (r.size() != 2 || !(r[0] <= r[1]) || r[0] < -1.0 || r[1] > 1.0) {
            throw UsageError("range: expected lo,hi with -1 <= lo <= hi <= 1");
        }
        return std::array<double, 2>{r[0], r[1]};
    };
    grid.ranges[0] = parse_range(x_range.value_or(range));
    grid.ranges[1] = parse_range(y_range.value_or(range));

    std::array<bool, 4> have{};
    std::stringstream fs(fixed);
    while (std::getline(fs, item, ',')) {
        if (trim(item).empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--fixed: expected NAME=VALUE pairs");
        }
        const int slot = slot_of(trim(item.substr(0, eq)));
        const double v = parse_double(item.substr(eq + 1), "--fixed");
        if (slot == grid.axes[0] || slot == grid.axes[1] || have[slot] || std::abs(v) > 1.0) {
            throw UsageError("--fixed: each non-axis component exactly once, within [-1, 1]");
        }
        have[slot] = true;
        grid.fixed[slot] = v;
    }
    for (int s = 0; s < 4; ++s) {
        if (s != grid.axes[0] && s != grid.axes[1] && !have[s]) {
            throw UsageError(std::string("--fixed: missing ") + kSlotNames[s]);
        }
    }
    return grid;
}

std::string region_csv(const RegionGrid &grid, const Setting &setting, double slack) {
    std::string csv;
    csv += std::string(kSlotNames[grid.axes[0]]) + "," + kSlotNames[grid.axes[1]] +
           ",ours,ours_lhs,tl,tl_margin,chsh,chsh_max,tsirelson\n";
    const int n = grid.resolution;
    auto coord = [n](const std::array<double, 2> &r, int i) {
        return i == n - 1 ? r[1] : r[0] + (r[1] - r[0]) * static_cast<double>(i) / (n - 1);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::array<double, 4> g = grid.fixed;
            g[grid.axes[0]] = coord(grid.ranges[0], i);
            g[grid.axes[1]] = coord(grid.ranges[1], j);
            const CorrVec c = CorrVec::from_array(g);
            const Verdict v = decide(setting, c, slack);
            const double tl_margin = tl_arcsin_margin(c);
            const double cmax = chsh_max(c);
            csv += format_double(g[grid.axes[0]]) + "," + format_double(g[grid.axes[1]]) + "," +
                   (v.feasible ? "1" : "0") + "," + format_double(v.lhs) + "," +
                   (tl_margin >= -tol::kInequality ? "1" : "0") + "," + format_double(tl_margin) + "," +
                   (cmax <= 2.0 + tol::kInequality ? "1" : "0") + "," + format_double(cmax) + "," +
                   (cmax <= 2.0 * M_SQRT2 + tol::kInequality ? "1" : "0") + "\n";
        }
    }
    return csv;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum realizability of CHSH correlations for fixed qubit observables", "chshq"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    std::string config_path;
    app.add_option("--config", config_path, "key = value file mirroring the flags");

    // check
    CLI::App *check = app.add_subcommand("check", "Decide realizability of a correlation vector");
    SettingArgs check_set;
    std::string check_gamma;
    double check_slack = tol::kFeasibility;
    check_set.attach(check);
    check->add_option("--gamma", check_gamma, "g11,g21,g12,g22")->required();
    check->add_option("--feasibility-slack", check_slack, "Slack on the threshold 2");
    check->add_option("--config", config_path);

    // witness
    CLI::App *wit = app.add_subcommand("witness", "Construct a state reproducing the correlations");
    SettingArgs wit_set;
    std::string wit_gamma;
    std::string wit_w33 = "mid";
    wit_set.attach(wit);
    wit->add_option("--gamma", wit_gamma, "g11,g21,g12,g22")->required();
    wit->add_option("--w33", wit_w33, "mid, lo, hi or a value inside the feasible interval");
    wit->add_option("--config", config_path);

    // region
    CLI::App *region = app.add_subcommand("region", "Tabulate a two-dimensional cross section as CSV");
    SettingArgs region_set;
    std::string region_axes = "C11,C22";
    std::string region_range = "-1,1";
    std::optional<std::string> region_x_range, region_y_range, region_out;
    std::string region_fixed;
    int region_resolution = 201;
    double region_slack = tol::kFeasibility;
    region_set.attach(region);
    region->add_option("--axes", region_axes, "Two free components, e.g. C11,C22");
    region->add_option("--range", region_range, "lo,hi for both axes");
    region->add_option("--x-range", region_x_range, "lo,hi for the first axis");
    region->add_option("--y-range", region_y_range, "lo,hi for the second axis");
    region->add_option("--resolution", region_resolution, "Grid points per axis (>= 2)");
    region->add_option("--fixed", region_fixed, "Values of the other components, e.g. C21=0.5,C12=0.5");
    region->add_option("--feasibility-slack", region_slack, "Slack on the threshold 2");
    region->add_option("--out", region_out, "CSV output path (default: standard output)");
    region->add_option("--config", config_path);

    // sample
    CLI::App *sample = app.add_subcommand("sample", "Run a Monte Carlo sweep");
    std::string sweep_name = "soundness";
    std::uint64_t sweep_n = 1000;
    SweepOptions sweep_opt;
    sweep_opt.threads = default_threads();
    bool sweep_boundary = false;
    int grid_n = 201;
    int cube_n = 41;
    int angle_n = 64;
    int s_b = 1;
    sample->add_option("--sweep", sweep_name,
                       "soundness, completeness, eigenvalues, reduce, qjp, tl-equivalence, gram-equivalence, "
                       "union or continuity");
    sample->add_option("--n", sweep_n, "Number of samples");
    sample->add_option("--seed", sweep_opt.seed, "64-bit seed");
    sample->add_option("--threads", sweep_opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    sample->add_option("--rank", sweep_opt.rank, "Ginibre rank 1..4, or 0 to cycle")->check(CLI::Range(0, 4));
    sample->add_flag("--boundary", sweep_boundary, "completeness: scale every sample onto the boundary");
    sample->add_option("--grid", grid_n, "gram-equivalence: grid points per axis");
    sample->add_option("--cube-n", cube_n, "union: cube grid points per axis");
    sample->add_option("--angle-n", angle_n, "union: angle grid points per axis");
    sample->add_option("--s-b", s_b, "continuity: +1 or -1");
    sample->add_option("--config", config_path);

    // classify
    CLI::App *classify_cmd = app.add_subcommand("classify", "Check a point against the inequality families");
    std::string cls_gamma;
    int cls_gram = 0;
    SettingArgs cls_set;
    cls_set.attach(classify_cmd);
    classify_cmd->add_option("--gamma", cls_gamma, "C11,C21,C12,C22")->required();
    classify_cmd->add_option("--gram", cls_gram, "Also run the Gram search with this grid size");
    classify_cmd->add_option("--config", config_path);

    // bell
    CLI::App *bell = app.add_subcommand("bell", "Realizability against the single-vector Bell inequality");
    double bell_alpha = 0.0, bell_beta = 0.0, c11 = 0.0, c12 = 0.0, c22 = 0.0;
    bool bell_degrees = false;
    bell->add_option("--alpha", bell_alpha, "Angle between A1 and A2")->required();
    bell->add_option("--beta", bell_beta, "Angle between B1 and B2")->required();
    bell->add_option("--c11", c11, "C(a, b)")->required();
    bell->add_option("--c12", c12, "C(a, c)")->required();
    bell->add_option("--c22", c22, "C(b, c)")->required();
    bell->add_flag("--degrees", bell_degrees, "Read angles in degrees");
    bell->add_option("--config", config_path);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (check->parsed()) {
            const Setting s = check_set.build();
            const CorrVec g = parse_gamma(check_gamma);
            const Verdict v = decide(s, g, check_slack);
            Json j = header("check");
            j["alpha"] = s.alpha;
            j["beta"] = s.beta;
            j["gamma"] = gamma_json(g);
            merge_into(j, verdict_json(v));
            out << j.dump() << "\n";
            return v.feasible ? kExitOk : kExitFail;
        }

        if (wit->parsed()) {
            const Setting s = wit_set.build();
            const CorrVec g = parse_gamma(wit_gamma);
            const Verdict v = decide(s, g);
            Json j = header("witness");
            j["alpha"] = s.alpha;
            j["beta"] = s.beta;
            j["gamma"] = gamma_json(g);
            if (!v.feasible) {
                j["verdict"] = verdict_json(v);
                out << j.dump() << "\n";
                return kExitFail;
            }
            DensityOperator rho = DensityOperator::maximally_mixed();
            try {
                rho = witness(s, g, parse_w33(wit_w33));
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            Json entries = Json::array();
            for (const Complex &z : rho.matrix().data()) {
                entries.push_back(Json::array({z.real(), z.imag()}));
            }
            const WitnessReport r = verify_witness(s, g, rho);
            j["verdict"] = verdict_json(v);
            j["rho"] = entries;
            const std::array<double, 4> eig = herm_eigenvalues(rho.herm());
            j["eigenvalues"] = Json::array({eig[0], eig[1], eig[2], eig[3]});
            Json rep;
            rep["max_correlation_residual"] = r.max_correlation_residual;
            rep["trace_residual"] = r.trace_residual;
            rep["min_eigenvalue"] = r.min_eigenvalue;
            rep["marginals"] = Json::array({r.marginals[0], r.marginals[1], r.marginals[2], r.marginals[3]});
            j["report"] = rep;
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (region->parsed()) {
            const Setting s = region_set.build();
            const RegionGrid grid = parse_region(region_axes, region_range, region_x_range, region_y_range,
                                                 region_resolution, region_fixed);
            write_text(region_csv(grid, s, region_slack), region_out, out);
            return kExitOk;
        }

        if (sample->parsed()) {
            SweepReport r;
            Json extra = Json::object();
            if (sweep_name == "soundness") {
                r = soundness_sweep(sweep_n, sweep_opt);
            } else if (sweep_name == "completeness") {
                r = completeness_sweep(sweep_n, sweep_opt, sweep_boundary);
            } else if (sweep_name == "eigenvalues") {
                r = eigenvalue_sweep(sweep_n, sweep_opt);
            } else if (sweep_name == "reduce") {
                r = reduce_sweep(sweep_n, sweep_opt);
            } else if (sweep_name == "qjp") {
                r = qjp_sweep(sweep_n, sweep_opt);
            } else if (sweep_name == "tl-equivalence") {
                r = tl_equivalence_sweep(sweep_n, sweep_opt);
            } else if (sweep_name == "gram-equivalence") {
                if (grid_n < 2) {
                    throw UsageError("--grid must be at least 2");
                }
                r = gram_equivalence_sweep(sweep_n, sweep_opt, grid_n);
            } else if (sweep_name == "union") {
                if (cube_n < 2 || angle_n < 1) {
                    throw UsageError("--cube-n must be at least 2 and --angle-n at least 1");
                }
                const UnionReport u = union_sweep(UnionOptions{cube_n, angle_n, 1e-3, sweep_opt.threads});
                r = u.report;
                extra["inner"] = u.inner;
                extra["inner_missed"] = u.inner_missed;
                extra["outer"] = u.outer;
                extra["outer_accepted"] = u.outer_accepted;
            } else if (sweep_name == "continuity") {
                if (s_b != 1 && s_b != -1) {
                    throw UsageError("--s-b must be 1 or -1");
                }
                r = continuity_sweep(sweep_n, sweep_opt, s_b);
            } else {
                throw UsageError("unknown sweep '" + sweep_name + "'");
            }
            Json j = header("sample");
            j["sweep"] = sweep_name;
            j["seed"] = sweep_opt.seed;
            merge_into(j, report_json(r));
            merge_into(j, extra);
            out << j.dump() << "\n";
            return r.violations == 0 ? kExitOk : kExitFail;
        }

        if (classify_cmd->parsed()) {
            const CorrVec g = parse_gamma(cls_gamma);
            const ClassifyReport c = classify(g, cls_gram);
            Json j = header("classify");
            j["gamma"] = gamma_json(g);
            j["chsh_max"] = c.chsh_max;
            j["chsh"] = c.chsh_ok;
            j["tsirelson"] = c.tsirelson_ok;
            j["in_cube"] = c.in_cube;
            j["tl_algebraic"] = c.tl_algebraic_ok;
            j["tl_arcsin"] = c.tl_arcsin_ok;
            j["tl_thm22"] = c.tl_thm22_ok;
            j["gram"] = c.gram_ok ? Json(*c.gram_ok) : Json(nullptr);
            if (cls_set.alpha || cls_set.beta || cls_set.a1 || cls_set.a2 || cls_set.b1 || cls_set.b2) {
                j["realizability"] = verdict_json(decide(cls_set.build(), g));
            }
            out << j.dump() << "\n";
            return kExitOk;
        }

        if (bell->parsed()) {
            const double k = bell_degrees ? M_PI / 180.0 : 1.0;
            Verdict v;
            try {
                v = bell_setting_decide(bell_alpha * k, bell_beta * k, c11, c12, c22);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            const bool bell_ok = bell_original(c11, c12, c22);
            Json j = header("bell");
            j["alpha"] = bell_alpha * k;
            j["beta"] = bell_beta * k;
            j["gamma"] = gamma_json(CorrVec{c11, -1.0, c12, c22});
            j["verdict"] = verdict_json(v);
            j["bell_original"] = bell_ok;
            j["classification"] = !v.feasible ? "quantum-infeasible" : (bell_ok ? "consistent" : "quantum-violates-bell");
            out << j.dump() << "\n";
            return v.feasible ? kExitOk : kExitFail;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace chshq::cli
