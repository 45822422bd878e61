// Copyright 2026 The cohop Authors
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

#ifndef COHOP_SUITES_HPP
#define COHOP_SUITES_HPP

// Named verification suites. Each suite is a list of independent tasks; a
// task evaluates one parameter point and returns its reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cohop/coherent.hpp"
#include "cohop/error.hpp"
#include "cohop/fock.hpp"
#include "cohop/quadrature.hpp"
#include "cohop/report.hpp"
#include "cohop/schwinger.hpp"
#include "cohop/special.hpp"
#include "cohop/su11.hpp"

namespace cohop {

/// Parameter overrides. An unset field keeps the suite's default grid; a set
/// one replaces that axis of the grid by the single given value.
struct SuiteOptions {
    std::optional<double> two_k;
    std::optional<double> z_re;
    std::optional<double> z_im;
    std::optional<double> chi;
    std::optional<int> cutoff;
    std::optional<int> safe_sector;
    std::optional<double> tol;
    std::optional<double> radius;
    std::optional<int> radial_nodes;
    std::optional<int> angular_nodes;
    std::optional<double> s_max;
    int jobs = 1;
};

inline const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {
        "u-elements",    "u-composition", "u-trace",     "glauber",    "laguerre",
        "su11-elements", "su11-trace",    "disentangle", "decomposition", "resolution",
        "conjecture",    "paris",         "glauber-failure", "all"};
    return names;
}

inline bool is_suite(const std::string &name) {
    const auto &names = suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

using Task = std::function<std::vector<CheckReport>()>;

namespace suites {

inline nlohmann::json z_params(Complex z) {
    return {{"z_re", round15(z.real())}, {"z_im", round15(z.imag())}};
}

inline CheckReport make_report(
    std::string check, nlohmann::json params, std::vector<double> computed, std::vector<double> reference,
    double tolerance, ToleranceMode mode, int cutoff, int safe_sector) {
    CheckReport r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.computed = std::move(computed);
    r.reference = std::move(reference);
    r.tolerance = tolerance;
    r.mode = mode;
    r.cutoff = cutoff;
    r.safe_sector = safe_sector;
    grade(r);
    return r;
}

inline std::vector<double> parts(Complex c) {
    return {c.real(), c.imag()};
}

/// Residuals that shrink under cutoff doubling until they reach round-off.
inline bool decreasing_to_floor(const std::vector<double> &xs, double floor) {
    for (size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] < xs[i - 1] || xs[i] <= floor)) {
            return false;
        }
    }
    return true;
}

inline std::vector<Complex> z_axis(const SuiteOptions &o, std::vector<Complex> defaults) {
    if (o.z_re || o.z_im) {
        return {Complex(o.z_re.value_or(0), o.z_im.value_or(0))};
    }
    return defaults;
}

inline std::vector<double> spin_axis(const SuiteOptions &o, std::vector<double> defaults) {
    if (o.two_k) {
        return {*o.two_k};
    }
    return defaults;
}

inline PlaneGrid plane_grid(const SuiteOptions &o) {
    PlaneGrid g;
    g.radius = o.radius.value_or(g.radius);
    g.radial_nodes = o.radial_nodes.value_or(g.radial_nodes);
    g.angular_nodes = o.angular_nodes.value_or(g.angular_nodes);
    return g;
}

inline DiskGrid disk_grid(const SuiteOptions &o) {
    DiskGrid g;
    g.s_max = o.s_max.value_or(g.s_max);
    g.radial_nodes = o.radial_nodes.value_or(g.radial_nodes);
    g.angular_nodes = o.angular_nodes.value_or(g.angular_nodes);
    return g;
}

inline int cutoff_of(const SuiteOptions &o, int fallback = kDefaultCutoff) {
    return o.cutoff.value_or(fallback);
}

inline int sector_of(const SuiteOptions &o, int cutoff, int fallback) {
    return o.safe_sector.value_or(std::min(fallback, cutoff));
}

/// Reproducible points in the disk |z| <= radius.
inline std::vector<Complex> random_disk_points(int count, double radius, uint32_t seed) {
    std::mt19937 gen(seed);
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) {
        double u = gen() / 4294967296.0;
        double v = gen() / 4294967296.0;
        out.push_back(std::polar(radius * std::sqrt(u), 2 * std::numbers::pi * v));
    }
    return out;
}

inline double max_abs(const ComplexMatrix &m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline void u_elements(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    double tol = o.tol.value_or(1e-9);
    for (Complex z : z_axis(o, {{0.3, 0.4}, {1.2, 0}, {0, 2}})) {
        tasks.push_back([=] {
            TruncatedSpace space = single_mode_space(n_cut);
            ComplexMatrix u = displacement(space, z).matrix.matrix;
            int top = std::min(30, n_cut / 2 - 1);
            std::vector<CheckReport> out;
            for (int n = 0; n <= top; ++n) {
                for (int m = 0; m <= top; ++m) {
                    nlohmann::json p = z_params(z);
                    p["n"] = n;
                    p["m"] = m;
                    out.push_back(make_report(
                        "u-elements", p, parts(u_element_closed(n, m, z)), parts(u(n, m)), tol,
                        ToleranceMode::absolute, n_cut, top + 1));
                }
            }
            return out;
        });
    }
    for (Complex z : z_axis(o, {{0.5, 0}, {0, 1.2}, {1.2, 1.6}})) {
        tasks.push_back([=] {
            TruncatedSpace space = single_mode_space(n_cut);
            int sector = sector_of(o, n_cut, n_cut / 4);
            CoherentState series = coherent_state(space, z, CoherentMethod::series);
            CoherentState displaced = coherent_state(space, z, CoherentMethod::displaced_vacuum);
            Ladder ladder = build_ladder(space);
            ComplexVector eig = (ladder.a * series.amplitudes - z * series.amplitudes).head(sector);
            nlohmann::json p = z_params(z);
            std::vector<CheckReport> out;
            out.push_back(make_report(
                "coherent-state/equivalence", p, {(series.amplitudes - displaced.amplitudes).cwiseAbs().maxCoeff()},
                {0}, 1e-10, ToleranceMode::absolute, n_cut, n_cut));
            out.push_back(make_report(
                "coherent-state/eigenvalue", p, {eig.norm()}, {0}, 1e-8, ToleranceMode::absolute, n_cut, sector));
            out.push_back(make_report(
                "coherent-state/norm", p, {series.amplitudes.squaredNorm()}, {1},
                std::max(1e-12, series.tail_bound), ToleranceMode::absolute, n_cut, n_cut));
            return out;
        });
    }
}

inline void u_composition(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    int sector = sector_of(o, n_cut, n_cut / 4);
    double tol = o.tol.value_or(1e-9);
    std::vector<Complex> zs = random_disk_points(5, 1.5, 20261017u);
    std::vector<Complex> ws = random_disk_points(5, 1.5, 17u);
    if (o.z_re || o.z_im) {
        zs.assign(5, Complex(o.z_re.value_or(0), o.z_im.value_or(0)));
    }
    for (int i = 0; i < 5; ++i) {
        Complex z = zs[i];
        Complex w = ws[i];
        tasks.push_back([=] {
            TruncatedSpace space = single_mode_space(n_cut);
            SafeSector s(sector);
            ComplexMatrix uz = displacement(space, z).matrix.matrix;
            ComplexMatrix uw = displacement(space, w).matrix.matrix;
            ComplexMatrix uzw = displacement(space, z + w).matrix.matrix;
            ComplexMatrix umz = displacement(space, -z).matrix.matrix;
            ComplexMatrix zw = uz * uw;
            ComplexMatrix wz = uw * uz;
            nlohmann::json p = z_params(z);
            p["w_re"] = round15(w.real());
            p["w_im"] = round15(w.imag());
            std::vector<CheckReport> out;
            out.push_back(make_report(
                "u-composition/addition", p,
                {op_norm(project_safe(uzw, s) - composition_phase(z, w) * project_safe(zw, s))}, {0}, tol,
                ToleranceMode::absolute, n_cut, sector));
            out.push_back(make_report(
                "u-composition/commutation", p,
                {op_norm(project_safe(zw, s) - commutation_phase(z, w) * project_safe(wz, s))}, {0}, tol,
                ToleranceMode::absolute, n_cut, sector));
            ComplexMatrix inv = uz * umz;
            out.push_back(make_report(
                "u-composition/inverse", p,
                {op_norm(project_safe(inv, s) - ComplexMatrix::Identity(sector, sector))}, {0}, 1e-10,
                ToleranceMode::absolute, n_cut, sector));
            return out;
        });
    }
}

inline void u_trace(const SuiteOptions &o, std::vector<Task> &tasks) {
    double tol = o.tol.value_or(1e-8);
    std::vector<Complex> zs = z_axis(o, {{0, 0}, std::polar(0.5, 0.7), std::polar(1.0, 0.7), std::polar(2.0, 0.7)});
    for (Complex z : zs) {
        tasks.push_back([=] {
            std::vector<CheckReport> out;
            for (double t : {0.0, 0.5, 0.9, 0.95}) {
                RegularizedTrace tr = regularized_trace_u(z, t);
                nlohmann::json p = z_params(z);
                p["t"] = t;
                p["terms"] = tr.terms;
                out.push_back(make_report(
                    "u-trace/regularized", p, {tr.numeric.real()}, {tr.closed.real()}, tol, ToleranceMode::relative,
                    0, 0));
            }
            return out;
        });
    }
    PlaneGrid grid = plane_grid(o);
    tasks.push_back([=] {
        std::vector<CheckReport> out;
        for (double t : {0.5, 0.9, 0.99, 0.999}) {
            double integral = regularized_trace_plane_integral(t, grid);
            out.push_back(make_report(
                "u-trace/plane-integral", {{"t", t}}, {integral}, {2 / (1 + t)}, 1e-6, ToleranceMode::absolute, 0,
                0));
        }
        std::vector<double> gaps;
        for (double t : {0.9, 0.99, 0.999}) {
            gaps.push_back(std::abs(regularized_trace_plane_integral(t, grid) - 1));
        }
        // |integral - 1| must shrink along t -> 1 and end within 1e-3 of the delta-function value.
        CheckReport limit = make_report(
            "u-trace/delta-limit", {{"t", {0.9, 0.99, 0.999}}}, gaps, {0, 0, 0}, 0.06, ToleranceMode::absolute, 0, 0);
        limit.pass = limit.pass && decreasing_to_floor(gaps, 0) && gaps.back() <= 1e-3;
        out.push_back(limit);
        return out;
    });
}

inline void glauber(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    int sector = sector_of(o, n_cut, n_cut / 4);
    double tol = o.tol.value_or(1e-3);
    PlaneGrid grid = plane_grid(o);
    struct Op {
        std::string name;
        int row;
        int col;
    };
    for (Op op : {Op{"|0><0|", 0, 0}, Op{"|1><2|", 1, 2}}) {
        tasks.push_back([=] {
            TruncatedSpace space = single_mode_space(n_cut);
            ComplexMatrix a = ComplexMatrix::Zero(n_cut, n_cut);
            a(op.row, op.col) = 1;
            ComplexMatrix rec = glauber_reconstruct(a, space, grid, SafeSector(sector));
            std::vector<CheckReport> out;
            for (int n = 0; n <= 5; ++n) {
                for (int m = 0; m <= 5; ++m) {
                    nlohmann::json p = {{"operator", op.name}, {"n", n}, {"m", m}, {"radius", grid.radius}};
                    out.push_back(make_report(
                        "glauber", p, parts(rec(n, m)), parts(a(n, m)), tol, ToleranceMode::absolute, n_cut, sector));
                }
            }
            return out;
        });
    }
}

inline void laguerre(const SuiteOptions &o, std::vector<Task> &tasks) {
    double tol = o.tol.value_or(1e-10);
    tasks.push_back([=] {
        std::vector<CheckReport> out;
        for (double alpha : {0.0, 1.0, 2.5}) {
            for (double x : {0.1, 1.0, 5.0, 20.0, 50.0}) {
                for (int n : {0, 1, 2, 3, 5, 8, 13, 21, 34, 45, 60, 80, 120}) {
                    double value = assoc_laguerre(n, alpha, x);
                    // Degrees up to 60 use the explicit sum, so the recurrence is the
                    // independent reference; above 60 the roles swap.
                    double reference =
                        n <= kLaguerreSumMaxDegree
                            ? static_cast<double>(laguerre_recurrence<ExtendedReal>(n, alpha, x))
                            : static_cast<double>(laguerre_sum<ExtendedReal>(n, alpha, x));
                    out.push_back(make_report(
                        "laguerre/recurrence", {{"n", n}, {"alpha", alpha}, {"x", x}}, {value}, {reference}, tol,
                        ToleranceMode::relative, 0, 0));
                }
            }
        }
        return out;
    });
    tasks.push_back([=] {
        std::vector<CheckReport> out;
        for (double alpha : {0.0, 1.0, 2.5}) {
            QuadratureRule rule = gauss_laguerre(32, alpha);
            double worst = 0;
            for (int n = 0; n <= 15; ++n) {
                for (int m = 0; m <= 15; ++m) {
                    double acc = 0;
                    for (size_t i = 0; i < rule.nodes.size(); ++i) {
                        acc += rule.weights[i] * assoc_laguerre(n, alpha, rule.nodes[i]) *
                               assoc_laguerre(m, alpha, rule.nodes[i]);
                    }
                    double hn = std::exp(std::lgamma(alpha + n + 1) - std::lgamma(n + 1.0));
                    double hm = std::exp(std::lgamma(alpha + m + 1) - std::lgamma(m + 1.0));
                    worst = std::max(worst, std::abs(acc - (n == m ? hn : 0.0)) / std::sqrt(hn * hm));
                }
            }
            out.push_back(make_report(
                "laguerre/orthogonality", {{"alpha", alpha}, {"n_max", 15}, {"nodes", 32}}, {worst}, {0}, 1e-8,
                ToleranceMode::absolute, 0, 0));
        }
        return out;
    });
    tasks.push_back([=] {
        std::vector<CheckReport> out;
        double x = 1;
        double t = 0.5;
        double alpha = 0;
        double closed = laguerre_generating_closed(x, t, alpha);
        double partial = 0;
        double power = 1;
        int next = 0;
        for (int m : {5, 10, 20, 40}) {
            for (; next <= m; ++next) {
                partial += assoc_laguerre(next, alpha, x) * power;
                power *= t;
            }
            // |L_n(x)| <= e^{x/2} for alpha = 0.
            double bound = std::exp(x / 2) * std::pow(t, m + 1) / (1 - t);
            out.push_back(make_report(
                "laguerre/generating", {{"x", x}, {"t", t}, {"alpha", alpha}, {"terms", m}}, {partial}, {closed},
                bound, ToleranceMode::absolute, 0, 0));
        }
        return out;
    });
}

inline void su11_elements(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    double tol = o.tol.value_or(1e-8);
    for (double two_k : spin_axis(o, {1, 2, 3, 2.5})) {
        for (Complex z : z_axis(o, {std::polar(0.5, 0.3), {0, 1.0}, {1.5, 0}})) {
            tasks.push_back([=] {
                TruncatedSpace space = spin_k_space(two_k, n_cut);
                ComplexMatrix v = v_operator(space, z).matrix;
                int top = std::min(20, n_cut / 4);
                std::vector<CheckReport> out;
                for (int n = 0; n <= top; ++n) {
                    for (int m = 0; m <= top; ++m) {
                        nlohmann::json p = z_params(z);
                        p["two_k"] = two_k;
                        p["n"] = n;
                        p["m"] = m;
                        out.push_back(make_report(
                            "su11-elements", p, parts(v_element_closed(two_k, n, m, z)), parts(v(n, m)), tol,
                            ToleranceMode::absolute, n_cut, top + 1));
                    }
                }
                nlohmann::json p = z_params(z);
                p["two_k"] = two_k;
                double r = std::abs(z);
                out.push_back(make_report(
                    "su11-elements/vacuum", p, parts(v_element_closed(two_k, 0, 0, z)),
                    {std::pow(std::cosh(r), -two_k), 0}, 1e-14, ToleranceMode::absolute, n_cut, 1));
                if (two_k == 2) {
                    double k2 = std::norm(map_z(z).kappa);
                    out.push_back(make_report(
                        "su11-elements/spin-one", p, parts(v_element_closed(two_k, 1, 1, z)),
                        {(1 - 2 * k2) / ((1 + k2) * (1 + k2)), 0}, 1e-14, ToleranceMode::absolute, n_cut, 2));
                }
                DiskMap map = map_z(z);
                ComplexVector direct = generalized_coherent_state(space, z);
                ComplexVector perelomov = perelomov_state(space, map.zeta).amplitudes;
                out.push_back(make_report(
                    "su11-elements/perelomov", p, {(direct - perelomov).cwiseAbs().maxCoeff()}, {0}, 1e-9,
                    ToleranceMode::absolute, n_cut, n_cut));
                return out;
            });
        }
    }
}

inline void su11_trace(const SuiteOptions &o, std::vector<Task> &tasks) {
    double tol = o.tol.value_or(1e-6);
    std::vector<Complex> zs = z_axis(o, {{0.5, 0}, {std::log(2.0), 0}, std::polar(1.5, 2.0)});
    for (double two_k : spin_axis(o, {2, 3, 4, 2.5})) {
        tasks.push_back([=] {
            std::vector<CheckReport> out;
            for (Complex z : zs) {
                nlohmann::json p = z_params(z);
                p["two_k"] = two_k;
                TraceVNumeric numeric = trace_v_numeric(two_k, z);
                double closed = trace_v_closed(two_k, z);
                out.push_back(make_report(
                    "su11-trace/numeric", p, {numeric.value}, {closed}, tol, ToleranceMode::relative, 0, 0));
                out.push_back(make_report(
                    "su11-trace/geometric", p, {closed}, {trace_v_geometric(two_k, z)}, 1e-12,
                    ToleranceMode::relative, 0, 0));
            }
            return out;
        });
    }
    if (!o.two_k && !o.z_re && !o.z_im) {
        tasks.push_back([=] {
            Complex z = std::log(2.0);
            nlohmann::json p = z_params(z);
            p["two_k"] = 2;
            return std::vector<CheckReport>{
                make_report("su11-trace/spot", p, {trace_v_closed(2, z)}, {1.0 / 3}, 1e-12, ToleranceMode::relative, 0, 0),
                make_report(
                    "su11-trace/spot-numeric", p, {trace_v_numeric(2, z).value}, {1.0 / 3}, tol,
                    ToleranceMode::relative, 0, 0)};
        });
    }
}

inline void disentangle(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    // At |z| = 1.5 the truncated V(z) with N = 256 is faithful only on roughly
    // the first 40 states, so the default sector is N / 8.
    int sector = sector_of(o, n_cut, n_cut / 8);
    double tol = o.tol.value_or(1e-8);
    std::vector<Complex> zs = z_axis(o, {std::polar(0.5, 0.4), std::polar(1.0, -1.1), {1.5, 0}});
    for (double two_k : spin_axis(o, {0.5, 1, 2, 3})) {
        for (bool squeezer : {false, true}) {
            if (squeezer && two_k != 0.5) {
                continue;
            }
            tasks.push_back([=] {
                std::vector<CheckReport> out;
                TruncatedSpace space = squeezer ? single_mode_space(n_cut) : spin_k_space(two_k, n_cut);
                for (Complex z : zs) {
                    DisentangleResult res = disentangle_residual(space, z, SafeSector(sector));
                    nlohmann::json p = z_params(z);
                    p["two_k"] = two_k;
                    p["realization"] = squeezer ? "squeezer" : "spin-k";
                    out.push_back(make_report(
                        "disentangle/normal", p, {res.normal_order}, {0}, tol, ToleranceMode::absolute, n_cut,
                        sector));
                    if (res.reversed_order) {
                        out.push_back(make_report(
                            "disentangle/reversed", p, {*res.reversed_order}, {0}, tol, ToleranceMode::absolute,
                            n_cut, std::min(sector, kReversedOrderRank)));
                    }
                }
                return out;
            });
        }
    }
}

inline void decomposition(const SuiteOptions &o, std::vector<Task> &tasks) {
    int n_cut = cutoff_of(o);
    double tol = o.tol.value_or(1e-8);
    for (double two_k : spin_axis(o, {1, 2, 3})) {
        for (Complex z : z_axis(o, {{0.5, 0}, {0.5, 0.5}, {1, 0}})) {
            tasks.push_back([=] {
                nlohmann::json p = z_params(z);
                p["two_k"] = two_k;
                p["n_max"] = 10;
                std::vector<double> study;
                std::vector<int> cutoffs;
                for (int c = n_cut / 8; c <= n_cut; c *= 2) {
                    if (c >= 24) {
                        cutoffs.push_back(c);
                    }
                }
                for (int c : cutoffs) {
                    study.push_back(decomposition_residual(two_k, z, c).residual);
                }
                DecompositionResult full = decomposition_residual(two_k, z, n_cut);
                p["series_complete"] = full.series_complete;
                std::vector<CheckReport> out;
                CheckReport main = make_report(
                    "decomposition", p, {full.residual}, {0}, tol, ToleranceMode::absolute, n_cut, 11);
                main.pass = main.pass && full.series_complete;
                out.push_back(main);
                nlohmann::json q = p;
                q["cutoffs"] = cutoffs;
                CheckReport doubling = make_report(
                    "decomposition/cutoff-doubling", q, study, std::vector<double>(study.size(), 0.0),
                    std::numeric_limits<double>::infinity(), ToleranceMode::absolute, n_cut, 11);
                doubling.tolerance = 0;
                doubling.pass = study.size() >= 2 && decreasing_to_floor(study, 1e-12);
                out.push_back(doubling);
                return out;
            });
        }
    }
}

inline void resolution(const SuiteOptions &o, std::vector<Task> &tasks) {
    double tol = o.tol.value_or(1e-3);
    int rank = 8;
    if (!o.two_k) {
        int n_cut = cutoff_of(o);
        PlaneGrid grid = plane_grid(o);
        tasks.push_back([=] {
            ComplexMatrix r = resolution_identity_coherent(single_mode_space(n_cut), grid, rank);
            return std::vector<CheckReport>{make_report(
                "resolution/coherent", {{"radius", grid.radius}, {"rank", rank}},
                {max_abs(r - ComplexMatrix::Identity(rank, rank))}, {0}, tol, ToleranceMode::absolute, n_cut, rank)};
        });
    }
    DiskGrid grid = disk_grid(o);
    int n_cut = cutoff_of(o);
    for (double two_k : spin_axis(o, {1.5, 2, 3})) {
        tasks.push_back([=] {
            ComplexMatrix r = resolution_identity_su11(spin_k_space(two_k, n_cut), grid, rank);
            return std::vector<CheckReport>{make_report(
                "resolution/su11", {{"two_k", two_k}, {"s_max", grid.s_max}, {"rank", rank}},
                {max_abs(r - ComplexMatrix::Identity(rank, rank))}, {0}, tol, ToleranceMode::absolute, n_cut, rank)};
        });
    }
}

inline CheckReport conjecture_report(const std::string &check, double two_k, double chi_abs, const DiskGrid &grid, double tol) {
    Complex chi = std::polar(chi_abs, 0.3);
    ConjectureResult res = conjecture_integral(two_k, chi, grid);
    nlohmann::json p = {
        {"two_k", two_k}, {"chi", chi_abs}, {"s_max", round15(grid.s_max)}, {"radial_nodes", grid.radial_nodes},
        {"angular_nodes", grid.angular_nodes}, {"tail_estimate", round15(res.tail_estimate)},
        {"imaginary_part", round15(res.numeric.imag())}};
    CheckReport r = make_report(check, p, {res.numeric.real()}, {res.rhs}, tol, ToleranceMode::relative, 0, 0);
    // The quadrature must be real by symmetry, and s_max must cover the radial tail.
    r.pass = r.pass && std::abs(res.numeric.imag()) <= 1e-12 && res.tail_estimate <= tol * res.rhs;
    return r;
}

inline void conjecture(const SuiteOptions &o, std::vector<Task> &tasks) {
    double tol = o.tol.value_or(1e-4);
    DiskGrid grid = disk_grid(o);
    std::vector<double> chis = o.chi ? std::vector<double>{*o.chi} : std::vector<double>{0.2, 0.5, 0.8};
    for (double two_k : spin_axis(o, {1.5, 2, 3})) {
        for (double chi : chis) {
            tasks.push_back([=] { return std::vector<CheckReport>{conjecture_report("conjecture", two_k, chi, grid, tol)}; });
        }
    }
}

/// Conjecture integral as 2K approaches the degenerate weight 2K = 1, with
/// s_max stretched to cover the slower radial decay.
inline std::vector<Task> limit_study_tasks(const SuiteOptions &o) {
    double tol = o.tol.value_or(1e-4);
    std::vector<double> chis = o.chi ? std::vector<double>{*o.chi} : std::vector<double>{0.5};
    std::vector<Task> tasks;
    for (double two_k : {1.5, 1.25, 1.125, 1.0625}) {
        for (double chi : chis) {
            DiskGrid grid = conjecture_grid_for(two_k, disk_grid(o));
            tasks.push_back([=] { return std::vector<CheckReport>{conjecture_report("conjecture/limit-study", two_k, chi, grid, tol)}; });
        }
    }
    return tasks;
}

inline void paris(const SuiteOptions &o, std::vector<Task> &tasks) {
    int per_mode = cutoff_of(o, kDefaultPerModeCutoff);
    int q_max = o.safe_sector.value_or(kDefaultTotalQuanta);
    double tol = o.tol.value_or(1e-6);
    for (Complex z : z_axis(o, {{0.5, 0}, {1, 0}, {0, 0.5}, std::polar(1.0, std::numbers::pi / 4)})) {
        tasks.push_back([=] {
            ParisResult res = paris_residual(per_mode, z, q_max);
            nlohmann::json p = z_params(z);
            p["q_max"] = q_max;
            p["squeezer_cutoff"] = res.squeezer_cutoff;
            std::vector<CheckReport> out;
            out.push_back(make_report(
                "paris", p, {res.residual}, {0}, tol, ToleranceMode::absolute, per_mode, res.sector_dim));
            out.push_back(make_report(
                "paris/vacuum", p, parts(res.vacuum_lhs), {1 / std::cosh(std::abs(z)), 0}, 1e-10,
                ToleranceMode::absolute, per_mode, 1));
            return out;
        });
    }
    for (Complex z : z_axis(o, {{0.5, 0}, {1, 0}})) {
        tasks.push_back([=] {
            std::vector<int> cutoffs = {per_mode / 2, per_mode, per_mode * 2};
            std::vector<double> study;
            for (int c : cutoffs) {
                study.push_back(paris_residual(c, z, q_max, 0).residual);
            }
            nlohmann::json p = z_params(z);
            p["q_max"] = q_max;
            p["cutoffs"] = cutoffs;
            p["squeezer_cutoff"] = "per-mode";
            CheckReport r = make_report(
                "paris/cutoff-doubling", p, study, std::vector<double>(study.size(), 0.0), 0,
                ToleranceMode::absolute, per_mode, 0);
            r.pass = decreasing_to_floor(study, 1e-12);
            return std::vector<CheckReport>{r};
        });
    }
}

inline void glauber_failure(const SuiteOptions &o, std::vector<Task> &tasks) {
    double two_k = o.two_k.value_or(2);
    double tol = o.tol.value_or(1e-3);
    int n_cut = cutoff_of(o);
    DiskGrid grid = disk_grid(o);
    tasks.push_back([=] {
        TruncatedSpace space = spin_k_space(two_k, n_cut);
        ComplexMatrix a = ComplexMatrix::Zero(n_cut, n_cut);
        a(0, 0) = 1;
        ComplexMatrix rec = glauber_su11_reconstruct(a, space, grid, SafeSector(4));
        nlohmann::json p = {{"two_k", two_k}, {"operator", "|K,0><K,0|"}, {"s_max", grid.s_max}};
        std::vector<CheckReport> out;
        out.push_back(make_report(
            "glauber-failure/vacuum", p, parts(rec(0, 0)), {1, 0}, tol, ToleranceMode::absolute, n_cut, 4));
        // Radial integral of conj(V_00) V_11 against the hyperbolic measure: -1/(2K).
        out.push_back(make_report(
            "glauber-failure/first-excited", p, parts(rec(1, 1)), {-1 / two_k, 0}, tol, ToleranceMode::absolute,
            n_cut, 4));
        out.push_back(make_report(
            "glauber-failure/deviation", p, {rec(1, 1).real()}, {a(1, 1).real()}, 50 * tol, ToleranceMode::exceeds,
            n_cut, 4));
        out.push_back(make_report(
            "glauber-failure/off-diagonal", p, {max_abs(rec - rec.diagonal().asDiagonal().toDenseMatrix())}, {0},
            tol, ToleranceMode::absolute, n_cut, 4));
        return out;
    });
}

}  // namespace suites

inline std::vector<Task> suite_tasks(const std::string &name, const SuiteOptions &o) {
    if (!is_suite(name)) {
        throw Error(ErrorKind::invalid_argument, "unknown suite '" + name + "'");
    }
    using Builder = void (*)(const SuiteOptions &, std::vector<Task> &);
    static const std::map<std::string, Builder> builders = {
        {"u-elements", suites::u_elements},       {"u-composition", suites::u_composition},
        {"u-trace", suites::u_trace},             {"glauber", suites::glauber},
        {"laguerre", suites::laguerre},           {"su11-elements", suites::su11_elements},
        {"su11-trace", suites::su11_trace},       {"disentangle", suites::disentangle},
        {"decomposition", suites::decomposition}, {"resolution", suites::resolution},
        {"conjecture", suites::conjecture},       {"paris", suites::paris},
        {"glauber-failure", suites::glauber_failure}};
    std::vector<Task> tasks;
    if (name == "all") {
        for (const auto &[key, build] : builders) {
            build(o, tasks);
        }
    } else {
        builders.at(name)(o, tasks);
    }
    return tasks;
}

/// Runs tasks on up to `jobs` threads. A task that throws yields a single
/// failing report carrying the error. Output is sorted by check id, then
/// params, so it does not depend on scheduling.
inline std::vector<CheckReport> run_tasks(const std::vector<Task> &tasks, int jobs, const std::string &label) {
    std::vector<std::vector<CheckReport>> results(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < tasks.size(); i = next++) {
            auto start = std::chrono::steady_clock::now();
            try {
                results[i] = tasks[i]();
            } catch (const Error &e) {
                CheckReport r;
                r.check = label + "/error";
                r.params = {{"task", i}};
                r.error = std::string(to_string(e.kind())) + ": " + e.what();
                results[i] = {r};
            } catch (const std::exception &e) {
                CheckReport r;
                r.check = label + "/error";
                r.params = {{"task", i}};
                r.error = std::string("internal: ") + e.what();
                results[i] = {r};
            }
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            for (auto &r : results[i]) {
                r.runtime_ms = ms.count();
            }
        }
    };
    int count = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> threads;
    for (int t = 1; t < count; ++t) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto &t : threads) {
        t.join();
    }
    std::vector<CheckReport> out;
    for (auto &group : results) {
        for (auto &r : group) {
            out.push_back(std::move(r));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const CheckReport &a, const CheckReport &b) {
        if (a.check != b.check) {
            return a.check < b.check;
        }
        return a.params.dump() < b.params.dump();
    });
    return out;
}

inline std::vector<CheckReport> run_suite(const std::string &name, const SuiteOptions &o = {}) {
    return run_tasks(suite_tasks(name, o), o.jobs, name);
}

inline std::vector<CheckReport> run_limit_study(const SuiteOptions &o = {}) {
    return run_tasks(suites::limit_study_tasks(o), o.jobs, "conjecture/limit-study");
}

inline bool all_pass(const std::vector<CheckReport> &reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport &r) { return r.pass; });
}

}  // namespace cohop

#endif
