#include "nsrad/continuation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "nsrad/diagnostics.hpp"
#include "nsrad/regime.hpp"

namespace nsrad {

namespace {

// Piecewise-constant-in-cell evaluation with constant extension inward across
// the annulus hole and outward past R; velocity is zero inside the hole.
double cell_value_at(const EulerianProfile& p, const std::vector<double>& values, double r,
                     double hole_value) {
    if (r < p.inner_radius) return hole_value;
    const auto it = std::upper_bound(p.radii.begin(), p.radii.end(), r);
    int c = static_cast<int>(it - p.radii.begin()) - 1;
    c = std::clamp(c, 0, p.cells() - 1);
    return values[c];
}

}  // namespace

std::pair<EulerianProfile, EulerianProfile> resample_to_common_grid(const LagrangianState& a,
                                                                    const LagrangianState& b) {
    const EulerianProfile pa = to_eulerian(a);
    const EulerianProfile pb = to_eulerian(b);
    std::vector<double> edges;
    edges.push_back(0.0);
    for (double r : pa.radii) edges.push_back(r);
    for (double r : pb.radii) edges.push_back(r);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto build = [&](const EulerianProfile& src) {
        EulerianProfile out;
        out.dim = src.dim;
        out.inner_radius = 0.0;
        out.outer_radius = edges.back();
        out.radii = edges;
        const int n = static_cast<int>(edges.size()) - 1;
        out.density.resize(n);
        out.velocity.resize(n);
        const double rho_hole = src.density.front();  // constant inward extension
        for (int c = 0; c < n; ++c) {
            const double rmid = 0.5 * (edges[c] + edges[c + 1]);
            out.density[c] = cell_value_at(src, src.density, rmid, rho_hole);
            out.velocity[c] = cell_value_at(src, src.velocity, rmid, 0.0);
        }
        return out;
    };
    return {build(pa), build(pb)};
}

ProfileDistance profile_distance(const LagrangianState& a, const LagrangianState& b) {
    auto [pa, pb] = resample_to_common_grid(a, b);
    const int dim = pa.dim;
    const double angular = dim * unit_ball_measure(dim);
    ProfileDistance d;
    double l2 = 0.0;
    double l2u = 0.0;
    for (int c = 0; c < pa.cells(); ++c) {
        const double dv = angular * shell_volume(pa.radii[c], pa.radii[c + 1], dim);
        const double drho = pa.density[c] - pb.density[c];
        d.l1_density += std::abs(drho) * dv;
        l2 += drho * drho * dv;
        const double du = std::sqrt(pa.density[c]) * pa.velocity[c] -
                          std::sqrt(pb.density[c]) * pb.velocity[c];
        l2u += du * du * dv;
    }
    d.l2_density = std::sqrt(l2);
    d.l2_sqrt_rho_u = std::sqrt(l2u);
    return d;
}

ModelParams member_params(const SweepPlan& plan, double value) {
    ModelParams p = plan.base;
    p.inner_radius = value;
    if (plan.kind == SweepPlan::Kind::eta) {
        p.eta = value;
        if (p.delta <= 0.0)
            p.delta = regime::select_artificial_exponent(p.dim, plan.initial.p);
    } else {
        p.eta = 0.0;
    }
    if (!plan.compare_times.empty())
        p.t_end = std::max(p.t_end, *std::max_element(plan.compare_times.begin(),
                                                      plan.compare_times.end()));
    return p;
}

SweepReport run_sweep(const SweepPlan& plan, int max_parallel) {
    std::vector<RunResult> results;
    return run_sweep(plan, max_parallel, results);
}

SweepReport run_sweep(const SweepPlan& plan, int max_parallel,
                      std::vector<RunResult>& member_results) {
    if (plan.values.empty()) throw std::invalid_argument("run_sweep: empty value list");
    for (std::size_t j = 0; j + 1 < plan.values.size(); ++j)
        if (!(plan.values[j] > plan.values[j + 1]) || !(plan.values[j + 1] > 0.0))
            throw std::invalid_argument("run_sweep: values must be strictly decreasing and > 0");

    const int n = static_cast<int>(plan.values.size());
    member_results.assign(n, RunResult{});

    int jobs = max_parallel;
    if (jobs <= 0) {
        if (const char* env = std::getenv("NSRAD_SWEEP_JOBS")) jobs = std::atoi(env);
        if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs <= 0) jobs = 1;
    }
    jobs = std::min(jobs, n);

    RunOptions options;
    options.sample_interval = plan.base.t_end;  // end samples only; snapshots carry the data
    options.snapshot_times = plan.compare_times;

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int j = next.fetch_add(1); j < n; j = next.fetch_add(1)) {
            const ModelParams params = member_params(plan, plan.values[j]);
            ModelParams run_params = params;
            RunOptions opts = options;
            opts.sample_interval = run_params.t_end;
            member_results[j] = nsrad::run(plan.initial, run_params, opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepReport report;
    report.kind = plan.kind;
    report.values = plan.values;
    report.compare_times = plan.compare_times;
    for (int j = 0; j < n; ++j) {
        SweepMember m;
        m.value = plan.values[j];
        m.termination = member_results[j].termination;
        m.steps = member_results[j].steps;
        m.final_time = member_results[j].final_state.time;
        m.detail = member_results[j].detail;
        report.members.push_back(std::move(m));
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t nt = plan.compare_times.size();
    auto snapshot_at = [&](int j, std::size_t k) -> const LagrangianState* {
        for (const auto& [t, s] : member_results[j].snapshots)
            if (std::abs(t - plan.compare_times[k]) <= 1e-9 * std::max(1.0, plan.compare_times[k]))
                return &s;
        return nullptr;
    };
    for (int j = 0; j + 1 < n; ++j) {
        std::vector<double> l1(nt, nan), l2(nt, nan), l2u(nt, nan);
        for (std::size_t k = 0; k < nt; ++k) {
            const LagrangianState* sa = snapshot_at(j, k);
            const LagrangianState* sb = snapshot_at(j + 1, k);
            if (!sa || !sb) continue;
            const ProfileDistance d = profile_distance(*sa, *sb);
            l1[k] = d.l1_density;
            l2[k] = d.l2_density;
            l2u[k] = d.l2_sqrt_rho_u;
        }
        report.l1_density.push_back(std::move(l1));
        report.l2_density.push_back(std::move(l2));
        report.l2_sqrt_rho_u.push_back(std::move(l2u));
    }
    for (std::size_t j = 0; j + 1 < report.l1_density.size(); ++j) {
        std::vector<double> ratios(nt, nan);
        for (std::size_t k = 0; k < nt; ++k)
            ratios[k] = report.l1_density[j + 1][k] / report.l1_density[j][k];
        report.contraction.push_back(std::move(ratios));
    }
    return report;
}

}  // namespace nsrad
