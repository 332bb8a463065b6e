// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier runs stay under desk scale; the long-horizon bounds run
// (criterion 6) is the slowest item.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nsrad/config.hpp"
#include "nsrad/continuation.hpp"
#include "nsrad/diagnostics.hpp"
#include "nsrad/initial_data.hpp"
#include "nsrad/io.hpp"
#include "nsrad/regime.hpp"
#include "nsrad/solver.hpp"
#include "nsrad/transform.hpp"

using namespace nsrad;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ModelParams sv_model(int cells, double t_end) {
    ModelParams p;
    p.dim = 2;
    p.alpha = 1.0;
    p.gamma = 2.0;
    p.grid_cells = cells;
    p.t_end = t_end;
    return p;
}

LagrangianState build_plain(const InitialDataSpec& spec, const ModelParams& params) {
    WeakDataOptions weak;
    weak.eta = params.eta;
    weak.alpha = params.alpha;
    weak.delta = params.delta;
    weak.inner = params.inner_radius;
    return build_initial_state(spec, params.dim, params.outer_radius, params.grid_cells, weak);
}

// --- criterion 1 -----------------------------------------------------------

void criterion_regime_oracle() {
    bool ok = true;
    std::string detail;

    if (std::abs(regime::alpha_minus(2, 1.0 + 1e-8) - 0.5) >= 1e-6) {
        ok = false;
        detail += "alpha_minus(2,1+1e-8) off; ";
    }
    if (std::abs(regime::alpha_minus(3, 1.0 + 1e-8) - 2.0 / 3.0) >= 1e-6) {
        ok = false;
        detail += "alpha_minus(3,1+1e-8) off; ";
    }
    double worst = 0.0;
    for (int dim : {2, 3}) {
        const double lo = dim == 2 ? 0.52 : 0.69;
        for (int k = 0; k < 100; ++k) {
            const double a = lo + (0.999 - lo) * k / 99.0;
            worst = std::max(worst,
                             std::abs(regime::alpha_minus(dim, regime::n_critical(dim, a)) - a));
        }
    }
    if (worst >= 1e-10) {
        ok = false;
        detail += "inverse identity residual " + fmt(worst) + "; ";
    }
    const double n3 = regime::n_critical(3, 0.687);
    if (!(n3 > 1.91)) {
        ok = false;
        detail += "n3(0.687) = " + fmt(n3) + " <= 1.91; ";
    }
    if (ok)
        detail = "limits within 1e-6, max inverse residual " + fmt(worst) + ", n3(0.687) = " +
                 fmt(n3);
    report(1, "regime oracle: alpha limits, inverse identity, n3 threshold", ok, detail);
}

// --- criterion 2 -----------------------------------------------------------

void criterion_m_set() {
    std::set<std::pair<long long, long long>> table;
    for (long long s = 1; s <= 200; ++s)
        for (long long k = 0; k <= 200; ++k) {
            const long long den = 2 * k + 1;
            const long long num = den + s;
            const long long g = std::gcd(num, den);
            table.insert({num / g, den / g});
        }
    int mismatches = 0;
    int checked = 0;
    for (long long num = 1; num <= 50; ++num)
        for (long long den = 1; den <= 50; ++den) {
            if (std::gcd(num, den) != 1) continue;
            ++checked;
            const bool brute = table.count({num, den}) > 0;
            if (regime::in_m_set(Rational(num, den)) != brute) ++mismatches;
        }
    report(2, "m-set membership vs brute-force enumeration",
           mismatches == 0,
           std::to_string(checked) + " reduced rationals, " + std::to_string(mismatches) +
               " mismatches");
}

// --- criterion 3 -----------------------------------------------------------

void criterion_transform_fidelity() {
    bool ok = true;
    std::string detail;

    for (int dim : {2, 3}) {
        EulerianProfile p;
        p.dim = dim;
        p.inner_radius = 0.0;
        p.outer_radius = 1.0;
        const int n = 300;
        p.radii.resize(n + 1);
        p.density.assign(n, 1.7);
        p.velocity.assign(n, 0.0);
        for (int i = 0; i <= n; ++i) p.radii[i] = static_cast<double>(i) / n;
        const auto s = from_eulerian(p, 128);
        const auto back = to_eulerian(s);
        double err = std::abs(back.outer_radius - 1.0);
        for (double rho : back.density) err = std::max(err, std::abs(rho - 1.7) / 1.7);
        if (err >= 1e-10) {
            ok = false;
            detail += "constant roundtrip error " + fmt(err) + " (dim " + std::to_string(dim) + "); ";
        }
    }

    // Smooth preset: piecewise-constant roundtrip error halves per doubling.
    auto smooth = [](double r) { return 1.0 + 0.3 * std::cos(M_PI * r); };
    std::vector<double> errors;
    for (int g : {256, 512, 1024, 2048}) {
        EulerianProfile p;
        p.dim = 2;
        p.inner_radius = 0.0;
        p.outer_radius = 1.0;
        const int n = 16 * g;
        p.radii.resize(n + 1);
        p.density.resize(n);
        p.velocity.assign(n, 0.0);
        for (int i = 0; i <= n; ++i) p.radii[i] = static_cast<double>(i) / n;
        for (int c = 0; c < n; ++c)
            p.density[c] = smooth(0.5 * (p.radii[c] + p.radii[c + 1]));
        const auto s = from_eulerian(p, g);
        const auto back = to_eulerian(s);
        double err = 0.0;
        for (int c = 0; c < back.cells(); ++c) {
            const double rm = 0.5 * (back.radii[c] + back.radii[c + 1]);
            err = std::max(err, std::abs(back.density[c] - smooth(rm)));
        }
        errors.push_back(err);
    }
    std::string ratios;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double r = errors[i + 1] / errors[i];
        ratios += fmt(r) + " ";
        if (r < 0.4 || r > 0.6) {
            ok = false;
            detail += "refinement ratio " + fmt(r) + " outside [0.4, 0.6]; ";
        }
    }
    if (ok) detail = "constant roundtrips exact; halving ratios " + ratios;
    report(3, "transform fidelity: exact constants, first-order smooth roundtrip", ok, detail);
}

// --- criterion 4 -----------------------------------------------------------

void criterion_equilibrium_fixed_point() {
    ModelParams p = sv_model(512, 1.0);
    auto s = build_plain(preset("equilibrium"), p);
    const auto rho0 = s.density;
    const auto r0 = s.radius;
    const double dt = stable_dt(s, p);
    bool ok = true;
    for (int k = 0; k < 1000 && ok; ++k) ok = step_semi_implicit(s, p, dt).positivity_ok;
    double worst = 0.0;
    for (int c = 0; c < s.cells(); ++c)
        worst = std::max(worst, std::abs(s.density[c] - rho0[c]) / rho0[c]);
    for (int i = 0; i <= s.cells(); ++i) {
        worst = std::max(worst, std::abs(s.velocity[i]));
        worst = std::max(worst, std::abs(s.radius[i] - r0[i]) / std::max(r0[i], 1e-300));
    }
    ok = ok && worst < 1e-12;
    report(4, "equilibrium fixed point over 1000 semi-implicit steps", ok,
           "max relative field change " + fmt(worst));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_dissipation() {
    ModelParams p = sv_model(512, 5.0);
    auto s = build_plain(preset("sv"), p);
    const double e0 = energy(s, p.gamma);
    const double bd0 = bd_entropy(s, p);
    const double vol0 = [&] {
        double v = 0.0;
        for (double rho : s.density) v += s.cell_mass() / rho;
        return v;
    }();

    double max_energy_rise = 0.0;
    double max_bd_rate = -1e300;
    double max_vol_drift = 0.0;
    double prev_energy = e0;
    double bd_prev = bd0;
    double bd_prev_time = 0.0;
    const double bd_check_interval = 0.01;

    bool ok = true;
    while (s.time < p.t_end - 1e-12) {
        const double dt = std::min(stable_dt(s, p), p.t_end - s.time);
        if (!step_semi_implicit(s, p, dt).positivity_ok) {
            ok = false;
            break;
        }
        const double e = energy(s, p.gamma);
        max_energy_rise = std::max(max_energy_rise, e - prev_energy);
        prev_energy = e;
        if (s.time - bd_prev_time >= bd_check_interval || s.time >= p.t_end - 1e-12) {
            const double bd = bd_entropy(s, p);
            max_bd_rate = std::max(max_bd_rate, (bd - bd_prev) / (s.time - bd_prev_time));
            bd_prev = bd;
            bd_prev_time = s.time;
        }
        double vol = 0.0;
        for (double rho : s.density) vol += s.cell_mass() / rho;
        max_vol_drift = std::max(max_vol_drift, std::abs(vol - vol0) / vol0);
    }
    ok = ok && max_energy_rise <= 1e-10 * e0 && max_bd_rate <= 1e-8 * bd0 &&
         max_vol_drift < 1e-8;
    report(5, "dissipation on the shallow-water run (energy, BD entropy, volume)", ok,
           "max per-step energy rise " + fmt(max_energy_rise / e0) + " E0, max BD rate " +
               fmt(max_bd_rate / bd0) + " BD0/unit time, volume drift " + fmt(max_vol_drift));
}

// --- criterion 6 -----------------------------------------------------------

void criterion_uniform_bounds_and_decay() {
    ModelParams p = sv_model(512, 50.0);
    RunOptions opt;
    opt.sample_interval = 0.1;
    const auto result = run(preset("sv"), p, opt);
    bool ok = result.termination == Termination::completed;
    std::string detail;
    if (!ok) detail = std::string("run did not complete: ") + termination_name(result.termination);

    if (ok) {
        const auto [rT, vT] = density_extrema(result.samples);
        const std::size_t half = result.samples.size() / 2;
        const double r_ratio = rT.back() / rT[half];
        const double v_ratio = vT.back() / vT[half];
        if (std::abs(r_ratio - 1.0) > 0.01 || std::abs(v_ratio - 1.0) > 0.01) {
            ok = false;
            detail += "extrema plateau broken (R_T ratio " + fmt(r_ratio) + ", V_T ratio " +
                      fmt(v_ratio) + "); ";
        }

        auto sample_at = [&](double t) -> const DiagnosticSample& {
            std::size_t best = 0;
            for (std::size_t k = 0; k < result.samples.size(); ++k)
                if (std::abs(result.samples[k].time - t) <
                    std::abs(result.samples[best].time - t))
                    best = k;
            return result.samples[best];
        };
        const auto& early = sample_at(0.1);
        const auto& last = result.samples.back();
        const bool decay_ok = last.linf_rho_minus_mean < 1e-2 * early.linf_rho_minus_mean &&
                              last.l2_grad_u < 1e-2 * early.l2_grad_u &&
                              last.l2_grad_rho < 1e-2 * early.l2_grad_rho;
        if (!decay_ok) {
            ok = false;
            detail += "decay shortfall (linf " + fmt(last.linf_rho_minus_mean / early.linf_rho_minus_mean) +
                      ", grad_u " + fmt(last.l2_grad_u / early.l2_grad_u) + ", grad_rho " +
                      fmt(last.l2_grad_rho / early.l2_grad_rho) + "); ";
        }

        const double w_ref = *sample_at(1.0).w_max;
        double w_worst = 0.0;
        for (const auto& smp : result.samples)
            if (smp.time >= 1.0) w_worst = std::max(w_worst, *smp.w_max);
        if (w_worst > 2.0 * w_ref) {
            ok = false;
            detail += "w_max grew to " + fmt(w_worst) + " vs 2 x " + fmt(w_ref) + "; ";
        }

        // r-weighted density sup stays on a plateau after the transient.
        const double rw_ref = sample_at(1.0).r_weighted_sup[0];
        for (const auto& smp : result.samples)
            if (smp.time >= 1.0 && smp.r_weighted_sup[0] > 2.0 * rw_ref) {
                ok = false;
                detail += "r-weighted sup left its plateau; ";
                break;
            }
        if (ok)
            detail = "extrema plateaued, decay factors linf " +
                     fmt(last.linf_rho_minus_mean / early.linf_rho_minus_mean) + ", grad_u " +
                     fmt(last.l2_grad_u / early.l2_grad_u) + ", grad_rho " +
                     fmt(last.l2_grad_rho / early.l2_grad_rho);
    }
    report(6, "time-independent bounds and large-time decay (T = 50)", ok, detail);
}

// --- criterion 7 -----------------------------------------------------------

void criterion_vacuum_vanishing() {
    ModelParams p = sv_model(4096, 2.5);
    p.eta = 1e-3;
    p.delta = regime::select_artificial_exponent(2, 2.0);
    p.eta_phase_end = 0.05;
    p.inner_radius = 1e-3;
    RunOptions opt;
    opt.sample_interval = 0.01;
    opt.vacuum_threshold = 1e-4;
    const auto result = run(preset("vacuum-annulus"), p, opt);

    bool ok = result.termination == Termination::completed;
    std::string detail;
    if (!ok) detail = std::string("run did not complete: ") + termination_name(result.termination);
    double t0 = -1.0;
    if (ok) {
        if (result.samples.front().vacuum_radius <= 0.0) {
            ok = false;
            detail = "initial vacuum region not detected";
        }
    }
    if (ok) {
        for (const auto& smp : result.samples) {
            if (smp.vacuum_radius == 0.0) {
                t0 = smp.time;
                break;
            }
        }
        if (t0 < 0.0) {
            ok = false;
            detail = "vacuum radius never reached 0 by t = " + fmt(p.t_end);
        }
    }
    if (ok) {
        for (const auto& smp : result.samples)
            if (smp.time > t0 && smp.vacuum_radius != 0.0) {
                ok = false;
                detail = "vacuum radius reappeared at t = " + fmt(smp.time);
                break;
            }
    }
    if (ok) {
        // Regression pin for the measured vanishing time (no reference value
        // exists; the pin guards against drift).
        const double t0_pinned = 1.71;
        if (std::abs(t0 - t0_pinned) > 0.25) {
            ok = false;
            detail = "measured T0 = " + fmt(t0) + " drifted from pinned " + fmt(t0_pinned);
        } else {
            detail = "vacuum vanished at T0 = " + fmt(t0) + " and stayed filled";
        }
    }
    report(7, "finite-time vacuum vanishing on the near-vacuum preset", ok, detail);
}

// --- criterion 8 -----------------------------------------------------------

void criterion_vacuum_bound() {
    bool ok = true;
    std::string detail;

    const double hand = std::sqrt(0.5);
    const double v = vacuum_boundary_bound(M_PI / 2.0, M_PI / 2.0, 2, 2.0, 1.0);
    if (std::abs(v - hand) >= 1e-12) {
        ok = false;
        detail += "spot check " + fmt(v) + " vs sqrt(1/2); ";
    }

    ModelParams p = sv_model(512, 1.0);
    RunOptions opt;
    opt.sample_interval = 0.02;
    // Threshold chosen so the degenerate origin (rho r ~ r^{5/3}) registers a
    // genuinely positive radius; the closed-form bound must still dominate.
    opt.vacuum_threshold = 0.02;
    const InitialDataSpec spec = preset("t2-vacuum");
    const auto state0 = build_plain(spec, p);
    const double M0 = domain_mass(state0);
    const double E0 = domain_energy(state0, p.gamma);
    const double bound = vacuum_boundary_bound(M0, E0, 2, p.gamma, p.outer_radius);
    const auto result = run(spec, p, opt);
    if (result.termination != Termination::completed) {
        ok = false;
        detail += "run did not complete; ";
    }
    double worst = 0.0;
    for (const auto& smp : result.samples) worst = std::max(worst, smp.vacuum_radius);
    if (result.samples.front().vacuum_radius <= 0.0) {
        ok = false;
        detail += "degenerate origin not detected at t = 0; ";
    }
    if (worst > bound) {
        ok = false;
        detail += "measured vacuum radius " + fmt(worst) + " above bound " + fmt(bound) + "; ";
    }
    if (ok)
        detail = "bound " + fmt(bound) + " dominates measured max " + fmt(worst) +
                 ", spot check exact";
    report(8, "vacuum-region radius bound (closed form and domination)", ok, detail);
}

// --- criterion 9 -----------------------------------------------------------

void criterion_continuation() {
    bool ok = true;
    std::string detail;

    // iota sweep on the t2 data.
    SweepPlan plan;
    plan.kind = SweepPlan::Kind::iota;
    plan.values = {0.08, 0.04, 0.02, 0.01};
    plan.base = sv_model(512, 2.0);
    plan.initial = preset("t2-paper");
    plan.compare_times = {0.5, 1.0, 2.0};
    const auto rep = run_sweep(plan);
    for (const auto& m : rep.members)
        if (m.termination != Termination::completed) {
            ok = false;
            detail += "iota member " + fmt(m.value) + " tripped; ";
        }
    double worst_ratio = 0.0;
    for (const auto& row : rep.contraction)
        for (double r : row) {
            if (!std::isfinite(r)) continue;
            worst_ratio = std::max(worst_ratio, r);
        }
    if (!(worst_ratio > 0.0) || worst_ratio > 0.75) {
        ok = false;
        detail += "iota contraction ratio " + fmt(worst_ratio) + " above 0.75; ";
    }

    // eta sweep against the directly solved eta = 0 system on smooth data.
    const std::vector<double> etas = {0.08, 0.04, 0.02, 0.01};
    const std::vector<double> times = {0.25, 0.5};
    ModelParams base = sv_model(384, 0.5);
    const InitialDataSpec smooth = preset("gaussian-bump");

    // Reference: the unregularized full-ball system on mass-normalized data.
    auto normalized_state = [&](const ModelParams& mp) {
        EulerianProfile prof = sample_initial_profile(smooth, mp.dim, 0.0, mp.outer_radius, 8192);
        double mass = 0.0;
        for (int c = 0; c < prof.cells(); ++c)
            mass += prof.density[c] * shell_volume(prof.radii[c], prof.radii[c + 1], prof.dim);
        mass *= mp.dim * unit_ball_measure(mp.dim);
        for (auto& rho : prof.density) rho /= mass;
        return from_eulerian(prof, mp.grid_cells);
    };
    RunOptions ropt;
    ropt.sample_interval = base.t_end;
    ropt.snapshot_times = times;
    const auto ref = run_from_state(normalized_state(base), base, ropt);
    if (ref.termination != Termination::completed) {
        ok = false;
        detail += "eta reference run tripped; ";
    }

    std::vector<double> dists;
    for (double eta : etas) {
        ModelParams mp = base;
        mp.eta = eta;
        mp.inner_radius = eta;
        mp.delta = regime::select_artificial_exponent(2, smooth.p);
        const auto res = run(smooth, mp, ropt);
        if (res.termination != Termination::completed) {
            ok = false;
            detail += "eta member " + fmt(eta) + " tripped; ";
            continue;
        }
        double total = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            total += profile_distance(res.snapshots[k].second, ref.snapshots[k].second).l1_density;
        dists.push_back(total);
    }
    for (std::size_t j = 0; j + 1 < dists.size(); ++j)
        if (!(dists[j + 1] < dists[j])) {
            ok = false;
            detail += "eta distances not monotone (" + fmt(dists[j]) + " -> " +
                      fmt(dists[j + 1]) + "); ";
        }
    if (ok) {
        detail = "iota max contraction " + fmt(worst_ratio) + "; eta distances";
        for (double d : dists) detail += " " + fmt(d);
    }
    report(9, "continuation Cauchy behavior (iota contraction, eta convergence)", ok, detail);
}

// --- criterion 10 ----------------------------------------------------------

void criterion_scheme_convergence() {
    const double t_end = 0.5;
    ModelParams ref_params = sv_model(2048, t_end);
    RunOptions opt;
    opt.sample_interval = t_end;
    const auto ref = run(preset("sv"), ref_params, opt);

    std::vector<double> errs;
    for (int g : {128, 256, 512}) {
        ModelParams p = sv_model(g, t_end);
        const auto res = run(preset("sv"), p, opt);
        errs.push_back(profile_distance(res.final_state, ref.final_state).l1_density);
    }
    bool ok = true;
    std::string orders;
    for (std::size_t j = 0; j + 1 < errs.size(); ++j) {
        const double order = std::log2(errs[j] / errs[j + 1]);
        orders += fmt(order) + " ";
        if (order < 0.9) ok = false;
    }
    report(10, "self-convergence order under simultaneous grid/dt refinement", ok,
           "orders " + orders + "(errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " +
               fmt(errs[2]) + ")");
}

// --- criterion 11 ----------------------------------------------------------

void criterion_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "nsrad_acceptance_det";
    fs::create_directories(dir);
    const std::string cfg_path = (dir / "run.cfg").string();
    write_text(cfg_path,
               "[model]\n"
               "grid = 128\n"
               "t_end = 0.2\n"
               "[initial]\n"
               "preset = sv\n"
               "[diagnostics]\n"
               "sample_interval = 0.02\n");
    bool ok = true;
    std::string detail;
#ifdef NSRAD_CLI_PATH
    const std::string cli = NSRAD_CLI_PATH;
    const std::string out1 = (dir / "a").string();
    const std::string out2 = (dir / "b").string();
    const std::string cmd1 = cli + " run --config " + cfg_path + " --out " + out1 + " --quiet";
    const std::string cmd2 = cli + " run --config " + cfg_path + " --out " + out2 + " --quiet";
    if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
        ok = false;
        detail = "CLI invocation failed";
    } else {
        const std::string a = read_text(out1 + "/series.csv");
        const std::string b = read_text(out2 + "/series.csv");
        ok = a == b && !a.empty();
        detail = ok ? "byte-identical series (" + std::to_string(a.size()) + " bytes)"
                    : "series differ";
    }
#else
    ok = false;
    detail = "CLI path not wired";
#endif
    report(11, "determinism: repeated runs give byte-identical CSV", ok, detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_regime_oracle();
    criterion_m_set();
    criterion_transform_fidelity();
    criterion_equilibrium_fixed_point();
    criterion_dissipation();
    criterion_uniform_bounds_and_decay();
    criterion_vacuum_vanishing();
    criterion_vacuum_bound();
    criterion_continuation();
    criterion_scheme_convergence();
    criterion_determinism();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 11 criteria passed in %.1fs\n", 11 - failures, wall);
    return failures == 0 ? 0 : 1;
}
