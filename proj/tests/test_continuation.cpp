#include <cmath>

#include <doctest.h>

#include "nsrad/continuation.hpp"
#include "nsrad/initial_data.hpp"

using namespace nsrad;

namespace {

LagrangianState annulus_state(double inner, double scale) {
    LagrangianState s;
    s.dim = 2;
    s.inner_radius = inner;
    s.total_mass = 0.5;
    s.density.assign(64, scale);
    s.velocity.assign(65, 0.0);
    s.radius = reconstruct_radius(s.density, s.total_mass, inner, 2);
    return s;
}

SweepPlan small_plan(SweepPlan::Kind kind) {
    SweepPlan plan;
    plan.kind = kind;
    plan.values = {0.08, 0.04};
    plan.base.dim = 2;
    plan.base.alpha = 1.0;
    plan.base.gamma = 2.0;
    plan.base.grid_cells = 96;
    plan.base.t_end = 0.2;
    plan.initial = preset("t2-paper");
    plan.compare_times = {0.1, 0.2};
    return plan;
}

}  // namespace

TEST_CASE("resample extends constantly into the annulus hole") {
    const auto a = annulus_state(0.1, 2.0);
    const auto b = annulus_state(0.0, 2.0);
    auto [pa, pb] = resample_to_common_grid(a, b);
    REQUIRE(pa.radii == pb.radii);
    // Inside a's hole the density is a's innermost value.
    for (int c = 0; c < pa.cells(); ++c) {
        const double rmid = 0.5 * (pa.radii[c] + pa.radii[c + 1]);
        if (rmid < 0.05) CHECK(pa.density[c] == doctest::Approx(2.0));
    }
}

TEST_CASE("profile distance: identical states and constant offset") {
    const auto a = annulus_state(0.0, 2.0);
    CHECK(profile_distance(a, a).l1_density == 0.0);

    const auto b = annulus_state(0.0, 2.5);
    // Equal total mass forces different outer radii; restrict to the exact
    // constant-offset check on states sharing the radius map.
    auto c = a;
    for (auto& v : c.density) v += 0.25;
    const double d = profile_distance(a, c).l1_density;
    const double R = a.radius.back();
    CHECK(d == doctest::Approx(0.25 * M_PI * R * R).epsilon(1e-10));
    CHECK(profile_distance(a, b).l1_density > 0.0);
}

TEST_CASE("profile distance is a pseudometric on sampled triples") {
    const auto a = annulus_state(0.0, 2.0);
    auto b = a;
    for (std::size_t c = 0; c < b.density.size(); ++c) b.density[c] += 0.1 * std::sin(0.2 * c);
    auto c3 = a;
    for (std::size_t c = 0; c < c3.density.size(); ++c) c3.density[c] += 0.05 * (c % 3 == 0);

    const double dab = profile_distance(a, b).l1_density;
    const double dba = profile_distance(b, a).l1_density;
    CHECK(dab == doctest::Approx(dba).epsilon(1e-14));
    const double dac = profile_distance(a, c3).l1_density;
    const double dcb = profile_distance(c3, b).l1_density;
    CHECK(dab <= dac + dcb + 1e-14);
}

TEST_CASE("iota sweep produces distances and respects execution-order independence") {
    const auto plan = small_plan(SweepPlan::Kind::iota);
    const auto serial = run_sweep(plan, 1);
    const auto parallel = run_sweep(plan, 2);
    REQUIRE(serial.l1_density.size() == 1);
    REQUIRE(serial.l1_density[0].size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(serial.l1_density[0][k] > 0.0);
        // Bitwise-independent member runs: identical report regardless of order.
        CHECK(serial.l1_density[0][k] == parallel.l1_density[0][k]);
    }
    for (const auto& m : serial.members) CHECK(m.termination == Termination::completed);
}

TEST_CASE("degenerate single-value plan yields an empty distance list") {
    auto plan = small_plan(SweepPlan::Kind::iota);
    plan.values = {0.05};
    const auto report = run_sweep(plan, 1);
    CHECK(report.l1_density.empty());
    CHECK(report.contraction.empty());
}

TEST_CASE("member parameters: eta sweeps excise the annulus and pick delta") {
    auto plan = small_plan(SweepPlan::Kind::eta);
    plan.initial = preset("gaussian-bump");
    const ModelParams p = member_params(plan, 0.04);
    CHECK(p.eta == 0.04);
    CHECK(p.inner_radius == 0.04);
    CHECK(p.delta > 0.0);
    CHECK(p.delta < 1.0);

    auto iota = small_plan(SweepPlan::Kind::iota);
    const ModelParams q = member_params(iota, 0.04);
    CHECK(q.eta == 0.0);
    CHECK(q.inner_radius == 0.04);
}

TEST_CASE("sweep rejects malformed value lists") {
    auto plan = small_plan(SweepPlan::Kind::iota);
    plan.values = {0.04, 0.08};
    CHECK_THROWS(run_sweep(plan, 1));
    plan.values = {};
    CHECK_THROWS(run_sweep(plan, 1));
}
