#include <doctest.h>

#include "tubeharm/bounds.hpp"

#include <cmath>

using namespace tubeharm::bounds;

TEST_CASE("thurston lower bound") {
    const auto b = thurston_lower_bound({58e-6, 1});
    CHECK(b.bound == doctest::Approx(82.5377275758183706).epsilon(1e-12));
    CHECK_FALSE(b.vacuous);
    CHECK(b.simplified == doctest::Approx(82.502264968237162).epsilon(1e-12));
    CHECK(b.simplified_valid);
    // Exact constants vs the rounded 0.676/sqrt(lambda) variant.
    const auto r = thurston_lower_bound({58e-6, 1}, false);
    CHECK(r.bound == doctest::Approx(0.676 / std::sqrt(58e-6) - 2.0 * M_PI).epsilon(1e-12));
    CHECK(std::abs(r.bound - b.bound) / b.bound < 1e-3);
    // Scales linearly in |kappa|, sign-insensitive.
    const auto k3 = thurston_lower_bound({58e-6, -3});
    CHECK(k3.bound == doctest::Approx(3.0 * b.bound).epsilon(1e-13));
    // Vacuous for long cores; flagged, not clamped.
    const auto v = thurston_lower_bound({1.0, 1});
    CHECK(v.vacuous);
    CHECK(v.bound < 0.0);
    CHECK_FALSE(v.simplified_valid);
    // Validity cutoff for the simplified constant.
    CHECK(thurston_lower_bound({58e-6, 1}).simplified_valid);
    CHECK_FALSE(thurston_lower_bound({59e-6, 1}).simplified_valid);
}

TEST_CASE("sandwich and auxiliary constants") {
    const auto [lo, hi] = bd_sandwich(4.0, 0.3, 2.0);
    CHECK(lo == doctest::Approx(M_PI / 2.0 * 2.0).epsilon(1e-13));
    CHECK(hi == doctest::Approx(10.0 * M_PI / std::sqrt(0.3) * 2.0).epsilon(1e-13));
    CHECK(lo < hi);
    CHECK(linf_l2_constant(0.25) == doctest::Approx(10.0).epsilon(1e-13));
    // Fiber translation is an involution.
    for (double K : {0.5, 1.0, 3.7})
        CHECK(fiber_translation(fiber_translation(K)) == doctest::Approx(K).epsilon(1e-15));
}

TEST_CASE("main ratio bound") {
    CHECK(main_ratio_bound(1.0, 10.0) == doctest::Approx(28.3431203489584763).epsilon(1e-12));
    const double lc200 = std::log(std::cosh(200.0));
    CHECK(main_ratio_bound(0.1, 200.0) / std::sqrt(lc200)
          == doctest::Approx(8.02237680783930097).epsilon(1e-12));
    CHECK(main_ratio_bound(1.0, 200.0) / std::sqrt(lc200)
          == doctest::Approx(8.2349004437821402).epsilon(1e-12));
    // Monotone increasing in both arguments; always above 8 sqrt(log cosh R).
    CHECK(main_ratio_bound(0.5, 10.0) < main_ratio_bound(1.0, 10.0));
    CHECK(main_ratio_bound(1.0, 10.0) < main_ratio_bound(1.0, 20.0));
    for (double R : {5.0, 50.0, 500.0})
        CHECK(main_ratio_bound(0.2, R) > 8.0 * std::sqrt(std::log(std::cosh(R))));
}

TEST_CASE("entropy relations") {
    // A consistent set: K = 2, ent = 1, thurston = 2, vol = 15, genus 2
    // (vol must stay below 3*pi*|chi|*ent = 18.85).
    const auto ok = entropy_relations({2.0, 1.0, 15.0, 2.0, 2});
    CHECK(ok.consistent);
    REQUIRE(ok.rows.size() == 4);
    for (const auto& r : ok.rows) {
        CHECK(r.satisfied);
        CHECK(r.slack == doctest::Approx(r.rhs - r.lhs).epsilon(1e-13));
        CHECK_FALSE(r.anchor.empty());
    }
    // The generator of the fibration pulls entropy 1/(2K): too small, must trip
    // the 1 < 3 K ent relation; translation by 1/K with entropy 1/K passes it.
    const auto gen = entropy_relations({2.0, 1.0 / (2.0 * 2.0) / 3.0, 20.0, 2.0, 2});
    CHECK_FALSE(gen.consistent);
    CHECK_FALSE(gen.rows[0].satisfied);
    const auto tr = entropy_relations({2.0, 1.0 / 2.0, 20.0, 2.0, 2});
    CHECK(tr.rows[0].satisfied);
    CHECK(tr.rows[1].satisfied);
}

TEST_CASE("covering scaling invariant") {
    const double lip = 3.1, ent = 0.8;
    const double base = covering_scaling(lip, 1, ent).product;
    for (int n = 1; n <= 20; ++n) {
        const auto c = covering_scaling(lip, n, ent);
        CHECK(c.lip_n == doctest::Approx(lip).epsilon(1e-15));
        CHECK(c.lip_over_n == doctest::Approx(lip / n).epsilon(1e-15));
        // (lip/n) * (n * ent) is n-independent to machine precision.
        CHECK(c.product == doctest::Approx(base).epsilon(1e-15));
    }
}

TEST_CASE("product volume comparison") {
    const auto c = product_volume_comparison(2, 1.5, 10.0);
    CHECK(c.vol_id == doctest::Approx(2.0 * M_PI * 2.0 / 1.5).epsilon(1e-13));
    CHECK(c.holds);
    CHECK_FALSE(product_volume_comparison(10, 0.1, 10.0).holds);
}

TEST_CASE("dehn filling growth") {
    const auto d = dehn_example_growth(1000, 1.0);
    CHECK(d.lambda_n == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(d.lower_bound == doctest::Approx(0.2 * M_PI * 1000.0).epsilon(1e-13));
    CHECK(d.valid);
    // Doubling n doubles the bound exactly (no drift through the formula).
    for (int n : {200, 1000, 5000}) {
        CHECK(dehn_example_growth(2 * n, 1.0).lower_bound
              == 2.0 * dehn_example_growth(n, 1.0).lower_bound);
    }
    // Small n leaves lambda_n above the validity cutoff.
    CHECK_FALSE(dehn_example_growth(10, 1.0).valid);
}

TEST_CASE("report serialization") {
    std::vector<ReportRow> rows{{"demo", 1.0, 2.0, true, 1.0, "lhs < rhs"}};
    const auto j = report_json(rows);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["name"] == "demo");
    CHECK(j[0]["satisfied"] == true);
    CHECK(j[0]["anchor"] == "lhs < rhs");
    CHECK(j[0].contains("lhs"));
    CHECK(j[0].contains("rhs"));
    CHECK(j[0].contains("slack"));
}
