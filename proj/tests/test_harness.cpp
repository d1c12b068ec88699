#include "support.hpp"

#include "irsa/errors.hpp"
#include "irsa/harness.hpp"

#include <doctest.h>

using namespace irsa;

namespace {

SweepSpec irsa_spec(const std::string& dist, std::optional<int> y, std::vector<double> loads, int trials)
{
    SweepSpec s;
    s.distribution = DistributionSpec{dist, y};
    s.loads = std::move(loads);
    s.trials = trials;
    s.tilde_es_over_n0 = 0.0009;
    s.threads = 1;
    return s;
}

SweepPoint single_slot_point(Scheme scheme)
{
    SweepSpec s = irsa_spec("modified_soliton", 2, {1.0}, 20);
    s.messages = 2;
    s.hat_rate_bits = 10;
    SweepPoint p = make_point(s, 0);
    p.channel.messages = 1;
    p.channel.slots = 1;
    p.dist = DegreeDistribution::from_atoms("one", {{1, 1.0}});
    p.l_avg = 1.0;
    p.r_avg = 1.0;
    p.scheme.variant = scheme;
    return p;
}

} // namespace

TEST_CASE("distribution specs")
{
    CHECK(DistributionSpec{"modified_soliton", 10}.label() == "modified_soliton_Y10");
    CHECK(DistributionSpec{"ideal_soliton", std::nullopt}.label() == "ideal_soliton_YM");
    CHECK(DistributionSpec{"l3", std::nullopt}.label() == "l3");
    CHECK_THROWS_AS(DistributionSpec({"modified_soliton", std::nullopt}).validate(), InvalidParameter);
    CHECK_THROWS_AS(DistributionSpec({"poisson", 3}).validate(), InvalidParameter);
    CHECK(DistributionSpec{"ideal_soliton", std::nullopt}.make(40).max_degree() == 40);
}

TEST_CASE("slot count from load")
{
    CHECK(slots_for_load(300, 0.8) == 375);
    CHECK(slots_for_load(300, 0.05) == 6000);
    CHECK(slots_for_load(300, 0.9) == 333);
    CHECK(slots_for_load(300, 1.5) == 200);
    CHECK_THROWS_AS(slots_for_load(300, 0.0), ConfigurationError);
    CHECK_NOTHROW(make_point(irsa_spec("l3", std::nullopt, {1.0}, 1), 0));
    SweepSpec small = irsa_spec("l3", std::nullopt, {1.0}, 1);
    small.messages = 10;
    CHECK_THROWS_AS(make_point(small, 0), ConfigurationError);
}

TEST_CASE("run_trial is deterministic in (seed, point, trial)")
{
    SweepSpec s = irsa_spec("l3", std::nullopt, {0.6, 0.8}, 5);
    s.seed = 42;
    const auto p = make_point(s, 1);
    for (int t = 0; t < 5; ++t)
        CHECK(run_trial(p, t) == run_trial(p, t));
    CHECK_FALSE(run_trial(p, 0) == run_trial(p, 1));
    auto q = p;
    q.seed = 43;
    CHECK_FALSE(run_trial(p, 0) == run_trial(q, 0));
}

TEST_CASE("single message in a single slot")
{
    const auto p = single_slot_point(Scheme::irsa);
    CHECK(run_trial(p, 0).throughput == 1.0);
}

TEST_CASE("run_point is independent of the thread count and equals re-run trials")
{
    SweepSpec s = irsa_spec("modified_soliton", 10, {0.85}, 37);
    s.seed = 9;
    auto p = make_point(s, 0);
    p.threads = 1;
    const auto one = run_point(p);
    p.threads = 4;
    const auto four = run_point(p);
    CHECK(one.throughput.mean() == four.throughput.mean());
    CHECK(one.throughput.standard_error() == four.throughput.standard_error());
    CHECK(one.eta.mean() == four.eta.mean());

    RunningStats t;
    for (int i = 0; i < 37; ++i)
        t.add(run_trial(p, i).throughput);
    CHECK(t.count() == one.throughput.count());
    CHECK(t.mean() == one.throughput.mean());
    CHECK(t.standard_error() == one.throughput.standard_error());
}

TEST_CASE("run_sweep keeps going past a bad point")
{
    SweepSpec s = irsa_spec("l3", std::nullopt, {0.1, 0.5, 1.0}, 3);
    s.messages = 10; // G = 1 gives M = 10 < 16
    const auto recs = run_sweep(s);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].error.empty());
    CHECK(recs[1].error.empty());
    CHECK_FALSE(recs[2].error.empty());
    CHECK(recs[0].stats.throughput.count() == 3);
}

TEST_CASE("thirty load points give thirty records, trials = 1 gives undefined errors")
{
    std::vector<double> grid;
    for (int i = 1; i <= 30; ++i)
        grid.push_back(0.05 * i);
    const auto recs = run_sweep(irsa_spec("modified_soliton", 10, grid, 1));
    REQUIRE(recs.size() == 30);
    for (const auto& r : recs) {
        CHECK(r.error.empty());
        CHECK(std::isnan(r.stats.throughput.standard_error()));
    }
}

TEST_CASE("IRSA sweep points")
{
    const auto l3 = run_sweep(irsa_spec("l3", std::nullopt, {0.4}, 1000));
    CHECK(std::abs(l3[0].stats.throughput.mean() - 0.3993) < 0.01);
    const auto l2 = run_sweep(irsa_spec("modified_soliton", 10, {0.9}, 1000));
    CHECK(std::abs(l2[0].stats.throughput.mean() - 0.5221) < 0.03);
}

TEST_CASE("tune_mu without interference settles at mu = 1")
{
    const auto p = single_slot_point(Scheme::pa);
    const auto r = tune_mu(p, MuTuneOptions{});
    CHECK(r.feasible);
    CHECK(r.mu == 1.0);
    CHECK(r.stats.decoded_fraction.mean() == 1.0);
}

TEST_CASE("decoded fraction is non-decreasing in mu on shared frames")
{
    SweepSpec s = irsa_spec("modified_soliton", 10, {0.8}, 40);
    s.messages = 120;
    s.hat_rate_bits = 10;
    s.scheme = SchemeConfig{Scheme::pa, std::nullopt, std::nullopt, 1.0};
    auto p = make_point(s, 0);
    double last = -1.0;
    for (double mu = 1.0; mu <= 2.0; mu += 0.05) {
        p.scheme.mu = mu;
        const double f = run_point(p).decoded_fraction.mean();
        CHECK(f >= last);
        last = f;
    }
    const auto tuned = tune_mu(p, MuTuneOptions{0.9, 3.0, 0.01});
    REQUIRE(tuned.feasible);
    CHECK(tuned.stats.decoded_fraction.mean() >= 0.9);
    if (tuned.mu > 1.0) {
        p.scheme.mu = tuned.mu - 0.01;
        CHECK(run_point(p).decoded_fraction.mean() < 0.9);
    }
}

TEST_CASE("tune_mu flags an unreachable target")
{
    // mu_max = 1 leaves a single candidate, which misses 99% at G = 0.8
    SweepSpec s = irsa_spec("modified_soliton", 10, {0.8}, 10);
    s.hat_rate_bits = 10;
    s.scheme = SchemeConfig{Scheme::pa, std::nullopt, std::nullopt, 1.0};
    const auto recs = tune_mu_sweep(s, MuTuneOptions{0.99, 1.0, 0.01});
    REQUIRE(recs.size() == 1);
    CHECK_FALSE(recs[0].error.empty());
}

TEST_CASE("tune_rs: alpha = 0 keeps small loads feasible")
{
    SweepSpec s = irsa_spec("modified_soliton", 10, {0.3}, 30);
    RsTuneOptions o;
    o.alpha_grid = {0.0};
    o.beta_grid = {1.0};
    const auto recs = tune_rs(s, o);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].error.empty());
    CHECK(recs[0].alpha == 0.0);
    CHECK(std::abs(recs[0].stats.throughput.mean() - 0.3) < 0.01);
}

TEST_CASE("tune_rs flags loads it cannot serve")
{
    SweepSpec s = irsa_spec("modified_soliton", 10, {1.4}, 10);
    s.tilde_es_over_n0.reset();
    s.es_over_n0 = 10.0;
    RsTuneOptions o;
    o.alpha_grid = {0.0, 0.1};
    o.beta_grid = {1.0};
    o.throughput_fraction = 1.0;
    const auto recs = tune_rs(s, o);
    CHECK_FALSE(recs[0].error.empty());
    CHECK_FALSE(recs[0].alpha.has_value());
}

TEST_CASE("default tuning grids")
{
    const auto o = RsTuneOptions::defaults();
    REQUIRE(o.alpha_grid.size() == 13);
    CHECK(o.alpha_grid[0] == 0.0);
    CHECK(o.alpha_grid[1] == doctest::Approx(0.05));
    CHECK(o.alpha_grid[12] == doctest::Approx(2.0));
    REQUIRE(o.beta_grid.size() == 5);
    CHECK(o.beta_grid[0] == doctest::Approx(0.5));
    CHECK(o.beta_grid[2] == doctest::Approx(1.0));
    CHECK(o.beta_grid[4] == doctest::Approx(2.0));
}
