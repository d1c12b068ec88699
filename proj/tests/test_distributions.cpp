#include "irsa/distributions.hpp"
#include "irsa/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace irsa;

TEST_CASE("ideal soliton probabilities and normalization")
{
    const auto d = ideal_soliton(10);
    CHECK(d.max_degree() == 10);
    CHECK(d.probability(1) == doctest::Approx(0.1).epsilon(1e-15));
    for (int i = 2; i <= 10; ++i)
        CHECK(d.probability(i) == doctest::Approx(1.0 / (i * (i - 1.0))).epsilon(1e-15));
    double sum = 0.0;
    for (const auto& a : d.atoms())
        sum += a.probability;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    // mean is the harmonic number H_Y
    double h = 0.0;
    for (int i = 1; i <= 10; ++i)
        h += 1.0 / i;
    CHECK(avg_degree(d) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("modified soliton moves the degree-one mass onto degrees 2..Y")
{
    const auto d = modified_soliton(10);
    CHECK(d.probability(1) == 0.0);
    for (int i = 2; i <= 10; ++i)
        CHECK(d.probability(i) == doctest::Approx(1.0 / (i * (i - 1.0)) + 1.0 / 90.0).epsilon(1e-15));
    double mean = 0.0;
    for (int i = 2; i <= 10; ++i)
        mean += i * (1.0 / (i * (i - 1.0)) + 1.0 / 90.0);
    CHECK(avg_degree(d) == doctest::Approx(mean).epsilon(1e-14));
    CHECK(std::abs(avg_degree(d) - 3.428968) < 1e-5);
}

TEST_CASE("fixed l3 table")
{
    const auto d = fixed_l3();
    CHECK(d.name() == "l3");
    CHECK(d.max_degree() == 16);
    CHECK(d.probability(2) == doctest::Approx(0.4977));
    CHECK(d.probability(16) == doctest::Approx(0.0576));
    CHECK(d.probability(10) == 0.0);
    CHECK(std::abs(avg_degree(d) - 4.2413) < 1e-3);
}

TEST_CASE("invalid parameters")
{
    CHECK_THROWS_AS(ideal_soliton(1), InvalidParameter);
    CHECK_THROWS_AS(modified_soliton(1), InvalidParameter);
    CHECK_THROWS_AS(modified_soliton(0), InvalidParameter);
    CHECK_THROWS_AS(DegreeDistribution::from_atoms("bad", {{1, 0.5}, {2, 0.4}}), InvalidParameter);
    CHECK_THROWS_AS(DegreeDistribution::from_atoms("bad", {{2, 0.5}, {2, 0.5}}), InvalidParameter);
    CHECK_THROWS_AS(DegreeDistribution::from_atoms("bad", {{0, 1.0}}), InvalidParameter);
}

TEST_CASE("Y = 2 modified soliton is always degree 2")
{
    const auto d = modified_soliton(2);
    Rng rng(7);
    for (int i = 0; i < 1000; ++i)
        CHECK(sample_degree(d, rng) == 2);
}

TEST_CASE("sampling frequencies match the probabilities")
{
    const auto d = modified_soliton(10);
    Rng rng(12345);
    const int n = 200000;
    std::map<int, int> counts;
    for (int i = 0; i < n; ++i)
        ++counts[sample_degree(d, rng)];
    for (const auto& a : d.atoms()) {
        const double p = a.probability;
        const double se = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(counts[a.degree] / double(n) - p) < 5 * se);
    }
    for (const auto& [deg, c] : counts)
        CHECK(d.probability(deg) > 0.0);

    // chi-square against the table, 8 degrees of freedom; 99.99% quantile is about 33.4
    double chi2 = 0.0;
    for (const auto& a : d.atoms()) {
        const double expected = n * a.probability;
        chi2 += (counts[a.degree] - expected) * (counts[a.degree] - expected) / expected;
    }
    CHECK(chi2 < 33.4);
}

TEST_CASE("variance of a two-point distribution")
{
    const auto d = DegreeDistribution::from_atoms("two", {{2, 0.5}, {4, 0.5}});
    CHECK(d.mean() == doctest::Approx(3.0));
    CHECK(d.variance() == doctest::Approx(1.0));
}
