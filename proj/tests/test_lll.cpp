#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcube/errors.hpp"
#include "hcube/lll.hpp"

using namespace hcube;

TEST_CASE("cube image catalog")
{
    const auto one = enumerate_cube_images(2, 1, 1);
    CHECK(one.size() == 1);
    CHECK(one.events[0] == std::vector<std::uint64_t>{0, 1});

    const auto points = enumerate_cube_images(3, 2, 0);
    CHECK(points.size() == 9);

    // In [2]^2 the 1-cubes are the 6 pairs and the only 2-cube is the square.
    CHECK(enumerate_cube_images(2, 2, 1).size() == 6);
    CHECK(enumerate_cube_images(2, 2, 2).size() == 1);
    // In [4]^1 the 2-cubes {z, z+a, z+b, z+a+b} with distinct sums: {0,1,2,3}.
    CHECK(enumerate_cube_images(4, 1, 2).size() == 1);

    for (const auto& e : enumerate_cube_images(3, 2, 2).events) {
        CHECK(e.size() == 4);
        CHECK(std::is_sorted(e.begin(), e.end()));
    }
    CHECK_THROWS_AS(enumerate_cube_images(2, 10, 3, 1000), TooLarge);
}

TEST_CASE("sampler: small p finishes without resampling")
{
    const GridParams grid(2, 10);
    SamplerConfig cfg{Rational(1, 1024)};
    const auto out = moser_tardos_sample(grid, 3, cfg);
    CHECK(out.status == SampleStatus::CubeFree);
    CHECK(out.rounds == 0);
    CHECK(find_cube(out.set, 3, kDefaultNotion).status == SearchStatus::None);
}

TEST_CASE("sampler resamples until cube-free and is deterministic")
{
    const GridParams grid(3, 3);
    SamplerConfig cfg{Rational(1, 2), 77};
    const auto a = moser_tardos_sample(grid, 2, cfg);
    const auto b = moser_tardos_sample(grid, 2, cfg);
    REQUIRE(a.status == SampleStatus::CubeFree);
    CHECK(a.rounds > 0);
    CHECK(a.set == b.set);
    CHECK(a.rounds == b.rounds);
    CHECK(verify_construction(a.set, 2, kDefaultNotion).status == VerifyStatus::Verified);

    cfg.seed = 78;
    const auto c = moser_tardos_sample(grid, 2, cfg);
    CHECK_FALSE(c.set == a.set);

    cfg.search.threads = 1;
    cfg.seed = 77;
    CHECK(moser_tardos_sample(grid, 2, cfg).set == a.set);
}

TEST_CASE("sampler reports exhausted rounds with the last violation")
{
    // p close to 1 in [2]^2 with r = 1: a 1-cube survives almost surely.
    SamplerConfig cfg{Rational(99, 100), 5, 3};
    const auto out = moser_tardos_sample(GridParams(2, 2), 1, cfg);
    CHECK(out.status == SampleStatus::RoundsExhausted);
    CHECK(out.rounds == 3);
    REQUIRE(out.last_violation);
    CHECK(is_cube_in(out.set, *out.last_violation, kDefaultNotion));
}

TEST_CASE("sampler input validation")
{
    const GridParams grid(2, 3);
    CHECK_THROWS_AS(moser_tardos_sample(grid, 0, SamplerConfig{Rational(1, 2)}), InputError);
    CHECK_THROWS_AS(moser_tardos_sample(grid, 1, SamplerConfig{Rational(0)}), InputError);
    CHECK_THROWS_AS(moser_tardos_sample(grid, 1, SamplerConfig{Rational(1)}), InputError);
    SamplerConfig zero{Rational(1, 2)};
    zero.max_rounds = 0;
    CHECK_THROWS_AS(moser_tardos_sample(grid, 1, zero), InputError);
    CHECK_THROWS_AS(moser_tardos_sample(GridParams(2, 30), 1, SamplerConfig{Rational(1, 2)}), TooLarge);
}

TEST_CASE("verifier examples")
{
    const GridParams grid(2, 3);
    for (int r = 1; r <= 3; ++r) {
        const auto empty = verify_construction(PointSet(grid), r, kDefaultNotion);
        CHECK(empty.status == VerifyStatus::Verified);
        CHECK(empty.cardinality == 0);
        const auto full = verify_construction(PointSet::full(grid), r, kDefaultNotion);
        CHECK(full.status == VerifyStatus::Violated);
        REQUIRE(full.witness);
        CHECK(full.witness->dimension() == static_cast<std::size_t>(r));
        CHECK(full.density == 1);
    }
    SearchOptions tiny;
    tiny.node_budget = 1;
    CHECK(verify_construction(PointSet::full(GridParams(2, 6)), 6, kDefaultNotion, tiny).status ==
          VerifyStatus::Inconclusive);
}

TEST_CASE("dense construction outcomes")
{
    SUBCASE("no valid r")
    {
        const auto out = construct_dense_small_m(16, 2, Rational(1, 2), kDefaultSeed);
        CHECK(out.status == ConstructionStatus::NoValidR);
        CHECK_FALSE(out.r);
        CHECK(out.target_density == Rational(3, 4));
        CHECK_FALSE(out.set);
    }
    SUBCASE("zero density schedule")
    {
        const auto out = construct_dense_small_m(3, 2, 3, kDefaultSeed);
        REQUIRE(out.r);
        CHECK(out.status == ConstructionStatus::NoValidDensity);
    }
    SUBCASE("small success")
    {
        const auto out = construct_dense_small_m(8, 2, 1, kDefaultSeed);
        CHECK(out.r == 5);
        CHECK(out.target_density == Rational(1, 2));
        REQUIRE(out.status == ConstructionStatus::Success);
        REQUIRE(out.certificate);
        CHECK(out.certificate->verified);
        CHECK(verify_construction(*out.set, 5, kDefaultNotion).status == VerifyStatus::Verified);
        CHECK(m_value(*out.set, kDefaultNotion).m < 5);
        CHECK(to_long_double(out.certificate->density) >= 0.5L - out.tolerance);
        CHECK(out.eq_ep.has_value());
    }
    SUBCASE("n = 16 outside the search's reach is inconclusive, not success")
    {
        ConstructionOptions opts;
        opts.search.node_budget = 20000;
        const auto out = construct_dense_small_m(16, 2, 1, kDefaultSeed, opts);
        CHECK(out.r == 7);
        CHECK(out.target_density == Rational(3, 4));
        CHECK(out.status == ConstructionStatus::Inconclusive);
        REQUIRE(out.certificate);
        CHECK_FALSE(out.certificate->verified);
    }
    CHECK_THROWS_AS(construct_dense_small_m(1, 2, 1, kDefaultSeed), InputError);
}

TEST_CASE("sparse exponent chain")
{
    const auto chain = sparse_exponent_chain(12, 2, Rational(1, 2), 6);
    CHECK(chain.line1 == doctest::Approx(-298));
    CHECK(chain.line2 == doctest::Approx(-234));
    CHECK(chain.line3 == -106);
    CHECK(chain.line4 == -84);
    CHECK(chain.chain_holds);
    CHECK(chain.final_negative);
    for (int k = 1; k <= 20; ++k) {
        const Rational eps(k, 10);
        const auto r = choose_r_sparse(eps);
        for (std::int64_t n = 1; n <= 60; ++n) {
            const auto c = sparse_exponent_chain(n, 2 + (k % 3), eps, r);
            CHECK(c.final_negative);
            if (eps * n >= 2)
                CHECK(c.chain_holds);
        }
    }
}

TEST_CASE("size target is decided exactly")
{
    CHECK(meets_size_target(64, 2, 12, Rational(1, 2)));
    CHECK_FALSE(meets_size_target(63, 2, 12, Rational(1, 2)));
    // 3^(2/3 * 3) = 9
    CHECK(meets_size_target(9, 3, 3, Rational(1, 3)));
    CHECK_FALSE(meets_size_target(8, 3, 3, Rational(1, 3)));
    CHECK(meets_size_target(1, 2, 5, 2));
    CHECK_FALSE(meets_size_target(0, 2, 5, 2));
}

TEST_CASE("sparse construction")
{
    const auto out = construct_sparse_bounded_m(12, 2, Rational(1, 2), kDefaultSeed);
    CHECK(out.r == 6);
    CHECK(out.p == Rational(1, 64));
    REQUIRE(out.certificate);
    REQUIRE(out.set);
    CHECK(verify_construction(*out.set, 6, kDefaultNotion).status == VerifyStatus::Verified);
    CHECK(out.size_target_met == (out.set->cardinality() >= 64));
    CHECK(out.status == (out.size_target_met ? ConstructionStatus::Success : ConstructionStatus::SizeTargetMissed));

    const auto again = construct_sparse_bounded_m(12, 2, Rational(1, 2), kDefaultSeed);
    CHECK(*again.set == *out.set);

    // floor(eps n) = 0 would mean p = 1.
    CHECK(construct_sparse_bounded_m(1, 2, Rational(1, 2), kDefaultSeed).status ==
          ConstructionStatus::NoValidDensity);
}
