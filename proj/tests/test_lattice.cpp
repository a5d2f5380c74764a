#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcube/errors.hpp"
#include "hcube/lattice.hpp"
#include "hcube/random.hpp"

#include <sstream>

using namespace hcube;

namespace {

PointSet random_set(const GridParams& grid, Rng& rng, const Rational& p)
{
    std::vector<std::uint64_t> members;
    for (std::uint64_t i = 0; i < grid.size(); ++i)
        if (rng.bernoulli(p))
            members.push_back(i);
    return PointSet(grid, members);
}

}  // namespace

TEST_CASE("grid encoding round-trips")
{
    const GridParams g(3, 4);
    CHECK(g.size() == 81);
    for (std::uint64_t i = 0; i < g.size(); ++i)
        CHECK(g.encode(g.decode(i)) == i);
    CHECK(g.encode(Point{1, 0, 0, 0}) == 1);
    CHECK(g.encode(Point{0, 1, 0, 0}) == 3);
    CHECK_FALSE(g.contains(Point{3, 0, 0, 0}));
    CHECK_FALSE(g.contains(Point{-1, 0, 0, 0}));
    CHECK_FALSE(g.contains(Point{0, 0, 0}));
}

TEST_CASE("grid parameter validation")
{
    CHECK_THROWS_AS(GridParams(1, 2), InputError);
    CHECK_THROWS_AS(GridParams(2, -1), InputError);
    CHECK_THROWS(GridParams(2, 64));
    CHECK_NOTHROW(GridParams(2, 0));
    CHECK_THROWS_AS(GridParams(2, 25).require_materializable(), TooLarge);
}

TEST_CASE("density examples")
{
    CHECK(density(PointSet(GridParams(2, 3))) == 0);
    CHECK(density(PointSet::full(GridParams(4, 2))) == 1);
    const auto s = PointSet::from_points(GridParams(3, 2), {{0, 0}, {1, 1}});
    CHECK(density(s) == Rational(2, 9));
}

TEST_CASE("from_points rejects duplicates and out-of-grid points")
{
    CHECK_THROWS_AS(PointSet::from_points(GridParams(2, 2), {{0, 0}, {0, 0}}), InputError);
    CHECK_THROWS_AS(PointSet::from_points(GridParams(2, 2), {{0, 2}}), InputError);
}

TEST_CASE("points are lexicographically sorted")
{
    const auto s = PointSet::from_points(GridParams(3, 2), {{2, 0}, {0, 2}, {1, 1}, {0, 1}});
    const auto pts = s.points();
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 1; i < pts.size(); ++i)
        CHECK(lex_less(pts[i - 1], pts[i]));
    CHECK(pts.front() == Point{0, 1});
}

TEST_CASE("split_by_prefix examples")
{
    const GridParams g(2, 2);
    SUBCASE("full grid")
    {
        const auto split = split_by_prefix(PointSet::full(g), 1);
        CHECK(split.fiber(Point{0}) == PointSet::full(GridParams(2, 1)));
        CHECK(split.fiber(Point{1}) == PointSet::full(GridParams(2, 1)));
    }
    SUBCASE("three points")
    {
        const auto s = PointSet::from_points(g, {{0, 0}, {0, 1}, {1, 0}});
        const auto split = split_by_prefix(s, 1);
        CHECK(split.fiber(Point{0}).cardinality() == 2);
        CHECK(split.fiber(Point{1}) == PointSet::from_points(GridParams(2, 1), {{0}}));
        CHECK(count_heavy_prefixes(s, 1, 1) == 2);
    }
    SUBCASE("empty set")
    {
        const auto split = split_by_prefix(PointSet(GridParams(3, 3)), 2);
        CHECK(split.fibers.size() == 9);
        for (const auto& f : split.fibers)
            CHECK(f.empty());
        CHECK(count_heavy_prefixes(PointSet(g), 1, Rational(1, 2)) == 0);
    }
    CHECK_THROWS_AS(split_by_prefix(PointSet(g), 0), InputError);
    CHECK_THROWS_AS(split_by_prefix(PointSet(g), 2), InputError);
}

TEST_CASE("count_heavy_prefixes on the full cube")
{
    CHECK(count_heavy_prefixes(PointSet::full(GridParams(2, 3)), 1, 1) == 2);
}

TEST_CASE("prefix split properties on random sets")
{
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        const int base = 2 + static_cast<int>(rng.below(3));
        const int dim = 2 + static_cast<int>(rng.below(base == 2 ? 4 : 2));
        const GridParams g(base, dim);
        const auto s = random_set(g, rng, Rational(1 + rng.below(3), 4));
        const int r = 1 + static_cast<int>(rng.below(dim - 1));
        const auto split = split_by_prefix(s, r);
        // Re-gluing reproduces S; densities add up over fibers.
        CHECK(join_prefix_split(split) == s);
        Rational sum = 0;
        std::uint64_t card = 0;
        for (const auto& f : split.fibers) {
            sum += density(f);
            card += f.cardinality();
        }
        CHECK(card == s.cardinality());
        CHECK(density(s) == sum / ipow(BigInt(base), r));
        // p in T_a iff a x p in S.
        const Point a = split.prefix_grid.decode(rng.below(split.prefix_grid.size()));
        const Point p = split.suffix_grid.decode(rng.below(split.suffix_grid.size()));
        Point ap = a;
        ap.insert(ap.end(), p.begin(), p.end());
        CHECK(split.fiber(a).contains(p) == s.contains(ap));
        // Heavy-prefix chain.
        const Rational c(1 + rng.below(4), 4);
        const auto k = count_heavy_prefixes(s, r, c);
        CHECK(density(s) <= Rational(k) / ipow(BigInt(base), r) + c / 2);
    }
}

TEST_CASE("max_pair_intersection examples")
{
    const GridParams g4(4, 1);
    const PointSet half(g4, {0, 1});
    const std::vector<PointSet> copies{half, half, half, half};
    CHECK(max_pair_intersection(copies).density == Rational(1, 2));

    const std::vector<PointSet> disjoint{PointSet(g4, {0, 1}), PointSet(g4, {2, 3})};
    const auto d = max_pair_intersection(disjoint);
    CHECK(d.first == 0);
    CHECK(d.second == 1);
    CHECK(d.density == 0);

    const GridParams g3(3, 1);
    const std::vector<PointSet> triangle{PointSet(g3, {0, 1}), PointSet(g3, {1, 2}), PointSet(g3, {0, 2})};
    const auto t = max_pair_intersection(triangle);
    CHECK(t.density == Rational(1, 3));
    CHECK(t.first == 0);
    CHECK(t.second == 1);

    CHECK_THROWS_AS(max_pair_intersection(std::vector<PointSet>{half}), InputError);
}

TEST_CASE("intersection lemma on random families")
{
    Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        const int k = 2 + static_cast<int>(rng.below(9));
        const Rational c(1 + rng.below(3), 4);
        const GridParams g(k, 1);
        const auto t = ceil(Rational(2) / c).convert_to<int>();
        std::vector<PointSet> family;
        for (int i = 0; i < t; ++i) {
            PointSet x = random_set(g, rng, Rational(1, 2));
            while (density(x) < c)
                x = random_set(g, rng, Rational(3, 4));
            family.push_back(x);
        }
        CHECK(max_pair_intersection(family).density >= 2 * c * c / ((2 + c) * (2 + c)));
    }
}

TEST_CASE("entropy profile")
{
    const std::vector<EntropySample> full{{5, 32}};
    CHECK(entropy_profile(2, full).values[0].value == doctest::Approx(1.0));
    REQUIRE(entropy_profile(2, full).values[0].exact);
    CHECK(*entropy_profile(2, full).values[0].exact == 1);
    const std::vector<EntropySample> single{{3, 1}};
    CHECK(*entropy_profile(2, single).values[0].exact == 0);
    const std::vector<EntropySample> eight{{4, 8}, {2, 2}};
    const auto prof = entropy_profile(2, eight);
    CHECK(*prof.values[0].exact == Rational(3, 4));
    CHECK(*prof.maximum.exact == Rational(3, 4));
    CHECK_THROWS_AS(entropy_profile(2, std::vector<EntropySample>{}), InputError);
    CHECK_THROWS_AS(entropy_profile(2, std::vector<EntropySample>{{0, 1}}), InputError);
}

TEST_CASE("point-set file round-trip")
{
    Rng rng(3);
    const auto s = random_set(GridParams(3, 3), rng, Rational(1, 2));
    std::stringstream io;
    write_point_set(io, s);
    CHECK(read_point_set(io) == s);

    std::istringstream dup("2 1\n0\n0\n");
    CHECK_THROWS_AS(read_point_set(dup), InputError);
    std::istringstream bad_header("2\n");
    CHECK_THROWS_AS(read_point_set(bad_header), InputError);
    std::istringstream out_of_grid("2 2\n0 2\n");
    CHECK_THROWS_AS(read_point_set(out_of_grid), InputError);
    std::istringstream short_line("2 2\n0\n");
    CHECK_THROWS_AS(read_point_set(short_line), InputError);
}

TEST_CASE("exact rational helpers")
{
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.75") == Rational(3, 4));
    CHECK(parse_rational("-2") == -2);
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK(to_string(Rational(6, 8)) == "3/4");
    CHECK(ceil_log(Rational(32), Rational(2)) == 5);
    CHECK(ceil_log(Rational(33), Rational(2)) == 6);
    CHECK(floor_log(Rational(31), Rational(2)) == 4);
    CHECK(floor_log(Rational(1, 8), Rational(2)) == -3);
    std::int64_t j = 0;
    CHECK(exact_power(Rational(1, 9), Rational(3), j));
    CHECK(j == -2);
    CHECK_FALSE(exact_power(Rational(10), Rational(3), j));
}

TEST_CASE("rng draws are reproducible and unbiased enough")
{
    Rng a(5);
    Rng b(5);
    for (int i = 0; i < 100; ++i)
        CHECK(a.below(1000) == b.below(1000));
    Rng c(9);
    int hits = 0;
    for (int i = 0; i < 10000; ++i)
        hits += c.bernoulli(Rational(1, 4));
    CHECK(hits > 2300);
    CHECK(hits < 2700);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}
