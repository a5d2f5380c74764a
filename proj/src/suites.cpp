#include "hcube/suites.hpp"

#include "hcube/bounds.hpp"
#include "hcube/errors.hpp"
#include "hcube/random.hpp"
#include "hcube/toric.hpp"

#include <algorithm>
#include <numeric>

namespace hcube {

bool SuiteReport::passed() const noexcept
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckCount& c) { return c.violations == 0; });
}

namespace {

PointSet random_subset(const GridParams& grid, Rng& rng, const Rational& p)
{
    std::vector<std::uint64_t> members;
    for (std::uint64_t i = 0; i < grid.size(); ++i)
        if (rng.bernoulli(p))
            members.push_back(i);
    return PointSet(grid, std::move(members));
}

/// Exactly `size` distinct indices of [0, total), ascending.
std::vector<std::uint64_t> random_indices(std::uint64_t total, std::uint64_t size, Rng& rng)
{
    std::vector<std::uint64_t> all(total);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < size; ++i)
        std::swap(all[i], all[i + rng.below(total - i)]);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

Rational random_fraction(Rng& rng, std::uint64_t max_den)
{
    const auto den = 1 + rng.below(max_den);
    const auto num = 1 + rng.below(den);
    return Rational(num, den);
}

/// Small grids where exact M is cheap.
GridParams random_small_grid(Rng& rng)
{
    static const int shapes[][2] = {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}};
    const auto& s = shapes[rng.below(std::size(shapes))];
    return GridParams(s[0], s[1]);
}

Point random_point(const GridParams& grid, Rng& rng)
{
    return grid.decode(rng.below(grid.size()));
}

std::int64_t content(const Point& v)
{
    std::int64_t g = 0;
    for (auto x : v)
        g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

}  // namespace

CheckCount check_intersection_lemma(const SuiteConfig& config)
{
    CheckCount out{"intersection_density", 0, 0, 0};
    Rng rng(derive_seed(config.seed, 1));
    for (std::uint64_t it = 0; it < config.instances; ++it) {
        const auto k = static_cast<int>(2 + rng.below(11));
        const Rational c = random_fraction(rng, 6);
        const GridParams grid(k, 1);
        const auto least = ceil(c * k).convert_to<std::uint64_t>();
        const auto t = ceil(Rational(2) / c).convert_to<std::uint64_t>() + rng.below(3);
        std::vector<PointSet> family;
        for (std::uint64_t i = 0; i < std::max<std::uint64_t>(t, 2); ++i) {
            const auto size = least + rng.below(k - least + 1);
            family.emplace_back(grid, random_indices(k, size, rng));
        }
        const auto best = max_pair_intersection(family);
        const Rational bound = 2 * c * c / ((2 + c) * (2 + c));
        ++out.checked;
        if (best.density < bound)
            ++out.violations;
    }
    return out;
}

CheckCount check_prefix_lemma(const SuiteConfig& config, CubeNotion notion)
{
    CheckCount out{"prefix_lemma_" + std::string(to_string(notion)), 0, 0, 0};
    Rng rng(derive_seed(config.seed, 2 + static_cast<std::uint64_t>(notion)));
    // Draw until `instances` splits meet the hypotheses, with a cap on attempts.
    for (std::uint64_t attempt = 0; out.checked < config.instances && attempt < 20 * config.instances; ++attempt) {
        const GridParams grid = random_small_grid(rng);
        const PointSet s = random_subset(grid, rng, Rational(1 + rng.below(3), 4) + Rational(1, 4));
        const int r = 1 + static_cast<int>(rng.below(grid.dim() - 1));
        const auto split = split_by_prefix(s, r);
        const Point a = random_point(split.prefix_grid, rng);
        Point b = random_point(split.prefix_grid, rng);
        if (a == b)
            b = split.prefix_grid.decode((split.prefix_grid.encode(a) + 1) % split.prefix_grid.size());
        Point diff(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            diff[i] = b[i] - a[i];
        const PointSet t = split.fiber(a).intersect(split.fiber(b));
        // Under UNIMODULAR the new generator must itself be primitive.
        if (t.empty() || (notion == CubeNotion::Unimodular && content(diff) != 1)) {
            ++out.skipped;
            continue;
        }
        const MValue inner = m_value(t, notion, config.search);
        const AffineCube lifted = extend_cube(a, b, inner.witness);
        ++out.checked;
        if (!is_cube_in(s, lifted, notion) || m_value(s, notion, config.search).m < inner.m + 1)
            ++out.violations;
    }
    return out;
}

CheckCount check_hypergeometric(const SuiteConfig& config)
{
    CheckCount out{"hypergeometric_bound", 0, 0, 0};
    Rng rng(derive_seed(config.seed, 10));
    for (std::uint64_t it = 0; it < config.instances; ++it) {
        const int base = 2 + static_cast<int>(rng.below(2));
        const int n = 1 + static_cast<int>(rng.below(base == 2 ? 6 : 3));
        const std::uint64_t size = ipow(BigInt(base), n).convert_to<std::uint64_t>();
        const Rational c(1 + rng.below(size - 1), size);
        int max_r = 1;
        while ((std::uint64_t{1} << (max_r + 1)) <= size && max_r < 5)
            ++max_r;
        const int r = 1 + static_cast<int>(rng.below(max_r));
        ++out.checked;
        if (!(hypergeometric_containment(base, n, r, c) < rpow(c, std::int64_t{1} << r)))
            ++out.violations;
    }
    return out;
}

CheckCount check_heavy_prefix_chain(const SuiteConfig& config)
{
    CheckCount out{"heavy_prefix_chain", 0, 0, 0};
    Rng rng(derive_seed(config.seed, 11));
    for (std::uint64_t it = 0; it < config.instances; ++it) {
        const GridParams grid = random_small_grid(rng);
        const PointSet s = random_subset(grid, rng, random_fraction(rng, 4));
        const int r = 1 + static_cast<int>(rng.below(grid.dim() - 1));
        const Rational c = random_fraction(rng, 6);
        const auto k = count_heavy_prefixes(s, r, c);
        const Rational prefixes = ipow(BigInt(grid.base()), r);
        ++out.checked;
        if (density(s) > Rational(k) / prefixes + c / 2)
            ++out.violations;
    }
    return out;
}

CheckCount check_oracle_exhaustive(CubeNotion notion, const SearchOptions& search)
{
    CheckCount out{"oracle_all_subsets_2^3_" + std::string(to_string(notion)), 0, 0, 0};
    const GridParams grid(2, 3);
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        std::vector<std::uint64_t> members;
        for (std::uint64_t i = 0; i < 8; ++i)
            if (mask >> i & 1)
                members.push_back(i);
        if (members.empty()) {
            ++out.skipped;
            continue;
        }
        const PointSet s(grid, std::move(members));
        ++out.checked;
        if (m_value(s, notion, search).m != m_value_oracle(s, notion))
            ++out.violations;
    }
    return out;
}

CheckCount check_oracle_random(const SuiteConfig& config, CubeNotion notion, std::uint64_t count)
{
    CheckCount out{"oracle_random_3^3_" + std::string(to_string(notion)), 0, 0, 0};
    Rng rng(derive_seed(config.seed, 20));
    const GridParams grid(3, 3);
    for (std::uint64_t it = 0; it < count; ++it) {
        const PointSet s = random_subset(grid, rng, Rational(1 + rng.below(7), 8));
        if (s.empty()) {
            ++out.skipped;
            continue;
        }
        ++out.checked;
        if (m_value(s, notion, config.search).m != m_value_oracle(s, notion))
            ++out.violations;
    }
    return out;
}

CheckCount check_nesting(const SuiteConfig& config)
{
    CheckCount out{"notion_nesting", 0, 0, 0};
    Rng rng(derive_seed(config.seed, 30));
    for (std::uint64_t it = 0; it < config.instances; ++it) {
        const GridParams grid = it % 5 == 0 ? GridParams(5, 1) : random_small_grid(rng);
        const PointSet s = random_subset(grid, rng, Rational(1 + rng.below(3), 4));
        if (s.empty()) {
            ++out.skipped;
            continue;
        }
        const int vi = m_value(s, CubeNotion::VertexInjective, config.search).m;
        const int ind = m_value(s, CubeNotion::IndependentGenerators, config.search).m;
        const int uni = m_value(s, CubeNotion::Unimodular, config.search).m;
        ++out.checked;
        if (!(uni <= ind && ind <= vi))
            ++out.violations;
    }
    // The separating example {0,1,2,3} in [5]^1.
    const PointSet sep(GridParams(5, 1), {0, 1, 2, 3});
    ++out.checked;
    if (m_value(sep, CubeNotion::VertexInjective, config.search).m != 2 ||
        m_value(sep, CubeNotion::IndependentGenerators, config.search).m != 1)
        ++out.violations;
    return out;
}

CheckCount check_f_monotone(const SearchOptions& search)
{
    CheckCount out{"f_monotone_in_c", 0, 0, 0};
    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        int previous = 0;
        for (std::uint64_t j = 1; j <= size; ++j) {
            const int f = f_exhaustive(2, n, Rational(j, size), kDefaultNotion, search);
            ++out.checked;
            if (f < previous)
                ++out.violations;
            previous = f;
        }
    }
    return out;
}

CheckCount check_m_monotone(const SuiteConfig& config)
{
    CheckCount out{"m_monotone_under_inclusion", 0, 0, 0};
    Rng rng(derive_seed(config.seed, 40));
    for (std::uint64_t it = 0; it < config.instances; ++it) {
        const GridParams grid = random_small_grid(rng);
        const PointSet small = random_subset(grid, rng, Rational(1, 2));
        if (small.empty()) {
            ++out.skipped;
            continue;
        }
        std::vector<std::uint64_t> bigger = small.indices();
        const PointSet extra = random_subset(grid, rng, Rational(1, 4));
        bigger.insert(bigger.end(), extra.indices().begin(), extra.indices().end());
        const PointSet large(grid, std::move(bigger));
        const auto notion = static_cast<CubeNotion>(rng.below(3));
        ++out.checked;
        if (m_value(small, notion, config.search).m > m_value(large, notion, config.search).m)
            ++out.violations;
    }
    return out;
}

CheckCount check_toric_monotone()
{
    CheckCount out{"toric_monotone_under_inclusion", 0, 0, 0};
    auto run_chain = [&](std::int64_t q, int dim, const std::vector<std::vector<Point>>& chain) {
        std::uint64_t prev_k = 0;
        std::uint64_t prev_d = ~std::uint64_t{0};
        for (const auto& verts : chain) {
            const ToricCode code = build_code(LatticePolytope(dim, verts), q);
            const std::uint64_t d = minimum_distance(code);
            ++out.checked;
            if (code.rows() < prev_k || d > prev_d)
                ++out.violations;
            prev_k = code.rows();
            prev_d = d;
        }
    };
    for (std::int64_t q : {3, 5, 7}) {
        std::vector<std::vector<Point>> chain;
        for (std::int64_t k = 0; k <= q - 2; ++k)
            chain.push_back({{0}, {k}});
        run_chain(q, 1, chain);
    }
    run_chain(5, 2,
              {{{0, 0}},
               {{0, 0}, {1, 0}},
               {{0, 0}, {1, 0}, {0, 1}},
               {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
               {{0, 0}, {2, 0}, {0, 2}},
               {{0, 0}, {2, 0}, {0, 2}, {2, 2}}});
    return out;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config)
{
    static const CubeNotion notions[] = {CubeNotion::VertexInjective, CubeNotion::IndependentGenerators,
                                         CubeNotion::Unimodular};
    SuiteReport report{name, {}};
    const bool all = name == "all";
    if (!all && name != "lemmas" && name != "oracle" && name != "nesting" && name != "monotonicity")
        throw InputError("unknown suite '" + name + "' (expected lemmas, oracle, nesting, monotonicity, all)");
    if (all || name == "lemmas") {
        report.checks.push_back(check_intersection_lemma(config));
        for (auto notion : notions)
            report.checks.push_back(check_prefix_lemma(config, notion));
        report.checks.push_back(check_hypergeometric(config));
        report.checks.push_back(check_heavy_prefix_chain(config));
    }
    if (all || name == "oracle") {
        for (auto notion : notions) {
            report.checks.push_back(check_oracle_exhaustive(notion, config.search));
            report.checks.push_back(check_oracle_random(config, notion));
        }
    }
    if (all || name == "nesting")
        report.checks.push_back(check_nesting(config));
    if (all || name == "monotonicity") {
        report.checks.push_back(check_f_monotone(config.search));
        report.checks.push_back(check_m_monotone(config));
        report.checks.push_back(check_toric_monotone());
    }
    return report;
}

}  // namespace hcube
