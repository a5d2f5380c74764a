#include "hcube/lll.hpp"

#include "hcube/errors.hpp"
#include "hcube/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hcube {

std::string_view to_string(SampleStatus status) noexcept
{
    switch (status) {
    case SampleStatus::CubeFree:
        return "cube_free";
    case SampleStatus::RoundsExhausted:
        return "rounds_exhausted";
    case SampleStatus::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

std::string_view to_string(VerifyStatus status) noexcept
{
    switch (status) {
    case VerifyStatus::Verified:
        return "verified";
    case VerifyStatus::Violated:
        return "violated";
    case VerifyStatus::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

std::string_view to_string(ConstructionStatus status) noexcept
{
    switch (status) {
    case ConstructionStatus::Success:
        return "success";
    case ConstructionStatus::NoValidR:
        return "no_valid_r";
    case ConstructionStatus::NoValidDensity:
        return "no_valid_density";
    case ConstructionStatus::RoundsExhausted:
        return "rounds_exhausted";
    case ConstructionStatus::Inconclusive:
        return "inconclusive";
    case ConstructionStatus::DensityTargetMissed:
        return "density_target_missed";
    case ConstructionStatus::SizeTargetMissed:
        return "size_target_missed";
    }
    return "unknown";
}

BadEventCatalog enumerate_cube_images(int base, int dim, int r, std::uint64_t cap)
{
    const GridParams grid(base, dim);
    if (r < 0 || r > 30)
        throw InputError("cube dimension r must lie in [0, 30]");
    const BigInt raw = count_affine_maps_bound(base, dim, r);
    if (raw > cap)
        throw TooLarge("N^(n(r+1)) = " + raw.str() + " exceeds the enumeration cap " +
                       std::to_string(cap));

    const auto slots = static_cast<std::size_t>(r) + 1;
    std::vector<std::uint64_t> tuple(slots, 0);
    std::set<std::vector<std::uint64_t>> images;
    const std::size_t vertex_count = std::size_t{1} << r;

    for (;;) {
        const Point z = grid.decode(tuple[0]);
        std::vector<Point> verts{z};
        verts.reserve(vertex_count);
        for (std::size_t i = 1; i < slots; ++i) {
            const Point e = grid.decode(tuple[i]);
            const std::size_t half = verts.size();
            for (std::size_t j = 0; j < half; ++j) {
                Point w = verts[j];
                for (std::size_t k = 0; k < w.size(); ++k)
                    w[k] += e[k] - z[k];
                verts.push_back(std::move(w));
            }
        }
        std::vector<std::uint64_t> keys;
        keys.reserve(vertex_count);
        bool inside = true;
        for (const auto& v : verts) {
            if (!grid.contains(v)) {
                inside = false;
                break;
            }
            keys.push_back(grid.encode(v));
        }
        if (inside) {
            std::sort(keys.begin(), keys.end());
            if (std::adjacent_find(keys.begin(), keys.end()) == keys.end())
                images.insert(std::move(keys));
        }

        std::size_t pos = 0;
        while (pos < slots && ++tuple[pos] == grid.size())
            tuple[pos++] = 0;
        if (pos == slots)
            break;
    }
    return {grid, r, std::vector<std::vector<std::uint64_t>>(images.begin(), images.end())};
}

namespace {

PointSet to_point_set(const GridParams& grid, const std::vector<std::uint8_t>& cells)
{
    std::vector<std::uint64_t> members;
    for (std::uint64_t i = 0; i < cells.size(); ++i)
        if (cells[i])
            members.push_back(i);
    return PointSet(grid, std::move(members));
}

Certificate make_certificate(const GridParams& grid, int r, CubeNotion notion, const Rational& p,
                             std::uint64_t seed, std::uint64_t rounds, const Verification& check)
{
    return {grid,
            r,
            notion,
            p,
            seed,
            rounds,
            check.density,
            check.cardinality,
            check.status == VerifyStatus::Verified,
            check.witness};
}

}  // namespace

SampleOutcome moser_tardos_sample(const GridParams& grid, int r, const SamplerConfig& config)
{
    if (r < 1)
        throw InputError("sampler needs r >= 1");
    if (config.p <= 0 || config.p >= 1)
        throw InputError("inclusion probability must lie in (0, 1)");
    if (config.max_rounds < 1)
        throw InputError("max_rounds must be >= 1");
    grid.require_materializable();

    Rng rng(config.seed);
    std::vector<std::uint8_t> cells(grid.size());
    for (auto& cell : cells)
        cell = rng.bernoulli(config.p) ? 1 : 0;

    std::uint64_t rounds = 0;
    for (;;) {
        PointSet s = to_point_set(grid, cells);
        const auto hit = find_cube(s, r, config.notion, config.search);
        if (hit.status == SearchStatus::Inconclusive)
            return {SampleStatus::Inconclusive, std::move(s), rounds, std::nullopt};
        if (hit.status == SearchStatus::None)
            return {SampleStatus::CubeFree, std::move(s), rounds, std::nullopt};
        if (rounds >= config.max_rounds)
            return {SampleStatus::RoundsExhausted, std::move(s), rounds, hit.witness};
        // cube_vertices is sorted, so cells are redrawn in a fixed order.
        for (const auto& v : cube_vertices(*hit.witness))
            cells[grid.encode(v)] = rng.bernoulli(config.p) ? 1 : 0;
        ++rounds;
    }
}

Verification verify_construction(const PointSet& s, int r, CubeNotion notion, const SearchOptions& options)
{
    if (r < 1)
        throw InputError("verification needs r >= 1");
    const auto hit = find_cube(s, r, notion, options);
    Verification out{VerifyStatus::Verified, density(s), s.cardinality(), std::nullopt, hit.nodes};
    if (hit.status == SearchStatus::Found) {
        out.status = VerifyStatus::Violated;
        out.witness = hit.witness;
    } else if (hit.status == SearchStatus::Inconclusive) {
        out.status = VerifyStatus::Inconclusive;
    }
    return out;
}

DenseConstruction construct_dense_small_m(std::int64_t n, int base, const Rational& epsilon,
                                          std::uint64_t seed, const ConstructionOptions& options)
{
    DenseConstruction out{ConstructionStatus::NoValidR, std::nullopt, 0, 0, std::nullopt, std::nullopt,
                          std::nullopt};
    if (n < base)
        throw InputError("dense construction needs n >= N");
    out.target_density = c_n_schedule(n, base);
    out.eq_ep = check_eq_ep(n, epsilon, base);
    out.r = choose_r_dense(n, epsilon);
    if (!out.r)
        return out;
    if (out.target_density == 0) {
        out.status = ConstructionStatus::NoValidDensity;
        return out;
    }
    if (n > 64)
        throw TooLarge("grid dimension too large to materialize");
    const GridParams grid(base, static_cast<int>(n));
    grid.require_materializable();
    if (*out.r > 30) {
        out.status = ConstructionStatus::NoValidR;
        return out;
    }
    const int r = static_cast<int>(*out.r);

    const Rational& p = out.target_density;
    const long double pd = to_long_double(p);
    out.tolerance = 3.0L * std::sqrt(pd * (1.0L - pd) / static_cast<long double>(grid.size()));

    SamplerConfig config{p, seed, options.max_rounds, options.notion, options.search};
    auto sample = moser_tardos_sample(grid, r, config);
    const auto check = verify_construction(sample.set, r, options.notion, options.search);
    if (sample.status == SampleStatus::CubeFree && check.status == VerifyStatus::Violated)
        throw std::logic_error("sampler reported a cube-free set that contains a cube");
    out.certificate = make_certificate(grid, r, options.notion, p, seed, sample.rounds, check);
    out.set = std::move(sample.set);

    if (sample.status == SampleStatus::Inconclusive || check.status == VerifyStatus::Inconclusive)
        out.status = ConstructionStatus::Inconclusive;
    else if (sample.status == SampleStatus::RoundsExhausted)
        out.status = ConstructionStatus::RoundsExhausted;
    else if (to_long_double(check.density) < pd - out.tolerance)
        out.status = ConstructionStatus::DensityTargetMissed;
    else
        out.status = ConstructionStatus::Success;
    return out;
}

SparseExponentChain sparse_exponent_chain(std::int64_t n, int base, const Rational& epsilon,
                                          std::int64_t r)
{
    if (n < 1 || r < 1 || epsilon <= 0)
        throw InputError("exponent chain needs n >= 1, r >= 1, eps > 0");
    const long double log4 = std::log(4.0L) / std::log(static_cast<long double>(base));
    const Rational eps_n = epsilon * n;
    const BigInt floor_eps_n = floor(eps_n);
    const BigInt two_r = ipow(BigInt(2), static_cast<std::uint64_t>(r));
    const Rational half_two_r(two_r, 2);
    const Rational maps = Rational(n) * (r + 1);

    SparseExponentChain chain{};
    chain.line1 = log4 + to_long_double(maps - Rational(two_r * floor_eps_n));
    chain.line2 = log4 + to_long_double(maps - Rational(two_r) * (eps_n - 1));
    chain.line3 = Rational(2) + maps - half_two_r * eps_n;
    chain.line4 = Rational(n) * (r + 3) - half_two_r * eps_n;
    // line1 <= line2 holds since floor(eps n) > eps n - 1; the rest is compared
    // directly, using log_N 4 <= 2 only through the computed values.
    const long double slack = 1e-9L * (1.0L + std::fabs(chain.line2));
    chain.chain_holds = chain.line1 <= chain.line2 + slack &&
                        chain.line2 <= to_long_double(chain.line3) + slack && chain.line3 <= chain.line4;
    chain.final_negative = chain.line4 < 0;
    return chain;
}

bool meets_size_target(std::uint64_t cardinality, int base, std::int64_t n, const Rational& epsilon)
{
    // |S| >= N^((b - a) n / b) with eps = a/b
    const BigInt a = numerator(epsilon);
    const BigInt b = denominator(epsilon);
    const BigInt exponent = (b - a) * n;
    if (exponent <= 0)
        return cardinality >= 1;
    return ipow(BigInt(cardinality), b.convert_to<std::uint64_t>()) >=
           ipow(BigInt(base), exponent.convert_to<std::uint64_t>());
}

SparseConstruction construct_sparse_bounded_m(std::int64_t n, int base, const Rational& epsilon,
                                              std::uint64_t seed, const ConstructionOptions& options)
{
    if (n < 1)
        throw InputError("sparse construction needs n >= 1");
    const std::int64_t r = choose_r_sparse(epsilon);
    const BigInt drop = floor(epsilon * n);
    SparseConstruction out{ConstructionStatus::NoValidDensity,
                           r,
                           Rational(1, ipow(BigInt(base), drop.convert_to<std::uint64_t>())),
                           sparse_exponent_chain(n, base, epsilon, r),
                           false,
                           std::nullopt,
                           std::nullopt};
    if (out.p >= 1)
        return out;
    if (n > 64)
        throw TooLarge("grid dimension too large to materialize");
    const GridParams grid(base, static_cast<int>(n));
    grid.require_materializable();
    if (r > 30)
        throw TooLarge("cube dimension above 30");

    SamplerConfig config{out.p, seed, options.max_rounds, options.notion, options.search};
    auto sample = moser_tardos_sample(grid, static_cast<int>(r), config);
    const auto check = verify_construction(sample.set, static_cast<int>(r), options.notion, options.search);
    if (sample.status == SampleStatus::CubeFree && check.status == VerifyStatus::Violated)
        throw std::logic_error("sampler reported a cube-free set that contains a cube");
    out.certificate = make_certificate(grid, static_cast<int>(r), options.notion, out.p, seed,
                                       sample.rounds, check);
    out.size_target_met = meets_size_target(check.cardinality, base, n, epsilon);
    out.set = std::move(sample.set);

    if (sample.status == SampleStatus::Inconclusive || check.status == VerifyStatus::Inconclusive)
        out.status = ConstructionStatus::Inconclusive;
    else if (sample.status == SampleStatus::RoundsExhausted)
        out.status = ConstructionStatus::RoundsExhausted;
    else if (!out.size_target_met)
        out.status = ConstructionStatus::SizeTargetMissed;
    else
        out.status = ConstructionStatus::Success;
    return out;
}

}  // namespace hcube
