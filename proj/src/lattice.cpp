#include "hcube/lattice.hpp"

#include "hcube/errors.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace hcube {

GridParams::GridParams(int base, int dim) : base_(base), dim_(dim), size_(1)
{
    if (base < 2)
        throw InputError("grid base must be >= 2, got " + std::to_string(base));
    if (dim < 0)
        throw InputError("grid dimension must be >= 0, got " + std::to_string(dim));
    for (int i = 0; i < dim; ++i) {
        if (size_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base))
            throw TooLarge("grid size N^n does not fit in 64 bits");
        size_ *= static_cast<std::uint64_t>(base);
    }
}

bool GridParams::contains(std::span<const std::int64_t> p) const noexcept
{
    if (p.size() != static_cast<std::size_t>(dim_))
        return false;
    return std::all_of(p.begin(), p.end(), [&](std::int64_t x) { return x >= 0 && x < base_; });
}

std::uint64_t GridParams::encode(std::span<const std::int64_t> p) const
{
    if (!contains(p))
        throw InputError("point outside grid");
    std::uint64_t index = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        index = index * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(p[i]);
    return index;
}

Point GridParams::decode(std::uint64_t index) const
{
    Point p(static_cast<std::size_t>(dim_));
    for (auto& x : p) {
        x = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(base_));
        index /= static_cast<std::uint64_t>(base_);
    }
    return p;
}

void GridParams::require_materializable(std::uint64_t limit) const
{
    if (size_ > limit)
        throw TooLarge("grid [" + std::to_string(base_) + "]^" + std::to_string(dim_) +
                       " has more than " + std::to_string(limit) + " cells");
}

bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) noexcept
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PointSet::PointSet(GridParams grid) : grid_(grid) { build_index(); }

PointSet::PointSet(GridParams grid, std::vector<std::uint64_t> indices)
    : grid_(grid), members_(std::move(indices))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= grid_.size())
        throw InputError("point index outside grid");
    build_index();
}

PointSet PointSet::from_points(GridParams grid, const std::vector<Point>& points)
{
    std::vector<std::uint64_t> indices;
    indices.reserve(points.size());
    for (const auto& p : points) {
        if (!grid.contains(p))
            throw InputError("point outside grid [" + std::to_string(grid.base()) + "]^" +
                             std::to_string(grid.dim()));
        indices.push_back(grid.encode(p));
    }
    std::vector<std::uint64_t> sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("duplicate point");
    return PointSet(grid, std::move(sorted));
}

PointSet PointSet::full(GridParams grid)
{
    grid.require_materializable();
    std::vector<std::uint64_t> indices(grid.size());
    for (std::uint64_t i = 0; i < grid.size(); ++i)
        indices[i] = i;
    return PointSet(grid, std::move(indices));
}

void PointSet::build_index()
{
    bits_.clear();
    hashed_.clear();
    if (grid_.size() <= kDenseGridLimit) {
        bits_.assign((grid_.size() + 63) / 64, 0);
        for (auto i : members_)
            bits_[i >> 6U] |= std::uint64_t{1} << (i & 63U);
    } else {
        hashed_.insert(members_.begin(), members_.end());
    }
}

bool PointSet::contains_index(std::uint64_t index) const
{
    if (index >= grid_.size())
        return false;
    if (grid_.size() <= kDenseGridLimit)
        return (bits_[index >> 6U] >> (index & 63U)) & 1U;
    return hashed_.count(index) != 0;
}

bool PointSet::contains(std::span<const std::int64_t> p) const
{
    if (!grid_.contains(p))
        return false;
    return contains_index(grid_.encode(p));
}

std::vector<Point> PointSet::points() const
{
    std::vector<Point> out;
    out.reserve(members_.size());
    for (auto i : members_)
        out.push_back(grid_.decode(i));
    std::sort(out.begin(), out.end());
    return out;
}

PointSet PointSet::intersect(const PointSet& other) const
{
    if (!(grid_ == other.grid_))
        throw InputError("intersection of sets over different grids");
    std::vector<std::uint64_t> common;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::back_inserter(common));
    return PointSet(grid_, std::move(common));
}

Rational density(const PointSet& s)
{
    return Rational(BigInt(s.cardinality()), BigInt(s.grid().size()));
}

const PointSet& PrefixSplit::fiber(std::span<const std::int64_t> prefix) const
{
    return fibers.at(prefix_grid.encode(prefix));
}

PrefixSplit split_by_prefix(const PointSet& s, int r)
{
    const auto& grid = s.grid();
    if (r < 1 || r >= grid.dim())
        throw InputError("prefix length r must satisfy 1 <= r < n");
    GridParams prefix_grid(grid.base(), r);
    GridParams suffix_grid(grid.base(), grid.dim() - r);
    prefix_grid.require_materializable();

    // With coordinate 0 least significant, index = prefix + N^r * suffix.
    std::vector<std::vector<std::uint64_t>> buckets(prefix_grid.size());
    for (auto i : s.indices())
        buckets[i % prefix_grid.size()].push_back(i / prefix_grid.size());

    PrefixSplit split{prefix_grid, suffix_grid, {}};
    split.fibers.reserve(buckets.size());
    for (auto& b : buckets)
        split.fibers.emplace_back(suffix_grid, std::move(b));
    return split;
}

PointSet join_prefix_split(const PrefixSplit& split)
{
    GridParams grid(split.prefix_grid.base(), split.prefix_grid.dim() + split.suffix_grid.dim());
    std::vector<std::uint64_t> indices;
    for (std::uint64_t a = 0; a < split.fibers.size(); ++a)
        for (auto t : split.fibers[a].indices())
            indices.push_back(a + split.prefix_grid.size() * t);
    return PointSet(grid, std::move(indices));
}

std::uint64_t count_heavy_prefixes(const PointSet& s, int r, const Rational& c)
{
    if (c <= 0 || c > 1)
        throw InputError("density threshold c must lie in (0, 1]");
    const auto split = split_by_prefix(s, r);
    const Rational half = c / 2;
    return static_cast<std::uint64_t>(std::count_if(
        split.fibers.begin(), split.fibers.end(),
        [&](const PointSet& t) { return density(t) >= half; }));
}

PairIntersection max_pair_intersection(std::span<const PointSet> family)
{
    if (family.size() < 2)
        throw InputError("max_pair_intersection needs at least two sets");
    for (const auto& x : family)
        if (!(x.grid() == family[0].grid()))
            throw InputError("family members live in different grids");

    PairIntersection best{0, 1, Rational(-1)};
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            const auto d = density(family[i].intersect(family[j]));
            if (d > best.density)
                best = {i, j, d};
        }
    }
    return best;
}

EntropyProfile entropy_profile(int base, std::span<const EntropySample> samples)
{
    if (samples.empty())
        throw InputError("entropy profile of an empty sample list");
    if (base < 2)
        throw InputError("entropy base must be >= 2");
    EntropyProfile profile{{}, {0.0L, std::nullopt}};
    bool first = true;
    for (const auto& [dim, size] : samples) {
        if (dim < 1 || size < 1)
            throw InputError("entropy samples need n >= 1 and size >= 1");
        EntropyValue v{log_base(Rational(size), static_cast<long double>(base)) /
                           static_cast<long double>(dim),
                       std::nullopt};
        std::int64_t k = 0;
        if (exact_power(Rational(size), Rational(base), k)) {
            v.exact = Rational(k, dim);
            v.value = to_long_double(*v.exact);
        }
        profile.values.push_back(v);
        const bool larger = v.exact && profile.maximum.exact ? *v.exact > *profile.maximum.exact
                                                              : v.value > profile.maximum.value;
        if (first || larger)
            profile.maximum = v;
        first = false;
    }
    return profile;
}

PointSet read_point_set(std::istream& in)
{
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            if (out.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };
    if (!next_line(line))
        throw InputError("point-set file: missing header line 'N n'");
    std::istringstream header(line);
    int base = 0;
    int dim = 0;
    std::string extra;
    if (!(header >> base >> dim) || (header >> extra))
        throw InputError("point-set file: header must be 'N n', got '" + line + "'");
    GridParams grid(base, dim);

    std::vector<Point> points;
    std::size_t lineno = 1;
    while (next_line(line)) {
        ++lineno;
        std::istringstream row(line);
        Point p;
        std::string tok;
        while (row >> tok) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw InputError("point-set file: bad integer '" + tok + "' on line " +
                                 std::to_string(lineno));
            p.push_back(v);
        }
        if (p.size() != static_cast<std::size_t>(dim))
            throw InputError("point-set file: line " + std::to_string(lineno) + " has " +
                             std::to_string(p.size()) + " coordinates, expected " +
                             std::to_string(dim));
        if (!grid.contains(p))
            throw InputError("point-set file: line " + std::to_string(lineno) +
                             " lies outside the grid");
        points.push_back(std::move(p));
    }
    try {
        return PointSet::from_points(grid, points);
    } catch (const InputError& e) {
        throw InputError(std::string("point-set file: ") + e.what());
    }
}

void write_point_set(std::ostream& out, const PointSet& s)
{
    out << s.grid().base() << ' ' << s.grid().dim() << '\n';
    for (const auto& p : s.points()) {
        for (std::size_t i = 0; i < p.size(); ++i)
            out << (i ? " " : "") << p[i];
        out << '\n';
    }
}

}  // namespace hcube
