#pragma once

// Grids [N]^n, point sets inside them, densities and prefix fibers.

#include "hcube/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace hcube {

/// Integer vector. Used both for grid points and for cube generators, which
/// may have negative entries.
using Point = std::vector<std::int64_t>;

/// Grids with at most this many cells are materialized as a flat bit vector.
inline constexpr std::uint64_t kDenseGridLimit = std::uint64_t{1} << 24;

/// The grid [N]^n = {0, ..., N-1}^n.
class GridParams {
public:
    GridParams(int base, int dim);

    int base() const noexcept { return base_; }
    int dim() const noexcept { return dim_; }
    /// N^n; construction fails if this does not fit in 64 bits.
    std::uint64_t size() const noexcept { return size_; }

    bool contains(std::span<const std::int64_t> p) const noexcept;

    /// Index sum_i p_i * N^i, so coordinate 0 is least significant.
    std::uint64_t encode(std::span<const std::int64_t> p) const;
    Point decode(std::uint64_t index) const;

    /// Throws TooLarge unless N^n <= limit.
    void require_materializable(std::uint64_t limit = kDenseGridLimit) const;

    friend bool operator==(const GridParams&, const GridParams&) = default;

private:
    int base_;
    int dim_;
    std::uint64_t size_;
};

/// Strict lexicographic order on coordinate vectors, coordinate 0 first.
bool lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) noexcept;

/// An immutable finite subset of a grid with exact membership.
class PointSet {
public:
    explicit PointSet(GridParams grid);
    /// Builds from grid indices; duplicates collapse.
    PointSet(GridParams grid, std::vector<std::uint64_t> indices);

    /// Throws InputError on a point outside the grid or on a repeated point.
    static PointSet from_points(GridParams grid, const std::vector<Point>& points);
    static PointSet full(GridParams grid);

    const GridParams& grid() const noexcept { return grid_; }
    std::size_t cardinality() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    /// False for points outside the grid or of the wrong length.
    bool contains(std::span<const std::int64_t> p) const;
    bool contains_index(std::uint64_t index) const;

    /// Member indices, ascending.
    const std::vector<std::uint64_t>& indices() const noexcept { return members_; }
    /// Member points in lexicographic order.
    std::vector<Point> points() const;

    PointSet intersect(const PointSet& other) const;

    friend bool operator==(const PointSet& a, const PointSet& b)
    {
        return a.grid_ == b.grid_ && a.members_ == b.members_;
    }

private:
    void build_index();

    GridParams grid_;
    std::vector<std::uint64_t> members_;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> hashed_;
};

/// |S| / N^n, exact.
Rational density(const PointSet& s);

/// Fibers T_a = {p : a x p in S} for every prefix a in [N]^r, where a is the
/// first r coordinates.
struct PrefixSplit {
    GridParams prefix_grid;
    GridParams suffix_grid;
    /// Indexed by prefix_grid.encode(a); includes empty fibers.
    std::vector<PointSet> fibers;

    const PointSet& fiber(std::span<const std::int64_t> prefix) const;
};

PrefixSplit split_by_prefix(const PointSet& s, int r);

/// Re-glues a prefix decomposition into a set over [N]^(r + n').
PointSet join_prefix_split(const PrefixSplit& split);

/// Number of prefixes a in [N]^r whose fiber has density >= c/2.
std::uint64_t count_heavy_prefixes(const PointSet& s, int r, const Rational& c);

struct PairIntersection {
    std::size_t first;
    std::size_t second;
    Rational density;
};

/// The pair i < j maximizing density(X_i & X_j); ties go to the
/// lexicographically smallest (i, j).
PairIntersection max_pair_intersection(std::span<const PointSet> family);

struct EntropyValue {
    long double value;
    /// Set when size is an exact power of N, in which case value is k/n.
    std::optional<Rational> exact;
};

struct EntropySample {
    std::int64_t dim;
    BigInt size;
};

struct EntropyProfile {
    std::vector<EntropyValue> values;
    EntropyValue maximum;
};

/// log_N(size_i) / n_i per sample and the maximum over the samples.
EntropyProfile entropy_profile(int base, std::span<const EntropySample> samples);

/// Text format: "N n" on the first line, then one point per line.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& s);

}  // namespace hcube
