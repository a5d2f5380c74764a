#pragma once

// Affine cubes {z + sum_{i in T} v_i : T subset of {1..m}} inside point sets,
// and the exact maximal cube dimension M(S).

#include "hcube/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hcube {

/// Which affine images of {0,1}^m count as cubes. Each notion is strictly
/// contained in the previous one.
enum class CubeNotion {
    /// The 2^m subset sums are pairwise distinct.
    VertexInjective,
    /// Generators linearly independent over Q.
    IndependentGenerators,
    /// Generators extend to a basis of Z^n.
    Unimodular,
};

inline constexpr CubeNotion kDefaultNotion = CubeNotion::IndependentGenerators;

std::string_view to_string(CubeNotion notion) noexcept;
/// Accepts the enum spelling (VERTEX_INJECTIVE) or a short form
/// (vertex-injective, injective, independent, unimodular).
CubeNotion parse_notion(std::string_view text);

struct AffineCube {
    Point base;
    std::vector<Point> generators;

    std::size_t dimension() const noexcept { return generators.size(); }
    friend bool operator==(const AffineCube&, const AffineCube&) = default;
};

/// Flips every generator whose first nonzero entry is negative (moving the
/// base accordingly) and sorts the generators lexicographically. The base of
/// the result is the lexicographically smallest vertex.
AffineCube canonicalize(AffineCube cube);
bool is_canonical(const AffineCube& cube);

/// "NOTION m=2 base=(0,0) gens=[(0,1),(1,0)]"
std::string to_canonical_text(const AffineCube& cube, CubeNotion notion);

/// Distinct subset sums, lexicographically sorted. Throws TooLarge for m > 30.
std::vector<Point> cube_vertices(const AffineCube& cube);

bool satisfies_notion(const AffineCube& cube, CubeNotion notion);

/// The cube meets the notion and every vertex lies in S. Throws InputError
/// when the cube and S disagree on the ambient dimension.
bool is_cube_in(const PointSet& s, const AffineCube& cube, CubeNotion notion);

struct SearchOptions {
    /// Node expansions allowed before the search gives up as inconclusive.
    std::uint64_t node_budget = 100'000'000;
    /// Worker threads; 0 means the OpenMP default.
    int threads = 0;
};

enum class SearchStatus { Found, None, Inconclusive };

struct CubeSearchResult {
    SearchStatus status = SearchStatus::None;
    /// Canonical witness of the requested dimension when status == Found.
    /// Among all witnesses it is the lexicographically smallest
    /// (base, generator_1, ..., generator_m).
    std::optional<AffineCube> witness;
    std::uint64_t nodes = 0;
};

/// Exhaustive search for an m-cube inside S. Exceeding the node budget gives
/// Inconclusive, never None.
CubeSearchResult find_cube(const PointSet& s, int m, CubeNotion notion,
                           const SearchOptions& options = {});

struct MValue {
    int m = 0;
    AffineCube witness;
    std::uint64_t nodes = 0;
};

/// Largest m such that S contains an m-cube, with its canonical witness.
/// Throws InputError for empty S and BudgetExceeded when inconclusive.
MValue m_value(const PointSet& s, CubeNotion notion, const SearchOptions& options = {});

/// Builds the (m+1)-cube with base a x z and generators (b - a) x 0 and
/// 0 x v_i from an m-cube over the suffix grid. Requires a != b.
AffineCube extend_cube(const Point& a, const Point& b, const AffineCube& inner);

/// Exact f_N(n, c): the minimum of M(S) over S in [N]^n with density >= c.
/// Requires N^n <= 16.
int f_exhaustive(int base, int dim, const Rational& c, CubeNotion notion,
                 const SearchOptions& options = {});

struct FSampled {
    /// Smallest M(S) seen; an upper bound on f_N(n, c).
    int upper_bound;
    std::uint64_t samples;
};

/// Sampled variant for grids too large to enumerate: uniform random subsets
/// of size ceil(c N^n).
FSampled f_sampled(int base, int dim, const Rational& c, CubeNotion notion,
                   std::uint64_t samples, std::uint64_t seed, const SearchOptions& options = {});

/// Independent brute-force M(S) for N^n <= 512: enumerates the base point and
/// the m images of the unit vectors directly, with no pruning.
int m_value_oracle(const PointSet& s, CubeNotion notion);

}  // namespace hcube
