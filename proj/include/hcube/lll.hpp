#pragma once

// Algorithmic Local Lemma constructions: Moser-Tardos resampling of a
// Bernoulli subset of [N]^n until it contains no r-cube, plus an independent
// verifier and certificates.

#include "hcube/bounds.hpp"
#include "hcube/cube.hpp"
#include "hcube/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hcube {

/// Distinct vertex sets of vertex-injective affine maps {0,1}^r -> [N]^n.
struct BadEventCatalog {
    GridParams grid;
    int r;
    /// Each event is a sorted list of 2^r grid indices; events are sorted.
    std::vector<std::vector<std::uint64_t>> events;

    std::size_t size() const noexcept { return events.size(); }
};

/// Enumerates all (r+1)-tuples (z, z + v_1, ..., z + v_r) of grid points and
/// keeps the distinct injective images. Throws TooLarge when N^(n(r+1))
/// exceeds cap.
BadEventCatalog enumerate_cube_images(int base, int dim, int r, std::uint64_t cap = 10'000'000);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct SamplerConfig {
    Rational p;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t max_rounds = 100'000;
    CubeNotion notion = kDefaultNotion;
    SearchOptions search;
};

enum class SampleStatus { CubeFree, RoundsExhausted, Inconclusive };

std::string_view to_string(SampleStatus status) noexcept;

struct SampleOutcome {
    SampleStatus status;
    /// Final state: cube-free on success, the last state otherwise.
    PointSet set;
    std::uint64_t rounds;
    std::optional<AffineCube> last_violation;
};

/// Every cell starts as an independent Bernoulli(p) draw. While the set
/// contains an r-cube, the canonical first one (find_cube's witness) has its
/// vertex cells redrawn. Deterministic in (grid, r, config), independent of
/// the thread count.
SampleOutcome moser_tardos_sample(const GridParams& grid, int r, const SamplerConfig& config);

enum class VerifyStatus { Verified, Violated, Inconclusive };

std::string_view to_string(VerifyStatus status) noexcept;

struct Verification {
    VerifyStatus status;
    Rational density;
    std::uint64_t cardinality;
    std::optional<AffineCube> witness;
    std::uint64_t nodes;
};

/// Fresh exhaustive check that S has no r-cube, sharing no state with the
/// sampler. A budget overrun gives Inconclusive, never Verified.
Verification verify_construction(const PointSet& s, int r, CubeNotion notion,
                                 const SearchOptions& options = {});

struct Certificate {
    GridParams grid;
    int r;
    CubeNotion notion;
    Rational p;
    std::uint64_t seed;
    std::uint64_t rounds;
    Rational density;
    std::uint64_t cardinality;
    bool verified;
    std::optional<AffineCube> witness;
};

enum class ConstructionStatus {
    Success,
    NoValidR,
    NoValidDensity,
    RoundsExhausted,
    Inconclusive,
    DensityTargetMissed,
    SizeTargetMissed,
};

std::string_view to_string(ConstructionStatus status) noexcept;

struct ConstructionOptions {
    CubeNotion notion = kDefaultNotion;
    std::uint64_t max_rounds = 100'000;
    SearchOptions search;
};

struct DenseConstruction {
    ConstructionStatus status;
    std::optional<std::int64_t> r;
    Rational target_density;
    /// Three standard deviations of the Bernoulli density estimate.
    long double tolerance = 0;
    std::optional<EqEpCheck> eq_ep;
    std::optional<PointSet> set;
    std::optional<Certificate> certificate;
};

/// Dense set with no r-cube, r = choose_r_dense(n, eps), inclusion
/// probability c_n. Success needs a verified cube-free set whose density is at
/// least c_n minus the tolerance.
DenseConstruction construct_dense_small_m(std::int64_t n, int base, const Rational& epsilon,
                                          std::uint64_t seed, const ConstructionOptions& options = {});

/// Exponents (base N) of the bound chain on 4 L p^(2^r) for the sparse
/// construction, with p = N^-floor(eps n) and L <= N^(n(r+1)).
struct SparseExponentChain {
    /// log_N 4 + n(r+1) - 2^r floor(eps n)
    long double line1;
    /// log_N 4 + n(r+1) - 2^r (eps n - 1)
    long double line2;
    /// 2 + n(r+1) - 2^(r-1) eps n
    Rational line3;
    /// n(r+3) - 2^(r-1) eps n
    Rational line4;
    bool chain_holds;
    bool final_negative;
};

SparseExponentChain sparse_exponent_chain(std::int64_t n, int base, const Rational& epsilon,
                                          std::int64_t r);

struct SparseConstruction {
    ConstructionStatus status;
    std::int64_t r;
    Rational p;
    SparseExponentChain chain;
    /// |S| >= N^((1-eps) n), exact.
    bool size_target_met = false;
    std::optional<PointSet> set;
    std::optional<Certificate> certificate;
};

/// Sparse set of near-full entropy with no r-cube, r = choose_r_sparse(eps),
/// inclusion probability N^-floor(eps n).
SparseConstruction construct_sparse_bounded_m(std::int64_t n, int base, const Rational& epsilon,
                                              std::uint64_t seed, const ConstructionOptions& options = {});

/// |S| >= N^((1 - eps) n) decided with integers.
bool meets_size_target(std::uint64_t cardinality, int base, std::int64_t n, const Rational& epsilon);

}  // namespace hcube
