#pragma once

// Toric evaluation codes over prime fields: the monomials x^u, u a lattice
// point of P, evaluated on the torus (F_q^*)^n.

#include "hcube/cube.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hcube {

bool is_prime(std::int64_t q) noexcept;

class PrimeField {
public:
    /// Throws InputError unless q is a prime below 2^31.
    explicit PrimeField(std::int64_t q);

    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % q_; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + q_ - b) % q_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % q_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    /// Throws InputError for a == 0.
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : q_ - a; }

private:
    std::uint32_t q_;
};

class LatticePolytope {
public:
    /// Throws InputError for an empty vertex list or mixed dimensions.
    LatticePolytope(int dim, std::vector<Point> vertices);

    int dim() const noexcept { return dim_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }

private:
    int dim_;
    std::vector<Point> vertices_;
};

/// x lies in the convex hull of the vertices, decided by an exact phase-1
/// simplex on the convex-combination system.
bool in_convex_hull(const std::vector<Point>& vertices, const Point& x);

/// Integer points of the hull in lexicographic order. Throws TooLarge when the
/// bounding box holds more than box_cap points.
std::vector<Point> lattice_points(const LatticePolytope& p, std::uint64_t box_cap = 10'000'000);

struct ToricCode {
    PrimeField field;
    LatticePolytope polytope;
    /// Rows of the generator matrix, in lexicographic order.
    std::vector<Point> exponents;
    /// Torus points in lexicographic order over [1, q-1]^n.
    std::vector<Point> torus;
    /// Row-major, exponents.size() x torus.size().
    std::vector<std::uint32_t> generator;

    std::size_t block_length() const noexcept { return torus.size(); }
    std::size_t rows() const noexcept { return exponents.size(); }
    std::uint32_t entry(std::size_t row, std::size_t col) const { return generator[row * torus.size() + col]; }
};

/// Throws InputError when q is not prime or P leaves [0, q-2]^n, TooLarge
/// when (q-1)^n exceeds 10^6.
ToricCode build_code(const LatticePolytope& p, std::int64_t q);

/// Rank of a row-major matrix over F_q.
std::size_t rank_mod_p(std::vector<std::uint32_t> matrix, std::size_t rows, std::size_t cols,
                       const PrimeField& field);

/// Minimum weight of a nonzero codeword by enumerating all q^k messages in
/// parallel chunks. Throws TooLarge when q^k > 10^7.
std::uint64_t minimum_distance(const ToricCode& code, int threads = 0);

/// Single-threaded reference: every codeword is computed from scratch.
std::uint64_t minimum_distance_serial(const ToricCode& code);

struct CodeStats {
    std::int64_t q;
    int dim;
    std::uint64_t block_length;
    std::uint64_t k;
    std::uint64_t dmin;
    /// dmin / block_length
    Rational relative_distance;
    /// k / block_length
    Rational rate;
    /// M of the lattice points of P on the grid [max(2, q-1)]^n.
    int m;
};

CodeStats code_stats(const LatticePolytope& p, std::int64_t q, const SearchOptions& options = {},
                     int threads = 0);

struct FamilyRow {
    CodeStats stats;
    /// log_(q-1)(k) / n; absent for q = 2.
    std::optional<long double> entropy_term;
};

std::vector<FamilyRow> family_report(const std::vector<std::pair<LatticePolytope, std::int64_t>>& family,
                                     const SearchOptions& options = {}, int threads = 0);

struct PolytopeInput {
    std::int64_t q;
    LatticePolytope polytope;
};

/// "q n" on the first line, then one vertex of n integers per line.
PolytopeInput read_polytope(std::istream& in);

}  // namespace hcube
