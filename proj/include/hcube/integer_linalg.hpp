#pragma once

// Exact integer linear algebra for generator checks: rank over Q and
// saturation (extension to a basis of Z^n).

#include "hcube/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hcube {

/// Row echelon basis grown one integer row at a time. Rows are reduced
/// fraction-free and divided by their content, so entries stay small.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    /// Adds v when it is independent of the current rows over Q.
    bool try_add(std::span<const std::int64_t> v);
    bool is_independent(std::span<const std::int64_t> v) const;
    std::size_t rank() const noexcept { return rows_.size(); }

private:
    /// Reduces v against the rows; false when v lies in their span.
    bool reduce(std::span<const std::int64_t> v, std::vector<std::int64_t>& out,
                std::size_t& pivot) const;

    std::size_t dim_;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Rank over Q by Bareiss elimination on arbitrary-precision integers.
std::size_t rational_rank(const std::vector<Point>& rows);

/// Nonzero invariant factors d_1 | d_2 | ... of the row matrix.
std::vector<BigInt> smith_invariants(const std::vector<Point>& rows);

/// True when the rows are independent and extend to a basis of Z^n, i.e.
/// every invariant factor is 1.
bool extends_to_lattice_basis(const std::vector<Point>& rows);

}  // namespace hcube
