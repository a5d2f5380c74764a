#include "hcube/integer_linalg.hpp"

#include "hcube/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hcube {

namespace {

using Wide = __int128;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b)
{
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(Wide x)
{
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw TooLarge("echelon basis entry overflowed 64 bits");
    return static_cast<std::int64_t>(x);
}

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix to_big(const std::vector<Point>& rows)
{
    BigMatrix m;
    m.reserve(rows.size());
    for (const auto& r : rows)
        m.emplace_back(r.begin(), r.end());
    return m;
}

}  // namespace

bool EchelonBasis::reduce(std::span<const std::int64_t> v, std::vector<std::int64_t>& out,
                          std::size_t& pivot) const
{
    if (v.size() != dim_)
        throw InputError("vector length does not match basis dimension");
    std::vector<Wide> w(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if (w[p] == 0)
            continue;
        const Wide a = rows_[i][p];
        const Wide b = w[p];
        Wide content = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            w[j] = a * w[j] - b * rows_[i][j];
            content = wide_gcd(content, w[j]);
        }
        if (content > 1)
            for (auto& x : w)
                x /= content;
    }
    const auto it = std::find_if(w.begin(), w.end(), [](Wide x) { return x != 0; });
    if (it == w.end())
        return false;
    pivot = static_cast<std::size_t>(it - w.begin());
    out.resize(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
        out[j] = narrow(w[j]);
    return true;
}

bool EchelonBasis::is_independent(std::span<const std::int64_t> v) const
{
    std::vector<std::int64_t> scratch;
    std::size_t pivot = 0;
    return reduce(v, scratch, pivot);
}

bool EchelonBasis::try_add(std::span<const std::int64_t> v)
{
    std::vector<std::int64_t> row;
    std::size_t pivot = 0;
    if (!reduce(v, row, pivot))
        return false;
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

std::size_t rational_rank(const std::vector<Point>& rows)
{
    if (rows.empty())
        return 0;
    auto a = to_big(rows);
    const std::size_t m = a.size();
    const std::size_t n = a[0].size();
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && a[piv][col] == 0)
            ++piv;
        if (piv == m)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

std::vector<BigInt> smith_invariants(const std::vector<Point>& rows)
{
    if (rows.empty())
        return {};
    auto a = to_big(rows);
    const std::size_t m = a.size();
    const std::size_t n = a[0].size();
    std::vector<BigInt> diag;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = m;
            std::size_t pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m)
                return diag;
            std::swap(a[t], a[pi]);
            for (auto& row : a)
                std::swap(row[t], row[pj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                const BigInt q = a[i][t] / a[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < n; ++j)
                        a[i][j] -= q * a[t][j];
                clean = clean && a[i][t] == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                const BigInt q = a[t][j] / a[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < m; ++i)
                        a[i][j] -= q * a[i][t];
                clean = clean && a[t][j] == 0;
            }
            if (!clean)
                continue;

            // Divisibility: fold an offending row into row t and go again.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < n; ++k)
                            a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

bool extends_to_lattice_basis(const std::vector<Point>& rows)
{
    if (rows.empty())
        return true;
    if (rows.size() > rows[0].size())
        return false;
    const auto inv = smith_invariants(rows);
    return inv.size() == rows.size() &&
           std::all_of(inv.begin(), inv.end(), [](const BigInt& d) { return d == 1; });
}

}  // namespace hcube
