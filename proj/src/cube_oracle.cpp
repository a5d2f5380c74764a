// Brute-force reference for M(S). Shares nothing with the search in cube.cpp:
// membership, rank and saturation are recomputed here from first principles.

#include "hcube/cube.hpp"
#include "hcube/errors.hpp"

#include <numeric>
#include <set>

namespace hcube {

namespace {

std::size_t rank_over_q(const std::vector<Point>& rows)
{
    if (rows.empty())
        return 0;
    std::vector<std::vector<Rational>> a;
    for (const auto& r : rows)
        a.emplace_back(r.begin(), r.end());
    const std::size_t m = a.size();
    const std::size_t n = a[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && a[piv][col] == 0)
            ++piv;
        if (piv == m)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || a[i][col] == 0)
                continue;
            const Rational f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < n; ++j)
                a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

BigInt laplace_det(const std::vector<std::vector<BigInt>>& a)
{
    const std::size_t n = a.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return a[0][0];
    BigInt det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0)
            continue;
        std::vector<std::vector<BigInt>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        const BigInt term = a[0][j] * laplace_det(minor);
        det += (j % 2 == 0) ? term : BigInt(-term);
    }
    return det;
}

/// gcd of all maximal minors; 1 exactly when the rows extend to a Z-basis.
BigInt maximal_minor_gcd(const std::vector<Point>& rows)
{
    const std::size_t m = rows.size();
    const std::size_t n = m ? rows[0].size() : 0;
    if (m == 0)
        return 1;
    if (m > n)
        return 0;
    BigInt g = 0;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
        std::vector<std::vector<BigInt>> sub;
        for (const auto& r : rows) {
            std::vector<BigInt> row;
            for (std::size_t j = 0; j < n; ++j)
                if (pick[j])
                    row.emplace_back(r[j]);
            sub.push_back(std::move(row));
        }
        g = gcd(g, abs(laplace_det(sub)));
        if (g == 1)
            return g;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return g;
}

bool cube_ok(const std::set<Point>& members, const Point& z, const std::vector<Point>& gens,
             CubeNotion notion)
{
    const std::size_t m = gens.size();
    std::set<Point> seen;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Point v = z;
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1U)
                for (std::size_t k = 0; k < v.size(); ++k)
                    v[k] += gens[i][k];
        if (!members.count(v) || !seen.insert(v).second)
            return false;
    }
    switch (notion) {
    case CubeNotion::VertexInjective:
        return true;
    case CubeNotion::IndependentGenerators:
        return rank_over_q(gens) == m;
    case CubeNotion::Unimodular:
        return maximal_minor_gcd(gens) == 1;
    }
    return false;
}

bool has_cube(const std::vector<Point>& pts, const std::set<Point>& members, std::size_t m,
              CubeNotion notion)
{
    // A cube is fixed by its base z and the images z + v_i of the unit vectors.
    for (const auto& z : pts) {
        std::vector<Point> others;
        for (const auto& p : pts)
            if (p != z)
                others.push_back(p);
        if (others.size() < m)
            continue;
        std::vector<bool> pick(others.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
        do {
            std::vector<Point> gens;
            for (std::size_t i = 0; i < others.size(); ++i) {
                if (!pick[i])
                    continue;
                Point g(z.size());
                for (std::size_t k = 0; k < z.size(); ++k)
                    g[k] = others[i][k] - z[k];
                gens.push_back(std::move(g));
            }
            if (cube_ok(members, z, gens, notion))
                return true;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return false;
}

}  // namespace

int m_value_oracle(const PointSet& s, CubeNotion notion)
{
    if (s.grid().size() > 512)
        throw TooLarge("the brute-force oracle is limited to N^n <= 512");
    if (s.empty())
        throw InputError("M of the empty set is undefined");
    const auto pts = s.points();
    const std::set<Point> members(pts.begin(), pts.end());
    std::size_t m = 0;
    while (has_cube(pts, members, m + 1, notion))
        ++m;
    return static_cast<int>(m);
}

}  // namespace hcube
