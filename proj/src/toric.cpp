#include "hcube/toric.hpp"

#include "hcube/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hcube {

bool is_prime(std::int64_t q) noexcept
{
    if (q < 2)
        return false;
    for (std::int64_t d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

PrimeField::PrimeField(std::int64_t q)
{
    if (q >= (std::int64_t{1} << 31) || !is_prime(q))
        throw InputError("field order " + std::to_string(q) + " is not a prime below 2^31");
    q_ = static_cast<std::uint32_t>(q);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept
{
    std::uint32_t result = 1 % q_;
    a %= q_;
    while (e > 0) {
        if (e & 1)
            result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a % q_ == 0)
        throw InputError("zero has no inverse");
    return pow(a, q_ - 2);
}

LatticePolytope::LatticePolytope(int dim, std::vector<Point> vertices) : dim_(dim), vertices_(std::move(vertices))
{
    if (dim < 1)
        throw InputError("polytope dimension must be >= 1");
    if (vertices_.empty())
        throw InputError("polytope needs at least one vertex");
    for (const auto& v : vertices_)
        if (v.size() != static_cast<std::size_t>(dim))
            throw InputError("polytope vertex has the wrong number of coordinates");
}

bool in_convex_hull(const std::vector<Point>& vertices, const Point& x)
{
    // Phase 1 for: sum_j lambda_j v_j = x, sum_j lambda_j = 1, lambda >= 0.
    const std::size_t k = vertices.size();
    const std::size_t rows = x.size() + 1;
    const std::size_t cols = k + rows;  // structural, then artificial
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            t[i][j] = i < x.size() ? vertices[j][i] : 1;
        t[i][cols] = i < x.size() ? x[i] : 1;
        if (t[i][cols] < 0)
            for (auto& e : t[i])
                e = -e;
        t[i][k + i] = 1;
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i)
        basis[i] = k + i;
    // Reduced costs of minimizing the sum of artificials.
    std::vector<Rational> cost(cols + 1);
    for (std::size_t j = 0; j <= cols; ++j) {
        if (j >= k && j < cols)
            continue;
        for (std::size_t i = 0; i < rows; ++i)
            cost[j] -= t[i][j];
    }

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                enter = j;  // Bland: smallest improving column
                break;
            }
        if (enter == cols)
            break;
        std::size_t leave = rows;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][enter] <= 0)
                continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows)
            break;  // unbounded cannot occur in phase 1
        const Rational pivot = t[leave][enter];
        for (auto& e : t[leave])
            e /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || t[i][enter] == 0)
                continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j)
                t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j)
                cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    // cost[cols] holds minus the residual sum of artificials.
    return cost[cols] == 0;
}

std::vector<Point> lattice_points(const LatticePolytope& p, std::uint64_t box_cap)
{
    const auto n = static_cast<std::size_t>(p.dim());
    Point lo = p.vertices().front();
    Point hi = lo;
    for (const auto& v : p.vertices())
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    BigInt box = 1;
    for (std::size_t i = 0; i < n; ++i)
        box *= BigInt(hi[i]) - lo[i] + 1;
    if (box > box_cap)
        throw TooLarge("polytope bounding box has " + box.str() + " points, above the cap " +
                       std::to_string(box_cap));

    std::vector<Point> out;
    if (p.vertices().size() == 1)
        return {p.vertices().front()};
    // Odometer with the last coordinate fastest gives lexicographic order.
    Point x = lo;
    for (;;) {
        if (in_convex_hull(p.vertices(), x))
            out.push_back(x);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                break;
            }
            x[i] = lo[i];
            if (i == 0)
                return out;
        }
    }
}

ToricCode build_code(const LatticePolytope& p, std::int64_t q)
{
    const PrimeField field(q);
    const auto n = static_cast<std::size_t>(p.dim());
    for (const auto& v : p.vertices())
        for (auto c : v)
            if (c < 0 || c > q - 2)
                throw InputError("polytope vertex leaves the box [0, q-2]^n");
    BigInt length = ipow(BigInt(q - 1), n);
    if (length > 1'000'000)
        throw TooLarge("block length (q-1)^n = " + length.str() + " exceeds 10^6");

    ToricCode code{field, p, lattice_points(p), {}, {}};
    const auto cols = length.convert_to<std::size_t>();
    code.torus.reserve(cols);
    Point t(n, 1);
    for (std::size_t c = 0; c < cols; ++c) {
        code.torus.push_back(t);
        for (std::size_t i = n; i-- > 0;) {
            if (t[i] < q - 1) {
                ++t[i];
                break;
            }
            t[i] = 1;
        }
    }
    code.generator.resize(code.exponents.size() * cols);
    for (std::size_t r = 0; r < code.exponents.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::uint32_t value = 1;
            for (std::size_t i = 0; i < n; ++i)
                value = field.mul(value, field.pow(static_cast<std::uint32_t>(code.torus[c][i]),
                                                   static_cast<std::uint64_t>(code.exponents[r][i])));
            code.generator[r * cols + c] = value;
        }
    return code;
}

std::size_t rank_mod_p(std::vector<std::uint32_t> a, std::size_t rows, std::size_t cols, const PrimeField& field)
{
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        for (std::size_t j = 0; j < cols; ++j)
            std::swap(a[pivot * cols + j], a[rank * cols + j]);
        const std::uint32_t scale = field.inv(a[rank * cols + c]);
        for (std::size_t j = 0; j < cols; ++j)
            a[rank * cols + j] = field.mul(a[rank * cols + j], scale);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i * cols + c] == 0)
                continue;
            const std::uint32_t f = a[i * cols + c];
            for (std::size_t j = 0; j < cols; ++j)
                a[i * cols + j] = field.sub(a[i * cols + j], field.mul(f, a[rank * cols + j]));
        }
        ++rank;
    }
    return rank;
}

namespace {

std::uint64_t message_count(const ToricCode& code)
{
    const BigInt total = ipow(BigInt(code.field.order()), code.rows());
    if (total > 10'000'000)
        throw TooLarge("q^k = " + total.str() + " messages exceeds 10^7");
    return total.convert_to<std::uint64_t>();
}

}  // namespace

std::uint64_t minimum_distance(const ToricCode& code, int threads)
{
    const std::uint64_t total = message_count(code);
    const std::uint32_t q = code.field.order();
    const std::size_t k = code.rows();
    const std::size_t len = code.block_length();
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 1024);
    std::atomic<std::uint64_t> best{len + 1};

#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : omp_get_max_threads())
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
        std::uint64_t lo = total * chunk / chunks;
        const std::uint64_t hi = total * (chunk + 1) / chunks;
        std::vector<std::uint32_t> digits(k);
        std::vector<std::uint32_t> word(len, 0);
        std::uint64_t rest = lo;
        for (std::size_t r = 0; r < k; ++r) {
            digits[r] = static_cast<std::uint32_t>(rest % q);
            rest /= q;
            for (std::size_t c = 0; c < len && digits[r] != 0; ++c)
                word[c] = code.field.add(word[c], code.field.mul(digits[r], code.entry(r, c)));
        }
        for (std::uint64_t m = lo; m < hi; ++m) {
            if (m != 0) {
                const std::uint64_t bound = best.load(std::memory_order_relaxed);
                std::uint64_t weight = 0;
                for (std::size_t c = 0; c < len && weight < bound; ++c)
                    weight += word[c] != 0;
                std::uint64_t seen = bound;
                while (weight < seen && !best.compare_exchange_weak(seen, weight)) {
                }
            }
            // Next message: add row r while digit r wraps around.
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < len; ++c)
                    word[c] = code.field.add(word[c], code.entry(r, c));
                if (++digits[r] < q)
                    break;
                digits[r] = 0;
            }
        }
    }
    return best.load();
}

std::uint64_t minimum_distance_serial(const ToricCode& code)
{
    const std::uint64_t total = message_count(code);
    const std::uint32_t q = code.field.order();
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> digits(code.rows());
    for (std::uint64_t m = 1; m < total; ++m) {
        std::uint64_t rest = m;
        for (auto& d : digits) {
            d = static_cast<std::uint32_t>(rest % q);
            rest /= q;
        }
        std::uint64_t weight = 0;
        for (std::size_t c = 0; c < code.block_length(); ++c) {
            std::uint32_t value = 0;
            for (std::size_t r = 0; r < code.rows(); ++r)
                value = code.field.add(value, code.field.mul(digits[r], code.entry(r, c)));
            weight += value != 0;
        }
        best = std::min(best, weight);
    }
    return best;
}

CodeStats code_stats(const LatticePolytope& p, std::int64_t q, const SearchOptions& options, int threads)
{
    const ToricCode code = build_code(p, q);
    const std::size_t k = rank_mod_p(code.generator, code.rows(), code.block_length(), code.field);
    if (k != code.rows())
        throw std::logic_error("toric generator matrix is not of full row rank");
    const std::uint64_t dmin = minimum_distance(code, threads);
    const std::uint64_t len = code.block_length();

    const GridParams grid(std::max<int>(2, static_cast<int>(q - 1)), p.dim());
    const PointSet s = PointSet::from_points(grid, code.exponents);
    const MValue mv = m_value(s, kDefaultNotion, options);
    return {q,
            p.dim(),
            len,
            k,
            dmin,
            Rational(dmin, len),
            Rational(k, len),
            mv.m};
}

std::vector<FamilyRow> family_report(const std::vector<std::pair<LatticePolytope, std::int64_t>>& family,
                                     const SearchOptions& options, int threads)
{
    std::vector<FamilyRow> rows;
    for (const auto& [p, q] : family) {
        FamilyRow row{code_stats(p, q, options, threads), std::nullopt};
        if (q > 2)
            row.entropy_term = std::log(static_cast<long double>(row.stats.k)) /
                               std::log(static_cast<long double>(q - 1)) / p.dim();
        rows.push_back(std::move(row));
    }
    return rows;
}

PolytopeInput read_polytope(std::istream& in)
{
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, out))
            if (out.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        return false;
    };
    if (!next_line(line))
        throw InputError("polytope file: missing header line 'q n'");
    std::istringstream header(line);
    std::int64_t q = 0;
    int dim = 0;
    std::string extra;
    if (!(header >> q >> dim) || (header >> extra))
        throw InputError("polytope file: header must be 'q n', got '" + line + "'");
    if (dim < 1 || dim > 16)
        throw InputError("polytope file: dimension must lie in [1, 16]");

    std::vector<Point> vertices;
    std::size_t lineno = 1;
    while (next_line(line)) {
        ++lineno;
        std::istringstream row(line);
        Point v;
        std::string tok;
        while (row >> tok) {
            std::size_t used = 0;
            long long value = 0;
            try {
                value = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw InputError("polytope file: bad integer '" + tok + "' on line " + std::to_string(lineno));
            v.push_back(value);
        }
        if (v.size() != static_cast<std::size_t>(dim))
            throw InputError("polytope file: line " + std::to_string(lineno) + " has " +
                             std::to_string(v.size()) + " coordinates, expected " + std::to_string(dim));
        vertices.push_back(std::move(v));
    }
    if (vertices.empty())
        throw InputError("polytope file: no vertices");
    return {q, LatticePolytope(dim, std::move(vertices))};
}

}  // namespace hcube
