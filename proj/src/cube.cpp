#include "hcube/cube.hpp"

#include "hcube/errors.hpp"
#include "hcube/integer_linalg.hpp"
#include "hcube/random.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>

namespace hcube {

std::string_view to_string(CubeNotion notion) noexcept
{
    switch (notion) {
    case CubeNotion::VertexInjective:
        return "VERTEX_INJECTIVE";
    case CubeNotion::IndependentGenerators:
        return "INDEPENDENT_GENERATORS";
    case CubeNotion::Unimodular:
        return "UNIMODULAR";
    }
    return "UNKNOWN";
}

CubeNotion parse_notion(std::string_view text)
{
    std::string key;
    for (char ch : text)
        key.push_back(ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (key == "VERTEX_INJECTIVE" || key == "INJECTIVE")
        return CubeNotion::VertexInjective;
    if (key == "INDEPENDENT_GENERATORS" || key == "INDEPENDENT")
        return CubeNotion::IndependentGenerators;
    if (key == "UNIMODULAR")
        return CubeNotion::Unimodular;
    throw InputError("unknown cube notion '" + std::string(text) + "'");
}

namespace {

Point add(const Point& a, const Point& b)
{
    Point c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

std::string format_point(const Point& p)
{
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(p[i]);
    }
    return out + ")";
}

int resolve_threads(int requested)
{
    return requested > 0 ? requested : omp_get_max_threads();
}

struct BudgetHit {};

/// Node accounting shared by all workers of one search.
class NodeCounter {
public:
    explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}

    void tick()
    {
        if (exhausted_.load(std::memory_order_relaxed))
            throw BudgetHit{};
        if (nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
            exhausted_.store(true, std::memory_order_relaxed);
            throw BudgetHit{};
        }
    }
    bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
    std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }

private:
    std::uint64_t budget_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
};

/// Collects the first exception thrown inside a parallel region.
class ErrorSlot {
public:
    void capture()
    {
        std::lock_guard lock(mutex_);
        if (!error_)
            error_ = std::current_exception();
    }
    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

/// Depth-first cube growth from a fixed base point z. Every candidate shift
/// d = s - z (s in S, s lexicographically after z) is lex-positive, and
/// shifts are taken in increasing lex order, so each cube is met once, in
/// canonical form. A level doubles the vertex set: V -> V u (V + d).
class BaseSearch {
public:
    BaseSearch(const PointSet& s, CubeNotion notion, const Point& base,
               std::span<const Point> later_points, NodeCounter& counter)
        : set_(s), grid_(s.grid()), notion_(notion), counter_(counter)
    {
        shifts_.reserve(later_points.size());
        for (const auto& p : later_points) {
            Point d(p.size());
            for (std::size_t i = 0; i < p.size(); ++i)
                d[i] = p[i] - base[i];
            shifts_.push_back(std::move(d));
        }
        root_.verts.push_back(base);
        root_.keys.push_back(grid_.encode(base));
        root_.cands.resize(shifts_.size());
        for (std::uint32_t i = 0; i < root_.cands.size(); ++i)
            root_.cands[i] = i;
        root_.basis = EchelonBasis(static_cast<std::size_t>(grid_.dim()));
    }

    std::size_t candidate_count() const noexcept { return shifts_.size(); }

    /// Lexicographically first cube with `target` generators at this base.
    bool find(int target)
    {
        gens_.clear();
        return grow_exact(root_, target);
    }

    void explore_max(std::atomic<int>& best, int cap)
    {
        gens_.clear();
        grow_max(root_, 0, best, cap);
    }

    const std::vector<Point>& generators() const noexcept { return gens_; }

private:
    struct Level {
        std::vector<Point> verts;
        std::vector<std::uint64_t> keys;   // sorted grid indices of verts
        std::vector<std::uint32_t> cands;  // shifts d with verts + d inside S
        EchelonBasis basis{0};
    };

    bool translate_inside(const Point& v, const Point& d) const
    {
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::int64_t x = v[i] + d[i];
            if (x < 0 || x >= grid_.base())
                return false;
        }
        return set_.contains_index(grid_.encode(add(v, d)));
    }

    bool admissible(const Level& lv, const Point& d) const
    {
        switch (notion_) {
        case CubeNotion::VertexInjective:
            // V + d is inside S already; it must miss V itself.
            for (const auto& v : lv.verts)
                if (std::binary_search(lv.keys.begin(), lv.keys.end(), grid_.encode(add(v, d))))
                    return false;
            return true;
        case CubeNotion::IndependentGenerators:
            return lv.basis.is_independent(d);
        case CubeNotion::Unimodular: {
            if (!lv.basis.is_independent(d))
                return false;
            auto rows = gens_;
            rows.push_back(d);
            return extends_to_lattice_basis(rows);
        }
        }
        return false;
    }

    Level next_level(const Level& lv, std::size_t pos, const Point& d) const
    {
        Level next;
        next.verts = lv.verts;
        next.verts.reserve(lv.verts.size() * 2);
        std::vector<Point> moved;
        moved.reserve(lv.verts.size());
        for (const auto& v : lv.verts)
            moved.push_back(add(v, d));
        next.keys = lv.keys;
        for (const auto& w : moved)
            next.keys.push_back(grid_.encode(w));
        std::sort(next.keys.begin(), next.keys.end());

        for (std::size_t i = pos + 1; i < lv.cands.size(); ++i) {
            const Point& e = shifts_[lv.cands[i]];
            const bool fits = std::all_of(moved.begin(), moved.end(),
                                          [&](const Point& w) { return translate_inside(w, e); });
            if (fits)
                next.cands.push_back(lv.cands[i]);
        }
        next.verts.insert(next.verts.end(), moved.begin(), moved.end());
        next.basis = lv.basis;
        if (notion_ != CubeNotion::VertexInjective)
            next.basis.try_add(d);
        return next;
    }

    bool grow_exact(const Level& lv, int need)
    {
        if (need == 0)
            return true;
        const std::size_t want = static_cast<std::size_t>(need);
        for (std::size_t pos = 0; pos < lv.cands.size(); ++pos) {
            if (lv.cands.size() - pos < want)
                return false;
            counter_.tick();
            const Point& d = shifts_[lv.cands[pos]];
            if (!admissible(lv, d))
                continue;
            Level next = next_level(lv, pos, d);
            if (next.cands.size() + 1 < want)
                continue;
            gens_.push_back(d);
            if (grow_exact(next, need - 1))
                return true;
            gens_.pop_back();
        }
        return false;
    }

    void grow_max(const Level& lv, int depth, std::atomic<int>& best, int cap)
    {
        int seen = best.load(std::memory_order_relaxed);
        while (depth > seen && !best.compare_exchange_weak(seen, depth, std::memory_order_relaxed)) {
        }
        for (std::size_t pos = 0; pos < lv.cands.size(); ++pos) {
            const int bound = depth + static_cast<int>(lv.cands.size() - pos);
            const int current = best.load(std::memory_order_relaxed);
            if (bound <= current || current >= cap)
                return;
            counter_.tick();
            const Point& d = shifts_[lv.cands[pos]];
            if (!admissible(lv, d))
                continue;
            Level next = next_level(lv, pos, d);
            gens_.push_back(d);
            grow_max(next, depth + 1, best, cap);
            gens_.pop_back();
        }
    }

    const PointSet& set_;
    const GridParams& grid_;
    CubeNotion notion_;
    NodeCounter& counter_;
    std::vector<Point> shifts_;
    Level root_;
    std::vector<Point> gens_;
};

int dimension_cap(const PointSet& s, CubeNotion notion)
{
    int cap = std::bit_width(static_cast<std::uint64_t>(s.cardinality())) - 1;
    if (notion != CubeNotion::VertexInjective)
        cap = std::min(cap, s.grid().dim());
    return cap;
}

enum class BaseState : unsigned char { Pending, Done, Found, Aborted };

}  // namespace

AffineCube canonicalize(AffineCube cube)
{
    for (auto& g : cube.generators) {
        const auto it = std::find_if(g.begin(), g.end(), [](std::int64_t x) { return x != 0; });
        if (it != g.end() && *it < 0) {
            cube.base = add(cube.base, g);
            for (auto& x : g)
                x = -x;
        }
    }
    std::sort(cube.generators.begin(), cube.generators.end());
    return cube;
}

bool is_canonical(const AffineCube& cube)
{
    return canonicalize(cube) == cube;
}

std::string to_canonical_text(const AffineCube& cube, CubeNotion notion)
{
    std::string out(to_string(notion));
    out += " m=" + std::to_string(cube.dimension()) + " base=" + format_point(cube.base) + " gens=[";
    for (std::size_t i = 0; i < cube.generators.size(); ++i) {
        if (i)
            out += ',';
        out += format_point(cube.generators[i]);
    }
    return out + "]";
}

std::vector<Point> cube_vertices(const AffineCube& cube)
{
    const std::size_t m = cube.dimension();
    if (m > 30)
        throw TooLarge("cube dimension above 30 cannot be materialized");
    for (const auto& g : cube.generators)
        if (g.size() != cube.base.size())
            throw InputError("generator length differs from base length");
    std::vector<Point> verts{cube.base};
    verts.reserve(std::size_t{1} << m);
    for (const auto& g : cube.generators) {
        const std::size_t half = verts.size();
        for (std::size_t i = 0; i < half; ++i)
            verts.push_back(add(verts[i], g));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    return verts;
}

bool satisfies_notion(const AffineCube& cube, CubeNotion notion)
{
    const std::size_t m = cube.dimension();
    switch (notion) {
    case CubeNotion::VertexInjective:
        return m <= 30 && cube_vertices(cube).size() == (std::size_t{1} << m);
    case CubeNotion::IndependentGenerators:
        return rational_rank(cube.generators) == m;
    case CubeNotion::Unimodular:
        return extends_to_lattice_basis(cube.generators);
    }
    return false;
}

bool is_cube_in(const PointSet& s, const AffineCube& cube, CubeNotion notion)
{
    const auto n = static_cast<std::size_t>(s.grid().dim());
    if (cube.base.size() != n)
        throw InputError("cube dimension does not match the point set's grid");
    for (const auto& g : cube.generators)
        if (g.size() != n)
            throw InputError("cube dimension does not match the point set's grid");
    if (cube.dimension() > 30 || !satisfies_notion(cube, notion))
        return false;
    const auto verts = cube_vertices(cube);
    return std::all_of(verts.begin(), verts.end(), [&](const Point& v) { return s.contains(v); });
}

CubeSearchResult find_cube(const PointSet& s, int m, CubeNotion notion, const SearchOptions& options)
{
    if (m < 0)
        throw InputError("cube dimension must be >= 0");
    CubeSearchResult result;
    if (s.empty())
        return result;
    const auto points = s.points();
    if (m == 0) {
        result.status = SearchStatus::Found;
        result.witness = AffineCube{points.front(), {}};
        return result;
    }
    if (m > dimension_cap(s, notion))
        return result;

    NodeCounter counter(options.node_budget);
    ErrorSlot errors;
    const auto count = static_cast<std::int64_t>(points.size());
    std::vector<BaseState> state(points.size(), BaseState::Pending);
    std::vector<std::vector<Point>> found(points.size());
    std::atomic<std::int64_t> first_found{count};

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(options.threads))
    for (std::int64_t i = 0; i < count; ++i) {
        if (i > first_found.load(std::memory_order_relaxed) || counter.exhausted())
            continue;
        try {
            BaseSearch search(s, notion, points[i], std::span(points).subspan(i + 1), counter);
            if (search.candidate_count() >= static_cast<std::size_t>(m) && search.find(m)) {
                found[i] = search.generators();
                state[i] = BaseState::Found;
                std::int64_t seen = first_found.load();
                while (i < seen && !first_found.compare_exchange_weak(seen, i)) {
                }
            } else {
                state[i] = BaseState::Done;
            }
        } catch (const BudgetHit&) {
            state[i] = BaseState::Aborted;
        } catch (...) {
            errors.capture();
        }
    }
    errors.rethrow();
    result.nodes = counter.nodes();

    // The answer is the first base in lex order that has a cube, provided
    // every earlier base was searched to completion.
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (state[i] == BaseState::Found) {
            result.status = SearchStatus::Found;
            result.witness = AffineCube{points[i], found[i]};
            return result;
        }
        if (state[i] != BaseState::Done) {
            result.status = SearchStatus::Inconclusive;
            return result;
        }
    }
    result.status = SearchStatus::None;
    return result;
}

MValue m_value(const PointSet& s, CubeNotion notion, const SearchOptions& options)
{
    if (s.empty())
        throw InputError("M of the empty set is undefined");
    const auto points = s.points();
    const int cap = dimension_cap(s, notion);
    MValue out;
    if (cap == 0) {
        out.witness = AffineCube{points.front(), {}};
        return out;
    }

    NodeCounter counter(options.node_budget);
    ErrorSlot errors;
    std::atomic<int> best{0};
    const auto count = static_cast<std::int64_t>(points.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(options.threads))
    for (std::int64_t i = 0; i < count; ++i) {
        const int current = best.load(std::memory_order_relaxed);
        if (current >= cap || count - i - 1 <= current || counter.exhausted())
            continue;
        try {
            BaseSearch search(s, notion, points[i], std::span(points).subspan(i + 1), counter);
            search.explore_max(best, cap);
        } catch (const BudgetHit&) {
        } catch (...) {
            errors.capture();
        }
    }
    errors.rethrow();
    if (counter.exhausted())
        throw BudgetExceeded("node budget exhausted while computing M(S)");

    out.m = best.load();
    SearchOptions rest = options;
    rest.node_budget = options.node_budget - std::min(options.node_budget, counter.nodes());
    const auto witness = find_cube(s, out.m, notion, rest);
    if (witness.status != SearchStatus::Found)
        throw BudgetExceeded("node budget exhausted while extracting the M(S) witness");
    out.witness = *witness.witness;
    out.nodes = counter.nodes() + witness.nodes;
    return out;
}

AffineCube extend_cube(const Point& a, const Point& b, const AffineCube& inner)
{
    if (a.size() != b.size())
        throw InputError("prefixes a and b differ in length");
    if (a == b)
        throw InputError("extend_cube needs distinct prefixes a != b");
    const std::size_t r = a.size();
    const std::size_t rest = inner.base.size();

    AffineCube out;
    out.base = a;
    out.base.insert(out.base.end(), inner.base.begin(), inner.base.end());

    Point step(r + rest, 0);
    for (std::size_t i = 0; i < r; ++i)
        step[i] = b[i] - a[i];
    out.generators.push_back(std::move(step));
    for (const auto& v : inner.generators) {
        if (v.size() != rest)
            throw InputError("inner generator length differs from its base");
        Point g(r, 0);
        g.insert(g.end(), v.begin(), v.end());
        out.generators.push_back(std::move(g));
    }
    return out;
}

namespace {

std::uint64_t subset_size_for(const GridParams& grid, const Rational& c)
{
    if (c <= 0 || c > 1)
        throw InputError("density c must lie in (0, 1]");
    return ceil(c * Rational(BigInt(grid.size()))).convert_to<std::uint64_t>();
}

}  // namespace

int f_exhaustive(int base, int dim, const Rational& c, CubeNotion notion, const SearchOptions& options)
{
    const GridParams grid(base, dim);
    if (grid.size() > 16)
        throw TooLarge("exhaustive f_N(n,c) needs N^n <= 16; use the sampled variant");
    // M is monotone under inclusion, so the minimum over density >= c is
    // attained by a subset of exactly ceil(c N^n) points.
    const std::uint64_t k = subset_size_for(grid, c);
    const auto cells = static_cast<unsigned>(grid.size());
    const std::int64_t masks = std::int64_t{1} << cells;

    SearchOptions inner = options;
    inner.threads = 1;
    ErrorSlot errors;
    int best = dim + static_cast<int>(cells);

#pragma omp parallel for schedule(dynamic, 256) reduction(min : best) \
    num_threads(resolve_threads(options.threads))
    for (std::int64_t mask = 0; mask < masks; ++mask) {
        if (static_cast<std::uint64_t>(std::popcount(static_cast<std::uint64_t>(mask))) != k)
            continue;
        try {
            std::vector<std::uint64_t> idx;
            for (unsigned b = 0; b < cells; ++b)
                if ((mask >> b) & 1)
                    idx.push_back(b);
            best = std::min(best, m_value(PointSet(grid, std::move(idx)), notion, inner).m);
        } catch (...) {
            errors.capture();
        }
    }
    errors.rethrow();
    return best;
}

FSampled f_sampled(int base, int dim, const Rational& c, CubeNotion notion, std::uint64_t samples,
                   std::uint64_t seed, const SearchOptions& options)
{
    const GridParams grid(base, dim);
    grid.require_materializable();
    if (samples == 0)
        throw InputError("sampled f needs at least one sample");
    const std::uint64_t k = subset_size_for(grid, c);

    SearchOptions inner = options;
    inner.threads = 1;
    ErrorSlot errors;
    int best = std::numeric_limits<int>::max();
    const auto total = static_cast<std::int64_t>(samples);

#pragma omp parallel for schedule(dynamic, 1) reduction(min : best) \
    num_threads(resolve_threads(options.threads))
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
            std::vector<std::uint64_t> cells(grid.size());
            for (std::uint64_t j = 0; j < cells.size(); ++j)
                cells[j] = j;
            for (std::uint64_t j = 0; j < k; ++j)
                std::swap(cells[j], cells[j + rng.below(cells.size() - j)]);
            cells.resize(k);
            best = std::min(best, m_value(PointSet(grid, std::move(cells)), notion, inner).m);
        } catch (...) {
            errors.capture();
        }
    }
    errors.rethrow();
    return {best, samples};
}

}  // namespace hcube
