#include "hcube/bounds.hpp"

#include "hcube/errors.hpp"

#include <cmath>
#include <limits>

namespace hcube {

namespace {

void require_unit_density(const Rational& c)
{
    if (c <= 0 || c > 1)
        throw InputError("density c must lie in (0, 1], got " + to_string(c));
}

void require_base(int base)
{
    if (base < 2)
        throw InputError("base N must be >= 2");
}

/// log_N(x) <= q for x > 0 and rational q > 0, decided exactly as
/// x^b <= N^a with q = a/b.
bool log_at_most(const Rational& x, int base, const Rational& q)
{
    return rpow(x, to_int64(denominator(q))) <= rpow(Rational(base), to_int64(numerator(q)));
}

/// Rough bit length of x^e.
double power_bits(const Rational& x, const BigInt& e)
{
    const double bits = static_cast<double>(msb(abs(numerator(x))) + msb(denominator(x)) + 2);
    return bits * e.convert_to<double>();
}

}  // namespace

BoundParams::BoundParams(int base_, Rational c_, Rational epsilon_)
    : base(base_), c(std::move(c_)), epsilon(std::move(epsilon_))
{
    require_base(base);
    require_unit_density(c);
    if (epsilon <= 0)
        throw InputError("epsilon must be positive");
}

std::int64_t prefix_drop(const Rational& c, int base)
{
    require_base(base);
    require_unit_density(c);
    return ceil_log(Rational(8) / (c * c), Rational(base));
}

InductiveStep inductive_step(std::int64_t n, const Rational& c, int base)
{
    const std::int64_t drop = prefix_drop(c, base);
    if (n <= drop)
        throw InputError("inductive step needs n > ceil(log_N(8/c^2)) = " + std::to_string(drop));
    const Rational denom = (c + 4) * (c + 4);
    return {n - drop, Rational(2) * c * c / denom};
}

std::int64_t lower_bound_iterated(std::int64_t n, const Rational& c, int base)
{
    require_unit_density(c);
    std::int64_t steps = 0;
    std::int64_t x = n;
    Rational y = c;
    while (x > prefix_drop(y, base)) {
        const auto next = inductive_step(x, y, base);
        x = next.n;
        y = next.c;
        ++steps;
    }
    return steps;
}

ClampedBound lower_bound_closed_form(std::int64_t n, const Rational& c, int base,
                                     const Rational& alpha)
{
    require_base(base);
    if (n < 2)
        throw InputError("closed-form bound needs n >= 2");
    if (c <= 0 || c >= 1)
        throw InputError("closed-form bound needs c in (0, 1); log c vanishes at c = 1");
    if (alpha <= 1)
        throw InputError("closed-form bound needs alpha > 1");

    const Rational inv_c = Rational(1) / c;
    const Rational stretch = Rational(n - 1) * (alpha - 1);
    std::int64_t k = 0;
    bool exact = true;

    std::int64_t j = 0;
    if (exact_power(inv_c, Rational(base), j)) {
        // log_N(1/c) = j, so the argument is rational.
        k = floor_log(stretch / j + 1, alpha);
    } else {
        const long double log_inv_c = log_base(inv_c, static_cast<long double>(base));
        const long double arg = to_long_double(stretch) / log_inv_c + 1.0L;
        const long double v = std::log(arg) / log_rational(alpha);
        k = static_cast<std::int64_t>(std::floor(v));
        const long double nearest = std::round(v);
        if (std::fabs(v - nearest) < 1e-9L * std::max(1.0L, std::fabs(v))) {
            // alpha^t <= arg  <=>  log_N(1/c) <= stretch / (alpha^t - 1)
            const auto t = static_cast<std::int64_t>(nearest);
            if (t <= 0) {
                k = std::max<std::int64_t>(k, 0);
            } else {
                const Rational q = stretch / (rpow(alpha, t) - 1);
                const double bits = power_bits(inv_c, denominator(q)) +
                                    power_bits(Rational(base), abs(numerator(q)));
                if (bits < 4.0e6)
                    k = log_at_most(inv_c, base, q) ? t : t - 1;
                else
                    exact = false;
            }
        }
    }
    const std::int64_t raw = k - 1;
    return {std::max<std::int64_t>(raw, 0), raw, raw < 0, exact};
}

std::int64_t lower_bound_h_iteration(std::int64_t n, const Rational& c, int base,
                                     const Rational& alpha)
{
    require_unit_density(c);
    if (alpha <= 1)
        throw InputError("h iteration needs alpha > 1");
    std::int64_t count = 0;
    long double x = static_cast<long double>(n);
    Rational y = c;
    if (y > Rational(1, 2)) {
        if (n <= prefix_drop(y, base))
            return 0;
        const auto step = inductive_step(n, y, base);
        x = static_cast<long double>(step.n);
        y = step.c;
        ++count;
    }
    if (x < 1)
        return count;
    const long double a = to_long_double(alpha);
    long double log_y = log_base(y, static_cast<long double>(base));
    for (;;) {
        const long double next = x + a * log_y;
        if (next < 1)
            break;
        x = next;
        log_y *= a;
        ++count;
    }
    return count;
}

long double beta(const Rational& c, int base, const Rational& alpha)
{
    require_base(base);
    if (c <= 0 || c >= 1)
        throw InputError("beta needs c in (0, 1)");
    if (alpha <= 1)
        throw InputError("beta needs alpha > 1");
    const long double ln_alpha = log_rational(alpha);
    const long double log_inv_c = log_base(Rational(1) / c, static_cast<long double>(base));
    return std::log(2.0L) / ln_alpha + std::log(log_inv_c) / ln_alpha -
           log_rational(alpha - 1) / ln_alpha + 2.0L;
}

EpsilonCheck epsilon_small_check(const Rational& epsilon)
{
    if (epsilon <= 0)
        throw InputError("epsilon must be positive");
    const long double e = to_long_double(epsilon);
    const long double lhs = 1.0L / (1.0L + std::log2(1.0L + e / 6.0L));
    const long double rhs = 1.0L - e / 2.0L;
    return {lhs >= rhs, lhs, rhs, lhs - rhs};
}

Rational c_n_schedule(std::int64_t n, int base)
{
    require_base(base);
    if (n < base)
        throw InputError("c_n schedule needs n >= N so that log_N log_N n >= 0");
    // floor(log_N log_N n) is the largest k with N^(N^k) <= n.
    std::int64_t k = 0;
    BigInt exponent = base;  // N^(k+1)
    for (;;) {
        if (exponent > 64 || ipow(BigInt(base), exponent.convert_to<std::uint64_t>()) > n)
            break;
        ++k;
        exponent *= base;
    }
    return Rational(1) - Rational(1, ipow(BigInt(base), static_cast<std::uint64_t>(k)));
}

EqEpCheck check_eq_ep(std::int64_t n, const Rational& epsilon, int base)
{
    if (epsilon <= 0)
        throw InputError("epsilon must be positive");
    EqEpCheck out{c_n_schedule(n, base), false, 0, 0, false, 0, 0, 0};
    const long double N = base;
    const long double e = to_long_double(epsilon);
    const long double nn = static_cast<long double>(n);
    const long double log2n = std::log2(nn);
    const long double middle = nn * (1.0L + e * log2n + 1.0L);

    out.lhs = std::log(4.0L) / std::log(N) + middle;
    out.lhs_natural = std::log(4.0L) + middle;
    out.lhs_from_r_bound = std::log(4.0L) / std::log(N) + nn * ((1.0L + e) * log2n + 1.0L);
    if (out.c_n == 0) {
        // No admissible density at this n.
        out.rhs = out.rhs_natural = -std::numeric_limits<long double>::infinity();
        return out;
    }
    const long double growth = std::pow(nn, 1.0L + e / 2.0L);
    const long double ln_inv = log_rational(Rational(1) / out.c_n);
    out.rhs = growth * ln_inv / std::log(N);
    out.rhs_natural = growth * ln_inv;
    out.holds = out.lhs < out.rhs;
    out.holds_natural = out.lhs_natural < out.rhs_natural;
    return out;
}

std::optional<std::int64_t> choose_r_dense(std::int64_t n, const Rational& epsilon)
{
    if (n < 2)
        throw InputError("choose_r_dense needs n >= 2");
    if (epsilon <= 0)
        throw InputError("epsilon must be positive");
    const BigInt a = numerator(epsilon);
    const BigInt b = denominator(epsilon);
    const BigInt nn = n;
    // r > (1 + eps/2) log2 n  <=>  2^(2b r) > n^(2b + a)
    const BigInt lower_rhs = ipow(nn, (2 * b + a).convert_to<std::uint64_t>());
    auto above_lower = [&](std::int64_t r) {
        return ipow(BigInt(2), (2 * b * r).convert_to<std::uint64_t>()) > lower_rhs;
    };
    // r < (1 + eps) log2 n  <=>  2^(b r) < n^(b + a)
    const BigInt upper_rhs = ipow(nn, (b + a).convert_to<std::uint64_t>());
    auto below_upper = [&](std::int64_t r) {
        return ipow(BigInt(2), (b * r).convert_to<std::uint64_t>()) < upper_rhs;
    };

    const long double guess = (1.0L + to_long_double(epsilon) / 2.0L) * std::log2(static_cast<long double>(n));
    std::int64_t r = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(guess)));
    while (!above_lower(r))
        ++r;
    while (r > 1 && above_lower(r - 1))
        --r;
    if (!below_upper(r))
        return std::nullopt;
    return r;
}

std::int64_t choose_r_sparse(const Rational& epsilon)
{
    if (epsilon <= 0)
        throw InputError("epsilon must be positive");
    const BigInt a = numerator(epsilon);
    const BigInt b = denominator(epsilon);
    // 2^(r-1) / (r + 3) > b / a  <=>  2^(r-1) a > (r + 3) b
    for (std::int64_t r = 1;; ++r)
        if (ipow(BigInt(2), static_cast<std::uint64_t>(r - 1)) * a > BigInt(r + 3) * b)
            return r;
}

bool lll_condition(const BigInt& count, const Rational& p, std::int64_t r)
{
    if (count < 1)
        throw InputError("event count L must be >= 1");
    if (p <= 0 || p >= 1)
        throw InputError("probability p must lie in (0, 1)");
    if (r < 0)
        throw InputError("r must be >= 0");
    auto exact = [&] {
        const auto e = ipow(BigInt(2), static_cast<std::uint64_t>(r)).convert_to<std::uint64_t>();
        return 4 * count * ipow(numerator(p), e) < ipow(denominator(p), e);
    };
    if (r <= 16)
        return exact();
    const long double v = std::log(4.0L) + log_big(count) +
                          std::ldexp(1.0L, static_cast<int>(std::min<std::int64_t>(r, 16000))) *
                              log_rational(p);
    if (std::fabs(v) > 1e-6L || r > 40)
        return v < 0;
    return exact();
}

BigInt count_affine_maps_bound(int base, std::int64_t n, std::int64_t r)
{
    require_base(base);
    if (n < 0 || r < 0)
        throw InputError("n and r must be non-negative");
    return ipow(BigInt(base), static_cast<std::uint64_t>(n * (r + 1)));
}

Rational hypergeometric_containment(int base, int n, int r, const Rational& c)
{
    require_base(base);
    require_unit_density(c);
    if (n < 0 || r < 0 || r > 30)
        throw InputError("hypergeometric product needs n >= 0 and 0 <= r <= 30");
    const BigInt cells = ipow(BigInt(base), static_cast<std::uint64_t>(n));
    const Rational chosen = c * Rational(cells);
    if (denominator(chosen) != 1)
        throw InputError("N^n c must be an integer");
    const BigInt k = numerator(chosen);
    const std::int64_t q = std::int64_t{1} << r;
    if (BigInt(q) > cells)
        return 0;
    Rational prod = 1;
    for (std::int64_t i = 0; i < q; ++i) {
        if (k - i <= 0)
            return 0;
        prod *= Rational(k - i, cells - i);
    }
    return prod;
}

BoundRow bound_row(const BoundParams& params, std::int64_t n)
{
    BoundRow row{params.base, n, params.c, lower_bound_iterated(n, params.c, params.base),
                 std::nullopt, params.alpha(), std::nullopt};
    if (params.c < 1) {
        if (n >= 2)
            row.closed_form = lower_bound_closed_form(n, params.c, params.base, row.alpha);
        row.beta = beta(params.c, params.base, row.alpha);
    }
    return row;
}

}  // namespace hcube
