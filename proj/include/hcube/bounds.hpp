#pragma once

// Closed-form and recursive bounds on f_N(n, c), and the feasibility
// inequalities behind the probabilistic constructions. Logarithms without an
// explicit base are base N.

#include "hcube/rational.hpp"

#include <cstdint>
#include <optional>

namespace hcube {

struct BoundParams {
    int base;
    Rational c;
    Rational epsilon;

    BoundParams(int base, Rational c, Rational epsilon);
    /// alpha = 2 + epsilon / 3
    Rational alpha() const { return Rational(2) + epsilon / 3; }
};

/// ceil(log_N(8 c^-2)), the number of prefix coordinates peeled per step.
std::int64_t prefix_drop(const Rational& c, int base);

struct InductiveStep {
    std::int64_t n;
    Rational c;
};

/// (n, c) -> (n - ceil(log_N(8/c^2)), 2c^2/(c+4)^2). Throws InputError unless
/// c in (0, 1] and n > ceil(log_N(8/c^2)).
InductiveStep inductive_step(std::int64_t n, const Rational& c, int base);

/// How many inductive steps apply starting from (n, c); a lower bound on
/// f_N(n, c).
std::int64_t lower_bound_iterated(std::int64_t n, const Rational& c, int base);

struct ClampedBound {
    /// max(0, raw)
    std::int64_t value;
    std::int64_t raw;
    bool clamped;
    /// False when the floor was decided in floating point near an integer.
    bool exact;
};

/// floor(log_alpha((1-n)(alpha-1)/log c + 1)) - 1. Requires n >= 2,
/// c in (0, 1), alpha > 1.
ClampedBound lower_bound_closed_form(std::int64_t n, const Rational& c, int base,
                                     const Rational& alpha);

/// Largest m with the x-coordinate of h^m(n, c) >= 1, where
/// h(x, y) = (x + alpha log y, y^alpha). h lives on y <= 1/2; a starting
/// c > 1/2 is first moved by one inductive step, which is counted.
std::int64_t lower_bound_h_iteration(std::int64_t n, const Rational& c, int base,
                                     const Rational& alpha);

/// log_alpha 2 + log_alpha log(1/c) - log_alpha(alpha - 1) + 2
long double beta(const Rational& c, int base, const Rational& alpha);

struct EpsilonCheck {
    bool holds;
    long double lhs;
    long double rhs;
    long double margin;
};

/// 1 / (1 + log_2(1 + eps/6)) >= 1 - eps/2
EpsilonCheck epsilon_small_check(const Rational& epsilon);

/// 1 - N^-floor(log_N log_N n), exact. Requires n >= N.
Rational c_n_schedule(std::int64_t n, int base);

struct EqEpCheck {
    Rational c_n;
    /// log 4 + n(1 + eps log_2 n + 1) < n^(1 + eps/2) log(1/c_n), logs base N.
    bool holds;
    long double lhs;
    long double rhs;
    /// The same inequality with natural logarithms.
    bool holds_natural;
    long double lhs_natural;
    long double rhs_natural;
    /// log 4 + n((1 + eps) log_2 n + 1), base N: the left side obtained from
    /// log 4 + n(r + 1) with r < (1 + eps) log_2 n.
    long double lhs_from_r_bound;
};

EqEpCheck check_eq_ep(std::int64_t n, const Rational& epsilon, int base);

/// Smallest integer strictly inside ((1 + eps/2) log_2 n, (1 + eps) log_2 n).
std::optional<std::int64_t> choose_r_dense(std::int64_t n, const Rational& epsilon);

/// Smallest r >= 1 with 2^(r-1) / (r + 3) > 1/eps.
std::int64_t choose_r_sparse(const Rational& epsilon);

/// 4 L p^(2^r) < 1, exact.
bool lll_condition(const BigInt& count, const Rational& p, std::int64_t r);

/// N^(n(r+1)), the number of (r+1)-tuples of grid points.
BigInt count_affine_maps_bound(int base, std::int64_t n, std::int64_t r);

/// Probability that a uniform subset of [N]^n of density c contains a fixed
/// set of 2^r points: prod_{i < 2^r} (N^n c - i) / (N^n - i). N^n c must be
/// an integer.
Rational hypergeometric_containment(int base, int n, int r, const Rational& c);

struct BoundRow {
    int base;
    std::int64_t n;
    Rational c;
    std::int64_t iterated;
    std::optional<ClampedBound> closed_form;
    Rational alpha;
    std::optional<long double> beta;
};

/// One row of the bound table; the closed form and beta are absent for c = 1.
BoundRow bound_row(const BoundParams& params, std::int64_t n);

}  // namespace hcube
