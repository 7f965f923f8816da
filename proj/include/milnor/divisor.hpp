#pragma once

// Divisors supported on the exceptional curve of a good resolution: the
// constraint (D + E + K).E_i + 2 <= 0, its least solution, and the exact
// correspondence between a divisor and its binding multiplicities.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "milnor/automorphism.hpp"
#include "milnor/error.hpp"
#include "milnor/exact.hpp"
#include "milnor/graph.hpp"

namespace milnor {

/// D = sum m_i E_i. The zero divisor is representable but never a solver output.
struct Divisor {
    std::vector<std::int64_t> m;

    std::size_t size() const { return m.size(); }
    bool is_zero() const {
        for (auto x : m)
            if (x != 0) return false;
        return true;
    }
    bool is_effective() const {
        for (auto x : m)
            if (x < 0) return false;
        return true;
    }
    friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// c_i = -(v_i + 2 g_i); a divisor is admissible iff D.E_i <= c_i for all i.
struct ConstraintVector {
    std::vector<std::int64_t> c;
    friend bool operator==(const ConstraintVector&, const ConstraintVector&) = default;
};

/// n_i = -D.E_i, the number of binding circles over vertex i.
struct MultiplicityVector {
    std::vector<std::int64_t> n;
    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

struct DivisorReport {
    Divisor divisor;
    MultiplicityVector multiplicities;
    std::vector<std::int64_t> slack;  // -((D + E + K).E_i + 2), >= 0 when the inequality holds
    bool zero_divisor = false;
    bool slack_nonnegative = false;
    bool multiplicities_positive = false;
    bool aut_invariant = false;

    /// All hypotheses of the realisation theorem hold and its positivity
    /// conclusion is visible in the multiplicities.
    bool conditions_hold() const { return !zero_divisor && slack_nonnegative && multiplicities_positive; }
};

struct DescentOptions {
    /// Abort once sum m_i exceeds this; negative definiteness guarantees
    /// termination, so hitting the cap means bad input or a bug.
    std::int64_t cap = 1'000'000;
    /// Chooses which violating vertex to bump; receives the violating ids in
    /// increasing order. Defaults to the lowest index.
    std::function<VertexId(std::span<const VertexId>)> pick;
};

inline ConstraintVector constraint_vector(const PlumbingGraph& g) {
    ConstraintVector out;
    out.c.reserve(g.size());
    for (VertexId i = 0; i < g.size(); ++i) out.c.push_back(-(valency(g, i) + 2 * g.vertex(i).genus));
    return out;
}

/// (D.E_i)_i computed exactly.
inline std::vector<std::int64_t> intersect(const PlumbingGraph& g, const Divisor& d) {
    if (d.size() != g.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "divisor has " + std::to_string(d.size()) + " entries, graph has " + std::to_string(g.size()) + " vertices");
    }
    const IntersectionMatrix im = intersection_matrix(g);
    std::vector<std::int64_t> out(g.size());
    for (VertexId i = 0; i < g.size(); ++i) {
        Integer acc = 0;
        for (VertexId j = 0; j < g.size(); ++j) acc += Integer(im(i, j)) * d.m[j];
        out[i] = to_int64(acc, "intersection number");
    }
    return out;
}

inline Divisor minimal_divisor(const PlumbingGraph& g, const DescentOptions& options = {}) {
    if (!is_milnor_fillable(g)) throw Error(ErrorCode::NotNegativeDefinite, "intersection form is not negative definite");
    const std::size_t r = g.size();
    const IntersectionMatrix im = intersection_matrix(g);
    const ConstraintVector bounds = constraint_vector(g);

    // Every admissible divisor has all m_i >= 1, so the descent starts at E.
    Divisor z{std::vector<std::int64_t>(r, 1)};
    std::vector<Integer> dots(r, 0);
    for (VertexId i = 0; i < r; ++i)
        for (VertexId j = 0; j < r; ++j) dots[i] += im(i, j);
    std::int64_t total = static_cast<std::int64_t>(r);

    std::vector<VertexId> violating;
    for (;;) {
        violating.clear();
        for (VertexId i = 0; i < r; ++i)
            if (dots[i] > bounds.c[i]) violating.push_back(i);
        if (violating.empty()) return z;
        const VertexId i = options.pick ? options.pick(violating) : violating.front();
        if (std::find(violating.begin(), violating.end(), i) == violating.end()) {
            throw Error(ErrorCode::InvalidArgument, "descent picker returned a non-violating vertex");
        }
        ++z.m[i];
        for (VertexId j = 0; j < r; ++j) dots[j] += im(j, i);
        if (++total > options.cap) {
            throw Error(ErrorCode::IterationCapExceeded, "sum of multiplicities exceeded " + std::to_string(options.cap));
        }
    }
}

/// Independent check of minimal_divisor: exhaustive search of the integer box
/// lower <= m <= upper. For each assignment of the first r-1 coordinates the
/// admissible values of the last coordinate form an integer interval, computed
/// in closed form; the result is the componentwise minimum of everything
/// admissible, which is then checked to be admissible itself.
inline Divisor oracle_minimal_divisor_in_box(const PlumbingGraph& g, std::span<const std::int64_t> lower,
                                             std::span<const std::int64_t> upper) {
    const std::size_t r = g.size();
    if (lower.size() != r || upper.size() != r) throw Error(ErrorCode::DimensionMismatch, "search box has wrong dimension");
    for (std::size_t i = 0; i < r; ++i) {
        if (lower[i] < 0 || upper[i] < lower[i]) throw Error(ErrorCode::InvalidArgument, "empty or negative search box");
    }
    if (!is_milnor_fillable(g)) throw Error(ErrorCode::NotNegativeDefinite, "intersection form is not negative definite");
    const IntersectionMatrix im = intersection_matrix(g);
    const ConstraintVector bounds = constraint_vector(g);
    const VertexId last = r - 1;

    std::vector<std::int64_t> prefix(lower.begin(), lower.end());
    std::vector<std::int64_t> best(upper.begin(), upper.end());
    bool found = false;

    auto floor_div = [](std::int64_t a, std::int64_t b) {  // b > 0
        return a >= 0 ? a / b : -((-a + b - 1) / b);
    };
    auto ceil_div = [&](std::int64_t a, std::int64_t b) { return -floor_div(-a, b); };
    auto partial_dot = [&](VertexId i, VertexId through) {
        std::int64_t acc = 0;
        for (VertexId j = 0; j < through; ++j) acc += im(i, j) * prefix[j];
        return acc;
    };

    auto close_last = [&] {
        std::int64_t lo = lower[last];
        std::int64_t hi = upper[last];
        bool prefix_zero = true;
        for (VertexId i = 0; i < last; ++i) prefix_zero = prefix_zero && prefix[i] == 0;
        if (prefix_zero) lo = std::max<std::int64_t>(lo, 1);
        for (VertexId i = 0; i < r; ++i) {
            const std::int64_t coeff = im(i, last);
            const std::int64_t room = bounds.c[i] - partial_dot(i, last);  // need coeff * x <= room
            if (coeff > 0) {
                hi = std::min(hi, floor_div(room, coeff));
            } else if (coeff < 0) {
                lo = std::max(lo, ceil_div(-room, -coeff));
            } else if (room < 0) {
                return;
            }
        }
        if (lo > hi) return;
        found = true;
        for (VertexId i = 0; i < last; ++i) best[i] = std::min(best[i], prefix[i]);
        best[last] = std::min(best[last], lo);
    };

    // Odometer over the first r-1 coordinates. With later coordinates at their
    // lower bounds (their least contribution, as off-diagonal entries are >= 0),
    // a violated constraint at some i < k only gets worse as m_k grows, so the
    // loop over m_k stops there.
    std::function<void(VertexId)> descend = [&](VertexId k) {
        if (k == last) {
            close_last();
            return;
        }
        for (std::int64_t value = lower[k]; value <= upper[k]; ++value) {
            prefix[k] = value;
            bool earlier_violated = false;
            for (VertexId i = 0; i < k && !earlier_violated; ++i) {
                std::int64_t least = partial_dot(i, k + 1);
                for (VertexId j = k + 1; j < r; ++j) least += im(i, j) * lower[j];
                earlier_violated = least > bounds.c[i];
            }
            if (earlier_violated) break;
            descend(k + 1);
        }
        prefix[k] = lower[k];
    };
    descend(0);

    if (!found) throw Error(ErrorCode::BoundTooSmall, "no admissible divisor inside the search box");
    Divisor result{best};
    const auto dots = intersect(g, result);
    for (VertexId i = 0; i < r; ++i) {
        if (dots[i] > bounds.c[i]) {
            throw std::logic_error("componentwise minimum of admissible divisors is not admissible at vertex " + std::to_string(i));
        }
    }
    return result;
}

/// oracle_minimal_divisor_in_box over [0, bound]^r.
inline Divisor oracle_minimal_divisor(const PlumbingGraph& g, std::int64_t bound) {
    if (bound <= 0) throw Error(ErrorCode::InvalidArgument, "bound must be positive");
    const std::vector<std::int64_t> lower(g.size(), 0);
    const std::vector<std::int64_t> upper(g.size(), bound);
    try {
        return oracle_minimal_divisor_in_box(g, lower, upper);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundTooSmall) throw;
        throw Error(ErrorCode::BoundTooSmall, "no admissible divisor with multiplicities <= " + std::to_string(bound));
    }
}

/// n_i = -D.E_i.
inline MultiplicityVector binding_multiplicities(const PlumbingGraph& g, const Divisor& d) {
    if (!d.is_effective()) throw Error(ErrorCode::InvalidArgument, "divisor has a negative multiplicity");
    MultiplicityVector out;
    for (auto dot : intersect(g, d)) out.n.push_back(-dot);
    return out;
}

/// Inverts binding_multiplicities: solves I(G) m = -n over the rationals and
/// accepts the result only if it is integral and effective.
inline Divisor divisor_from_multiplicities(const PlumbingGraph& g, const MultiplicityVector& n) {
    const std::size_t r = g.size();
    if (n.n.size() != r) {
        throw Error(ErrorCode::DimensionMismatch,
                    "multiplicity vector has " + std::to_string(n.n.size()) + " entries, graph has " + std::to_string(r) + " vertices");
    }
    const IntersectionMatrix im = intersection_matrix(g);
    DenseMatrix<Rational> a(r, std::vector<Rational>(r));
    std::vector<Rational> b(r);
    for (VertexId i = 0; i < r; ++i) {
        for (VertexId j = 0; j < r; ++j) a[i][j] = im(i, j);
        b[i] = -n.n[i];
    }
    const auto solution = solve_exact(std::move(a), std::move(b));
    if (!solution) throw Error(ErrorCode::NotNegativeDefinite, "intersection matrix is singular");
    Divisor d;
    for (VertexId i = 0; i < r; ++i) {
        const Rational& q = (*solution)[i];
        if (denominator(q) != 1) {
            throw Error(ErrorCode::NonIntegralSolution, "m_" + std::to_string(i) + " = " + to_string(q));
        }
        if (q < 0) throw Error(ErrorCode::NonEffectiveSolution, "m_" + std::to_string(i) + " = " + to_string(q));
        d.m.push_back(to_int64(numerator(q), "multiplicity"));
    }
    return d;
}

/// sigma(D): the coefficient of E_i moves to E_sigma(i).
inline Divisor apply(const VertexPermutation& sigma, const Divisor& d) {
    if (sigma.size() != d.size()) throw Error(ErrorCode::DimensionMismatch, "permutation and divisor sizes differ");
    Divisor out{std::vector<std::int64_t>(d.size(), 0)};
    for (VertexId i = 0; i < d.size(); ++i) out.m[sigma(i)] = d.m[i];
    return out;
}

inline bool is_invariant(const Divisor& d, std::span<const VertexPermutation> group) {
    for (const auto& sigma : group)
        if (apply(sigma, d) != d) return false;
    return true;
}

/// Reports every hypothesis and the positivity conclusion of the realisation
/// theorem for a given D. Violations are recorded, never thrown.
inline DivisorReport check_theorem_conditions(const PlumbingGraph& g, const Divisor& d) {
    DivisorReport report;
    report.divisor = d;
    report.zero_divisor = d.is_zero();
    const auto dots = intersect(g, d);
    for (auto dot : dots) report.multiplicities.n.push_back(-dot);

    // (D + E + K).E_i + 2 = D.E_i + (e_i + v_i) + (2g_i - 2 - e_i) + 2
    report.slack_nonnegative = true;
    report.multiplicities_positive = true;
    for (VertexId i = 0; i < g.size(); ++i) {
        const std::int64_t reduced_e = g.vertex(i).euler + valency(g, i);
        const std::int64_t lhs = dots[i] + reduced_e + canonical_degree(g, i) + 2;
        report.slack.push_back(-lhs);
        report.slack_nonnegative = report.slack_nonnegative && lhs <= 0;
        report.multiplicities_positive = report.multiplicities_positive && report.multiplicities.n[i] > 0;
    }
    report.aut_invariant = d.is_effective() && is_invariant(d, automorphism_group(g));
    return report;
}

}  // namespace milnor
