#pragma once
// Transverse-intersection counts s_n(t): the number of simple zeros of
// q_t^n in the invariant interval, computed by walking minimal-order
// preimages of the critical point (level k+1 holds the square-root
// preimages of level k with positive radicand; radicands inside the
// tolerance band are tangential hits and produce nothing).
//
// On top of the counts: the entropy estimator h = log(1 + sum s_k) / n,
// staircase sampling over a parameter grid with jump refinement, a
// monotonicity audit, and an independent dense-grid sign-change oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qel/parallel.hpp"
#include "qel/quad.hpp"
#include "qel/root_branch.hpp"

namespace qel {

inline constexpr int kMaxPreimageDepth = 24;

struct PreimageLevel {
    int depth;
    std::vector<double> points;  // generation order; treat as a set
    long long tangential_hits;   // radicands that fell inside the band at this level
};

namespace detail {

inline void next_preimage_level(double t, const std::vector<double>& cur, std::vector<double>& out,
                                long long& tangential, double tol_zero) {
    out.clear();
    out.reserve(cur.size() * 2);
    for (double z : cur) {
        const double r = t - z;
        if (r > tol_zero) {
            const double s = std::sqrt(r);
            out.push_back(s);
            out.push_back(-s);
        } else if (r >= -tol_zero) {
            ++tangential;
        }
    }
}

}  // namespace detail

// Streams levels 0..depth to visit(level, points, tangential_hits) keeping
// only two levels in memory. Level 0 is {0}.
template <class Visit>
void visit_preimage_levels(QuadParam t, int depth, Visit&& visit, double tol_zero = kTolZero) {
    if (depth < 0) throw std::invalid_argument("preimage depth must be >= 0");
    if (depth > kMaxPreimageDepth)
        throw std::length_error("preimage depth exceeds the configured maximum (24)");
    std::vector<double> cur{0.0}, next;
    visit(0, static_cast<const std::vector<double>&>(cur), 0LL);
    for (int k = 1; k <= depth; ++k) {
        long long tang = 0;
        detail::next_preimage_level(t.value(), cur, next, tang, tol_zero);
        cur.swap(next);
        visit(k, static_cast<const std::vector<double>&>(cur), tang);
        if (cur.empty() && k < depth) {
            for (int j = k + 1; j <= depth; ++j) visit(j, static_cast<const std::vector<double>&>(cur), 0LL);
            return;
        }
    }
}

inline std::vector<PreimageLevel> preimage_levels(QuadParam t, int depth, double tol_zero = kTolZero) {
    std::vector<PreimageLevel> out;
    out.reserve(static_cast<std::size_t>(depth) + 1);
    visit_preimage_levels(t, depth, [&](int k, const std::vector<double>& pts, long long tang) {
        out.push_back({k, pts, tang});
    }, tol_zero);
    return out;
}

// s_0..s_depth with s_0 = 1 (the critical point itself); s_n is the size of
// preimage level n and equals the number of simple zeros of q_t^n.
inline std::vector<long long> s_sequence(QuadParam t, int depth, double tol_zero = kTolZero) {
    std::vector<long long> s;
    s.reserve(static_cast<std::size_t>(depth) + 1);
    visit_preimage_levels(t, depth, [&](int, const std::vector<double>& pts, long long) {
        s.push_back(static_cast<long long>(pts.size()));
    }, tol_zero);
    return s;
}

inline long long s_count(QuadParam t, int n, double tol_zero = kTolZero) {
    long long last = 0;
    visit_preimage_levels(t, n, [&](int k, const std::vector<double>& pts, long long) {
        if (k == n) last = static_cast<long long>(pts.size());
    }, tol_zero);
    return last;
}

struct EntropyEstimate {
    double t;
    int depth;
    std::vector<long long> s_seq;  // s_0..s_{depth-1}, the levels the estimate uses
    double h;                      // log(1 + s_0 + ... + s_{depth-1}) / depth
};

// The plain estimator; with aitken a Delta^2 extrapolation of the last three
// partial estimates is returned instead (depth >= 3 required for it to act).
inline EntropyEstimate entropy_estimate(QuadParam t, int depth, bool aitken = false) {
    if (depth < 1) throw std::invalid_argument("entropy_estimate: depth must be >= 1");
    EntropyEstimate out;
    out.t = t.value();
    out.depth = depth;
    out.s_seq = s_sequence(t, depth - 1);
    auto partial = [&](int n) {
        long long sum = 1;  // the +1 of log(1 + ...)
        for (int k = 0; k < n; ++k) sum += out.s_seq[static_cast<std::size_t>(k)];
        return std::log(static_cast<double>(sum)) / n;
    };
    out.h = partial(depth);
    if (aitken && depth >= 3) {
        const double a0 = partial(depth - 2), a1 = partial(depth - 1), a2 = out.h;
        const double denom = a2 - 2.0 * a1 + a0;
        if (std::abs(denom) > 1e-15) out.h = a2 - (a2 - a1) * (a2 - a1) / denom;
    }
    return out;
}

struct StaircaseSample {
    int n;
    std::vector<double> t_grid;
    std::vector<long long> values;  // s_n over t_grid
    struct Jump {
        double t;             // refined abscissa, width 1e-9
        long long increment;  // total change across the enclosing grid cell
    };
    std::vector<Jump> jumps;
};

// Samples s_n on a uniform steps-point grid over [t_lo, t_hi] and refines
// every jump by bisection on the count itself. A cell containing several
// jumps reports the leftmost abscissa with the aggregated increment.
inline StaircaseSample staircase(int n, double t_lo, double t_hi, int steps, unsigned threads = 1) {
    if (steps < 2) throw std::invalid_argument("staircase: steps must be >= 2");
    if (!(t_lo < t_hi) || t_lo < 0.0 || t_hi > 2.0)
        throw std::invalid_argument("staircase: need 0 <= t_lo < t_hi <= 2");
    StaircaseSample out;
    out.n = n;
    out.t_grid.resize(static_cast<std::size_t>(steps));
    out.values.resize(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        out.t_grid[static_cast<std::size_t>(i)] = t_lo + (t_hi - t_lo) * i / (steps - 1);
    parallel_for(static_cast<std::size_t>(steps), [&](std::size_t i) {
        out.values[i] = s_count(QuadParam(out.t_grid[i]), n);
    }, threads);
    for (int i = 0; i + 1 < steps; ++i) {
        long long lo_v = out.values[static_cast<std::size_t>(i)];
        const long long hi_v = out.values[static_cast<std::size_t>(i) + 1];
        if (lo_v == hi_v) continue;
        double a = out.t_grid[static_cast<std::size_t>(i)], b = out.t_grid[static_cast<std::size_t>(i) + 1];
        // bisect the leftmost change of value in the cell
        while (b - a > 1e-9) {
            const double m = 0.5 * (a + b);
            if (s_count(QuadParam(m), n) > lo_v) b = m;
            else a = m;
        }
        out.jumps.push_back({0.5 * (a + b), hi_v - lo_v});
    }
    // the t = 0 jump: s_n(0) counts only the tangential stack, every t > 0 grid
    // point already sits above it, so a value change in the first cell starting
    // at 0 is anchored at 0 by the refinement above
    return out;
}

struct MonotonicityReport {
    struct Violation {
        int n;
        double t_left, t_right;
        long long s_left, s_right;
    };
    std::vector<Violation> violations;
    int depth = 0;
    int grid_points = 0;
};

// Checks that every s_n, n <= depth, is nondecreasing along the supplied
// ascending t-grid.
inline MonotonicityReport monotonicity_audit(int depth, const std::vector<double>& grid,
                                             unsigned threads = 1) {
    if (grid.size() < 2) throw std::invalid_argument("monotonicity_audit: grid needs >= 2 points");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("monotonicity_audit: grid must be ascending");
    MonotonicityReport rep;
    rep.depth = depth;
    rep.grid_points = static_cast<int>(grid.size());
    std::vector<std::vector<long long>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        rows[i] = s_sequence(QuadParam(grid[i]), depth);
    }, threads);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        for (int n = 0; n <= depth; ++n) {
            const long long a = rows[i][static_cast<std::size_t>(n)];
            const long long b = rows[i + 1][static_cast<std::size_t>(n)];
            if (b < a) rep.violations.push_back({n, grid[i], grid[i + 1], a, b});
        }
    }
    return rep;
}

// Convenience: uniform grid of the given size over [0, 2].
inline MonotonicityReport monotonicity_audit(int depth, int grid_points, unsigned threads = 1) {
    if (grid_points < 2) throw std::invalid_argument("monotonicity_audit: grid_points must be >= 2");
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        grid[static_cast<std::size_t>(i)] = 2.0 * i / (grid_points - 1);
    return monotonicity_audit(depth, grid, threads);
}

struct BruteForceScan {
    long long simple_zeros;           // sign-change zeros whose orbit stays clear of 0
    long long rejected_near_critical; // refined zeros discarded by the orbit test
    bool grid_warning;                // two refined zeros closer than two grid cells
};

// Independent oracle: counts zeros of q_t^n by dense sampling of the
// invariant interval and sign changes, refining each bracket by bisection
// and classifying a zero as simple when its forward orbit stays at least
// tol_orbit away from the critical point for n steps.
inline BruteForceScan brute_force_zero_scan(QuadParam t, int n, long long grid_points,
                                            double tol_orbit = 1e-6) {
    if (n < 1 || n > 12) throw std::invalid_argument("brute force oracle supports 1 <= n <= 12");
    if (grid_points < 100000)
        throw std::invalid_argument("brute force oracle needs at least 1e5 grid points");
    const InvariantInterval iv = invariant_interval(t);
    const double tv = t.value();
    const double width = iv.hi - iv.lo;
    auto qn = [&](double x) {
        for (int k = 0; k < n; ++k) x = tv - x * x;
        return x;
    };
    // sample strictly inside the interval
    const long long G = grid_points;
    std::vector<double> zeros;
    double px = iv.lo + width * 1.0 / (G + 1);
    double py = qn(px);
    for (long long i = 2; i <= G; ++i) {
        const double x = iv.lo + width * static_cast<double>(i) / (G + 1);
        const double y = qn(x);
        if (py == 0.0) {
            zeros.push_back(px);
        } else if (y != 0.0 && (py < 0.0) != (y < 0.0)) {
            double a = px, b = x, fa = py;
            for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = qn(m);
                if (fm == 0.0) { a = b = m; break; }
                if ((fa < 0.0) != (fm < 0.0)) b = m;
                else { a = m; fa = fm; }
            }
            zeros.push_back(0.5 * (a + b));
        }
        px = x;
        py = y;
    }
    if (py == 0.0) zeros.push_back(px);

    BruteForceScan out{0, 0, false};
    const double cell = width / (G + 1);
    double last_kept = -1e300;
    for (double z : zeros) {
        bool simple = true;
        double v = z;
        for (int k = 0; k < n; ++k) {
            if (std::abs(v) < tol_orbit) { simple = false; break; }
            v = tv - v * v;
        }
        if (!simple) {
            ++out.rejected_near_critical;
            continue;
        }
        if (z - last_kept < 1e-10) continue;  // same zero from adjacent brackets
        if (last_kept > -1e299 && z - last_kept < 2.0 * cell) out.grid_warning = true;
        last_kept = z;
        ++out.simple_zeros;
    }
    return out;
}

inline long long brute_force_zero_count(QuadParam t, int n, long long grid_points,
                                        double tol_orbit = 1e-6) {
    return brute_force_zero_scan(t, n, grid_points, tol_orbit).simple_zeros;
}

}  // namespace qel
