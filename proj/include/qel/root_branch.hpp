#pragma once
// Evaluation of nested-radical root branches phi_sigma, their closed trig
// form at t = 2, the envelope bound, zero scans for suffix branches, and
// branching points (left endpoints of the half-intervals on which a branch
// is regular).
//
// A radicand within tol_zero of 0 is treated as exactly 0: the branch is
// still defined (value clamps to 0) but no longer regular, and the rank of
// the shortest vanishing suffix is reported.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qel/quad.hpp"
#include "qel/signature.hpp"

namespace qel {

inline constexpr double kTolZero = 1e-12;        // radicand classification band
inline constexpr double kBranchGridStep = 1e-4;  // default zero-scan resolution
inline constexpr int kMaxBranchingRank = 20;

struct BranchEval {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool defined = false;
    bool regular = false;
    // Rank of the shortest suffix branch that vanished during evaluation
    // (1 = the innermost sqrt(t)); empty when the evaluation is regular.
    std::optional<int> first_vanishing_suffix;
};

// Inside-out evaluation of phi_sigma(t). Undefined as soon as a radicand
// drops below -tol_zero; radicands inside [-tol_zero, tol_zero] clamp to 0.
inline BranchEval eval_branch(const Signature& sig, QuadParam tq, double tol_zero = kTolZero) {
    const double t = tq.value();
    const int n = sig.rank();
    BranchEval out;
    double v;
    if (t <= tol_zero) {  // innermost radicand is t itself
        v = 0.0;
        out.first_vanishing_suffix = 1;
    } else {
        v = std::sqrt(t);
        if (sig.sign(n - 1) < 0) v = -v;
    }
    for (int k = n - 2; k >= 0; --k) {
        const double r = t + v;  // radicand of the suffix starting at k
        if (r < -tol_zero) return out;  // undefined; value stays NaN
        if (r <= tol_zero) {
            v = 0.0;
            if (!out.first_vanishing_suffix) out.first_vanishing_suffix = n - k;
        } else {
            v = std::sqrt(r);
            if (sig.sign(k) < 0) v = -v;
        }
    }
    out.value = v;
    out.defined = true;
    out.regular = !out.first_vanishing_suffix.has_value();
    return out;
}

// Every branch value lies strictly between these bounds on (0, 2]:
// +-(1 + sqrt(1 + 4t)) / 2, i.e. the endpoints of the invariant interval.
struct Envelope {
    double lower;
    double upper;
};

inline Envelope envelope(QuadParam t) {
    const double e = (1.0 + std::sqrt(1.0 + 4.0 * t.value())) / 2.0;
    return {-e, e};
}

// At t = 2 every branch has the closed form
//   phi_sigma(2) = 2 sin( (pi/4) * sum_k (s1*...*s_{k+1}) / 2^k ),   k = 0..n-1.
// Both the radical evaluation and the trig form are returned for comparison.
struct AtTwo {
    double radical;
    double trig;
};

inline AtTwo branch_at_two(const Signature& sig) {
    BranchEval e = eval_branch(sig, QuadParam(2.0));
    double sum = 0.0;
    double scale = 1.0;  // 1 / 2^k
    int prod = 1;
    for (int k = 0; k < sig.rank(); ++k) {
        prod *= sig.sign(k);
        sum += prod * scale;
        scale *= 0.5;
    }
    const double pi = 3.141592653589793238462643383279502884;
    return {e.value, 2.0 * std::sin(pi * sum / 4.0)};
}

namespace detail {

// g(t) = t + phi_tail(t), the radicand one level above `tail`; zeros of the
// branch (tail prepended with any sign) are exactly the zeros of g.
struct GValue {
    bool defined = false;
    double g = 0.0;
};

template <class G>
double refine_defined_edge(G&& g, double t_defined, double t_undefined) {
    for (int it = 0; it < 120 && std::abs(t_undefined - t_defined) > 1e-13; ++it) {
        const double m = 0.5 * (t_defined + t_undefined);
        if (g(m).defined) t_defined = m;
        else t_undefined = m;
    }
    return t_defined;
}

// Bisection of a sign change of g on [a, b]; both ends defined with opposite
// signs. Midpoints can be undefined (the defined set may have holes); the
// search then continues on whichever side of the hole still brackets, or
// falls back to the hole edge where |g| is smaller.
template <class G>
double bisect_sign_change(G&& g, double a, double b, double ga, double gb) {
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        GValue gm = g(m);
        if (!gm.defined) {
            const double eL = refine_defined_edge(g, a, m);
            const double eR = refine_defined_edge(g, b, m);
            GValue gl = g(eL), gr = g(eR);
            if (gl.defined && (ga < 0.0) != (gl.g < 0.0)) { b = eL; gb = gl.g; continue; }
            if (gr.defined && (gb < 0.0) != (gr.g < 0.0)) { a = eR; ga = gr.g; continue; }
            // the sign flips across the hole itself: the zero sits at an edge
            const double al = gl.defined ? std::abs(gl.g) : std::numeric_limits<double>::infinity();
            const double ar = gr.defined ? std::abs(gr.g) : std::numeric_limits<double>::infinity();
            return al <= ar ? eL : eR;
        }
        if (gm.g == 0.0) return m;
        if ((ga < 0.0) != (gm.g < 0.0)) { b = m; gb = gm.g; }
        else { a = m; ga = gm.g; }
    }
    return 0.5 * (a + b);
}

// Golden-section minimization of |g| on [a, b] (undefined points count as
// +inf); used to pin tangential zeros detected as dips.
template <class G>
double refine_dip(G&& g, double a, double b) {
    auto absg = [&](double t) {
        GValue v = g(t);
        return v.defined ? std::abs(v.g) : std::numeric_limits<double>::infinity();
    };
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = absg(x1), f2 = absg(x2);
    for (int it = 0; it < 120 && (b - a) > 1e-13; ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a); f1 = absg(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a); f2 = absg(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

// Scan [edge_a, edge_b] (both defined) with a fine substep and bisect any
// sign change; used right next to defined-set edges the coarse grid jumped over.
template <class G>
void micro_scan(G&& g, double a, double b, std::vector<double>& zeros) {
    if (!(b > a)) return;
    const int sub = 64;
    GValue prev = g(a);
    double prev_t = a;
    for (int i = 1; i <= sub; ++i) {
        const double t = a + (b - a) * i / sub;
        GValue cur = g(t);
        if (prev.defined && cur.defined) {
            if (cur.g == 0.0) zeros.push_back(t);
            else if (prev.g != 0.0 && (prev.g < 0.0) != (cur.g < 0.0))
                zeros.push_back(bisect_sign_change(g, prev_t, t, prev.g, cur.g));
        }
        prev = cur;
        prev_t = t;
    }
}

// Zeros of phi_tau on (0, 2] located through g(t) = t + phi_{tau_2..}(t).
// Sign changes are always reported; with include_tangential also dips of |g|
// down to ~0 (touch points) and defined-set edge points where g vanishes.
inline std::vector<double> scan_suffix_zeros(const Signature& tau, double grid_step,
                                             bool include_tangential, double tol_zero) {
    std::vector<double> zeros;
    if (tau.rank() < 2) return zeros;  // the rank-1 branches vanish only at t = 0
    const Signature tail = tau.suffix(1);
    auto g = [&tail, tol_zero](double t) -> GValue {
        if (t > 2.0 && t < 2.0 + 1e-9) t = 2.0;
        if (t < 0.0 || t > 2.0) return {};
        BranchEval e = eval_branch(tail, QuadParam(t), tol_zero);
        if (!e.defined) return {};
        return {true, t + e.value};
    };

    const long cells = std::lround(2.0 / grid_step);
    auto grid_t = [cells](long i) { return (2.0 * static_cast<double>(i)) / static_cast<double>(cells); };

    GValue prev = g(0.0);
    double prev_t = 0.0;
    GValue prev2;  // one grid point further back, for dip detection
    double prev2_t = 0.0;
    for (long i = 1; i <= cells; ++i) {
        const double t = grid_t(i);
        GValue cur = g(t);
        if (cur.defined && std::abs(cur.g) <= 1e-12 && t > 1e-9) {
            zeros.push_back(t);  // grid point dead on a zero
        } else if (prev.defined && cur.defined) {
            if (prev.g != 0.0 && cur.g != 0.0 && (prev.g < 0.0) != (cur.g < 0.0))
                zeros.push_back(bisect_sign_change(g, prev_t, t, prev.g, cur.g));
        } else if (!prev.defined && cur.defined) {
            const double edge = refine_defined_edge(g, t, prev_t);
            GValue ge = g(edge);
            micro_scan(g, edge, t, zeros);
            if (include_tangential && ge.defined && std::abs(ge.g) <= 1e-9 && edge > 1e-9)
                zeros.push_back(edge);
        } else if (prev.defined && !cur.defined) {
            const double edge = refine_defined_edge(g, prev_t, t);
            GValue ge = g(edge);
            micro_scan(g, prev_t, edge, zeros);
            if (include_tangential && ge.defined && std::abs(ge.g) <= 1e-9 && edge > 1e-9)
                zeros.push_back(edge);
        }
        // interior dip of |g| that never crosses: tangential zero candidate
        if (include_tangential && i >= 2 && prev.defined && prev2.defined && cur.defined &&
            std::abs(prev.g) <= 1e-5 && std::abs(prev.g) <= std::abs(prev2.g) &&
            std::abs(prev.g) <= std::abs(cur.g) &&
            (prev2.g < 0.0) == (cur.g < 0.0)) {
            const double z = refine_dip(g, prev2_t, t);
            GValue gz = g(z);
            if (gz.defined && std::abs(gz.g) <= 1e-9 && z > 1e-9) zeros.push_back(z);
        }
        prev2 = prev;
        prev2_t = prev_t;
        prev = cur;
        prev_t = t;
    }

    std::sort(zeros.begin(), zeros.end());
    std::vector<double> unique;
    for (double z : zeros) {
        if (z <= 1e-9 || z > 2.0) continue;
        if (unique.empty() || z - unique.back() > 1e-9) unique.push_back(z);
    }
    return unique;
}

}  // namespace detail

// All zeros of phi_tau found on (0, 2] by a grid scan at grid_step plus
// bisection refinement to ~1e-12: transversal sign changes, tangential
// touches, and defined-set edge zeros. Zeros supported on isolated points of
// the domain are reported only when the grid lands on them.
inline std::vector<double> suffix_zeros(const Signature& tau, double grid_step = kBranchGridStep) {
    if (!(grid_step > 0.0 && grid_step <= 0.1))
        throw std::invalid_argument("suffix_zeros: grid_step must be in (0, 0.1]");
    return detail::scan_suffix_zeros(tau, grid_step, true, kTolZero);
}

struct BranchingPoint {
    Signature signature;
    double t_sigma;  // in [0, 2); the branch is regular exactly on (t_sigma, 2]
};

// Left endpoint of the regularity interval: the largest zero over all proper
// suffix branches of sigma, or 0 when no suffix vanishes on (0, 2]. Only
// sign-change zeros enter the maximum; a tangential zero of a suffix is
// always matched by a sign-change zero of a deeper suffix at the same t.
// Independent of the leading sign by construction.
inline BranchingPoint branching_point(const Signature& sigma, double grid_step = kBranchGridStep,
                                      int max_rank = kMaxBranchingRank) {
    if (sigma.rank() > max_rank)
        throw std::length_error("branching_point: rank exceeds the configured maximum");
    double best = 0.0;
    for (int k = 0; k + 2 <= sigma.rank(); ++k) {
        for (double z : detail::scan_suffix_zeros(sigma.suffix(k), grid_step, false, kTolZero))
            best = std::max(best, z);
    }
    return {sigma, best};
}

}  // namespace qel
