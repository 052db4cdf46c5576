#pragma once
// Parameters where the critical orbit becomes eventually periodic without
// being periodic: preperiod h >= 1 and period T >= 1 mean q^h(0) lands on a
// repelling T-cycle. Located as zeros of D(t) = P_h(t) - P_{h+T}(t) (value
// recursion, not coefficients), then filtered:
//   - minimality: the orbit is not already T-periodic from step h-1;
//   - primality: T is not a proper multiple of an earlier-matching period;
//   - repulsion plausibility: the landed cycle stays clear of the critical
//     point (a superstable hit is an attracting artifact, not admissible).
// Besides transversal sign changes the scan accepts endpoint zeros (D may
// vanish exactly at t = 2) and tangential dips of |D| refined to zero.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qel/critical_poly.hpp"
#include "qel/quad.hpp"

namespace qel {

struct MisiurewiczPoint {
    int h;     // preperiod, >= 1
    int T;     // period of the landed cycle, >= 1
    double t;  // parameter in (0, 2]
};

namespace detail {

inline double pdiff(double t, int h, int T) {
    // P_h(t) - P_{h+T}(t) sharing one orbit pass
    double v = 0.0, ph = 0.0;
    for (int k = 1; k <= h + T; ++k) {
        v = t - v * v;
        if (k == h) ph = v;
    }
    return ph - v;
}

inline bool misiurewicz_admissible(double t, int h, int T) {
    if (!(t > 1e-9 && t <= 2.0)) return false;
    const QuadParam tq(t);
    // minimality of the preperiod
    if (h >= 2 && std::abs(pdiff(t, h - 1, T)) <= 1e-7) return false;
    // primality of the period: no proper divisor already matches
    for (int Tp = 1; Tp < T; ++Tp) {
        if (T % Tp == 0 && std::abs(pdiff(t, h, Tp)) <= 1e-7) return false;
    }
    // the landed cycle must stay clear of the critical point
    std::vector<double> orbit = iterate(tq, 0.0, h + T - 1);
    for (int k = h; k <= h + T - 1; ++k) {
        if (std::abs(orbit[static_cast<std::size_t>(k)]) <= 1e-7) return false;
    }
    return true;
}

}  // namespace detail

// All eventually-periodic parameters with the given (h, T) found in
// [t_lo, t_hi]: sign changes of D bisected to 1e-12, endpoint zeros, and
// tangential dips. Admissibility filters applied afterwards.
inline std::vector<MisiurewiczPoint> find_misiurewicz(int h, int T, double t_lo = 1e-6,
                                                      double t_hi = 2.0,
                                                      double grid_step = 1e-4) {
    if (h < 1 || T < 1) throw std::invalid_argument("find_misiurewicz: need h >= 1 and T >= 1");
    if (h + 2 * T > 40)
        throw std::length_error("find_misiurewicz: h + 2T exceeds the configured maximum (40)");
    if (!(t_lo < t_hi) || t_lo < 0.0 || t_hi > 2.0)
        throw std::invalid_argument("find_misiurewicz: need 0 <= t_lo < t_hi <= 2");
    auto D = [h, T](double t) { return detail::pdiff(t, h, T); };

    std::vector<double> candidates;
    const long cells = std::max(2L, std::lround((t_hi - t_lo) / grid_step));
    double prev_t = t_lo;
    double prev = D(prev_t);
    double prev2 = prev, prev2_t = prev_t;
    if (std::abs(prev) <= 1e-12) candidates.push_back(prev_t);  // endpoint zero
    for (long i = 1; i <= cells; ++i) {
        const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(cells);
        const double cur = D(t);
        if (std::abs(cur) <= 1e-12) {
            candidates.push_back(t);
        } else if (prev != 0.0 && (prev < 0.0) != (cur < 0.0)) {
            double a = prev_t, b = t, fa = prev;
            for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = D(m);
                if (fm == 0.0) { a = b = m; break; }
                if ((fa < 0.0) != (fm < 0.0)) b = m;
                else { a = m; fa = fm; }
            }
            candidates.push_back(0.5 * (a + b));
        }
        // tangential dip of |D|
        if (i >= 2 && std::abs(prev) <= 1e-6 && std::abs(prev) <= std::abs(prev2) &&
            std::abs(prev) <= std::abs(cur) && (prev2 < 0.0) == (cur < 0.0)) {
            double a = prev2_t, b = t;
            const double inv_phi = 0.6180339887498949;
            double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
            double f1 = std::abs(D(x1)), f2 = std::abs(D(x2));
            for (int it = 0; it < 120 && (b - a) > 1e-13; ++it) {
                if (f1 <= f2) { b = x2; x2 = x1; f2 = f1; x1 = b - inv_phi * (b - a); f1 = std::abs(D(x1)); }
                else { a = x1; x1 = x2; f1 = f2; x2 = a + inv_phi * (b - a); f2 = std::abs(D(x2)); }
            }
            const double z = f1 <= f2 ? x1 : x2;
            if (std::abs(D(z)) <= 1e-10) candidates.push_back(z);
        }
        prev2 = prev;
        prev2_t = prev_t;
        prev = cur;
        prev_t = t;
    }

    std::sort(candidates.begin(), candidates.end());
    std::vector<MisiurewiczPoint> out;
    for (double z : candidates) {
        if (!out.empty() && std::abs(z - out.back().t) <= 1e-9) continue;
        if (detail::misiurewicz_admissible(z, h, T)) out.push_back({h, T, z});
    }
    return out;
}

struct MisiurewiczCheck {
    bool ok;                     // tail periodic and the cycle repelling
    bool tail_periodic;          // |x_{k+T} - x_k| <= 1e-8 over the first 3 periods
    double max_tail_deviation;   // over those comparisons
    double multiplier_magnitude; // product of |2 x_k| around the landed cycle
    bool repelling;              // multiplier magnitude > 1
    bool drift_dominated;        // deviations beyond the first 3 periods exceed 1e-4
    int horizon;
};

// Orbit-based verification. Rounding errors are amplified by the repelling
// multiplier, so only the first three periods after the preperiod are held
// to the 1e-8 bound; later windows are monitored and reported as drift, not
// failure. Requires horizon >= h + 3T.
inline MisiurewiczCheck verify_misiurewicz(const MisiurewiczPoint& pt, int horizon) {
    if (horizon < pt.h + 3 * pt.T)
        throw std::invalid_argument("verify_misiurewicz: horizon must be >= h + 3T");
    const QuadParam t(pt.t);
    std::vector<double> orbit = iterate(t, 0.0, horizon);
    MisiurewiczCheck out{};
    out.horizon = horizon;
    out.max_tail_deviation = 0.0;
    for (int k = pt.h; k + pt.T <= std::min(horizon, pt.h + 3 * pt.T); ++k) {
        const double dev = std::abs(orbit[static_cast<std::size_t>(k + pt.T)] -
                                    orbit[static_cast<std::size_t>(k)]);
        out.max_tail_deviation = std::max(out.max_tail_deviation, dev);
    }
    out.tail_periodic = out.max_tail_deviation <= 1e-8;
    double mult = 1.0;
    for (int k = pt.h; k < pt.h + pt.T; ++k)
        mult *= 2.0 * std::abs(orbit[static_cast<std::size_t>(k)]);
    out.multiplier_magnitude = mult;
    out.repelling = mult > 1.0;
    out.drift_dominated = false;
    for (int k = pt.h + 3 * pt.T; k + pt.T <= horizon; ++k) {
        const double dev = std::abs(orbit[static_cast<std::size_t>(k + pt.T)] -
                                    orbit[static_cast<std::size_t>(k)]);
        if (dev > 1e-4) { out.drift_dominated = true; break; }
    }
    out.ok = out.tail_periodic && out.repelling;
    return out;
}

// The first preperiod-3, period-1 parameter is the unique root in (0, 2) of
// t^4 - 4t^3 + 6t^2 - 6t + 4 = (t - 2)(t^3 - 2t^2 + 2t - 2); the cubic factor
// is strictly increasing (its derivative has negative discriminant), so a
// single bisection bracket suffices.
inline double m31_quartic() {
    auto cubic = [](double t) { return ((t - 2.0) * t + 2.0) * t - 2.0; };
    double a = 1.0, b = 2.0;  // cubic(1) = -1 < 0 < cubic(2) = 2
    double fa = cubic(a);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = cubic(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) b = m;
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

}  // namespace qel
