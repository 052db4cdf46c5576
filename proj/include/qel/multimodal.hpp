#pragma once
// Piecewise-monotone interval maps with l interior extrema ("l-modal"):
// construction with invariant checks, minimal-order preimages of the
// critical points via per-piece bisection, per-target crossing counts,
// the extrema/lap ledger driven by e_{n+1} = e_n + s_n, an entropy
// estimate bounded by log(l + 1), and combinatorial max/min labels for
// the extrema of iterates (rule propagation, not numeric stencils).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qel/quad.hpp"

namespace qel {

inline constexpr double kCritTol = 1e-9;  // proximity that counts as hitting a critical point
// A target this close to a critical value closes its preimage chain
// tangentially: the pair of preimages that would merge at the critical point
// is tallied, never counted. Position proximity alone cannot catch this (an
// error e in the target puts the merging pair ~sqrt(e) away from the
// critical point, far outside any sensible position tolerance).
inline constexpr double kCritValueTol = 1e-12;
inline constexpr int kMaxMultimodalDepth = 14;

// Shape of the modality pattern: positive means the first interior extremum
// (and every odd-indexed one) is a maximum, i.e. the map rises on its first
// monotone piece.
enum class Shape { positive, negative };

class MultimodalMap {
public:
    // criticals must be strictly increasing and strictly inside [a, b].
    // Construction spot-checks strict monotonicity between consecutive
    // critical points and range containment on a 1000-samples-per-piece grid
    // and throws std::invalid_argument on violation.
    MultimodalMap(double a, double b, std::vector<double> criticals,
                  std::function<double(double)> f, std::string name = "")
        : a_(a), b_(b), crit_(std::move(criticals)), f_(std::move(f)), name_(std::move(name)) {
        if (!(a_ < b_)) throw std::invalid_argument("MultimodalMap: need a < b");
        if (crit_.empty()) throw std::invalid_argument("MultimodalMap: need at least one critical point");
        double last = a_;
        for (double c : crit_) {
            if (!(c > last) || !(c < b_))
                throw std::invalid_argument("MultimodalMap: criticals must be ascending, inside (a, b)");
            last = c;
        }
        const int pieces = modality() + 1;
        int last_dir = 0;
        for (int j = 0; j < pieces; ++j) {
            const double lo = piece_lo(j), hi = piece_hi(j);
            const int samples = 1000;
            double prev = f_(lo);
            check_range(prev);
            int dir = 0;
            for (int s = 1; s <= samples; ++s) {
                const double x = lo + (hi - lo) * s / samples;
                const double y = f_(x);
                check_range(y);
                const int d = y > prev ? 1 : (y < prev ? -1 : 0);
                if (d == 0)
                    throw std::invalid_argument("MultimodalMap: flat step inside a monotone piece");
                if (dir == 0) dir = d;
                else if (d != dir)
                    throw std::invalid_argument("MultimodalMap: monotonicity violated inside a piece");
                prev = y;
            }
            if (j > 0 && dir == last_dir)
                throw std::invalid_argument(
                    "MultimodalMap: adjacent pieces run the same way, so the point between them is not an extremum");
            last_dir = dir;
            if (j == 0) shape_ = dir > 0 ? Shape::positive : Shape::negative;
        }
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int modality() const noexcept { return static_cast<int>(crit_.size()); }
    const std::vector<double>& criticals() const noexcept { return crit_; }
    Shape shape() const noexcept { return shape_; }
    const std::string& name() const noexcept { return name_; }
    double operator()(double x) const { return f_(x); }

    // Monotone piece boundaries: piece j spans [piece_lo(j), piece_hi(j)],
    // j = 0..modality().
    double piece_lo(int j) const { return j == 0 ? a_ : crit_[static_cast<std::size_t>(j) - 1]; }
    double piece_hi(int j) const {
        return j == modality() ? b_ : crit_[static_cast<std::size_t>(j)];
    }

    // Is the interior extremum at crit_[i] a maximum? (0-based index)
    bool critical_is_max(int i) const noexcept {
        const bool odd_position = (i % 2) == 0;  // 1st, 3rd, ... critical point
        return shape_ == Shape::positive ? odd_position : !odd_position;
    }

    // Is monotone piece j rising?
    bool piece_rising(int j) const noexcept {
        const bool even_piece = (j % 2) == 0;
        return shape_ == Shape::positive ? even_piece : !even_piece;
    }

private:
    void check_range(double y) const {
        if (!(y >= a_ - 1e-9 && y <= b_ + 1e-9))
            throw std::invalid_argument("MultimodalMap: map leaves [a, b]");
    }
    double a_, b_;
    std::vector<double> crit_;
    std::function<double(double)> f_;
    std::string name_;
    Shape shape_ = Shape::positive;
};

// The bimodal cubic demo on [0, 1] with extrema at 0.3 (max) and 0.8 (min):
// f(x) = 9.375 x^3 - 15.46875 x^2 + 6.75 x + 0.1. The quadratic coefficient
// is exactly 495/32 so that f'(0.3) = f'(0.8) = 0 holds exactly
// (f' = 28.125 x^2 - 30.9375 x + 6.75 = 28.125 (x - 0.3)(x - 0.8)).
inline MultimodalMap bimodal_demo() {
    auto f = [](double x) { return ((9.375 * x - 15.46875) * x + 6.75) * x + 0.1; };
    return MultimodalMap(0.0, 1.0, {0.3, 0.8}, f, "bimodal-demo");
}

// q_t viewed as a 1-modal map on its invariant interval: critical point 0,
// rising on the left piece and falling on the right, hence positive shape.
inline MultimodalMap quad_as_multimodal(QuadParam t) {
    const InvariantInterval iv = invariant_interval(t);
    const double tv = t.value();
    return MultimodalMap(iv.lo, iv.hi, {0.0}, [tv](double x) { return tv - x * x; },
                         "quadratic");
}

struct CriticalPreimages {
    struct Level {
        std::vector<double> points;   // ascending
        std::vector<int> target;      // per point: 0-based index of the critical
                                      // point its chain terminates on
        long long tangential_hits;    // preimage candidates that landed on a critical point
    };
    std::vector<Level> levels;  // levels[k] = minimal-order-k set; level 0 = the criticals
};

namespace detail {

// Unique solution of f(x) = y on a strictly monotone piece [lo, hi], if any.
inline bool invert_on_piece(const MultimodalMap& f, double lo, double hi, double y, double& x) {
    double flo = f(lo), fhi = f(hi);
    const bool rising = flo < fhi;
    const double ymin = rising ? flo : fhi;
    const double ymax = rising ? fhi : flo;
    if (y < ymin || y > ymax) return false;
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == y) { a = b = m; break; }
        if ((fm < y) == rising) a = m;
        else b = m;
    }
    x = 0.5 * (a + b);
    return true;
}

inline bool found_in_sorted(const std::vector<double>& sorted, double x, double tol) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x - tol);
    return it != sorted.end() && *it <= x + tol;
}

}  // namespace detail

// Levels 0..n of minimal-order critical preimages: level k+1 holds the
// interior points x with f(x) in level k that are not critical themselves
// and not already of lower order. Candidates within kCritTol of a critical
// point are tallied as tangential hits instead.
inline CriticalPreimages critical_preimages(const MultimodalMap& f, int n) {
    if (n < 0) throw std::invalid_argument("critical_preimages: n must be >= 0");
    if (n > kMaxMultimodalDepth)
        throw std::length_error("critical_preimages: depth exceeds the configured maximum (14)");
    CriticalPreimages out;
    out.levels.resize(static_cast<std::size_t>(n) + 1);
    auto& level0 = out.levels[0];
    level0.points = f.criticals();
    level0.tangential_hits = 0;
    for (int i = 0; i < f.modality(); ++i) level0.target.push_back(i);

    const int pieces = f.modality() + 1;
    for (int k = 1; k <= n; ++k) {
        const auto& prev = out.levels[static_cast<std::size_t>(k) - 1];
        auto& lv = out.levels[static_cast<std::size_t>(k)];
        lv.tangential_hits = 0;
        std::vector<std::pair<double, int>> found;  // (point, terminal target)
        std::vector<char> skip_piece(static_cast<std::size_t>(pieces), 0);
        for (std::size_t j = 0; j < prev.points.size(); ++j) {
            const double y = prev.points[j];
            std::fill(skip_piece.begin(), skip_piece.end(), 0);
            for (int i = 0; i < f.modality(); ++i) {
                const double c = f.criticals()[static_cast<std::size_t>(i)];
                if (std::abs(y - f(c)) <= kCritValueTol) {
                    ++lv.tangential_hits;
                    skip_piece[static_cast<std::size_t>(i)] = 1;
                    skip_piece[static_cast<std::size_t>(i) + 1] = 1;
                }
            }
            for (int piece = 0; piece < pieces; ++piece) {
                if (skip_piece[static_cast<std::size_t>(piece)]) continue;
                double x;
                if (!detail::invert_on_piece(f, f.piece_lo(piece), f.piece_hi(piece), y, x))
                    continue;
                bool critical_hit = false;
                for (double c : f.criticals()) {
                    if (std::abs(x - c) <= kCritTol) { critical_hit = true; break; }
                }
                if (critical_hit) {
                    ++lv.tangential_hits;
                    continue;
                }
                if (x <= f.a() + kCritTol || x >= f.b() - kCritTol) continue;  // interior only
                bool already = false;
                for (int m = 0; m < k && !already; ++m)
                    already = detail::found_in_sorted(out.levels[static_cast<std::size_t>(m)].points, x, 1e-10);
                if (already) continue;
                found.emplace_back(x, prev.target[j]);
            }
        }
        std::sort(found.begin(), found.end());
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (i > 0 && found[i].first - found[i - 1].first <= 1e-10) continue;  // piece-seam duplicate
            lv.points.push_back(found[i].first);
            lv.target.push_back(found[i].second);
        }
    }
    return out;
}

struct CrossingCount {
    int n;                                // order
    std::vector<long long> per_critical;  // s_{n,i}, i = 0..l-1
    long long total;                      // s_n = sum_i s_{n,i}
};

// s_0..s_depth; s_0 counts the critical points themselves (one per target).
inline std::vector<CrossingCount> crossing_counts(const MultimodalMap& f, int depth) {
    CriticalPreimages pre = critical_preimages(f, depth);
    std::vector<CrossingCount> out;
    out.reserve(pre.levels.size());
    for (std::size_t k = 0; k < pre.levels.size(); ++k) {
        CrossingCount c;
        c.n = static_cast<int>(k);
        c.per_critical.assign(static_cast<std::size_t>(f.modality()), 0);
        for (int tgt : pre.levels[k].target) ++c.per_critical[static_cast<std::size_t>(tgt)];
        c.total = static_cast<long long>(pre.levels[k].points.size());
        out.push_back(std::move(c));
    }
    return out;
}

struct ExtremaLedger {
    std::vector<long long> e;    // e_n = interior extrema of f^n; e_0 = 0
    std::vector<long long> ell;  // lap numbers: ell_n = e_n + 1
};

// e_{n+1} = e_n + s_n: each minimal-order-n critical preimage spawns one new
// interior extremum of f^{n+1}.
inline ExtremaLedger extrema_ledger(const MultimodalMap& f, int depth) {
    std::vector<CrossingCount> s = crossing_counts(f, depth);
    ExtremaLedger led;
    led.e.assign(static_cast<std::size_t>(depth) + 1, 0);
    led.ell.assign(static_cast<std::size_t>(depth) + 1, 1);
    for (int n = 1; n <= depth; ++n) {
        led.e[static_cast<std::size_t>(n)] =
            led.e[static_cast<std::size_t>(n) - 1] + s[static_cast<std::size_t>(n) - 1].total;
        led.ell[static_cast<std::size_t>(n)] = led.e[static_cast<std::size_t>(n)] + 1;
    }
    return led;
}

// h = log(ell_depth) / depth = log(1 + sum_{k<depth} s_k) / depth; bounded by
// log(l + 1) since f^n has at most (l+1)^n laps.
inline double entropy_multimodal(const MultimodalMap& f, int depth) {
    if (depth < 1) throw std::invalid_argument("entropy_multimodal: depth must be >= 1");
    ExtremaLedger led = extrema_ledger(f, depth);
    return std::log(static_cast<double>(led.ell[static_cast<std::size_t>(depth)])) / depth;
}

enum class ExtremumKind { maximum, minimum };

struct ExtremumLabel {
    ExtremumKind kind;
    bool ambiguous;      // a later orbit point landed on a critical point
    int ambiguous_step;  // that step, or -1
};

// Max/min label of an extremum x of f^n by rule propagation: x is an
// extremum of f^n exactly when its orbit hits a critical point c_i at some
// step m <= n-1; the label of f^{m+1} at x is the type of c_i, and each
// further application of f keeps the label on a rising piece and flips it on
// a falling one. If a later orbit point lands on a critical point the label
// so far is returned flagged ambiguous (the iterate has a degenerate,
// higher-order extremum there).
inline ExtremumLabel classify_extremum(const MultimodalMap& f, int n, double x) {
    if (n < 1) throw std::invalid_argument("classify_extremum: n must be >= 1");
    double y = x;
    int m = -1, hit = -1;
    for (int j = 0; j <= n - 1; ++j) {
        for (int i = 0; i < f.modality(); ++i) {
            if (std::abs(y - f.criticals()[static_cast<std::size_t>(i)]) <= kCritTol) {
                m = j;
                hit = i;
                break;
            }
        }
        if (m >= 0) break;
        y = f(y);
    }
    if (m < 0)
        throw std::invalid_argument(
            "classify_extremum: the orbit of x misses the critical points, so x is not an extremum of f^n");
    ExtremumKind kind = f.critical_is_max(hit) ? ExtremumKind::maximum : ExtremumKind::minimum;
    y = f(f.criticals()[static_cast<std::size_t>(hit)]);
    for (int j = m + 1; j <= n - 1; ++j) {
        for (int i = 0; i < f.modality(); ++i) {
            if (std::abs(y - f.criticals()[static_cast<std::size_t>(i)]) <= kCritTol)
                return {kind, true, j};
        }
        int piece = 0;
        while (piece < f.modality() && y > f.criticals()[static_cast<std::size_t>(piece)]) ++piece;
        if (!f.piece_rising(piece))
            kind = kind == ExtremumKind::maximum ? ExtremumKind::minimum : ExtremumKind::maximum;
        y = f(y);
    }
    return {kind, false, -1};
}

// Interior extrema of x -> f^iterations(x) counted on a dense grid; the
// independent cross-check for the ledger.
template <class F>
long long count_grid_extrema(F&& f, double a, double b, int iterations, long long samples) {
    if (samples < 3) throw std::invalid_argument("count_grid_extrema: need at least 3 samples");
    auto fn = [&](double x) {
        for (int k = 0; k < iterations; ++k) x = f(x);
        return x;
    };
    long long count = 0;
    double y0 = fn(a), y1 = fn(a + (b - a) / static_cast<double>(samples - 1));
    for (long long i = 2; i < samples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double y2 = fn(x);
        const double d1 = y1 - y0, d2 = y2 - y1;
        if (d1 * d2 < 0.0) ++count;
        y0 = y1;
        y1 = y2;
    }
    return count;
}

// Map description file: one directive per line, '#' starts a comment.
//   interval A B
//   critical C1 C2 ... Cl
//   poly     C0 C1 ... Cd     (coefficients, ascending powers)
// All three lines are required; "poly" is the only evaluator form.
inline MultimodalMap parse_map_file(std::istream& in) {
    bool have_interval = false, have_crit = false, have_poly = false;
    double a = 0.0, b = 0.0;
    std::vector<double> crit, coeffs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        auto want_numbers = [&](std::vector<double>& dst, std::size_t at_least) {
            double v;
            while (ls >> v) dst.push_back(v);
            if (!ls.eof() || dst.size() < at_least)
                throw std::runtime_error("map file line " + std::to_string(lineno) +
                                         ": expected at least " + std::to_string(at_least) +
                                         " numeric arguments");
        };
        if (word == "interval") {
            std::vector<double> ab;
            want_numbers(ab, 2);
            if (ab.size() != 2)
                throw std::runtime_error("map file line " + std::to_string(lineno) +
                                         ": interval takes exactly two numbers");
            a = ab[0];
            b = ab[1];
            have_interval = true;
        } else if (word == "critical") {
            want_numbers(crit, 1);
            have_crit = true;
        } else if (word == "poly") {
            want_numbers(coeffs, 1);
            have_poly = true;
        } else {
            throw std::runtime_error("map file line " + std::to_string(lineno) +
                                     ": unknown directive '" + word + "'");
        }
    }
    if (!have_interval || !have_crit || !have_poly)
        throw std::runtime_error("map file: 'interval', 'critical', and 'poly' lines are all required");
    auto f = [coeffs](double x) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
    };
    return MultimodalMap(a, b, std::move(crit), f, "map-file");
}

inline MultimodalMap parse_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("map file: cannot open '" + path + "'");
    return parse_map_file(in);
}

}  // namespace qel
