#pragma once
// Superstable cycles of q_t: symbolic patterns (+, s2, ..., s_{p-1}, C), the
// parameter solver, per-period enumeration, verification of a (t, p) pair,
// and the uniqueness / ordering audits.
//
// The pattern (+, s2, ..., s_{p-1}, C) corresponds to the root branch with
// signs (+, -s2, ..., -s_{p-1}); its unique intersection with the diagonal
// phi(t) = t is the cycle's parameter. The solver first runs the fixed-point
// loop t <- phi(t) from t = 2, falls back to a scan of the branch's regular
// set with bisection, and finishes with a guarded Newton polish on the
// critical-orbit value so the residual reaches rounding level even at high
// periods. A candidate is accepted only if the orbit of 0 returns to 0 at
// exactly step p, keeps |x_k| above reg_tol before that, and reproduces the
// requested symbols; this rejects diagonal crossings of non-regular branch
// extensions without any special casing.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qel/parallel.hpp"
#include "qel/quad.hpp"
#include "qel/root_branch.hpp"
#include "qel/signature.hpp"

namespace qel {

inline constexpr double kRegTol = 1e-7;        // minimum |x_k| before the return step
inline constexpr double kResidualTol = 1e-10;  // maximum |q^p(0)| at an accepted parameter
inline constexpr int kMaxCyclePeriod = 16;

// Symbol word of a superstable orbit read off from x_1 = q_t(0): '+' or '-'
// is the sign of x_k for k < p, and the final 'C' marks the return to the
// critical point. Period 1 is the bare "C"; for p >= 2 the word starts '+'
// (x_1 = t > 0) and contains exactly one 'C', at the end.
class SymbolicCycle {
public:
    explicit SymbolicCycle(std::string_view text) : text_(text) {
        if (text_.empty()) throw std::invalid_argument("SymbolicCycle: empty pattern");
        if (text_.back() != 'C') throw std::invalid_argument("SymbolicCycle: pattern must end in 'C'");
        for (std::size_t i = 0; i + 1 < text_.size(); ++i) {
            if (text_[i] != '+' && text_[i] != '-')
                throw std::invalid_argument("SymbolicCycle: interior symbols must be '+' or '-'");
        }
        if (text_.size() >= 2 && text_[0] != '+')
            throw std::invalid_argument("SymbolicCycle: patterns of period >= 2 must start with '+'");
    }

    int period() const noexcept { return static_cast<int>(text_.size()); }
    const std::string& str() const noexcept { return text_; }

    // Sign of symbol k (1-based, k in [1, period-1]) as +1 / -1.
    int sign(int k) const {
        if (k < 1 || k >= period()) throw std::out_of_range("SymbolicCycle::sign: bad index");
        return text_[static_cast<std::size_t>(k) - 1] == '+' ? 1 : -1;
    }

    // Pattern of period p >= 3 from a bitmask over the free symbols
    // s2..s_{p-1}: bit j set means s_{j+2} = '-'.
    static SymbolicCycle from_pattern(int p, unsigned long mask) {
        std::string text = "+";
        for (int j = 0; j + 2 <= p - 1; ++j) text.push_back((mask >> j) & 1u ? '-' : '+');
        text.push_back('C');
        return SymbolicCycle(text);
    }

private:
    std::string text_;
};

// Branch whose diagonal intersection is the cycle's parameter:
// signs (+, -s2, ..., -s_{p-1}), rank p - 1.
inline Signature cycle_branch_signature(const SymbolicCycle& c) {
    if (c.period() < 2)
        throw std::invalid_argument("cycle_branch_signature: period 1 has no branch");
    std::vector<int> signs;
    signs.reserve(static_cast<std::size_t>(c.period()) - 1);
    signs.push_back(1);
    for (int k = 2; k < c.period(); ++k) signs.push_back(-c.sign(k));
    return Signature(signs);
}

enum class SolveStatus { solved, not_admissible, ambiguous };

struct SolvedCycle {
    SymbolicCycle cycle;
    double t0;
    std::vector<double> orbit;  // x_1 = q(0), ..., x_p = q^p(0); |x_p| = residual
    double residual;
};

struct SolveResult {
    SolveStatus status;
    std::optional<SolvedCycle> solved;
};

namespace detail {

// Newton on P_p(t) = q_t^p(0) with value and derivative propagated together:
// v' <- 1 - 2 v v'. Started within ~1e-13 of the root, so steps larger than
// 1e-6 are treated as a failure and ignored.
inline double polish_superstable(double t, int p) {
    for (int step = 0; step < 6; ++step) {
        double v = 0.0, dv = 0.0;
        for (int k = 0; k < p; ++k) {
            dv = 1.0 - 2.0 * v * dv;
            v = t - v * v;
        }
        if (dv == 0.0) break;
        const double delta = v / dv;
        if (!(std::abs(delta) < 1e-6)) break;
        double tn = t - delta;
        if (tn < 0.0) tn = 0.0;
        if (tn > 2.0) tn = 2.0;
        if (tn == t) break;
        t = tn;
    }
    return t;
}

// Full admissibility check at a candidate parameter. near_miss is set when
// the only failure is an intermediate orbit point inside (1e-10, reg_tol];
// such a candidate cannot be certified either way at this tolerance.
inline std::optional<SolvedCycle> validate_cycle_parameter(double t, const SymbolicCycle& c,
                                                           bool& near_miss) {
    if (!(t >= 0.0 && t <= 2.0)) return std::nullopt;
    const int p = c.period();
    std::vector<double> orbit(static_cast<std::size_t>(p));
    double v = 0.0, dv = 0.0;
    for (int k = 1; k <= p; ++k) {
        dv = 1.0 - 2.0 * v * dv;
        v = t - v * v;
        orbit[static_cast<std::size_t>(k) - 1] = v;
    }
    const double residual = std::abs(orbit.back());
    // One ulp of t moves q_t^p(0) by about |dv| * eps, so near t = 2 the
    // smallest residual any double parameter can reach is |dv| * eps / 2
    // (|dv| grows like 4^p there, crossing 1e-10 around p = 13). Accept a
    // candidate whose residual is within a few ulps of that floor; the sign
    // checks below still reject wrong itineraries.
    const double ulp_floor =
        8.0 * std::numeric_limits<double>::epsilon() * std::abs(dv);
    if (residual > std::max(kResidualTol, ulp_floor)) return std::nullopt;
    for (int k = 1; k < p; ++k) {
        const double x = orbit[static_cast<std::size_t>(k) - 1];
        if (std::abs(x) <= kRegTol) {
            if (std::abs(x) > 1e-10) near_miss = true;
            return std::nullopt;  // early return: sub-period or tangency
        }
        if ((x > 0.0 ? 1 : -1) != c.sign(k)) return std::nullopt;
    }
    return SolvedCycle{c, t, std::move(orbit), residual};
}

// Diagonal crossings of g(t) = phi(t) - t over the branch's regular set,
// scanned at `step` with bisection; the leading edge of each regular stretch
// is refined and micro-scanned so crossings just above a branching point are
// not lost.
inline std::vector<double> diagonal_crossings(const Signature& branch, double step) {
    auto g = [&branch](double t) -> detail::GValue {
        if (t > 2.0 && t < 2.0 + 1e-9) t = 2.0;
        if (t < 0.0 || t > 2.0) return {};
        BranchEval e = eval_branch(branch, QuadParam(t));
        if (!e.defined || !e.regular) return {};
        return {true, e.value - t};
    };
    std::vector<double> zeros;
    const long cells = std::lround(2.0 / step);
    GValue prev = g(0.0);
    double prev_t = 0.0;
    for (long i = 1; i <= cells; ++i) {
        const double t = (2.0 * static_cast<double>(i)) / static_cast<double>(cells);
        GValue cur = g(t);
        if (cur.defined && cur.g == 0.0) {
            zeros.push_back(t);
        } else if (prev.defined && cur.defined) {
            if (prev.g != 0.0 && (prev.g < 0.0) != (cur.g < 0.0))
                zeros.push_back(bisect_sign_change(g, prev_t, t, prev.g, cur.g));
        } else if (!prev.defined && cur.defined) {
            const double edge = refine_defined_edge(g, t, prev_t);
            micro_scan(g, edge, t, zeros);
        } else if (prev.defined && !cur.defined) {
            const double edge = refine_defined_edge(g, prev_t, t);
            micro_scan(g, prev_t, edge, zeros);
        }
        prev = cur;
        prev_t = t;
    }
    std::sort(zeros.begin(), zeros.end());
    zeros.erase(std::unique(zeros.begin(), zeros.end(), [](double a, double b) {
        return std::abs(a - b) <= 1e-12;
    }), zeros.end());
    return zeros;
}

}  // namespace detail

// Parameter of a superstable cycle. scan_step controls only the fallback
// scan; the fixed-point loop runs first and suffices for most patterns.
inline SolveResult solve_cycle(const SymbolicCycle& cycle, double scan_step = 1e-4) {
    if (cycle.period() > kMaxCyclePeriod)
        throw std::length_error("solve_cycle: period exceeds the configured maximum");
    if (cycle.period() == 1)
        return {SolveStatus::solved, SolvedCycle{cycle, 0.0, {0.0}, 0.0}};
    const Signature branch = cycle_branch_signature(cycle);
    bool near_miss = false;

    // fixed-point loop t <- phi(t) from t = 2
    double t = 2.0;
    for (int nu = 0; nu < 10000; ++nu) {
        BranchEval e = eval_branch(branch, QuadParam(t));
        if (!e.defined) break;
        const double tn = e.value;
        if (!(tn >= 0.0 && tn <= 2.0)) break;
        const bool done = std::abs(tn - t) < 1e-13;
        t = tn;
        if (done) {
            const double tp = detail::polish_superstable(t, cycle.period());
            if (auto ok = detail::validate_cycle_parameter(tp, cycle, near_miss))
                return {SolveStatus::solved, std::move(ok)};
            break;
        }
    }

    // bisection fallback over the regular set
    for (double z : detail::diagonal_crossings(branch, scan_step)) {
        const double zp = detail::polish_superstable(z, cycle.period());
        if (auto ok = detail::validate_cycle_parameter(zp, cycle, near_miss))
            return {SolveStatus::solved, std::move(ok)};
    }
    return {near_miss ? SolveStatus::ambiguous : SolveStatus::not_admissible, std::nullopt};
}

// All admissible cycles of exact period p, sorted by parameter.
inline std::vector<SolvedCycle> enumerate_cycles(int p, unsigned threads = 0) {
    if (p < 1 || p > kMaxCyclePeriod)
        throw std::invalid_argument("enumerate_cycles: period must be in [1, 16]");
    std::vector<SymbolicCycle> patterns;
    if (p == 1) {
        patterns.emplace_back("C");
    } else if (p == 2) {
        patterns.emplace_back("+C");
    } else {
        const unsigned long count = 1ul << (p - 2);
        patterns.reserve(count);
        for (unsigned long mask = 0; mask < count; ++mask)
            patterns.push_back(SymbolicCycle::from_pattern(p, mask));
    }
    std::vector<std::optional<SolvedCycle>> slots(patterns.size());
    parallel_for(patterns.size(), [&](std::size_t i) {
        SolveResult r = solve_cycle(patterns[i]);
        if (r.status == SolveStatus::solved) slots[i] = std::move(r.solved);
    }, threads);
    std::vector<SolvedCycle> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    std::sort(out.begin(), out.end(), [](const SolvedCycle& a, const SolvedCycle& b) {
        return a.t0 < b.t0;
    });
    return out;
}

struct CycleCheck {
    bool ok;
    std::string symbols;  // filled on success
    int reject_step;      // first offending orbit index on failure, else -1
};

// Does t carry a superstable cycle of exact period p? Accepts iff
// |q^p(0)| <= 1e-9 and every earlier orbit point stays above reg_tol;
// on success the symbol word is read off the orbit.
inline CycleCheck verify_cycle(QuadParam t, int p) {
    if (p < 1) throw std::invalid_argument("verify_cycle: period must be >= 1");
    const double tv = t.value();
    std::string symbols;
    double v = 0.0;
    for (int k = 1; k < p; ++k) {
        v = tv - v * v;
        if (std::abs(v) <= kRegTol) return {false, "", k};
        symbols.push_back(v > 0.0 ? '+' : '-');
    }
    v = tv - v * v;
    if (std::abs(v) > 1e-9) return {false, "", p};
    symbols.push_back('C');
    return {true, symbols, -1};
}

struct UniquenessReport {
    int max_period = 0;
    long long cycles_total = 0;
    std::vector<double> parameters;       // all solved parameters, ascending
    std::vector<std::string> violations;  // human-readable descriptions
    bool ok = true;
};

// Solves every pattern for all periods <= max_p twice (the standard path and
// a scan-only path with a different grid, hence different starting brackets),
// then checks the two parameters agree to 1e-10 and that distinct cycles are
// separated by more than 1e-8.
inline UniquenessReport uniqueness_audit(int max_p, unsigned threads = 0) {
    if (max_p < 1 || max_p > kMaxCyclePeriod)
        throw std::invalid_argument("uniqueness_audit: max period must be in [1, 16]");
    UniquenessReport rep;
    rep.max_period = max_p;
    struct Row {
        std::string cycle;
        double t_main;
        double t_alt;
    };
    std::vector<Row> rows;
    for (int p = 1; p <= max_p; ++p) {
        std::vector<SolvedCycle> solved = enumerate_cycles(p, threads);
        std::vector<Row> prows(solved.size());
        parallel_for(solved.size(), [&](std::size_t i) {
            const SymbolicCycle& c = solved[i].cycle;
            prows[i].cycle = c.str();
            prows[i].t_main = solved[i].t0;
            prows[i].t_alt = std::numeric_limits<double>::quiet_NaN();
            if (c.period() == 1) {
                prows[i].t_alt = 0.0;
            } else {
                // scan-only second opinion on a grid incommensurate with 1e-4
                const Signature branch = cycle_branch_signature(c);
                for (double z : detail::diagonal_crossings(branch, 7.3e-5)) {
                    bool near_miss = false;
                    const double zp = detail::polish_superstable(z, c.period());
                    if (detail::validate_cycle_parameter(zp, c, near_miss)) {
                        prows[i].t_alt = zp;
                        break;
                    }
                }
            }
        }, threads);
        rows.insert(rows.end(), prows.begin(), prows.end());
    }
    rep.cycles_total = static_cast<long long>(rows.size());
    for (const Row& r : rows) {
        if (!(std::abs(r.t_main - r.t_alt) <= 1e-10))
            rep.violations.push_back("bracket disagreement for " + r.cycle);
        rep.parameters.push_back(r.t_main);
    }
    std::sort(rep.parameters.begin(), rep.parameters.end());
    for (std::size_t i = 0; i + 1 < rep.parameters.size(); ++i) {
        if (rep.parameters[i + 1] - rep.parameters[i] <= 1e-8)
            rep.violations.push_back("parameters closer than 1e-8 near t = " +
                                     std::to_string(rep.parameters[i]));
    }
    rep.ok = rep.violations.empty();
    return rep;
}

struct OrderingReport {
    bool chain_ok = false;
    std::vector<double> chain;  // parameters of the reference chain, as solved
    bool all_plus_monotone = false;
    std::vector<double> all_plus_params;  // "+C", "+-C", "+--C", ... ascending periods
    bool ok = false;
};

// Two ordering facts: the reference chain of low-period cycles is strictly
// increasing in parameter, and the family "+{-}^{p-2}C" (whose branches are
// the all-plus signatures) increases monotonically toward t = 2.
inline OrderingReport ordering_check(int max_all_plus_period = 11) {
    if (max_all_plus_period < 2 || max_all_plus_period > kMaxCyclePeriod)
        throw std::invalid_argument("ordering_check: period must be in [2, 16]");
    OrderingReport rep;
    const char* chain_cycles[] = {"+C", "+-+C", "+-++C", "+-C", "+--+C", "+--C", "+---C"};
    rep.chain_ok = true;
    for (const char* text : chain_cycles) {
        SolveResult r = solve_cycle(SymbolicCycle(text));
        if (r.status != SolveStatus::solved) {
            rep.chain_ok = false;
            break;
        }
        rep.chain.push_back(r.solved->t0);
    }
    if (rep.chain.size() == 7) {
        for (std::size_t i = 0; i + 1 < rep.chain.size(); ++i)
            if (!(rep.chain[i] < rep.chain[i + 1])) rep.chain_ok = false;
    } else {
        rep.chain_ok = false;
    }
    rep.all_plus_monotone = true;
    for (int p = 2; p <= max_all_plus_period; ++p) {
        std::string text = "+";
        text.append(static_cast<std::size_t>(p) - 2, '-');
        text.push_back('C');
        SolveResult r = solve_cycle(SymbolicCycle(text));
        if (r.status != SolveStatus::solved) {
            rep.all_plus_monotone = false;
            break;
        }
        if (!rep.all_plus_params.empty() && !(r.solved->t0 > rep.all_plus_params.back()))
            rep.all_plus_monotone = false;
        rep.all_plus_params.push_back(r.solved->t0);
    }
    rep.ok = rep.chain_ok && rep.all_plus_monotone;
    return rep;
}

}  // namespace qel
