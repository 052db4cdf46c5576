// Command-line driver for the library: every computation the headers expose,
// printed as CSV (default) or JSON. All diagnostics go to stderr; data goes
// to stdout or --output. Exit codes: 0 success, 1 numeric or golden-data
// mismatch, 2 bad arguments or unreadable input.

#include <qel/qel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
    std::string format = "csv";
    std::string output;
    int precision = 12;
    unsigned threads = 0;
    unsigned long long seed = 0;  // accepted for interface stability; nothing here is random
    std::string golden_dir = QEL_GOLDEN_DIR;
};

// QEL_THREADS in the environment wins over the flag; 0 means auto-detect.
unsigned resolve_threads(const GlobalOpts& o) {
    if (std::getenv("QEL_THREADS") != nullptr || o.threads == 0)
        return qel::default_thread_count();
    return o.threads;
}

std::string fmt_g(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

// One table cell carrying both its CSV text and its typed JSON value. Doubles
// are reparsed from the formatted text so both formats show the same digits.
struct Cell {
    std::string csv;
    ordered_json j;
};

struct Table {
    std::string command;
    ordered_json params = ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    const GlobalOpts* opts = nullptr;

    Cell num(double x) const {
        const std::string s = fmt_g(x, opts->precision);
        return {s, ordered_json::parse(s)};
    }
    static Cell integer(long long v) { return {std::to_string(v), ordered_json(v)}; }
    static Cell text(const std::string& s) { return {s, ordered_json(s)}; }
    static Cell boolean(bool b) { return {b ? "true" : "false", ordered_json(b)}; }
    static Cell null() { return {"", ordered_json(nullptr)}; }

    void add(std::vector<Cell> cells) { rows.push_back(std::move(cells)); }
};

int emit(const GlobalOpts& o, const Table& tab) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) {
            std::cerr << "error: cannot open output file " << o.output << "\n";
            return 2;
        }
        out = &file;
    }
    if (o.format == "json") {
        ordered_json doc;
        doc["command"] = tab.command;
        doc["version"] = QEL_VERSION;
        doc["parameters"] = tab.params;
        doc["columns"] = tab.columns;
        ordered_json rows = ordered_json::array();
        for (const auto& row : tab.rows) {
            ordered_json r = ordered_json::array();
            for (const auto& cell : row) r.push_back(cell.j);
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        *out << doc.dump(2) << "\n";
    } else {
        for (std::size_t c = 0; c < tab.columns.size(); ++c)
            *out << (c ? "," : "") << tab.columns[c];
        *out << "\n";
        for (const auto& row : tab.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                *out << (c ? "," : "") << row[c].csv;
            *out << "\n";
        }
    }
    out->flush();
    return out->good() ? 0 : 2;
}

// Golden files: '#' lines are comments, everything else is comma-separated.
std::vector<std::vector<std::string>> read_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

int run_entropy(const GlobalOpts& o, double t, int depth, bool aitken) {
    Table tab{"entropy", {{"t", t}, {"depth", depth}, {"aitken", aitken}}, {"t", "depth", "h"}, {}, &o};
    const qel::EntropyEstimate est = qel::entropy_estimate(qel::QuadParam(t), depth, aitken);
    tab.add({tab.num(est.t), Table::integer(est.depth), tab.num(est.h)});
    return emit(o, tab);
}

int run_staircase(const GlobalOpts& o, int n, double t_lo, double t_hi, int steps,
                  bool refine_jumps) {
    const qel::StaircaseSample st = qel::staircase(n, t_lo, t_hi, steps, resolve_threads(o));
    ordered_json params{{"n", n}, {"t_min", t_lo}, {"t_max", t_hi}, {"steps", steps},
                        {"refine_jumps", refine_jumps}};
    if (refine_jumps) {
        Table tab{"staircase", params, {"t", "increment"}, {}, &o};
        for (const auto& j : st.jumps) tab.add({tab.num(j.t), Table::integer(j.increment)});
        return emit(o, tab);
    }
    Table tab{"staircase", params, {"t", "s_n"}, {}, &o};
    for (std::size_t i = 0; i < st.t_grid.size(); ++i)
        tab.add({tab.num(st.t_grid[i]), Table::integer(st.values[i])});
    return emit(o, tab);
}

int run_branch_eval(const GlobalOpts& o, const std::string& sig_text, double t) {
    const qel::Signature sig(sig_text);
    const qel::BranchEval e = qel::eval_branch(sig, qel::QuadParam(t));
    Table tab{"branch eval", {{"sig", sig_text}, {"t", t}},
              {"sig", "t", "value", "defined", "regular"}, {}, &o};
    tab.add({Table::text(sig.str()), tab.num(t), e.defined ? tab.num(e.value) : Table::null(),
             Table::boolean(e.defined), Table::boolean(e.regular)});
    return emit(o, tab);
}

int run_branch_point(const GlobalOpts& o, const std::string& sig_text) {
    const qel::Signature sig(sig_text);
    const qel::BranchingPoint bp = qel::branching_point(sig);
    Table tab{"branch point", {{"sig", sig_text}}, {"sig", "t_sigma"}, {}, &o};
    tab.add({Table::text(sig.str()), tab.num(bp.t_sigma)});
    return emit(o, tab);
}

int run_branch_at_two(const GlobalOpts& o, const std::string& sig_text) {
    const qel::Signature sig(sig_text);
    const qel::AtTwo v = qel::branch_at_two(sig);
    Table tab{"branch at-two", {{"sig", sig_text}}, {"sig", "radical", "trig"}, {}, &o};
    tab.add({Table::text(sig.str()), tab.num(v.radical), tab.num(v.trig)});
    return emit(o, tab);
}

int run_solve(const GlobalOpts& o, const std::string& cycle_text) {
    const qel::SymbolicCycle cycle(cycle_text);
    const qel::SolveResult r = qel::solve_cycle(cycle);
    if (r.status != qel::SolveStatus::solved) {
        std::cerr << "error: cycle " << cycle_text << " is "
                  << (r.status == qel::SolveStatus::not_admissible ? "not admissible"
                                                                   : "ambiguous at this scan step")
                  << "\n";
        return 1;
    }
    Table tab{"superstable solve", {{"cycle", cycle_text}}, {"period", "cycle", "t"}, {}, &o};
    tab.add({Table::integer(cycle.period()), Table::text(cycle.str()), tab.num(r.solved->t0)});
    return emit(o, tab);
}

int run_enumerate(const GlobalOpts& o, int period) {
    const std::vector<qel::SolvedCycle> found = qel::enumerate_cycles(period, resolve_threads(o));
    Table tab{"superstable enumerate", {{"period", period}}, {"period", "cycle", "t"}, {}, &o};
    for (const auto& c : found)
        tab.add({Table::integer(c.cycle.period()), Table::text(c.cycle.str()), tab.num(c.t0)});
    return emit(o, tab);
}

int run_audit(const GlobalOpts& o, int max_period) {
    const qel::UniquenessReport rep = qel::uniqueness_audit(max_period, resolve_threads(o));
    Table tab{"superstable audit", {{"max_period", max_period}},
              {"max_period", "cycles_total", "ok"}, {}, &o};
    tab.add({Table::integer(rep.max_period), Table::integer(rep.cycles_total),
             Table::boolean(rep.ok)});
    const int rc = emit(o, tab);
    if (rc != 0) return rc;
    if (!rep.ok) {
        for (const auto& v : rep.violations) std::cerr << "violation: " << v << "\n";
        return 1;
    }
    return 0;
}

int run_misiurewicz(const GlobalOpts& o, int h, int T, double t_lo, double t_hi) {
    const std::vector<qel::MisiurewiczPoint> pts = qel::find_misiurewicz(h, T, t_lo, t_hi);
    Table tab{"misiurewicz", {{"h", h}, {"T", T}, {"t_min", t_lo}, {"t_max", t_hi}},
              {"h", "T", "t"}, {}, &o};
    for (const auto& p : pts) tab.add({Table::integer(p.h), Table::integer(p.T), tab.num(p.t)});
    return emit(o, tab);
}

int run_darklines(const GlobalOpts& o, int max_n, int steps) {
    if (max_n < 1) throw std::invalid_argument("darklines: --max-n must be >= 1");
    if (steps < 2) throw std::invalid_argument("darklines: --steps must be >= 2");
    Table tab{"darklines", {{"max_n", max_n}, {"steps", steps}}, {"t", "n", "value"}, {}, &o};
    for (int i = 0; i < steps; ++i) {
        const double t = 2.0 * i / (steps - 1);
        for (int n = 1; n <= max_n; ++n)
            tab.add({tab.num(t), Table::integer(n),
                     tab.num(qel::critical_poly_eval(n, qel::QuadParam(t)))});
    }
    return emit(o, tab);
}

int run_bifurcation(const GlobalOpts& o, double t_lo, double t_hi, int steps, int transient,
                    int samples) {
    if (steps < 2) throw std::invalid_argument("bifurcation: --steps must be >= 2");
    if (transient < 0 || samples < 1)
        throw std::invalid_argument("bifurcation: need --transient >= 0 and --samples >= 1");
    Table tab{"bifurcation",
              {{"t_min", t_lo}, {"t_max", t_hi}, {"steps", steps},
               {"transient", transient}, {"samples", samples}},
              {"t", "x"}, {}, &o};
    for (int i = 0; i < steps; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (steps - 1);
        const double tv = qel::QuadParam(t).value();  // validates the range
        double x = 0.0;
        for (int k = 0; k < transient; ++k) x = tv - x * x;
        for (int k = 0; k < samples; ++k) {
            x = tv - x * x;
            tab.add({tab.num(t), tab.num(x)});
        }
    }
    return emit(o, tab);
}

int run_multimodal_entropy(const GlobalOpts& o, const std::string& map_path, int depth) {
    const qel::MultimodalMap f = qel::parse_map_file(map_path);
    const double h = qel::entropy_multimodal(f, depth);
    Table tab{"multimodal entropy", {{"map", map_path}, {"depth", depth}}, {"depth", "h"}, {}, &o};
    tab.add({Table::integer(depth), tab.num(h)});
    return emit(o, tab);
}

int run_critical_poly(const GlobalOpts& o, int n) {
    const qel::CriticalPolynomial p = qel::critical_poly(n);
    Table tab{"critical-poly", {{"n", n}}, {"power", "coefficient"}, {}, &o};
    // coefficients overflow every machine integer by order 8, so they stay
    // decimal strings in both formats
    for (int k = 0; k <= p.degree(); ++k)
        tab.add({Table::integer(k), Table::text(p.coeff_string(k))});
    return emit(o, tab);
}

// --- reproduce: recompute a shipped dataset and compare ---------------------

int reproduce_table1(const GlobalOpts& o) {
    const auto rows = read_golden(o.golden_dir + "/table1.csv");
    Table tab{"reproduce table1", {{"target", "table1"}}, {"sig", "t_sigma"}, {}, &o};
    int mismatches = 0;
    for (const auto& row : rows) {
        if (row.size() != 2) throw std::runtime_error("table1.csv: malformed row");
        const qel::Signature sig(row[0]);
        const double expected = std::stod(row[1]);
        const double got = qel::branching_point(sig).t_sigma;
        if (std::abs(got - expected) > 1e-6) {
            ++mismatches;
            std::cerr << "mismatch: " << row[0] << " computed " << fmt_g(got, 17)
                      << ", stored " << row[1] << "\n";
        }
        tab.add({Table::text(sig.str()), tab.num(got)});
    }
    const int rc = emit(o, tab);
    if (rc != 0) return rc;
    return mismatches == 0 ? 0 : 1;
}

int reproduce_table2(const GlobalOpts& o) {
    const auto rows = read_golden(o.golden_dir + "/table2.csv");
    Table tab{"reproduce table2", {{"target", "table2"}}, {"period", "cycle", "t"}, {}, &o};
    int mismatches = 0;
    for (const auto& row : rows) {
        if (row.size() != 3) throw std::runtime_error("table2.csv: malformed row");
        const qel::SymbolicCycle cycle(row[1]);
        const double expected = std::stod(row[2]);
        const qel::SolveResult r = qel::solve_cycle(cycle);
        double got = std::numeric_limits<double>::quiet_NaN();
        bool row_ok = false;
        if (r.status == qel::SolveStatus::solved) {
            got = r.solved->t0;
            row_ok = cycle.period() == std::stoi(row[0]) && std::abs(got - expected) <= 1e-6;
        }
        if (!row_ok) {
            ++mismatches;
            std::cerr << "mismatch: cycle " << row[1] << " computed " << fmt_g(got, 17)
                      << ", stored " << row[2] << "\n";
        }
        tab.add({Table::integer(cycle.period()), Table::text(cycle.str()), tab.num(got)});
    }
    const int rc = emit(o, tab);
    if (rc != 0) return rc;
    return mismatches == 0 ? 0 : 1;
}

int reproduce_table3(const GlobalOpts& o) {
    const auto rows = read_golden(o.golden_dir + "/table3.csv");
    Table tab{"reproduce table3", {{"target", "table3"}}, {"period", "count"}, {}, &o};
    int mismatches = 0;
    const unsigned threads = resolve_threads(o);
    for (const auto& row : rows) {
        if (row.size() != 2) throw std::runtime_error("table3.csv: malformed row");
        const int period = std::stoi(row[0]);
        const long long expected = std::stoll(row[1]);
        const long long got =
            static_cast<long long>(qel::enumerate_cycles(period, threads).size());
        if (got != expected) {
            ++mismatches;
            std::cerr << "mismatch: period " << period << " computed " << got << ", stored "
                      << expected << "\n";
        }
        tab.add({Table::integer(period), Table::integer(got)});
    }
    const int rc = emit(o, tab);
    if (rc != 0) return rc;
    return mismatches == 0 ? 0 : 1;
}

int reproduce_fig6(const GlobalOpts& o) {
    const auto rows = read_golden(o.golden_dir + "/fig6.csv");
    Table tab{"reproduce fig6", {{"target", "fig6"}}, {"t", "increment"}, {}, &o};
    const qel::StaircaseSample st = qel::staircase(4, 0.0, 2.0, 2000, resolve_threads(o));
    int mismatches = 0;
    if (st.jumps.size() != rows.size()) {
        std::cerr << "mismatch: computed " << st.jumps.size() << " jumps, stored "
                  << rows.size() << "\n";
        ++mismatches;
    }
    for (std::size_t i = 0; i < st.jumps.size(); ++i) {
        const auto& j = st.jumps[i];
        if (i < rows.size()) {
            if (rows[i].size() != 2) throw std::runtime_error("fig6.csv: malformed row");
            if (std::abs(j.t - std::stod(rows[i][0])) > 1e-6 ||
                j.increment != std::stoll(rows[i][1])) {
                ++mismatches;
                std::cerr << "mismatch: jump " << i << " computed (" << fmt_g(j.t, 17) << ", "
                          << j.increment << "), stored (" << rows[i][0] << ", " << rows[i][1]
                          << ")\n";
            }
        }
        tab.add({tab.num(j.t), Table::integer(j.increment)});
    }
    const int rc = emit(o, tab);
    if (rc != 0) return rc;
    return mismatches == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    GlobalOpts opts;
    CLI::App app{"Quadratic-family explorer: preimage branches, transversal counts, "
                 "entropy staircases, superstable cycles, and preperiodic parameters"};
    app.require_subcommand(1);
    app.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", opts.output, "Write to this file instead of stdout");
    app.add_option("--precision", opts.precision, "Significant digits for floating output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("--threads", opts.threads,
                   "Worker threads (0 = auto; the QEL_THREADS environment variable wins)")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "Accepted for script compatibility; nothing is random");
    app.add_option("--golden-dir", opts.golden_dir, "Directory holding the shipped datasets")
        ->capture_default_str();

    std::function<int()> action;

    // entropy
    double e_t = 2.0;
    int e_depth = 18;
    bool e_aitken = false;
    CLI::App* entropy = app.add_subcommand("entropy", "Topological entropy estimate at one parameter");
    entropy->add_option("--t", e_t, "Parameter t in [0, 2]")->required();
    entropy->add_option("--depth", e_depth, "Preimage depth")->capture_default_str();
    entropy->add_flag("--aitken", e_aitken, "Apply Delta^2 extrapolation");
    entropy->callback([&] { action = [&] { return run_entropy(opts, e_t, e_depth, e_aitken); }; });

    // staircase
    int st_n = 4, st_steps = 500;
    double st_lo = 0.0, st_hi = 2.0;
    bool st_refine = false;
    CLI::App* stair = app.add_subcommand("staircase", "Sample s_n over a parameter interval");
    stair->add_option("--n", st_n, "Preimage order")->required();
    stair->add_option("--t-min", st_lo, "Left endpoint")->capture_default_str();
    stair->add_option("--t-max", st_hi, "Right endpoint")->capture_default_str();
    stair->add_option("--steps", st_steps, "Grid points")->capture_default_str();
    stair->add_flag("--refine-jumps", st_refine, "Print refined jump abscissas instead of the grid");
    stair->callback([&] {
        action = [&] { return run_staircase(opts, st_n, st_lo, st_hi, st_steps, st_refine); };
    });

    // branch eval | point | at-two
    std::string br_sig;
    double br_t = 2.0;
    CLI::App* branch = app.add_subcommand("branch", "Preimage root branches");
    branch->require_subcommand(1);
    CLI::App* br_eval = branch->add_subcommand("eval", "Evaluate a branch at one parameter");
    br_eval->add_option("--sig", br_sig, "Sign word, e.g. +-+")->required();
    br_eval->add_option("--t", br_t, "Parameter t in [0, 2]")->required();
    br_eval->callback([&] { action = [&] { return run_branch_eval(opts, br_sig, br_t); }; });
    CLI::App* br_point = branch->add_subcommand("point", "Left endpoint of the regularity interval");
    br_point->add_option("--sig", br_sig, "Sign word")->required();
    br_point->callback([&] { action = [&] { return run_branch_point(opts, br_sig); }; });
    CLI::App* br_two = branch->add_subcommand("at-two", "Radical and trigonometric values at t = 2");
    br_two->add_option("--sig", br_sig, "Sign word")->required();
    br_two->callback([&] { action = [&] { return run_branch_at_two(opts, br_sig); }; });

    // superstable solve | enumerate | audit
    std::string ss_cycle;
    int ss_period = 6, ss_max_period = 12;
    CLI::App* super = app.add_subcommand("superstable", "Parameters where the critical orbit is periodic");
    super->require_subcommand(1);
    CLI::App* ss_solve = super->add_subcommand("solve", "Parameter of one symbolic cycle");
    ss_solve->add_option("--cycle", ss_cycle, "Cycle word, e.g. +-+C")->required();
    ss_solve->callback([&] { action = [&] { return run_solve(opts, ss_cycle); }; });
    CLI::App* ss_enum = super->add_subcommand("enumerate", "All admissible cycles of one period");
    ss_enum->add_option("--period", ss_period, "Cycle period")->required();
    ss_enum->callback([&] { action = [&] { return run_enumerate(opts, ss_period); }; });
    CLI::App* ss_audit = super->add_subcommand("audit", "Cross-check the census with a second scan");
    ss_audit->add_option("--max-period", ss_max_period, "Largest period audited")
        ->capture_default_str();
    ss_audit->callback([&] { action = [&] { return run_audit(opts, ss_max_period); }; });

    // misiurewicz
    int mi_h = 3, mi_T = 1;
    double mi_lo = 1e-6, mi_hi = 2.0;
    CLI::App* mis = app.add_subcommand("misiurewicz", "Strictly preperiodic critical-orbit parameters");
    // long-only help so the preperiod can keep its conventional name --h
    mis->set_help_flag("--help", "Print help");
    mis->add_option("--h", mi_h, "Preperiod (>= 1)")->required();
    mis->add_option("--T", mi_T, "Period (>= 1)")->required();
    mis->add_option("--t-min", mi_lo, "Left endpoint")->capture_default_str();
    mis->add_option("--t-max", mi_hi, "Right endpoint")->capture_default_str();
    mis->callback([&] { action = [&] { return run_misiurewicz(opts, mi_h, mi_T, mi_lo, mi_hi); }; });

    // darklines
    int dk_max_n = 6, dk_steps = 400;
    CLI::App* dark = app.add_subcommand("darklines", "Critical-orbit polynomial values over the parameter range");
    dark->add_option("--max-n", dk_max_n, "Largest order")->capture_default_str();
    dark->add_option("--steps", dk_steps, "Grid points")->capture_default_str();
    dark->callback([&] { action = [&] { return run_darklines(opts, dk_max_n, dk_steps); }; });

    // bifurcation
    double bf_lo = 0.0, bf_hi = 2.0;
    int bf_steps = 800, bf_transient = 256, bf_samples = 128;
    CLI::App* bif = app.add_subcommand("bifurcation", "Critical-orbit samples after a transient");
    bif->add_option("--t-min", bf_lo, "Left endpoint")->capture_default_str();
    bif->add_option("--t-max", bf_hi, "Right endpoint")->capture_default_str();
    bif->add_option("--steps", bf_steps, "Parameter grid points")->capture_default_str();
    bif->add_option("--transient", bf_transient, "Iterations discarded")->capture_default_str();
    bif->add_option("--samples", bf_samples, "Iterations recorded")->capture_default_str();
    bif->callback([&] {
        action = [&] {
            return run_bifurcation(opts, bf_lo, bf_hi, bf_steps, bf_transient, bf_samples);
        };
    });

    // multimodal entropy
    std::string mm_map;
    int mm_depth = 10;
    CLI::App* multi = app.add_subcommand("multimodal", "Piecewise-monotone interval maps");
    multi->require_subcommand(1);
    CLI::App* mm_ent = multi->add_subcommand("entropy", "Lap-count entropy estimate from a map file");
    mm_ent->add_option("--map", mm_map, "Map description file")->required();
    mm_ent->add_option("--depth", mm_depth, "Preimage depth")->capture_default_str();
    mm_ent->callback([&] { action = [&] { return run_multimodal_entropy(opts, mm_map, mm_depth); }; });

    // critical-poly
    int cp_n = 4;
    CLI::App* cpoly = app.add_subcommand("critical-poly", "Exact coefficients of one critical-orbit polynomial");
    cpoly->add_option("--n", cp_n, "Order")->required();
    cpoly->callback([&] { action = [&] { return run_critical_poly(opts, cp_n); }; });

    // reproduce
    std::string rp_target;
    CLI::App* rep = app.add_subcommand("reproduce", "Recompute a shipped dataset and compare");
    rep->add_option("target", rp_target, "One of table1, table2, table3, fig6")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "table3", "fig6"}));
    rep->callback([&] {
        action = [&] {
            if (rp_target == "table1") return reproduce_table1(opts);
            if (rp_target == "table2") return reproduce_table2(opts);
            if (rp_target == "table3") return reproduce_table3(opts);
            return reproduce_fig6(opts);
        };
    });

    // let global options (--format, --output, ...) appear after the
    // subcommand name as well as before it
    std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
        for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; })) {
            s->fallthrough();
            enable_fallthrough(s);
        }
    };
    enable_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
