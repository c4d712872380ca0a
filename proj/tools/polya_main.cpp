// Command-line driver: reproducible experiments over the library, with CSV /
// SVG / text artifacts. Exit codes: 0 pass, 1 check failure, 2 usage or
// config error, 3 numerical failure.

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "polya/bounds.hpp"
#include "polya/io.hpp"
#include "polya/pde.hpp"
#include "polya/profile1d.hpp"
#include "polya/shapeopt.hpp"
#include "polya/svg.hpp"

using namespace polya;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string g_command_line;
std::filesystem::path g_outdir;

std::filesystem::path out_path(const std::string& name) { return g_outdir / name; }

void emit(const std::string& name, std::uint64_t seed, const std::string& body) {
    const auto path = out_path(name);
    write_file(path, file_header(g_command_line, seed) + body);
    std::cout << "wrote " << path.string() << "\n";
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

// "a:b" expands to a 10-point geometric grid; otherwise a comma list.
std::vector<double> parse_grid(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return parse_list(text);
    const double a = std::stod(text.substr(0, colon));
    const double b = std::stod(text.substr(colon + 1));
    if (!(a > 0.0) || !(b > a)) throw CLI::ValidationError("--L", "need 0 < a < b in a:b");
    std::vector<double> out;
    const int n = 10;
    for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, double(i) / (n - 1)));
    return out;
}

ConvexPolygon make_shape(const std::string& spec) {
    if (spec == "square") return make_unit_square();
    if (spec.rfind("disk:", 0) == 0) return make_regular_polygon(std::stoi(spec.substr(5)));
    if (spec.rfind("rect:", 0) == 0) {
        const std::string dims = spec.substr(5);
        const auto x = dims.find('x');
        if (x == std::string::npos) throw CLI::ValidationError("--shape", "rect:LxH expected");
        return make_rectangle(std::stod(dims.substr(0, x)), std::stod(dims.substr(x + 1)));
    }
    throw CLI::ValidationError("--shape", "unknown shape: " + spec);
}

double parse_q(const std::string& q) {
    if (q == "inf" || q == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(q);
}

// Ordered fan-out over independent tasks; results land in input order.
template <typename Task>
void run_pool(std::vector<Task>& tasks, unsigned threads) {
    if (threads <= 1) {
        for (Task& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                tasks[i]();
            }
        });
    for (auto& th : pool) th.join();
}

int cmd_pi1d(double p, const std::string& q_text, int n, std::uint64_t seed) {
    const double q = parse_q(q_text);
    ExponentPair pq(p, q, 1);
    Solve1dOptions opts;
    opts.seed = seed;
    opts.record_trace = true;
    Solve1dResult pi = solve_pi_pq(pq, n, opts);
    Solve1dResult a = solve_a_pq(pq, n, opts);
    std::ostringstream report;
    report << "exponents: " << pq.label() << "\n";
    report << "n: " << n << "\n";
    report << "pi_pq^p estimate: " << format_double(pi.value) << "\n";
    report << "pi_pq estimate: " << format_double(std::pow(pi.value, 1.0 / p)) << "\n";
    report << "a_pq estimate: " << format_double(a.value) << "\n";
    report << "identity (pi/2)^p vs a_pq: "
           << format_double(pi.value / std::pow(2.0, p)) << " vs "
           << format_double(a.value) << "\n";
    if (q == 1.0) {
        report << "closed form pi_p1: " << format_double(closed_form_pi_p1(p)) << "\n";
        report << "relative gap: "
               << format_double(std::fabs(std::pow(pi.value, 1.0 / p) - closed_form_pi_p1(p)) /
                                closed_form_pi_p1(p))
               << "\n";
    }
    if (p == 2.0 && q == 2.0) {
        report << "closed form pi: " << format_double(M_PI) << "\n";
        report << "relative gap: "
               << format_double(std::fabs(std::pow(pi.value, 0.5) - M_PI) / M_PI) << "\n";
    }
    report << "iterations: " << pi.iterations << "\n";
    report << "starts: " << pi.starts << "\n";
    report << "spread: " << format_double(pi.spread) << (pi.spread_flagged ? "  (flagged)" : "")
           << "\n";
    std::cout << report.str();
    emit("pi1d_report.txt", seed, report.str());
    emit("pi1d_minimizer.csv", seed, profile_to_csv(pi.minimizer));
    emit("pi1d_trace.csv", seed, trace_to_csv(pi.trace));
    // closed-form table of the q = 1 constant over a p-grid, for reference
    std::ostringstream table;
    table << "p,pi_p1\n";
    for (double pg = 1.25; pg <= 4.0 + 1e-9; pg += 0.25)
        table << format_double(pg) << ',' << format_double(closed_form_pi_p1(pg)) << "\n";
    emit("pi_p1_closed_form.csv", seed, table.str());
    return kExitPass;
}

int cmd_eig(const std::string& polygon_file, const std::string& shape, double p,
            const std::string& q_text, double h, int n_tau, std::uint64_t seed) {
    ConvexPolygon poly = [&] {
        if (!polygon_file.empty()) {
            LoadedPolygon lp = load_polygon(polygon_file);
            if (lp.reversed)
                std::cerr << "warning: polygon was clockwise, reversed on load\n";
            return lp.polygon;
        }
        return make_shape(shape);
    }();
    ExponentPair pq(p, parse_q(q_text), 2);
    Solve2dOptions opts;
    opts.seed = seed;
    EigEstimate est = solve_lambda_pq(poly, pq, h, opts);
    const double bound = polya_upper_bound(poly, pq, n_tau);
    PiCache cache;
    const double rhs = polya_rhs(poly.area(), poly.perimeter(), pq, cache);
    std::ostringstream report;
    report << estimate_to_report(est, pq);
    report << "coarea upper bound: " << format_double(bound) << "\n";
    report << "(pi_pq/2)^p (P/|Omega|^a)^p: " << format_double(rhs) << "\n";
    report << "lambda/rhs ratio: " << format_double(est.value / rhs) << "\n";
    std::cout << report.str();
    emit("eig_report.txt", seed, report.str());
    emit("eig_field.csv", seed, field_to_csv(*est.mesh, est.field));
    emit("eig_mesh.txt", seed, mesh_to_text(*est.mesh));
    emit("eig_profile.csv", seed, profile_to_csv(parallel_profile(poly, n_tau)));
    return kExitPass;
}

struct CheckTask {
    std::function<std::vector<CheckRecord>()> run;
    std::vector<CheckRecord> results;
    bool inconclusive = false;
    void operator()() {
        try {
            results = run();
        } catch (const Inconclusive& e) {
            inconclusive = true;
            CheckRecord rec;
            rec.name = "inconclusive";
            rec.left_provenance = e.what();
            results = {rec};
        }
    }
};

int cmd_check(const std::string& checks_text, std::uint64_t seed, int count, double h_factor,
              const std::string& pairs_text, const std::string& p_list_text, unsigned threads,
              const std::string& out_name) {
    if (checks_text.empty()) throw CLI::ValidationError("--checks", "empty checks list");
    std::vector<std::string> checks;
    {
        std::stringstream ss(checks_text);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) checks.push_back(item);
    }
    if (checks.empty()) throw CLI::ValidationError("--checks", "empty checks list");

    std::vector<std::pair<double, double>> pairs;
    for (const std::string& pr : [&] {
             std::vector<std::string> out;
             std::stringstream ss(pairs_text);
             std::string item;
             while (std::getline(ss, item, ','))
                 if (!item.empty()) out.push_back(item);
             return out;
         }()) {
        const auto colon = pr.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--pairs", "expected p:q entries");
        pairs.emplace_back(std::stod(pr.substr(0, colon)), parse_q(pr.substr(colon + 1)));
    }
    const std::vector<double> p_list = parse_list(p_list_text);

    const auto corpus = random_corpus(seed, count);
    PiCache cache;
    std::vector<CheckTask> tasks;
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const ConvexPolygon& poly = corpus[idx];
        const std::string id = "corpus[" + std::to_string(idx) + "]";
        for (const std::string& check : checks) {
            if (check == "polya") {
                for (auto [p, q] : pairs)
                    tasks.push_back(CheckTask{[&, id, p = p, q = q] {
                        Solve2dOptions opts;
                        const double h = h_factor * std::sqrt(poly.area());
                        CheckRecord rec = polya_check(poly, ExponentPair(p, q, 2), h, cache, opts);
                        rec.polygon_id = id;
                        return std::vector<CheckRecord>{rec};
                    }});
            } else if (check == "buser") {
                for (double p : p_list)
                    tasks.push_back(CheckTask{[&, id, p] {
                        Solve2dOptions opts;
                        const double h = h_factor * std::sqrt(poly.area());
                        CheckRecord rec = buser_check(poly, p, h, cache, opts);
                        rec.polygon_id = id;
                        return std::vector<CheckRecord>{rec};
                    }});
            } else if (check == "cheeger") {
                tasks.push_back(CheckTask{[&, id] {
                    Solve2dOptions opts;
                    const double h = h_factor * std::sqrt(poly.area());
                    CheckRecord rec = cheeger_lower_check(poly, h, opts);
                    rec.polygon_id = id;
                    return std::vector<CheckRecord>{rec};
                }});
            } else if (check == "monotonicity") {
                tasks.push_back(CheckTask{[&, id] {
                    Solve2dOptions opts;
                    const double h = h_factor * std::sqrt(poly.area());
                    const std::vector<double> grid{1.0, 2.0, 3.0};
                    auto recs = monotonicity_scan(poly, 2.0, grid, h, cache, opts);
                    for (auto& rec : recs) rec.polygon_id = id;
                    return recs;
                }});
            } else if (check == "makai") {
                tasks.push_back(CheckTask{[&, id] {
                    auto both = makai_check(poly);
                    both[0].polygon_id = id;
                    both[1].polygon_id = id;
                    return std::vector<CheckRecord>{both[0], both[1]};
                }});
            } else if (check == "diam") {
                tasks.push_back(CheckTask{[&, id] {
                    CheckRecord rec = diam_bound_check(poly);
                    rec.polygon_id = id;
                    return std::vector<CheckRecord>{rec};
                }});
            } else if (check == "inradius-diam") {
                tasks.push_back(CheckTask{[&, id] {
                    CheckRecord good = inradius_diam_check(poly, 0.75);
                    CheckRecord bad = inradius_diam_check(poly, 1.5);
                    good.polygon_id = id;
                    bad.polygon_id = id;
                    return std::vector<CheckRecord>{good, bad};
                }});
            } else {
                throw CLI::ValidationError("--checks", "unknown check: " + check);
            }
        }
    }

    run_pool(tasks, threads);

    std::vector<CheckRecord> all;
    bool any_failed = false, any_inconclusive = false;
    for (const CheckTask& task : tasks) {
        for (const CheckRecord& rec : task.results) {
            any_failed = any_failed || (!task.inconclusive && !rec.passed());
            all.push_back(rec);
        }
        any_inconclusive = any_inconclusive || task.inconclusive;
    }
    emit(out_name, seed, to_csv(all));
    std::cout << all.size() << " records, " << (any_failed ? "FAIL" : "pass") << "\n";
    if (any_inconclusive) return kExitNumerical;
    return any_failed ? kExitCheckFailure : kExitPass;
}

int cmd_sweep(double p, const std::string& q_text, const std::string& L_text,
              double h_factor, std::uint64_t seed) {
    ExponentPair pq(p, parse_q(q_text), 2);
    const std::vector<double> grid = parse_grid(L_text);
    FunctionalOptions opts;
    opts.h_factor = h_factor;
    opts.solve.seed = seed;
    auto records = rectangle_sweep(pq, grid, opts);
    emit("sweep.csv", seed, sweep_to_csv(records));
    std::vector<double> F;
    for (const auto& r : records) F.push_back(r.F);
    emit("sweep.svg", seed, svg_line_plot(grid, F, "F along rectangles " + pq.label(), "L", "F"));
    for (std::size_t i = 0; i < grid.size(); ++i)
        std::cout << "L=" << format_double(grid[i]) << "  F=" << format_double(F[i]) << "\n";
    return kExitPass;
}

int cmd_crossover(double p, const std::string& qs_text, double h_factor, std::uint64_t seed) {
    const std::vector<double> qs = parse_list(qs_text);
    FunctionalOptions opts;
    opts.h_factor = h_factor;
    opts.solve.seed = seed;
    auto rows = ball_vs_rectangle(p, qs, opts);
    emit("crossover.csv", seed, crossover_to_csv(rows));
    for (const auto& row : rows)
        std::cout << "q=" << format_double(row.q) << "  F_disk=" << format_double(row.F_disk)
                  << "  F_rect=" << format_double(row.F_rect) << " (L=" << row.best_L << ") "
                  << (row.rectangle_wins ? "rectangle wins" : "disk wins") << "\n";
    return kExitPass;
}

int cmd_shapeopt(double p, const std::string& q_text, int k, std::uint64_t seed, int budget,
                 double h_factor) {
    ExponentPair pq(p, parse_q(q_text), 2);
    MaximizeOptions opts;
    opts.seed = seed;
    opts.max_evaluations = budget;
    opts.eval.h_factor = h_factor;
    opts.eval.solve.seed = seed;
    MaximizeResult res = maximize_over_polygons(pq, k, opts);
    std::ostringstream report;
    report << "exponents: " << pq.label() << "\n";
    report << "k: " << k << "\n";
    report << "best F (rescored at h/2): " << format_double(res.best.F) << "\n";
    report << "best F (ascent resolution): " << format_double(res.F_coarse) << "\n";
    report << "evaluations: " << res.evaluations
           << (res.budget_exhausted ? "  (budget exhausted)" : "") << "\n";
    for (const auto& [name, F] : res.start_values)
        report << "start " << name << ": F=" << format_double(F) << "\n";
    PiCache cache;
    report << "strict cap (pi_pq/2)^p: "
           << format_double(cache.pi_pow_p(p, pq.q()) / std::pow(2.0, p)) << "\n";
    std::cout << report.str();
    emit("shapeopt_report.txt", seed, report.str());
    emit("shapeopt_best.json", seed, polygon_to_json(res.best.polygon));
    const std::vector<ConvexPolygon> polys{res.best.polygon};
    const std::vector<std::string> labels{"best polygon, F=" + format_double(res.best.F)};
    emit("shapeopt_best.svg", seed, svg_polygons(polys, labels, "maximizer " + pq.label()));
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    std::ostringstream cmd;
    for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
    g_command_line = cmd.str();

    CLI::App app{"Poincare-Sobolev constants of convex sets: solvers and checks"};
    app.set_version_flag("--version", std::string(k_version));

    std::string outdir = [] {
        const char* env = std::getenv("POLYA_OUT");
        return env ? std::string(env) : std::string("polya_out");
    }();
    app.add_option("--out", outdir, "output directory (default $POLYA_OUT or ./polya_out)");

    double p = 2.0;
    std::string q = "2";
    int n = 2000;
    std::uint64_t seed = 20240801;
    double h = 0.05, h_factor = 0.05;
    int n_tau = 128;
    std::string polygon_file, shape = "square";
    std::string checks = "polya,buser,cheeger,makai,diam,inradius-diam";
    std::string pairs = "2:2,3:2,2:3,1.5:1", p_list = "1.5,2,3";
    int count = 50;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string L_text = "1:50", qs_text = "2.05,2.1,2.25,2.5";
    int k = 12, budget = 1500;
    std::string out_name = "checks.csv";

    auto* pi1d = app.add_subcommand("pi1d", "1-D constants pi_pq and a_pq");
    pi1d->add_option("--p", p)->required();
    pi1d->add_option("--q", q)->required();
    pi1d->add_option("--n", n);
    pi1d->add_option("--seed", seed);

    auto* eig = app.add_subcommand("eig", "lambda_pq on a polygon, plus the coarea bound");
    eig->add_option("--polygon", polygon_file, "polygon JSON file");
    eig->add_option("--shape", shape, "square | disk:K | rect:LxH");
    eig->add_option("--p", p)->required();
    eig->add_option("--q", q)->required();
    eig->add_option("--h", h);
    eig->add_option("--ntau", n_tau);
    eig->add_option("--seed", seed);

    auto* check = app.add_subcommand("check", "inequality checks over a seeded corpus");
    check->add_option("--checks", checks, "comma list: polya,buser,cheeger,monotonicity,makai,diam,inradius-diam");
    check->add_option("--seed", seed);
    check->add_option("--count", count);
    check->add_option("--h-factor", h_factor);
    check->add_option("--pairs", pairs, "p:q list for the polya check");
    check->add_option("--p-list", p_list, "p values for the buser check");
    check->add_option("--threads", threads);
    check->add_option("--csv", out_name, "output CSV name");

    auto* sweep = app.add_subcommand("sweep", "F along rectangles L x 1");
    sweep->add_option("--p", p)->required();
    sweep->add_option("--q", q)->required();
    sweep->add_option("--L", L_text, "a:b range or comma list");
    sweep->add_option("--h-factor", h_factor);
    sweep->add_option("--seed", seed);

    auto* crossover = app.add_subcommand("crossover", "disk vs best rectangle per q");
    crossover->add_option("--p", p)->required();
    crossover->add_option("--qs", qs_text, "comma list of q > p");
    crossover->add_option("--h-factor", h_factor);
    crossover->add_option("--seed", seed);

    auto* shapeopt = app.add_subcommand("shapeopt", "maximize F over convex polygons (q > p)");
    shapeopt->add_option("--p", p)->required();
    shapeopt->add_option("--q", q)->required();
    shapeopt->add_option("--k", k);
    shapeopt->add_option("--seed", seed);
    shapeopt->add_option("--budget", budget);
    shapeopt->add_option("--h-factor", h_factor);

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    g_outdir = outdir;
    try {
        if (pi1d->parsed()) return cmd_pi1d(p, q, n, seed);
        if (eig->parsed()) return cmd_eig(polygon_file, shape, p, q, h, n_tau, seed);
        if (check->parsed())
            return cmd_check(checks, seed, count, h_factor, pairs, p_list, threads, out_name);
        if (sweep->parsed()) return cmd_sweep(p, q, L_text, h_factor, seed);
        if (crossover->parsed()) return cmd_crossover(p, qs_text, h_factor, seed);
        if (shapeopt->parsed()) return cmd_shapeopt(p, q, k, seed, budget, h_factor);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const QNotGreaterThanP& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidExponents& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidPolygon& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Inconclusive& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
