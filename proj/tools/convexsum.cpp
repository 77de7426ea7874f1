// convexsum: exact sumset / additive-energy computations over rational sets,
// inequality audit suites, incidence experiments, growth scans and extremal
// search. All randomness sits behind --seed; identical invocations produce
// byte-identical outputs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "convexsum/energy.hpp"
#include "convexsum/generators.hpp"
#include "convexsum/incidence.hpp"
#include "convexsum/json_io.hpp"
#include "convexsum/inequalities.hpp"
#include "convexsum/scan.hpp"
#include "convexsum/search.hpp"
#include "convexsum/suite.hpp"

namespace cs = convexsum;
using nlohmann::json;

namespace {

constexpr int kUsageExit = 64;
constexpr int kSoftwareExit = 70;

// JSON config mirroring the flags: top-level keys are subcommand names (plus
// shared scalars), values are objects keyed by long option name.
struct Config {
    json root = json::object();

    template <typename T>
    T get(const std::string& sub, const std::string& key, T fallback) const {
        try {
            if (root.contains(sub) && root[sub].is_object() && root[sub].contains(key))
                return root[sub][key].get<T>();
            if (root.contains(key) && !root[key].is_object()) return root[key].get<T>();
        } catch (const json::exception&) {
            throw cs::ParseError("config: bad value for " + sub + "." + key);
        }
        return fallback;
    }
};

Config load_config(int argc, char** argv) {
    Config cfg;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            cfg.root = cs::read_json_file(argv[i + 1]);
            break;
        }
    }
    return cfg;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoull(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty()) throw cs::InvalidParameter("empty size grid");
    return out;
}

struct FamilyFlags {
    std::string family = "squares";
    std::size_t n = 16;
    std::uint64_t seed = 1;
    std::string start = "1", step = "1", ratio = "2";
    std::string ratios = "2,3", dims;
    std::string qa = "1", qb = "0", qc = "0";
    std::int64_t range = 1000000;
    std::string f = "square";
    std::string inner = "ap";

    void add_options(CLI::App* cmd, const Config& cfg, const std::string& sub) {
        family = cfg.get<std::string>(sub, "family", family);
        n = cfg.get<std::size_t>(sub, "n", n);
        seed = cfg.get<std::uint64_t>(sub, "seed", seed);
        cmd->add_option("--family", family,
                        "squares|cubes|quadratic|random-convex-gaps|ap|gp|ggp|f-of-z|random");
        cmd->add_option("--n", n, "set size");
        cmd->add_option("--seed", seed, "RNG seed (randomized families)");
        cmd->add_option("--start", start, "ap: first element (rational)");
        cmd->add_option("--step", step, "ap: common difference (rational)");
        cmd->add_option("--ratio", ratio, "gp: common ratio (rational > 1)");
        cmd->add_option("--ratios", ratios, "ggp: comma-separated ratios");
        cmd->add_option("--dims", dims, "ggp: comma-separated box dimensions");
        cmd->add_option("--qa", qa, "quadratic: leading coefficient");
        cmd->add_option("--qb", qb, "quadratic: linear coefficient");
        cmd->add_option("--qc", qc, "quadratic: constant coefficient");
        cmd->add_option("--range", range, "random: values drawn from [1, range]");
        cmd->add_option("--f", f, "f-of-z: square|cube");
        cmd->add_option("--inner", inner, "f-of-z: base family for Z (ap|gp|ggp)");
    }

    cs::FamilySpec to_spec() const {
        cs::FamilySpec spec;
        spec.family = cs::family_from_name(family);
        spec.n = n;
        spec.seed = seed;
        spec.start = cs::Rational::parse(start);
        spec.step = cs::Rational::parse(step);
        spec.ratio = cs::Rational::parse(ratio);
        spec.qa = cs::Rational::parse(qa);
        spec.qb = cs::Rational::parse(qb);
        spec.qc = cs::Rational::parse(qc);
        spec.range = range;
        if (!ratios.empty()) {
            spec.ratios.clear();
            std::string cur;
            for (char c : ratios + ",") {
                if (c == ',') {
                    if (!cur.empty()) spec.ratios.push_back(cs::Rational::parse(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
        }
        if (!dims.empty())
            for (auto d : parse_grid(dims)) spec.dims.push_back(d);
        if (spec.family == cs::Family::f_of_z) {
            spec.f = std::make_shared<cs::ConvexFunctionSpec>(
                f == "cube" ? cs::ConvexFunctionSpec::cube() : cs::ConvexFunctionSpec::square());
            auto z = std::make_shared<cs::FamilySpec>();
            z->family = cs::family_from_name(inner);
            z->n = n;
            z->seed = seed;
            z->ratio = spec.ratio;
            z->start = spec.start;
            z->step = spec.step;
            spec.inner = std::move(z);
        }
        return spec;
    }
};

cs::ConvexFunctionSpec function_from_name(const std::string& name) {
    if (name == "square") return cs::ConvexFunctionSpec::square();
    if (name == "cube") return cs::ConvexFunctionSpec::cube();
    throw cs::InvalidParameter("unknown convex function: " + name + " (want square|cube)");
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (!out_path.empty())
        cs::write_text_file(out_path, text);
    else
        std::cout << text;
}

} // namespace

int run_app(int argc, char** argv) {
    CLI::App app{"exact additive-combinatorics workbench"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    Config cfg = load_config(argc, argv);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a set (or the standard corpus)");
    FamilyFlags gen_flags;
    gen_flags.add_options(gen, cfg, "gen");
    std::string gen_out = cfg.get<std::string>("gen", "out", "");
    bool gen_corpus = cfg.get<bool>("gen", "corpus", false);
    std::string gen_dir = cfg.get<std::string>("gen", "dir", "");
    gen->add_option("--out", gen_out, "output JSON path (default stdout)");
    gen->add_flag("--corpus", gen_corpus, "emit the standard corpus manifest instead");
    gen->add_option("--dir", gen_dir, "with --corpus: also write one set file per member here");

    // ---- energy ----
    auto* energy = app.add_subcommand("energy", "energies and representation functions of a set");
    std::string energy_set, energy_b, energy_rep, energy_report_path;
    unsigned energy_k_flag = 0;
    energy->add_option("--set", energy_set, "set JSON path")->required();
    energy->add_option("--b", energy_b, "second set JSON path: print E(A,B)");
    energy->add_option("--k", energy_k_flag, "print E_k(A) as a decimal string");
    energy->add_option("--rep", energy_rep, "dump the difference|sum representation function");
    energy->add_option("--report", energy_report_path, "write the full energy report JSON here");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the inequality audit suite");
    std::string verify_suite = cfg.get<std::string>("verify", "suite", "all");
    std::string verify_family = cfg.get<std::string>("verify", "family", "");
    std::size_t verify_n = cfg.get<std::size_t>("verify", "n", 0);
    unsigned verify_workers = cfg.get<unsigned>("verify", "workers", 1);
    std::uint64_t verify_seed = cfg.get<std::uint64_t>("verify", "seed", 1);
    std::string verify_out = cfg.get<std::string>("verify", "out", "");
    bool verify_quiet = cfg.get<bool>("verify", "quiet", false);
    verify->add_option("--suite", verify_suite,
                       "all, none, or comma-separated names: energy_identity, e3_log_bound, "
                       "energy_convex_bound, restricted_energy_bound, fractional_energy_bound, "
                       "e2_e15, tail_bound, convex_sumset_growth, small_doubling_growth, "
                       "inclusion_sumset, as_inclusion, cs_step, pair_bounds, plus the *_cross "
                       "pair variants");
    verify->add_option("--family", verify_family, "restrict the corpus to one family");
    verify->add_option("--n", verify_n, "with --family: the single size to test");
    verify->add_option("--workers", verify_workers, "worker threads (result is identical)");
    verify->add_option("--seed", verify_seed, "corpus seed");
    verify->add_option("--out", verify_out, "also write the report JSON here");
    verify->add_flag("--quiet", verify_quiet, "suppress the stdout report");

    // ---- incidence ----
    auto* incidence = app.add_subcommand("incidence", "translated convex-curve incidence system");
    std::string inc_f = cfg.get<std::string>("incidence", "f", "square");
    std::string inc_z, inc_b, inc_report;
    std::uint64_t inc_tau = cfg.get<std::uint64_t>("incidence", "tau", 0);
    std::string inc_pop_x;
    std::uint64_t inc_pop_tau = 0;
    incidence->add_option("--f", inc_f, "convex function: square|cube");
    incidence->add_option("--Z", inc_z, "base set Z JSON path")->required();
    incidence->add_option("--B", inc_b, "shift set B JSON path")->required();
    incidence->add_option("--tau", inc_tau, "also report the rich points at this tau");
    incidence->add_option("--pop-x", inc_pop_x, "verify the popularity step at this x (rational)");
    incidence->add_option("--pop-tau", inc_pop_tau, "tau for --pop-x (default delta_{A,B}(x))");
    incidence->add_option("--report", inc_report, "write the report JSON here");

    // ---- scan ----
    auto* scan = app.add_subcommand("scan", "growth scan over a size grid (CSV)");
    FamilyFlags scan_flags;
    scan_flags.add_options(scan, cfg, "scan");
    std::string scan_grid = cfg.get<std::string>("scan", "n-grid", "16,64,256");
    std::string scan_out = cfg.get<std::string>("scan", "out", "");
    unsigned scan_workers = cfg.get<unsigned>("scan", "workers", 1);
    scan->add_option("--n-grid", scan_grid, "comma-separated sizes");
    scan->add_option("--out", scan_out, "CSV output path (default stdout)");
    scan->add_option("--workers", scan_workers, "worker threads");

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "log-log exponent fit over scan rows");
    std::string fit_csv, fit_x = "n", fit_y = "sumset";
    fit->add_option("--csv", fit_csv, "scan CSV path")->required();
    fit->add_option("--x", fit_x, "abscissa column");
    fit->add_option("--y", fit_y, "ordinate column");

    // ---- search ----
    auto* search = app.add_subcommand("search", "extremal search over convex gap sequences");
    std::size_t search_n = cfg.get<std::size_t>("search", "n", 64);
    std::string search_objective = cfg.get<std::string>("search", "objective", "plus-ratio");
    std::size_t search_iters = cfg.get<std::size_t>("search", "iters", 10000);
    std::uint64_t search_seed = cfg.get<std::uint64_t>("search", "seed", 1);
    double search_t0 = cfg.get<double>("search", "t0", -1.0);
    double search_cooling = cfg.get<double>("search", "cooling", 0.999);
    std::string search_out = cfg.get<std::string>("search", "out", "");
    search->add_option("--n", search_n, "set size (>= 3)");
    search->add_option("--objective", search_objective, "plus-ratio|minus-ratio");
    search->add_option("--iters", search_iters, "annealing iterations");
    search->add_option("--seed", search_seed, "RNG seed");
    search->add_option("--t0", search_t0, "initial temperature (<0: auto, 0: hill climb)");
    search->add_option("--cooling", search_cooling, "geometric cooling factor");
    search->add_option("--out", search_out, "write the search state JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageExit;
    }

    try {
        if (gen->parsed()) {
            if (gen_corpus) {
                cs::CorpusConfig cc;
                cc.seed = gen_flags.seed;
                auto corpus = cs::build_corpus(cs::default_corpus_specs(cc));
                json manifest = cs::corpus_manifest(corpus);
                if (!gen_dir.empty()) {
                    std::filesystem::create_directories(gen_dir);
                    for (const auto& m : corpus) {
                        std::string path = gen_dir + "/set_" + std::to_string(m.index) + ".json";
                        cs::write_text_file(path, cs::set_to_json(m.set).dump(2) + "\n");
                        manifest["members"][m.index]["file"] = path;
                    }
                }
                emit(manifest, gen_out);
                return 0;
            }
            cs::FiniteSet a = cs::generate(gen_flags.to_spec());
            emit(cs::set_to_json(a), gen_out);
            return 0;
        }

        if (energy->parsed()) {
            cs::FiniteSet a = cs::set_from_json(cs::read_json_file(energy_set));
            if (energy_k_flag > 0) {
                std::cout << cs::energy_k(a, energy_k_flag).get_str() << "\n";
            } else if (!energy_b.empty()) {
                cs::FiniteSet b = cs::set_from_json(cs::read_json_file(energy_b));
                std::cout << cs::energy_cross(a, b).get_str() << "\n";
            } else if (!energy_rep.empty()) {
                cs::RepKind kind = energy_rep == "sum" ? cs::RepKind::sum : cs::RepKind::difference;
                emit(cs::rep_to_json(cs::rep_function(a, a, kind)), "");
            } else {
                emit(cs::energy_report_to_json(cs::energy_report(a)), energy_report_path);
                return 0;
            }
            if (!energy_report_path.empty())
                cs::write_text_file(energy_report_path,
                                    cs::energy_report_to_json(cs::energy_report(a)).dump(2) + "\n");
            return 0;
        }

        if (verify->parsed()) {
            cs::SuiteConfig sc;
            sc.workers = verify_workers;
            sc.corpus.seed = verify_seed;
            if (verify_suite != "all") {
                sc.enabled.emplace();
                std::string cur;
                for (char c : verify_suite + ",") {
                    if (c == ',') {
                        if (!cur.empty() && cur != "none") sc.enabled->push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            std::vector<cs::CorpusMember> corpus;
            if (!verify_family.empty()) {
                FamilyFlags ff;
                ff.family = verify_family;
                ff.n = verify_n ? verify_n : 64;
                ff.seed = verify_seed;
                corpus = cs::build_corpus({ff.to_spec()});
            } else {
                corpus = cs::build_corpus(cs::default_corpus_specs(sc.corpus));
            }
            cs::SuiteReport report = cs::run_suite(corpus, sc);
            json j = cs::suite_report_to_json(report);
            if (!verify_out.empty()) cs::write_text_file(verify_out, j.dump(2) + "\n");
            if (!verify_quiet) std::cout << j.dump(2) << "\n";
            std::cerr << "suite: " << report.held << " held, " << report.marginal << " marginal, "
                      << report.failed << " failed, " << report.control_failed
                      << " negative-control failures in " << report.elapsed_seconds << " s\n";
            return report.exit_code;
        }

        if (incidence->parsed()) {
            cs::ConvexFunctionSpec f = function_from_name(inc_f);
            cs::FiniteSet z = cs::set_from_json(cs::read_json_file(inc_z));
            cs::FiniteSet b = cs::set_from_json(cs::read_json_file(inc_b));
            cs::PseudoLineSystem sys = cs::build_system(f, z, b);
            cs::IncidenceTally tally = cs::incidence_tally(sys);
            json rich = json::array();
            for (std::uint64_t tau = 1; tau <= sys.line_count(); tau *= 2) {
                auto rep = cs::rich_points(sys, tau, cs::Rational(1), &tally);
                rich.push_back(
                    {{"tau", tau}, {"count", rep.count}, {"bound", rep.bound}, {"ratio", rep.ratio}});
            }
            if (inc_tau > 0) {
                auto rep = cs::rich_points(sys, inc_tau, cs::Rational(1), &tally);
                rich.push_back({{"tau", inc_tau},
                                {"count", rep.count},
                                {"bound", rep.bound},
                                {"ratio", rep.ratio}});
            }
            json report{{"f", f.name()},
                        {"lines", sys.line_count()},
                        {"points", sys.point_count()},
                        {"zDoubling", sys.z_doubling.str()},
                        {"incidences", tally.total()},
                        {"richPoints", rich},
                        {"stProfile", cs::check_to_json(cs::st_profile(sys, cs::Rational(3), &tally))},
                        {"tailBound", cs::check_to_json(cs::check_doubling_tail_bound(f, z, sys.a))}};
            if (!inc_pop_x.empty()) {
                cs::Rational x = cs::Rational::parse(inc_pop_x);
                std::uint64_t tau = inc_pop_tau;
                if (tau == 0)
                    tau = cs::rep_function(sys.a, sys.b, cs::RepKind::difference).count_at(x);
                report["popularity"] = cs::check_to_json(cs::verify_popularity(sys, x, tau, &tally));
            }
            emit(report, inc_report);
            return 0;
        }

        if (scan->parsed()) {
            auto rows = cs::scan_growth(scan_flags.to_spec(), parse_grid(scan_grid), scan_flags.seed,
                                        scan_workers);
            std::string csv = cs::scan_to_csv(rows);
            if (!scan_out.empty())
                cs::write_text_file(scan_out, csv);
            else
                std::cout << csv;
            return 0;
        }

        if (fit->parsed()) {
            std::ifstream in(fit_csv);
            if (!in) throw cs::ParseError("cannot open " + fit_csv);
            std::stringstream buf;
            buf << in.rdbuf();
            auto rows = cs::scan_from_csv(buf.str());
            cs::FitResult res = cs::fit_exponent(rows, fit_x, fit_y);
            json j{{"x", fit_x},
                   {"y", fit_y},
                   {"rows", rows.size()},
                   {"slope", res.slope},
                   {"intercept", res.intercept},
                   {"residual", res.residual}};
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (search->parsed()) {
            cs::SearchOptions opt;
            opt.iterations = search_iters;
            opt.seed = search_seed;
            opt.t0 = search_t0;
            opt.cooling = search_cooling;
            cs::SearchState st =
                cs::extremal_search(search_n, cs::objective_from_name(search_objective), opt);
            if (!search_out.empty())
                cs::write_text_file(search_out, cs::search_state_to_json(st).dump(2) + "\n");
            json summary{{"n", st.n},
                         {"objective", cs::objective_name(st.objective_kind)},
                         {"currentObjective", st.objective},
                         {"bestObjective", st.best_objective},
                         {"t0", st.t0},
                         {"accepted", st.accepted},
                         {"iterations", st.iterations}};
            std::cout << summary.dump(2) << "\n";
            return 0;
        }
    } catch (const cs::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::InvalidObjective& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::GridTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::DegenerateFit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    }
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const cs::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageExit;
    } catch (const cs::Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kSoftwareExit;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kSoftwareExit;
    }
}
