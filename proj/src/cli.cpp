#include "spinsq/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spinsq/algebra.hpp"
#include "spinsq/dynamics.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/reports.hpp"
#include "spinsq/squeezing.hpp"

namespace spinsq::cli {

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t p = s.find(delim, start);
        parts.push_back(s.substr(start, p == std::string::npos ? std::string::npos : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return parts;
}

double parse_real(const std::string& tok) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw Error(fmt::format("bad number '{}' in spinor", tok));
    }
    if (pos != tok.size()) throw Error(fmt::format("bad number '{}' in spinor", tok));
    return v;
}

} // namespace

Spinor parse_spinor(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 3)
        throw Error("spinor needs exactly three comma-separated components");
    Spinor s;
    for (int i = 0; i < 3; ++i) {
        const auto reim = split(parts[static_cast<size_t>(i)], ':');
        if (reim.empty() || reim.size() > 2)
            throw Error(fmt::format("spinor component '{}' is not re[:im]",
                                    parts[static_cast<size_t>(i)]));
        const double re = parse_real(reim[0]);
        const double im = reim.size() == 2 ? parse_real(reim[1]) : 0.0;
        s.zeta[static_cast<size_t>(i)] = cplx(re, im);
    }
    return s;
}

namespace {

// auto-normalize with a warning when slightly off; reject when off >= 1e-6
Spinor checked_spinor(const std::string& text, std::ostream& err) {
    const Spinor s = parse_spinor(text);
    const double off = std::abs(s.norm() - 1.0);
    if (off >= 1e-6)
        throw Error(fmt::format("spinor norm {} is off by more than 1e-6; pass a normalized state",
                                s.norm()));
    if (off > 1e-12)
        err << fmt::format("warning: spinor norm off by {:.3g}; auto-normalizing\n", off);
    return s.normalized();
}

int write_document(const std::string& doc, const RunConfig& cfg, std::ostream& out,
                   std::ostream& err) {
    std::string text = doc;
    if (text.empty() || text.back() != '\n') text += '\n';
    if (cfg.output_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) {
        err << "cannot open output file " << cfg.output_path << '\n';
        return 2;
    }
    f << text;
    f.flush();
    return f.good() ? 0 : 2;
}

bool roots_match_hexagon(const std::vector<std::pair<RootVector, EigenOperator>>& diagram) {
    if (diagram.size() != 6) return false;
    const double r3 = std::sqrt(3.0);
    const double expected[6][2] = {{2, 0}, {1, r3}, {-1, r3}, {-2, 0}, {-1, -r3}, {1, -r3}};
    for (int i = 0; i < 6; ++i) {
        const RootVector& r = diagram[static_cast<size_t>(i)].first;
        if (std::abs(r.alpha1 - expected[i][0]) > 1e-10 ||
            std::abs(r.alpha2 - expected[i][1]) > 1e-10)
            return false;
    }
    return true;
}

bool triad_classes_ok(const std::vector<Su2Triad>& triads) {
    if (triads.size() != 9) return false;
    int n1 = 0, n2 = 0;
    for (const Su2Triad& t : triads) {
        if (std::abs(t.lambda - 1.0) < 1e-8)
            ++n1;
        else if (std::abs(t.lambda - 2.0) < 1e-8)
            ++n2;
        else
            return false;
    }
    return n1 == 6 && n2 == 3;
}

int cmd_algebra_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const GeneratorBasis basis;
    reports::AlgebraReport rep;
    std::vector<std::string> failures;

    std::optional<StructureConstants> f;
    try {
        f = structure_constants(basis);
    } catch (const Error& e) {
        failures.push_back(fmt::format("structure_constants ({})", e.what()));
    }
    if (f) {
        rep.antisymmetry_max = max_antisymmetry_violation(*f);
        rep.jacobi_max = max_jacobi_violation(*f);
        if (rep.antisymmetry_max > 1e-9) failures.emplace_back("antisymmetry");
        if (rep.jacobi_max > 1e-9) failures.emplace_back("jacobi");
        try {
            rep.diagram = root_diagram(*f, basis);
            if (!roots_match_hexagon(rep.diagram)) failures.emplace_back("root_hexagon");
            try {
                rep.triads = enumerate_canonical_triads(basis, rep.diagram);
                if (!triad_classes_ok(rep.triads)) failures.emplace_back("triad_classes");
            } catch (const Error& e) {
                failures.push_back(fmt::format("canonical_triads ({})", e.what()));
            }
            try {
                rep.appendix_b = appendix_b_search(basis, 0.01);
            } catch (const Error& e) {
                failures.push_back(fmt::format("appendix_b ({})", e.what()));
            }
        } catch (const Error& e) {
            failures.push_back(fmt::format("root_diagram ({})", e.what()));
        }
    }

    const int rc = write_document(reports::algebra_json(rep), cfg, out, err);
    if (rc != 0) return rc;
    for (const std::string& name : failures) err << "invariant failed: " << name << '\n';
    return failures.empty() ? 0 : 1;
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> v(static_cast<size_t>(points));
    const double ratio = std::log(hi / lo);
    for (int i = 0; i < points; ++i)
        v[static_cast<size_t>(i)] = lo * std::exp(ratio * i / (points - 1));
    v.back() = hi;
    return v;
}

int cmd_squeeze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SqueezeFamily family =
        cfg.squeeze_type == 1 ? SqueezeFamily::type1 : SqueezeFamily::type2;
    const GeneratorBasis basis;

    std::optional<TwistingSchedule> sched;
    if (!cfg.auto_window) {
        TwistingSchedule s;
        s.twist_kernel = basis[kJz];
        s.chi_t_values = log_spaced(cfg.chi_t_min, cfg.chi_t_max, cfg.points);
        sched = std::move(s);
    } else if (cfg.points != 200) {
        sched = default_schedule(basis, cfg.n_particles, cfg.points);
    }

    const SqueezeResult res = run_squeezing(cfg.n_particles, cfg.spinor, family,
                                            sched ? &*sched : nullptr, cfg.seed);

    const std::string doc =
        cfg.format == "csv" ? reports::series_csv(res) : reports::squeeze_json(res);
    const int rc = write_document(doc, cfg, out, err);
    if (rc != 0) return rc;
    out << fmt::format("N={} type={} min_var={:.6g} chi_t_opt={:.6g} db={:.4g}\n", res.n_particles,
                       res.squeeze_type, res.min_variance, res.chi_t_opt, res.squeezing_db);
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SqueezeFamily family =
        cfg.squeeze_type == 1 ? SqueezeFamily::type1 : SqueezeFamily::type2;
    const SweepResult res = sweep_scaling(cfg.n_list, family, cfg.spinor, cfg.seed);
    const std::string doc =
        cfg.format == "json" ? reports::sweep_json(res) : reports::sweep_csv(res);
    return write_document(doc, cfg, out, err);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string spinor_text;

    CLI::App app{"exact laboratory for collective spin-1 squeezing"};
    app.require_subcommand(1);

    CLI::App* alg = app.add_subcommand("algebra-report",
                                       "su(3) structure report: roots, triads, ladder search");
    alg->add_option("--format", cfg.format, "output format (json)")
        ->check(CLI::IsMember({"json"}));
    alg->add_option("--out", cfg.output_path, "write the document to this file");

    CLI::App* sq = app.add_subcommand("squeeze", "one-axis twisting run at fixed N");
    sq->add_option("--n", cfg.n_particles, "particle count")
        ->required()
        ->check(CLI::Range(2, FockBasis::kMaxParticles));
    sq->add_option("--spinor", spinor_text, "initial state re[:im],re[:im],re[:im]")->required();
    sq->add_option("--type", cfg.squeeze_type, "squeezing family")->check(CLI::IsMember({1, 2}));
    CLI::Option* tmin = sq->add_option("--chi-t-min", cfg.chi_t_min, "window start in chi t");
    CLI::Option* tmax = sq->add_option("--chi-t-max", cfg.chi_t_max, "window end in chi t");
    tmin->needs(tmax);
    tmax->needs(tmin);
    sq->add_option("--points", cfg.points, "schedule points")->check(CLI::Range(3, 20000));
    sq->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sq->add_option("--out", cfg.output_path, "write the document to this file");
    sq->add_option("--seed", cfg.seed, "extra multi-start seed for the angle solver");

    CLI::App* sw = app.add_subcommand("sweep", "squeezing minima across N with log-log fit");
    sw->add_option("--n-list", cfg.n_list, "ascending particle counts")
        ->required()
        ->delimiter(',');
    sw->add_option("--spinor", spinor_text, "initial state re[:im],re[:im],re[:im]")->required();
    sw->add_option("--type", cfg.squeeze_type, "squeezing family")->check(CLI::IsMember({1, 2}));
    sw->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
    sw->add_option("--out", cfg.output_path, "write the document to this file");
    sw->add_option("--seed", cfg.seed, "extra multi-start seed for the angle solver");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (alg->parsed()) {
            cfg.command = RunConfig::Command::algebra_report;
            if (cfg.format.empty()) cfg.format = "json";
            return cmd_algebra_report(cfg, out, err);
        }

        try {
            cfg.spinor = checked_spinor(spinor_text, err);
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
            return 3;
        }

        if (sq->parsed()) {
            cfg.command = RunConfig::Command::squeeze;
            if (cfg.format.empty()) cfg.format = "json";
            cfg.auto_window = tmin->count() == 0;
            if (!cfg.auto_window && !(cfg.chi_t_min > 0.0 && cfg.chi_t_max > cfg.chi_t_min)) {
                err << "error: need 0 < chi-t-min < chi-t-max\n";
                return 3;
            }
            return cmd_squeeze(cfg, out, err);
        }

        cfg.command = RunConfig::Command::sweep;
        if (cfg.format.empty()) cfg.format = "csv";
        if (cfg.n_list.size() < 4) {
            err << "error: --n-list needs at least four entries\n";
            return 3;
        }
        int prev = 0;
        for (int n : cfg.n_list) {
            if (n < 20 || n > FockBasis::kMaxParticles) {
                err << fmt::format("error: --n-list entries must lie in [20, {}]\n",
                                   FockBasis::kMaxParticles);
                return 3;
            }
            if (n <= prev) {
                err << "error: --n-list must be strictly ascending\n";
                return 3;
            }
            prev = n;
        }
        return cmd_sweep(cfg, out, err);
    } catch (const ScheduleMiss& e) {
        err << "runtime failure: " << e.what() << '\n';
        return 2;
    } catch (const NoConvergence& e) {
        err << "runtime failure: " << e.what() << '\n';
        return 2;
    } catch (const SizeLimit& e) {
        err << "runtime failure: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "invariant failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "runtime failure: " << e.what() << '\n';
        return 2;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("spinsq");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> ptrs;
    ptrs.reserve(full.size());
    for (const std::string& a : full) ptrs.push_back(a.c_str());
    return run(static_cast<int>(ptrs.size()), ptrs.data(), out, err);
}

} // namespace spinsq::cli
