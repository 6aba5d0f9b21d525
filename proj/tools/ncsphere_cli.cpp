// Command-line front end: run verification suites, scan the sphere spectrum,
// and emit figure data.  Reports are JSON ({suite, params, checks, timing_ms});
// surfaces are CSV.  Exit codes: 0 all checks pass, 1 suite failure, 2 usage
// error, 3 IO error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncsphere/eigen_family.hpp"
#include "ncsphere/spectrum.hpp"
#include "ncsphere/verify.hpp"

using json = nlohmann::ordered_json;
using namespace ncs;

namespace {

struct Options {
    double theta = 0.237;
    int grid = 32;
    int modes = 2;
    unsigned seed = 2024;
    std::string out;
    std::string backend = "both";
    std::string support;
    std::string spec = "sphere";
    int lowest = 8;
    bool no_timestamp = false;
};

json report_to_json(const VerificationReport& rep, bool no_timestamp) {
    json j;
    j["suite"] = rep.suite;
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    j["params"] = params;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"status", c.pass ? "pass" : "fail"},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance}});
    j["checks"] = checks;
    // --no-timestamp makes output byte-stable, so the wall time is zeroed too
    j["timing_ms"] = no_timestamp ? 0.0 : rep.timing_ms;
    if (!no_timestamp) {
        std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
        j["timestamp"] = buf;
    }
    return j;
}

// write text to --out or stdout; returns false on IO failure
bool write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text << "\n";
        return bool(std::cout);
    }
    std::ofstream f(path);
    if (!f) return false;
    f << text << "\n";
    return bool(f);
}

LocalizingElement parse_support(const std::string& s) {
    if (s.empty()) return standard_support();
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 4)
        throw CLI::ValidationError("--support expects four numbers a,b,c,d");
    return {v[0], v[1], v[2], v[3]};
}

int emit_report(const VerificationReport& rep, const Options& opt) {
    std::string text = report_to_json(rep, opt.no_timestamp).dump(2);
    if (!write_output(text, opt.out)) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return 3;
    }
    return rep.all_pass() ? 0 : 1;
}

int run_verify(const std::string& suite, const Options& opt) {
    if (suite == "factorization") {
        if (opt.backend == "symbolic")
            return emit_report(verify_factorization(Backend::Symbolic), opt);
        if (opt.backend == "numeric")
            return emit_report(verify_factorization(Backend::Numeric), opt);
        VerificationReport sym = verify_factorization(Backend::Symbolic);
        VerificationReport num = verify_factorization(Backend::Numeric);
        for (const auto& c : num.checks) sym.checks.push_back(c);
        sym.timing_ms += num.timing_ms;
        sym.params["backend"] = 2.0;  // both
        return emit_report(sym, opt);
    }
    if (suite == "connection")
        return emit_report(verify_connection_condition(20, opt.seed), opt);
    if (suite == "anticommutator") return emit_report(verify_anticommutator(), opt);
    if (suite == "positivity")
        return emit_report(
            verify_local_positivity(parse_support(opt.support), 100,
                                    {opt.grid, opt.grid}, std::min(opt.modes, 3),
                                    opt.seed),
            opt);
    if (suite == "garding")
        return emit_report(
            verify_garding(parse_support(opt.support), 24, opt.modes, opt.seed),
            opt);
    if (suite == "curvature") {
        FibrationSpec fs = sphere_fibration();
        if (opt.spec == "closed") fs = closed_connection_fibration();
        else if (opt.spec == "synthetic") fs = synthetic_curved_fibration();
        else if (opt.spec != "sphere")
            throw CLI::ValidationError("--spec must be sphere, closed or synthetic");
        return emit_report(verify_curvature_obstruction(fs), opt);
    }
    if (suite == "torus") return emit_report(verify_torus(1000, opt.seed), opt);
    if (suite == "sphere-relations")
        return emit_report(
            verify_sphere_relations({0.0, 1.0 / 3.0, 0.5, opt.theta}, opt.seed),
            opt);
    throw CLI::ValidationError("unknown suite: " + suite);
}

int run_spectrum(const Options& opt) {
    VerificationReport rep;
    rep.suite = "spectrum";
    {
        ReportTimer timer(rep);
        SpectrumOptions sopt;
        sopt.nev = opt.lowest;
        sopt.seeds = {opt.seed % 1000 + 11, opt.seed % 1000 + 22,
                      opt.seed % 1000 + 33};
        SpectrumResult r =
            sphere_spectrum({opt.grid, opt.grid}, opt.modes, sopt);
        rep.params["grid"] = opt.grid;
        rep.params["modes"] = opt.modes;
        rep.params["lowest"] = opt.lowest;
        rep.params["seed"] = opt.seed;
        rep.params["lowest_abs"] = r.lowest_abs;
        rep.params["count_in_window"] = r.count_in_window;
        double smear = 0.0;
        for (const auto& sr : r.sectors)
            for (const auto& cr : sr.clusters)
                if (cr.multiplicity > 0 && cr.lambda >= r.window_lo &&
                    cr.lambda <= r.window_hi)
                    smear += std::abs(cr.smooth_mass - cr.multiplicity);
        rep.params["window_smearing"] = smear;
        rep.add("lowest_cluster_near_two", std::abs(r.lowest_abs - 2.0), 0.10);
        rep.add("window_count_is_four", std::abs(double(r.count_in_window) - 4.0),
                std::max(0.5, smear));
    }
    return emit_report(rep, opt);
}

int run_emit_surfaces(const Options& opt) {
    GridSpec grid{opt.grid, opt.grid};
    Grid1D gp = grid.phi(), gq = grid.psi();
    std::string text = "n1,n2,phi,psi,lambda";
    char buf[160];
    for (int n1 = -opt.modes; n1 <= opt.modes; ++n1)
        for (int n2 = -opt.modes; n2 <= opt.modes; ++n2)
            for (int i = 0; i < grid.nphi; ++i)
                for (int j = 0; j < grid.npsi; ++j) {
                    EigenFamily f{n1, n2, gp.nodes(i), gq.nodes(j)};
                    std::snprintf(buf, sizeof buf,
                                  "\n%d,%d,%.12e,%.12e,%.12e", n1, n2,
                                  gp.nodes(i), gq.nodes(j), f.lambda());
                    text += buf;
                }
    if (!write_output(text, opt.out)) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for the toric sphere Dirac factorization"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--theta", opt.theta, "deformation parameter");
        sub->add_option("--grid", opt.grid, "base grid size per direction")
            ->check(CLI::Range(4, 4096));
        sub->add_option("--modes", opt.modes, "torus mode radius")
            ->check(CLI::Range(0, 64));
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_flag("--no-timestamp", opt.no_timestamp,
                      "omit the timestamp for byte-stable output");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify
        ->add_option("suite", suite,
                     "factorization|connection|anticommutator|positivity|"
                     "garding|curvature|torus|sphere-relations")
        ->required();
    add_common(verify);
    verify->add_option("--backend", opt.backend, "symbolic|numeric|both")
        ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
    verify->add_option("--support", opt.support, "support box a,b,c,d");
    verify->add_option("--spec", opt.spec,
                       "curvature spec: sphere|closed|synthetic");

    CLI::App* spectrum = app.add_subcommand("spectrum", "sector spectrum scan");
    add_common(spectrum);
    spectrum->add_option("--lowest", opt.lowest, "Ritz pairs per start")
        ->check(CLI::Range(1, 64));

    CLI::App* emit = app.add_subcommand("emit", "emit figure data");
    CLI::App* surfaces =
        emit->add_subcommand("eigen-surfaces", "per-mode eigenvalue surfaces");
    add_common(surfaces);
    emit->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(suite, opt);
        if (spectrum->parsed()) return run_spectrum(opt);
        if (emit->parsed()) return run_emit_surfaces(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
