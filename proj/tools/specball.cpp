// specball — batch front end for the spectral-ball automorphism library.
//
// Subcommands:
//   verify      run the default verification suite, one JSON line per check
//   falsify     least-squares falsifier for the diagonal twist on the fiber
//   fiber-scan  CSV table of the twisted fiber and residual contributions
//   apply       apply a JSON automorphism pipeline to a matrix

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "specball/falsifier.hpp"
#include "specball/fiber_scan.hpp"
#include "specball/pipeline_json.hpp"
#include "specball/report.hpp"
#include "specball/verify_suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    double tol = 1e-9;
    unsigned workers = 1;
    std::string phi_text;
    double radius = 2.0;
    std::size_t count = 64;
    std::string pipeline_path;
    std::string input_path;
    std::string out_path;
    bool check_roundtrip = false;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw specball::ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &out_path, const std::string &text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw specball::ParseError("cannot open output file: " + out_path);
    out << text;
}

std::string fit_report_json(const specball::FitReport &rep) {
    using specball::format_double;
    std::string out = "{\"residual\":" + format_double(rep.residual);
    out += ",\"best_conjugator\":" + specball::mat2_to_json(rep.best_conjugator);
    out += ",\"conjugator_condition\":" + format_double(rep.conjugator_condition);
    out += ",\"holdout_error\":" + format_double(rep.holdout_error);
    out += ",\"verdict\":\"" + std::string(specball::to_string(rep.verdict)) + "\"}";
    return out;
}

std::string affine_report_json(const specball::AffineFitReport &rep) {
    using specball::format_double;
    std::string out = "{\"radius\":" + format_double(rep.sample_radius);
    out += ",\"alpha\":" + specball::format_complex(rep.coeff_alpha);
    out += ",\"beta\":" + specball::format_complex(rep.coeff_beta);
    out += ",\"residual\":" + format_double(rep.residual);
    out += ",\"points_used\":" + std::to_string(rep.points_used) + "}";
    return out;
}

int cmd_verify(const Options &opt) {
    if (opt.out_path.empty()) {
        std::cerr << "verify: --out is required\n";
        return kExitUsage;
    }
    specball::SuiteConfig cfg;
    cfg.seed = opt.seed;
    cfg.samples = opt.samples;
    cfg.tol = opt.tol;
    cfg.workers = opt.workers;
    const specball::SuiteResult result = specball::run_default_suite(cfg);
    std::string text;
    std::size_t passed = 0;
    for (const specball::ReportLine &line : result.lines) {
        text += specball::to_json(line);
        text += "\n";
        if (line.pass)
            ++passed;
    }
    write_output(opt.out_path, text);
    std::cout << "verify: " << passed << "/" << result.lines.size() << " checks passed\n";
    return result.all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_falsify(const Options &opt) {
    const specball::EntirePoly phi = specball::parse_phi_json(opt.phi_text);
    const specball::FitReport fit =
        specball::falsify_diag_twist_on_fiber(phi, opt.radius, opt.count);
    const std::vector<specball::AffineFitReport> affine =
        specball::fiber_affine_test(phi, {1.0, 2.0, 4.0}, 256);

    std::string text = "{\"fit\":" + fit_report_json(fit) + ",\"affine\":[";
    for (std::size_t i = 0; i < affine.size(); ++i) {
        if (i)
            text += ",";
        text += affine_report_json(affine[i]);
    }
    text += "]}\n";
    write_output(opt.out_path, text);

    const specball::FitVerdict expected = phi.is_nonconstant()
                                              ? specball::FitVerdict::NotAConjugation
                                              : specball::FitVerdict::ConjugationFound;
    return fit.verdict == expected ? kExitOk : kExitCheckFailed;
}

int cmd_fiber_scan(const Options &opt) {
    const specball::EntirePoly phi = specball::parse_phi_json(opt.phi_text);
    const specball::FiberScan scan = specball::fiber_scan(phi, opt.radius, opt.count);
    write_output(opt.out_path, specball::fiber_scan_to_csv(scan));
    if (scan.overflow_count > 0)
        std::cerr << "fiber-scan: " << scan.overflow_count
                  << " rows hit the overflow guard\n";
    return kExitOk;
}

int cmd_apply(const Options &opt) {
    const specball::Automorphism pipeline =
        specball::parse_pipeline_json(read_file(opt.pipeline_path));
    const specball::Mat2 input = specball::parse_mat2_json(read_file(opt.input_path));

    specball::Mat2 image;
    try {
        image = specball::apply(pipeline, input);
    } catch (const specball::OutsideDomain &e) {
        std::cerr << "apply: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    write_output(opt.out_path, specball::mat2_to_json(image) + "\n");

    if (opt.check_roundtrip) {
        specball::Automorphism inverse = specball::invert(pipeline);
        const specball::Mat2 back = specball::apply(inverse, image);
        const double err = specball::frobenius_norm(back - input);
        const double bound = opt.tol * (1.0 + specball::frobenius_norm(input));
        std::cerr << "roundtrip error: " << specball::format_double(err) << "\n";
        if (!(err <= bound)) {
            std::cerr << "apply: roundtrip error above " << specball::format_double(bound)
                      << "\n";
            return kExitCheckFailed;
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"spectral ball automorphisms: verification suites, falsifier, "
                 "fiber scans, and pipeline evaluation"};
    app.require_subcommand(1);

    Options opt;
    // Env var is the lowest-precedence seed default; flags override it.
    if (const char *env_seed = std::getenv("SPECTRAL_BALL_SEED")) {
        try {
            opt.seed = std::stoull(env_seed);
        } catch (...) {
            std::cerr << "invalid SPECTRAL_BALL_SEED: " << env_seed << "\n";
            return kExitUsage;
        }
    }

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("--tol", opt.tol, "base tolerance");
        cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
    };

    CLI::App *verify = app.add_subcommand("verify", "run the default verification suite");
    add_common(verify);
    verify->add_option("--samples", opt.samples, "sample count per check");
    verify->add_option("--workers", opt.workers, "worker threads (output-invariant)");

    CLI::App *falsify =
        app.add_subcommand("falsify", "constant-conjugation falsifier on the fiber");
    add_common(falsify);
    falsify->add_option("--phi", opt.phi_text, "entire function coefficients, JSON array")
        ->required();
    falsify->add_option("--radius", opt.radius, "fiber circle radius");
    falsify->add_option("--count", opt.count, "fiber points on the circle");

    CLI::App *scan = app.add_subcommand("fiber-scan", "CSV scan of the twisted fiber");
    add_common(scan);
    scan->add_option("--phi", opt.phi_text, "entire function coefficients, JSON array")
        ->required();
    scan->add_option("--radius", opt.radius, "fiber circle radius");
    scan->add_option("--count", opt.count, "fiber points on the circle");

    CLI::App *apply_cmd = app.add_subcommand("apply", "apply a pipeline to a matrix");
    add_common(apply_cmd);
    apply_cmd->add_option("--pipeline", opt.pipeline_path, "pipeline JSON file")->required();
    apply_cmd->add_option("--input", opt.input_path, "input matrix JSON file")->required();
    apply_cmd->add_flag("--check-roundtrip", opt.check_roundtrip,
                        "invert the pipeline and verify the round trip");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed())
            return cmd_verify(opt);
        if (falsify->parsed())
            return cmd_falsify(opt);
        if (scan->parsed())
            return cmd_fiber_scan(opt);
        if (apply_cmd->parsed())
            return cmd_apply(opt);
    } catch (const specball::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const specball::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}
