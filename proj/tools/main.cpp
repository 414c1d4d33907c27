// hillbloch -- Bloch spectra, eigenfunctions, norming numbers, and the
// inverse problem for Hill operators with one-sided trigonometric
// potentials.  Subcommands:
//
//   spectrum   eigenvalue table lambda_n(t) = (2 pi n + t)^2 (CSV),
//              optionally cross-checked against the Hill discriminant
//   bloch      truncated Bloch series at one (n, t) (JSON)
//   forward    norming numbers s_1..s_M of a potential (JSON)
//   inverse    potential recovered from norming numbers (JSON)
//   verify     cross-check suites against the ODE oracle (JSON reports)
//   limit      degenerate-limit probes (JSON reports)
//
// Errors leave a {"error": {"kind", "detail"}} envelope on stderr and exit
// with 1; completed runs whose checks fail exit with 2.

#include "CLI11.hpp"

#include "hillbloch/bloch.hpp"
#include "hillbloch/crosscheck.hpp"
#include "hillbloch/floquet.hpp"
#include "hillbloch/inverse.hpp"
#include "hillbloch/io.hpp"
#include "hillbloch/limits.hpp"
#include "hillbloch/norming.hpp"
#include "hillbloch/potential.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

using hillbloch::PotentialSpec;
using C = std::complex<double>;

PotentialSpec<double> load_potential(const std::string& path) {
    if (path.empty()) return PotentialSpec<double>();  // zero potential
    return hillbloch::io::parse_potential(hillbloch::io::read_text_file(path));
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        hillbloch::io::write_text_file_atomic(out_path, payload);
    }
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int parse_int_strict(const std::string& text, const char* what) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw hillbloch::ValidationError(std::string(what) + ": \"" + text +
                                         "\" is not an integer");
    }
    return value;
}

// "-3..3" -> {-3, 3}
std::pair<int, int> parse_band_range(const std::string& text) {
    const auto sep = text.find("..");
    if (sep == std::string::npos) {
        throw hillbloch::ValidationError("band range must look like \"-3..3\"");
    }
    const int lo = parse_int_strict(text.substr(0, sep), "band range start");
    const int hi = parse_int_strict(text.substr(sep + 2), "band range end");
    if (lo > hi) throw hillbloch::ValidationError("band range start exceeds its end");
    if (hi - lo > 10000) throw hillbloch::ValidationError("band range is too wide (> 10000)");
    return {lo, hi};
}

void print_report_lines(const std::vector<hillbloch::VerificationReport>& reports) {
    for (const auto& r : reports) {
        std::cout << (r.passed ? "[pass] " : "[FAIL] ") << r.name << " (" << r.detail
                  << "): residual=" << fmt_g(r.residual)
                  << " tolerance=" << fmt_g(r.tolerance) << "\n";
    }
}

bool all_passed(const std::vector<hillbloch::VerificationReport>& reports) {
    for (const auto& r : reports) {
        if (!r.passed) return false;
    }
    return true;
}

struct SpectrumArgs {
    std::string potential, out;
    std::string range = "-3..3";
    double t_re = 0.0, t_im = 0.0;
    bool verify = false;
    int steps = 1024;
    double tolerance = 1e-5;
};

int run_spectrum(const SpectrumArgs& args) {
    const PotentialSpec<double> spec = load_potential(args.potential);
    const auto [lo, hi] = parse_band_range(args.range);
    const C t(args.t_re, args.t_im);

    std::string csv = "n,t_re,t_im,lambda_re,lambda_im";
    if (args.verify) csv += ",discriminant_residual";
    csv += "\n";

    double worst = 0.0;
    for (int n = lo; n <= hi; ++n) {
        const C lambda = hillbloch::bloch_eigenvalue(hillbloch::BlochIndex<double>{n, t});
        csv += std::to_string(n) + "," + fmt_g(t.real()) + "," + fmt_g(t.imag()) + "," +
               fmt_g(lambda.real()) + "," + fmt_g(lambda.imag());
        if (args.verify) {
            const C delta = hillbloch::hill_discriminant(spec, lambda, args.steps);
            const double residual = std::abs(delta - 2.0 * std::cos(t));
            worst = std::max(worst, residual);
            csv += "," + fmt_g(residual);
        }
        csv += "\n";
    }
    emit(args.out, csv);
    return (args.verify && worst > args.tolerance) ? 2 : 0;
}

struct BlochArgs {
    std::string potential, out;
    int n = 0;
    double t_re = 0.0, t_im = 0.0;
    int terms = 50;
};

int run_bloch(const BlochArgs& args) {
    const PotentialSpec<double> spec = load_potential(args.potential);
    const hillbloch::BlochIndex<double> index{args.n, C(args.t_re, args.t_im)};
    const hillbloch::BlochSeries<double> series =
        hillbloch::bloch_series(spec, index, args.terms);
    emit(args.out, hillbloch::io::serialize_bloch_series(series));
    return 0;
}

struct ForwardArgs {
    std::string potential, out;
    int count = 10;
};

int run_forward(const ForwardArgs& args) {
    const PotentialSpec<double> spec = load_potential(args.potential);
    emit(args.out, hillbloch::io::serialize_norming(hillbloch::norming_numbers(spec, args.count)));
    return 0;
}

struct InverseArgs {
    std::string input, out;
    double threshold = hillbloch::two_pi_v<double>;
};

int run_inverse(const InverseArgs& args) {
    const hillbloch::NormingSequence<double> s =
        hillbloch::io::parse_norming(hillbloch::io::read_text_file(args.input));
    const hillbloch::InverseResult<double> result =
        hillbloch::recover_potential(s, args.threshold);
    emit(args.out, hillbloch::io::serialize_inverse_result(result));
    return 0;
}

struct VerifyArgs {
    std::string potential, out;
    std::string suite = "all";
    int steps = 1024;
    int terms = 50;
    double tolerance = 1e-5;
};

int run_verify(const VerifyArgs& args) {
    const PotentialSpec<double> spec = load_potential(args.potential);
    hillbloch::CrosscheckOptions options;
    options.steps = args.steps;
    options.terms = args.terms;
    options.tolerance = args.tolerance;
    const std::vector<hillbloch::VerificationReport> reports =
        hillbloch::run_crosscheck_suite(spec, args.suite, options);

    emit(args.out, hillbloch::io::serialize_reports(reports));
    if (!args.out.empty()) print_report_lines(reports);
    return all_passed(reports) ? 0 : 2;
}

struct LimitArgs {
    std::string potential, out;
    std::string mode = "periodic";
    std::string probe = "all";
    int n = 1;
    int p = 0;
    std::vector<double> t_seq = {1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> x_samples = {0.0, 0.25, 0.5, 0.75};
    int terms = 50;
};

int run_limit(const LimitArgs& args) {
    const PotentialSpec<double> spec = load_potential(args.potential);
    hillbloch::LimitProbe<double> probe;
    probe.mode = args.mode == "periodic" ? hillbloch::LimitMode::periodic
                                         : hillbloch::LimitMode::antiperiodic;
    probe.n = args.n;
    probe.p = args.p;
    probe.t_sequence = args.t_seq;
    probe.x_samples = args.x_samples;
    probe.terms = args.terms;

    std::vector<hillbloch::VerificationReport> reports;
    if (args.probe == "coefficient" || args.probe == "all") {
        reports.push_back(hillbloch::coefficient_limit(spec, probe));
    }
    if (args.probe == "function" || args.probe == "all") {
        reports.push_back(hillbloch::function_limit(spec, probe));
    }
    if (args.probe == "boundedness" ||
        (args.probe == "all" && probe.mode == hillbloch::LimitMode::periodic)) {
        reports.push_back(hillbloch::boundedness_probe(spec, probe));
    }

    emit(args.out, hillbloch::io::serialize_reports(reports));
    if (!args.out.empty()) print_report_lines(reports);
    return all_passed(reports) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Bloch spectra, norming numbers, and the inverse spectral problem for "
        "Hill operators with one-sided trigonometric potentials"};
    app.require_subcommand(1);

    int exit_code = 0;

    SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Tabulate lambda_n(t) over a band range (CSV)");
    spectrum->add_option("--potential", spectrum_args.potential,
                         "Potential JSON file (omit for q = 0)");
    spectrum->add_option("--n-range", spectrum_args.range, "Band range, e.g. -3..3");
    spectrum->add_option("--t", spectrum_args.t_re, "Quasimomentum (real part)");
    spectrum->add_option("--t-im", spectrum_args.t_im, "Quasimomentum (imaginary part)");
    spectrum->add_flag("--verify", spectrum_args.verify,
                       "Cross-check each eigenvalue against the Hill discriminant");
    spectrum->add_option("--steps", spectrum_args.steps, "RK4 steps per period");
    spectrum->add_option("--tolerance", spectrum_args.tolerance,
                         "Largest acceptable discriminant residual");
    spectrum->add_option("--out", spectrum_args.out, "Output file (default stdout)");
    spectrum->callback([&] { exit_code = run_spectrum(spectrum_args); });

    BlochArgs bloch_args;
    CLI::App* bloch =
        app.add_subcommand("bloch", "Truncated Bloch series at one (n, t) (JSON)");
    bloch->add_option("--potential", bloch_args.potential, "Potential JSON file (omit for q = 0)");
    bloch->add_option("--n", bloch_args.n, "Band index");
    bloch->add_option("--t", bloch_args.t_re, "Quasimomentum (real part)");
    bloch->add_option("--t-im", bloch_args.t_im, "Quasimomentum (imaginary part)");
    bloch->add_option("--terms", bloch_args.terms, "Truncation order P");
    bloch->add_option("--out", bloch_args.out, "Output file (default stdout)");
    bloch->callback([&] { exit_code = run_bloch(bloch_args); });

    ForwardArgs forward_args;
    CLI::App* forward =
        app.add_subcommand("forward", "Norming numbers s_1..s_M of a potential (JSON)");
    forward->add_option("--potential", forward_args.potential,
                        "Potential JSON file (omit for q = 0)");
    forward->add_option("--count", forward_args.count, "Number of norming numbers M");
    forward->add_option("--out", forward_args.out, "Output file (default stdout)");
    forward->callback([&] { exit_code = run_forward(forward_args); });

    InverseArgs inverse_args;
    CLI::App* inverse = app.add_subcommand(
        "inverse", "Recover a potential from norming numbers (JSON)");
    inverse->add_option("--input", inverse_args.input, "Norming sequence JSON file")
        ->required();
    inverse->add_option("--threshold", inverse_args.threshold,
                        "Modulus threshold for the boundedness diagnostic");
    inverse->add_option("--out", inverse_args.out, "Output file (default stdout)");
    inverse->callback([&] { exit_code = run_inverse(inverse_args); });

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check closed forms against the ODE oracle (JSON reports)");
    verify->add_option("--potential", verify_args.potential,
                       "Potential JSON file (omit for q = 0)");
    verify->add_option("--suite", verify_args.suite, "Check suite to run")
        ->check(CLI::IsMember(hillbloch::crosscheck_suite_names()));
    verify->add_option("--steps", verify_args.steps, "RK4 steps per period");
    verify->add_option("--terms", verify_args.terms, "Bloch truncation order");
    verify->add_option("--tolerance", verify_args.tolerance,
                       "Quasi-periodicity budget for eigenfunction checks");
    verify->add_option("--out", verify_args.out,
                       "Report file (default stdout; with --out, summary lines go to stdout)");
    verify->callback([&] { exit_code = run_verify(verify_args); });

    LimitArgs limit_args;
    CLI::App* limit =
        app.add_subcommand("limit", "Degenerate-limit probes (JSON reports)");
    limit->add_option("--potential", limit_args.potential,
                      "Potential JSON file (omit for q = 0)");
    limit->add_option("--mode", limit_args.mode, "Degenerate point family")
        ->check(CLI::IsMember({"periodic", "antiperiodic"}));
    limit->add_option("--probe", limit_args.probe, "Which probe(s) to run")
        ->check(CLI::IsMember({"coefficient", "function", "boundedness", "all"}));
    limit->add_option("--n", limit_args.n, "Index of the colliding pair");
    limit->add_option("--p", limit_args.p, "Band offset of the compared coefficient");
    limit->add_option("--t-seq", limit_args.t_seq,
                      "Decreasing offsets to the degenerate point (comma-separated)")
        ->delimiter(',');
    limit->add_option("--x-samples", limit_args.x_samples,
                      "Evaluation points in [0,1] for the function probe (comma-separated)")
        ->delimiter(',');
    limit->add_option("--terms", limit_args.terms, "Series truncation order");
    limit->add_option("--out", limit_args.out,
                      "Report file (default stdout; with --out, summary lines go to stdout)");
    limit->callback([&] { exit_code = run_limit(limit_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        std::cerr << hillbloch::io::serialize_error("usage", e.what());
        return 1;
    } catch (const hillbloch::Error& e) {
        std::cerr << hillbloch::io::serialize_error(e.kind(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::cerr << hillbloch::io::serialize_error("internal", e.what());
        return 1;
    }
    return exit_code;
}
