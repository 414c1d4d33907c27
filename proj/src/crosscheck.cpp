#include "hillbloch/crosscheck.hpp"

#include "hillbloch/bloch.hpp"
#include "hillbloch/floquet.hpp"
#include "hillbloch/inverse.hpp"
#include "hillbloch/limits.hpp"
#include "hillbloch/norming.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace hillbloch {
namespace {

using C = std::complex<double>;

// The sampling grid every spectral check walks: small band indices and a
// few quasimomenta away from the degenerate points, one of them complex.
const std::vector<int> grid_n = {-2, -1, 0, 1, 2};
const std::vector<C> grid_t = {C(0.4, 0.0), C(2.1, 0.0), C(0.7, 0.4)};

std::string format_point(int n, const C& t) {
    std::ostringstream os;
    os << "n=" << n << " t=(" << t.real() << "," << t.imag() << ")";
    return os.str();
}

// Oracle budgets scale with the step size; below the default 1024 steps the
// stated tolerances are widened by the corresponding power of h.
double step_scale(int steps, int order) {
    const double ratio = 1024.0 / double(steps);
    return ratio > 1.0 ? std::pow(ratio, order) : 1.0;
}

void check_wronskian(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                     std::vector<VerificationReport>& out) {
    double worst = 0.0;
    std::string where = "empty grid";
    for (const int n : grid_n) {
        for (const C& t : grid_t) {
            const C lambda = bloch_eigenvalue(BlochIndex<double>{n, t});
            const MonodromyMatrix<double> m = monodromy(spec, lambda, options.steps);
            if (m.det_residual >= worst) {
                worst = m.det_residual;
                where = format_point(n, t);
            }
        }
    }
    out.push_back(VerificationReport::make("wronskian", "worst at " + where, worst,
                                           1e-9 * step_scale(options.steps, 5)));
}

void check_discriminant_identity(const PotentialSpec<double>& spec,
                                 const CrosscheckOptions& options,
                                 std::vector<VerificationReport>& out) {
    double worst = 0.0;
    std::string where = "empty grid";
    for (const int n : grid_n) {
        for (const C& t : grid_t) {
            const C lambda = bloch_eigenvalue(BlochIndex<double>{n, t});
            const C delta = hill_discriminant(spec, lambda, options.steps);
            const double err = std::abs(delta - 2.0 * std::cos(t));
            if (err >= worst) {
                worst = err;
                where = format_point(n, t);
            }
        }
    }
    out.push_back(VerificationReport::make("discriminant-identity", "worst at " + where, worst,
                                           5e-6 * step_scale(options.steps, 4)));
}

void check_triple_agreement(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                            std::vector<VerificationReport>& out) {
    const std::vector<BlochIndex<double>> points = {
        {0, C(0.37, 0.0)}, {1, C(1.9, -0.3)}, {-2, C(0.52, 0.1)}};
    const int max_p = std::min(10, options.terms);

    double worst = 0.0;
    std::string where = "empty grid";
    for (const BlochIndex<double>& index : points) {
        const BlochSeries<double> series = bloch_series(spec, index, max_p);
        for (int p = 1; p <= max_p; ++p) {
            const C rec = series.coeff(p);
            const C expl = bloch_coefficient_explicit(spec, index, p);
            const C brute = bloch_coefficient_bruteforce(spec, index, p);
            const double scale = 1.0 + std::abs(rec);
            const double err =
                std::max(std::abs(rec - expl), std::abs(rec - brute)) / scale;
            if (err >= worst) {
                worst = err;
                std::ostringstream os;
                os << format_point(index.n, index.t) << " p=" << p;
                where = os.str();
            }
        }
    }
    out.push_back(
        VerificationReport::make("bloch-triple-agreement", "worst at " + where, worst, 1e-10));
}

void check_series_quasiperiodicity(const PotentialSpec<double>& spec,
                                   const CrosscheckOptions& options,
                                   std::vector<VerificationReport>& out) {
    // The truncated series is exactly quasi-periodic term by term, so the
    // evaluated function must satisfy Psi(x+1) = e^{it} Psi(x) to roundoff;
    // this exercises the two exponential paths in evaluate_bloch.
    const BlochIndex<double> index{1, C(0.61, 0.25)};
    const BlochSeries<double> series = bloch_series(spec, index, options.terms);
    const C multiplier = std::exp(C(0, 1) * index.t);
    double magnitude = 0.0;
    for (int p = 0; p <= series.terms(); ++p) magnitude += std::abs(series.coeff(p));

    double worst = 0.0;
    for (const double x : {0.0, 0.3, 0.7}) {
        const C lhs = evaluate_bloch(series, x + 1.0);
        const C rhs = multiplier * evaluate_bloch(series, x);
        worst = std::max(worst, std::abs(lhs - rhs) / magnitude);
    }
    out.push_back(VerificationReport::make("series-quasiperiodicity",
                                           format_point(index.n, index.t), worst, 1e-12));
}

void check_eigenfunctions(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                          std::vector<VerificationReport>& out) {
    const std::vector<BlochIndex<double>> points = {
        {0, C(0.5, 0.0)}, {1, C(1.5707963267948966, 0.0)}, {-1, C(1.0, 0.2)}};
    for (const BlochIndex<double>& index : points) {
        const BlochSeries<double> series = bloch_series(spec, index, options.terms);
        out.push_back(verify_bloch(spec, series, options.steps, options.tolerance));
    }
}

void check_norming_oracle(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                          std::vector<VerificationReport>& out) {
    (void)options;
    const int count = std::min(12, std::max(8, spec.degree() + 4));
    const NormingSequence<double> s = norming_numbers(spec, count);
    double worst = 0.0;
    int worst_n = 0;
    for (int n = 1; n <= count; ++n) {
        const C brute = norming_number_bruteforce(spec, n);
        const double err = std::abs(s.value(n) - brute) / (1.0 + std::abs(s.value(n)));
        if (err >= worst) {
            worst = err;
            worst_n = n;
        }
    }
    std::ostringstream detail;
    detail << "n=1.." << count << ", worst at n=" << worst_n;
    out.push_back(VerificationReport::make("norming-oracle", detail.str(), worst, 1e-12));
}

void check_tail_bound(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                      std::vector<VerificationReport>& out) {
    (void)options;
    const int count = std::max(10, spec.degree() + 4);
    const NormingSequence<double> s = norming_numbers(spec, count);
    double worst = 0.0;
    int skipped = 0;
    for (int n = 1; n <= count; ++n) {
        const double bound = norming_tail_bound(spec, n);
        if (!std::isfinite(bound)) {
            ++skipped;
            continue;
        }
        const double excess = (std::abs(s.value(n) - spec.coeff(n)) - bound) / (1.0 + bound);
        worst = std::max(worst, excess);
    }
    std::ostringstream detail;
    detail << "n=1.." << count << " (" << skipped << " unusable bounds skipped)";
    VerificationReport report =
        VerificationReport::make("tail-bound", detail.str(), std::max(worst, 0.0), 1e-13);
    report.metrics["skipped"] = double(skipped);
    out.push_back(report);
}

void check_harmonic_sums(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                         std::vector<VerificationReport>& out) {
    (void)spec;
    (void)options;
    double worst = 0.0;
    for (int n = 2; n <= 10000; ++n) {
        const double b = harmonic_split_sum<double>(n);
        worst = std::max(worst, b - 1.0);  // B(n) <= 1 for n >= 2
        if (n >= 4) {
            worst = std::max(worst, b - 2.0 * (1.0 + std::log(double(n))) / double(n));
        }
    }
    out.push_back(
        VerificationReport::make("harmonic-sums", "n=2..10000, both envelopes", worst, 0.0));
}

void check_inverse_roundtrip(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                             std::vector<VerificationReport>& out) {
    (void)options;
    const int count = std::max(8, spec.degree());
    const NormingSequence<double> s = norming_numbers(spec, count);
    const InverseResult<double> recovered = recover_potential(s);
    double worst = 0.0;
    for (int n = 1; n <= count; ++n) {
        const double err = std::abs(recovered.spec.coeff(n) - spec.coeff(n)) /
                           (1.0 + std::abs(spec.coeff(n)));
        worst = std::max(worst, err);
    }
    std::ostringstream detail;
    detail << "q -> s -> q over n=1.." << count;
    out.push_back(VerificationReport::make("inverse-roundtrip", detail.str(), worst, 1e-11));
}

void check_admissible_bound(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                            std::vector<VerificationReport>& out) {
    (void)options;
    const int count = std::max(8, spec.degree());
    const NormingSequence<double> s = norming_numbers(spec, count);
    const bool admissible = check_admissibility(s);
    double residual = 0.0;
    if (admissible) {
        const InverseResult<double> recovered = recover_potential(s);
        residual = std::max(0.0, recovered.max_modulus - two_pi_v<double>) / two_pi_v<double>;
    }
    VerificationReport report = VerificationReport::make(
        "admissible-bound",
        admissible ? "norming sequence admissible; recovered moduli within 2 pi"
                   : "norming sequence not admissible; bound not applicable",
        residual, 0.0);
    report.metrics["admissible"] = admissible ? 1.0 : 0.0;
    out.push_back(report);
}

void check_limits(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                  std::vector<VerificationReport>& out) {
    LimitProbe<double> probe;
    probe.terms = options.terms;
    probe.t_sequence = {1e-2, 1e-3, 1e-4, 1e-5};

    probe.mode = LimitMode::periodic;
    probe.n = 1;
    probe.p = 0;
    out.push_back(coefficient_limit(spec, probe));

    // p = 0 at the antiperiodic point is exact for every tau (the first
    // coefficient is a single division); p = 1 makes the limit genuine.
    probe.mode = LimitMode::antiperiodic;
    probe.n = 0;
    probe.p = 1;
    out.push_back(coefficient_limit(spec, probe));

    probe.mode = LimitMode::periodic;
    probe.n = 1;
    probe.p = 0;
    probe.x_samples = {0.0, 0.25, 0.5, 0.75};
    out.push_back(function_limit(spec, probe));

    out.push_back(boundedness_probe(spec, probe));
}

void check_integrator_order(const PotentialSpec<double>& spec, const CrosscheckOptions& options,
                            std::vector<VerificationReport>& out) {
    (void)options;
    // Richardson triplet on the canonical solution theta: successive step
    // halvings must shrink the defect by ~2^4.
    const C lambda = bloch_eigenvalue(BlochIndex<double>{1, C(0.5, 0.0)});
    const auto coarse = integrate_hill(spec, lambda, C(1), C(0), 128);
    const auto medium = integrate_hill(spec, lambda, C(1), C(0), 256);
    const auto fine = integrate_hill(spec, lambda, C(1), C(0), 512);

    const double scale = 1.0 + std::abs(std::sqrt(lambda));
    auto gap = [&](const Vector2c<double>& a, const Vector2c<double>& b) {
        return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]) / scale);
    };
    const double e1 = gap(coarse, medium);
    const double e2 = gap(medium, fine);
    const double order = std::log2(e1 / e2);

    std::ostringstream detail;
    detail << "steps 128/256/512, observed order " << order;
    VerificationReport report = VerificationReport::make(
        "integrator-order", detail.str(), std::max(0.0, 3.5 - order), 0.0);
    report.metrics["order"] = order;
    out.push_back(report);
}

using CheckSet = void (*)(const PotentialSpec<double>&, const CrosscheckOptions&,
                          std::vector<VerificationReport>&);

void run_suite_into(const std::string& suite, const PotentialSpec<double>& spec,
                    const CrosscheckOptions& options, std::vector<VerificationReport>& out) {
    if (suite == "spectrum") {
        check_wronskian(spec, options, out);
        check_discriminant_identity(spec, options, out);
    } else if (suite == "bloch") {
        check_triple_agreement(spec, options, out);
        check_series_quasiperiodicity(spec, options, out);
        check_eigenfunctions(spec, options, out);
    } else if (suite == "norming") {
        check_norming_oracle(spec, options, out);
        check_tail_bound(spec, options, out);
        check_harmonic_sums(spec, options, out);
    } else if (suite == "inverse") {
        check_inverse_roundtrip(spec, options, out);
        check_admissible_bound(spec, options, out);
    } else if (suite == "limits") {
        check_limits(spec, options, out);
    } else if (suite == "integrator") {
        check_integrator_order(spec, options, out);
    } else {
        throw ValidationError("unknown cross-check suite \"" + suite + "\"");
    }
}

}  // namespace

const std::vector<std::string>& crosscheck_suite_names() {
    static const std::vector<std::string> names = {
        "all", "spectrum", "bloch", "norming", "inverse", "limits", "integrator"};
    return names;
}

std::vector<VerificationReport> run_crosscheck_suite(const PotentialSpec<double>& spec,
                                                     const std::string& suite,
                                                     const CrosscheckOptions& options) {
    if (options.steps < 64) throw ValidationError("cross-checks need at least 64 steps");
    if (options.terms < 4) throw ValidationError("cross-checks need a truncation order >= 4");
    if (!(options.tolerance > 0)) throw ValidationError("cross-check tolerance must be positive");

    std::vector<VerificationReport> out;
    if (suite == "all") {
        for (const std::string& name : crosscheck_suite_names()) {
            if (name != "all") run_suite_into(name, spec, options, out);
        }
    } else {
        run_suite_into(suite, spec, options, out);
    }
    return out;
}

}  // namespace hillbloch
