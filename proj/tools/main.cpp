// wfield: numerical ranges, spectra, product sets W(A)W(B), structural
// classification and rank-one witnesses, from matrix JSON files.
//
// Exit codes: 0 success/affirmative, 1 negative finding, 2 inconclusive,
// 64 input error, 70 numerical failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wfield/io.hpp"
#include "wfield/svg.hpp"

namespace {

using namespace wfield;

constexpr int kExitNegative = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitBadInput = 64;
constexpr int kExitNumeric = 70;

struct Options {
    int angles = 720;
    int grid = 128;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, Options& opt, bool svg_ok) {
    cmd->add_option("--angles", opt.angles, "support-function angles (>= 8)")
        ->check(CLI::Range(8, 1 << 20));
    cmd->add_option("--grid", opt.grid, "membership grid resolution (>= 32)")
        ->check(CLI::Range(32, 1 << 20));
    cmd->add_option("--tol", opt.tol, "tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember(svg_ok ? std::vector<std::string>{"json", "text", "svg"}
                                     : std::vector<std::string>{"json", "text"}));
    cmd->add_option("--out", opt.out, "output path (default stdout)");
}

void emit(const Options& opt, const std::string& content) {
    if (opt.out.empty()) {
        std::cout << content << "\n";
    } else {
        write_file_atomic(opt.out, content);
    }
}

std::string text_containment(const ContainmentReport& rep) {
    std::ostringstream s;
    s << "overall: " << to_string(rep.overall)
      << "  max_violation_distance: " << rep.max_violation_distance << "\n";
    for (const auto& ev : rep.eigen_verdicts)
        s << "  lambda " << ev.lambda.real() << (ev.lambda.imag() < 0 ? "-" : "+")
          << std::abs(ev.lambda.imag()) << "i : " << to_string(ev.verdict.verdict)
          << " (distance " << ev.verdict.distance_estimate << ")\n";
    return s.str();
}

int cmd_range(const std::string& path, const Options& opt) {
    const CMatrix a = read_matrix_file(path);
    const RangeApprox r = compute_range(a, opt.angles);
    const SpectrumSet spec = eig_general(a);
    if (opt.format == "svg") {
        emit(opt, svg_range(r, spec));
    } else if (opt.format == "text") {
        std::ostringstream s;
        s << "n = " << a.n() << ", angles = " << r.m << "\n"
          << "inner polygon vertices: " << r.inner.size()
          << ", outer polygon vertices: " << r.outer.size() << "\n"
          << "enclosure gap: " << r.hausdorff_gap << "\n";
        emit(opt, s.str());
    } else {
        emit(opt, to_json(r));
    }
    return 0;
}

int cmd_check(const std::string& apath, const std::string& bpath, const Options& opt) {
    const CMatrix a = read_matrix_file(apath);
    const CMatrix b = read_matrix_file(bpath);
    if (a.n() != b.n()) throw InvalidInput("check: A and B must have the same dimension");
    const ContainmentReport rep = containment_check(a, b, opt.tol, opt.grid, opt.angles);
    if (opt.format == "svg") {
        emit(opt, svg_product(sample_product_set(a, b, 48), rep));
    } else if (opt.format == "text") {
        emit(opt, text_containment(rep));
    } else {
        emit(opt, to_json(rep));
    }
    switch (rep.overall) {
        case ContainmentReport::Overall::Contained: return 0;
        case ContainmentReport::Overall::Violated: return kExitNegative;
        default: return kExitInconclusive;
    }
}

int cmd_classify(const std::string& path, const Options& opt) {
    const CMatrix a = read_matrix_file(path);
    const ClassificationReport rep = theorem_hypotheses(a, opt.angles, std::min(opt.tol, 1e-6));
    if (opt.format == "text") {
        std::ostringstream s;
        s << "psd_multiple: " << (rep.is_psd_multiple ? "yes" : "no");
        if (rep.phase) s << " (phase " << *rep.phase << ")";
        s << "\nnormality_residual: " << rep.normality_residual << "\nradii: w=" << rep.radii.w
          << " r=" << rep.radii.r << " norm=" << rep.radii.norm
          << (rep.radii.radialoid ? " (radialoid)" : "") << "\ncorner_hypothesis: "
          << to_string(rep.corner_hypothesis) << "\npolygon_case: " << rep.polygon_case
          << "\nisolated_peak_case: " << rep.isolated_peak_case << "\n";
        emit(opt, s.str());
    } else {
        emit(opt, to_json(rep));
    }
    return rep.is_psd_multiple ? 0 : kExitNegative;
}

int cmd_witness(const std::string& path, const Options& opt) {
    const CMatrix a = read_matrix_file(path);
    FalsifyConfig cfg;
    cfg.m = opt.angles;
    cfg.grid = opt.grid;
    cfg.tol = opt.tol;
    cfg.seed = opt.seed;
    const FalsifyOutcome outcome = falsify(a, cfg);
    if (opt.format == "svg") {
        if (!outcome.certificate) throw InvalidInput("witness: no certificate to draw");
        const WitnessCertificate& c = *outcome.certificate;
        ContainmentReport rep;
        rep.eigen_verdicts.push_back({c.lambda, c.verdict});
        rep.overall = ContainmentReport::Overall::Violated;
        emit(opt, svg_product(sample_product_set(a, c.b, 48), rep, c.lambda));
    } else if (opt.format == "text") {
        std::ostringstream s;
        s << "status: " << to_string(outcome.status) << "\n";
        if (outcome.certificate) {
            const WitnessCertificate& c = *outcome.certificate;
            s << "construction: " << to_string(c.construction) << "\nlambda: " << c.lambda.real()
              << (c.lambda.imag() < 0 ? "-" : "+") << std::abs(c.lambda.imag())
              << "i\nmargin: " << c.verdict.certificate_margin << "\n";
        }
        for (const std::string& n : outcome.notes) s << "note: " << n << "\n";
        emit(opt, s.str());
    } else {
        emit(opt, to_json(outcome));
    }
    switch (outcome.status) {
        case FalsifyOutcome::Status::Found: return 0;
        case FalsifyOutcome::Status::NoWitnessPsdMultiple: return kExitNegative;
        default: return kExitInconclusive;
    }
}

int cmd_repro(const std::string& id, const Options& opt) {
    ReproResult res;
    if (id == "intro-hermitian") {
        res = repro_intro_hermitian();
    } else if (id == "additive") {
        res = repro_additive_perturbation(4.0, 0.01);
        for (const auto& [m, e] : {std::pair{1.0, 1.0}, std::pair{9.0, 0.04}}) {
            const ReproResult extra = repro_additive_perturbation(m, e);
            res.claims.insert(res.claims.end(), extra.claims.begin(), extra.claims.end());
        }
        res.finish();
    } else if (id == "truncation-1-3") {
        res = repro_truncated_example_1_3(32, 100, opt.seed);
    } else if (id == "oplus-1-4") {
        res = repro_example_1_4(360, 1.0);
    } else if (id == "cited-inclusions") {
        res = repro_cited_inclusions(50, opt.seed);
    } else {
        throw InvalidInput("unknown repro id: " + id +
                           " (expected intro-hermitian, additive, truncation-1-3, oplus-1-4, "
                           "cited-inclusions)");
    }
    if (opt.format == "text") {
        std::ostringstream s;
        s << res.example_id << ": " << (res.overall_pass ? "PASS" : "FAIL") << "\n";
        for (const ReproClaim& c : res.claims)
            s << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.description << " (expected "
              << c.expected << ", observed " << c.observed << ")\n";
        emit(opt, s.str());
    } else {
        emit(opt, to_json(res));
    }
    return res.overall_pass ? 0 : kExitNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical ranges, spectra, and products W(A)W(B)"};
    app.require_subcommand(1);

    Options opt;
    std::string apath, bpath, repro_id;

    CLI::App* range = app.add_subcommand("range", "numerical range of a matrix");
    range->add_option("matrix", apath, "matrix JSON file")->required();
    add_common(range, opt, true);

    CLI::App* check = app.add_subcommand("check", "sigma(AB) vs W(A)W(B) containment");
    check->add_option("A", apath, "matrix JSON file")->required();
    check->add_option("B", bpath, "matrix JSON file")->required();
    add_common(check, opt, true);

    CLI::App* classify = app.add_subcommand("classify", "structural conditions for A");
    classify->add_option("matrix", apath, "matrix JSON file")->required();
    add_common(classify, opt, false);

    CLI::App* witness = app.add_subcommand("witness", "rank-one violation certificate");
    witness->add_option("matrix", apath, "matrix JSON file")->required();
    add_common(witness, opt, true);

    CLI::App* repro = app.add_subcommand("repro", "reproduce a documented example");
    repro->add_option("id", repro_id, "example id")->required();
    add_common(repro, opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (range->parsed()) return cmd_range(apath, opt);
        if (check->parsed()) return cmd_check(apath, bpath, opt);
        if (classify->parsed()) return cmd_classify(apath, opt);
        if (witness->parsed()) return cmd_witness(apath, opt);
        if (repro->parsed()) return cmd_repro(repro_id, opt);
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitBadInput;
}
