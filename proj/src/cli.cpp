#include <symchain/cli.hpp>
#include <symchain/report.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

namespace symchain::cli {

namespace {

struct RunOptions {
    std::string input;
    std::size_t max_level = 12;
    bool no_truncation = false;
    std::string truncate = "first";
    std::string format = "text";
    std::uint64_t seed = 0x5eed;

    std::string builder;
    std::size_t sites = 3;
    std::string spacing = "1";
    std::string scheme = "central";
    std::string out_path;
    bool analyze = false;

    ChainOptions chain() const {
        ChainOptions o;
        o.max_level = max_level;
        o.allow_truncation = !no_truncation;
        o.truncation = truncate == "iterative" ? TruncationMode::iterative : TruncationMode::first;
        o.seed = seed;
        return o;
    }
};

void add_chain_flags(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--max-level", o.max_level, "Highest constraint level to generate")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-truncation", o.no_truncation, "Never truncate the extended matrix");
    cmd->add_option("--truncate", o.truncate, "Truncation rule")->check(CLI::IsMember({"first", "iterative"}));
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "tree"}));
    cmd->add_option("--seed", o.seed, "Seed for generic evaluation points");
}

void emit(std::ostream& out, const RunOptions& o, const ChainReport& r, const Comparison* cmp,
          const LatticeContext* lattice) {
    if (o.format == "tree") {
        out << report_tree(r, cmp, lattice).dump(2) << '\n';
    } else {
        out << report_text(r, cmp, lattice);
    }
}

Comparison compare_with_oracle(const FirstOrderModel& m, const ChainReport& r) {
    OracleResult oracle = consistency_algorithm(m);
    SpanVerdict verdict = compare_spans(r, oracle);
    return Comparison{std::move(oracle), std::move(verdict)};
}

int termination_status(const ChainReport& r) {
    switch (r.termination) {
        case Termination::nonsingular: return kOk;
        case Termination::exhausted: return kExhausted;
        case Termination::max_level_reached: return kMaxLevel;
    }
    return kInputError;
}

int cmd_analyze(const RunOptions& o, std::ostream& out, std::ostream& err) {
    const FirstOrderModel m = load_model(o.input);
    ChainReport r = run_chain(m, o.chain());
    if (r.termination != Termination::exhausted) {
        emit(out, o, r, nullptr, nullptr);
        return termination_status(r);
    }
    // No completeness guarantee for the truncation rule: always cross-check.
    try {
        Comparison cmp = compare_with_oracle(m, r);
        if (!cmp.verdict.equal) {
            r.warnings.push_back("constraint span differs from the Dirac-Bergmann oracle");
            err << "warning: chain and oracle spans differ\n";
        }
        emit(out, o, r, &cmp, nullptr);
    } catch (const std::exception& e) {
        r.warnings.push_back(std::string("oracle comparison unavailable: ") + e.what());
        emit(out, o, r, nullptr, nullptr);
    }
    return termination_status(r);
}

int run_compare(const FirstOrderModel& m, const RunOptions& o, std::ostream& out, const LatticeContext* lattice) {
    ChainReport r = run_chain(m, o.chain());
    Comparison cmp = compare_with_oracle(m, r);
    if (!cmp.verdict.equal) r.warnings.push_back("constraint span differs from the Dirac-Bergmann oracle");
    emit(out, o, r, &cmp, lattice);
    return cmp.verdict.equal ? kOk : kSpansDiffer;
}

int cmd_compare(const RunOptions& o, std::ostream& out) { return run_compare(load_model(o.input), o, out, nullptr); }

int cmd_lattice(const RunOptions& o, std::ostream& out) {
    if (o.builder != "schwinger") throw std::invalid_argument("unknown lattice builder '" + o.builder + "'");
    LatticeSpec spec{o.sites, parse_rational(o.spacing), parse_scheme(o.scheme)};
    spec.validate();
    const FirstOrderModel m = build_schwinger(spec);
    if (!o.out_path.empty()) save_model(m, o.out_path);
    if (o.analyze) {
        LatticeContext ctx{FieldSet::schwinger(spec.sites), difference_matrix(spec)};
        return run_compare(m, o, out, &ctx);
    }
    if (o.out_path.empty()) {
        out << format_model(m);
    } else {
        out << "wrote " << o.out_path << " (" << m.phase.dimension() << " coordinates, " << m.primaries.size()
            << " primary constraints)\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Constraint chains of first-order Lagrangians by the symplectic algorithm"};
    app.require_subcommand(1);
    RunOptions o;

    auto* analyze = app.add_subcommand("analyze", "Run the symplectic constraint chain on a model file");
    analyze->add_option("model", o.input, "Model file")->required();
    add_chain_flags(analyze, o);

    auto* compare = app.add_subcommand("compare", "Run the chain and the Dirac-Bergmann oracle and compare spans");
    compare->add_option("model", o.input, "Model file")->required();
    add_chain_flags(compare, o);

    auto* lattice = app.add_subcommand("lattice", "Write a lattice-discretized field model");
    lattice->add_option("builder", o.builder, "Model builder (schwinger)")->required();
    lattice->add_option("--sites", o.sites, "Number of lattice sites");
    lattice->add_option("--spacing", o.spacing, "Lattice spacing, a rational");
    lattice->add_option("--scheme", o.scheme, "Difference scheme")->check(CLI::IsMember({"central", "forward"}));
    lattice->add_option("--out", o.out_path, "Output model file");
    lattice->add_flag("--analyze", o.analyze, "Run compare on the generated model");
    add_chain_flags(lattice, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(o, out, err);
        if (compare->parsed()) return cmd_compare(o, out);
        return cmd_lattice(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace symchain::cli
