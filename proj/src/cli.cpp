#include "pnembed/cli.hpp"

#include "pnembed/petri.hpp"
#include "pnembed/reduction.hpp"
#include "pnembed/regions.hpp"
#include "pnembed/splitting.hpp"
#include "pnembed/text_format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pnembed::cli {

namespace {

// Input problem attributable to a file (or to the arguments when `file` is empty).
struct InputError {
    std::string file;
    std::size_t line = 0;
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError{path, 0, "cannot open file"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw InputError{path, 0, "cannot write file"};
}

template <typename Parse>
auto load(const std::string& path, Parse parse)
{
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError{path, e.line(), e.detail()};
    }
}

Lts load_lts(const std::string& path)
{
    Lts lts = load(path, [](const std::string& text) { return parse_lts(text); });
    const auto violations = validate(lts);
    if (!violations.empty())
        throw InputError{path, 0, violations.front().describe()};
    return lts;
}

PetriNet load_net(const std::string& path)
{
    return load(path, [](const std::string& text) { return parse_net(text); });
}

void emit(std::ostream& out, const std::string& path, const std::string& text)
{
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

SubsetSumInstance instance_from(std::uint64_t b, const std::vector<std::uint64_t>& c, const std::string& file)
{
    if (!file.empty())
        return load(file, [](const std::string& text) { return parse_subset_sum(text); });
    SubsetSumInstance inst{b, c};
    try {
        inst.check();
    } catch (const std::invalid_argument& e) {
        throw InputError{"", 0, e.what()};
    }
    return inst;
}

std::string join_indices(const IndexSet& indices)
{
    std::string s;
    for (std::size_t i = 0; i < indices.size(); ++i)
        s += (i ? " " : "") + std::to_string(indices[i]);
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Petri-net embedding, synthesis and label splitting for labelled transition systems", "pnembed"};
    app.require_subcommand(1);

    std::string lts_file;
    std::string net_file;
    std::string output;
    std::size_t bound = default_state_bound;
    std::size_t max_labels = 0;
    bool do_optimize = false;
    std::uint64_t node_budget = 0;
    std::uint64_t b = 0;
    std::vector<std::uint64_t> c;
    std::string instance_file;

    auto* check = app.add_subcommand("check", "Decide whether an LTS embeds into some Petri net reachability graph");
    check->add_option("lts", lts_file, "LTS file")->required();

    auto* synth = app.add_subcommand("synth", "Synthesize a Petri net whose reachability graph embeds the LTS");
    synth->add_option("lts", lts_file, "LTS file")->required();
    synth->add_option("-o,--output", output, "Net file to write (default: stdout)");

    auto* rg = app.add_subcommand("rg", "Write the reachability graph of a net in LTS format");
    rg->add_option("net", net_file, "Net file")->required();
    rg->add_option("--bound", bound, "Maximum number of states")->check(CLI::PositiveNumber);
    rg->add_option("-o,--output", output, "LTS file to write (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Check that an LTS embeds into the reachability graph of a net");
    verify->add_option("lts", lts_file, "LTS file")->required();
    verify->add_option("net", net_file, "Net file")->required();

    auto* split = app.add_subcommand("split", "Search a label splitting that makes the LTS embeddable");
    split->add_option("lts", lts_file, "LTS file")->required();
    auto* q_opt = split->add_option("--max-labels", max_labels, "Label budget q")->check(CLI::PositiveNumber);
    auto* opt_flag = split->add_flag("--optimize", do_optimize, "Find the minimum number of labels");
    q_opt->excludes(opt_flag);
    auto* budget_opt = split->add_option("--node-budget", node_budget, "Abort after this many search nodes");

    auto* reduce = app.add_subcommand("reduce", "Build the gadget LTS for a subset-sum instance");
    auto* oracle = app.add_subcommand("oracle", "Solve a subset-sum instance by enumeration");
    for (auto* sub : {reduce, oracle}) {
        auto* b_opt = sub->add_option("--b", b, "Target sum")->check(CLI::PositiveNumber);
        auto* c_opt = sub->add_option("--c", c, "Comma-separated positive numbers")->delimiter(',');
        auto* f_opt = sub->add_option("--instance", instance_file, "Subset-sum file");
        f_opt->excludes(b_opt)->excludes(c_opt);
        b_opt->needs(c_opt);
        c_opt->needs(b_opt);
    }
    reduce->add_option("-o,--output", output, "LTS file to write");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (split->parsed() && !do_optimize && q_opt->count() == 0)
            throw CLI::ValidationError("split", "one of --max-labels or --optimize is required");
        for (auto* sub : {reduce, oracle})
            if (sub->parsed() && instance_file.empty() && c.empty())
                throw CLI::ValidationError(sub->get_name(), "--b/--c or --instance is required");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return input_error;
    }

    try {
        if (check->parsed()) {
            const Lts lts = load_lts(lts_file);
            const auto report = is_embeddable(lts);
            if (report.embeddable) {
                out << "embeddable\n";
                return affirmative;
            }
            out << "not-embeddable " << lts.states()[report.witness->first] << ' '
                << lts.states()[report.witness->second] << '\n';
            return negative;
        }

        if (synth->parsed()) {
            const Lts lts = load_lts(lts_file);
            try {
                const PetriNet net = synthesize(lts);
                emit(out, output, format_net(net));
                return affirmative;
            } catch (const NotEmbeddable& e) {
                out << "not-embeddable " << e.first() << ' ' << e.second() << '\n';
                return negative;
            }
        }

        if (rg->parsed()) {
            const PetriNet net = load_net(net_file);
            auto result = reachability_graph(net, bound);
            if (std::holds_alternative<BoundExceeded>(result)) {
                out << "bound-exceeded\n";
                return negative;
            }
            emit(out, output, format_lts(std::get<Lts>(result)));
            return affirmative;
        }

        if (verify->parsed()) {
            const Lts lts = load_lts(lts_file);
            const PetriNet net = load_net(net_file);
            EmbeddingCheck result;
            try {
                result = verify_embedding(lts, net);
            } catch (const std::invalid_argument& e) {
                throw InputError{net_file, 0, e.what()};
            }
            if (result.embeds) {
                out << "embeds\n";
                return affirmative;
            }
            out << "does-not-embed " << result.reason << '\n';
            return negative;
        }

        if (split->parsed()) {
            const Lts lts = load_lts(lts_file);
            SearchOptions options;
            if (budget_opt->count() > 0)
                options.node_budget = node_budget;

            SplitOutcome::Status status;
            std::optional<LabelSplitting> witness;
            if (do_optimize) {
                Optimum best = optimize(lts, options);
                status = best.status;
                witness = std::move(best.splitting);
            } else {
                SplitOutcome outcome = decide(lts, max_labels, options);
                status = outcome.status;
                witness = std::move(outcome.splitting);
            }
            switch (status) {
            case SplitOutcome::Status::Found:
                out << format_splitting(lts, *witness);
                return affirmative;
            case SplitOutcome::Status::NotFound:
                out << "not-found\n";
                return negative;
            case SplitOutcome::Status::BudgetExhausted:
                out << "budget-exhausted\n";
                return budget_exhausted;
            }
        }

        if (reduce->parsed()) {
            const SubsetSumInstance inst = instance_from(b, c, instance_file);
            const ReductionParams p = params(inst);
            if (!output.empty())
                write_file(output, format_lts(build_lts(inst)));
            out << "k=" << p.k << " q=" << p.q << '\n';
            return affirmative;
        }

        if (oracle->parsed()) {
            const SubsetSumInstance inst = instance_from(b, c, instance_file);
            if (inst.n() > 30)
                throw InputError{"", 0, "oracle: at most 30 numbers supported"};
            if (auto solution = subset_sum_brute(inst)) {
                out << join_indices(*solution) << '\n';
                return affirmative;
            }
            out << "none\n";
            return negative;
        }
    } catch (const InputError& e) {
        if (!e.file.empty())
            err << e.file << ':';
        if (e.line > 0)
            err << e.line << ':';
        err << (e.file.empty() && e.line == 0 ? "" : " ") << "error: " << e.message << '\n';
        return input_error;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

} // namespace pnembed::cli
