#include "motifq/cli.hpp"

#include "motifq/errors.hpp"
#include "motifq/io.hpp"
#include "motifq/parallel.hpp"
#include "motifq/pipeline.hpp"
#include "motifq/stats.hpp"
#include "motifq/synthgen.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace motifq {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NetworkArgs {
    std::string net;
    std::string trrust;
    std::string genes;
    double min_score = 0.0;
};

/// Flag-level view of RunConfig; enum-valued knobs are kept as strings
/// until validation.
struct RunArgs {
    RunConfig config;
    std::string solver = "qaoa";
    std::string h_mode = "orbit";
    std::string loss = "dynamic";
    double penalty = 0.0;
    CLI::Option* penalty_opt = nullptr;

    RunConfig resolve() const {
        RunConfig c = config;
        auto s = solver_from_name(solver);
        if (!s) throw UsageError("--solver must be qaoa, baseline or exact");
        c.solver = *s;
        auto m = h_mode_from_name(h_mode);
        if (!m) throw UsageError("--h-mode must be anchored or orbit");
        c.h_mode = *m;
        if (loss != "dynamic" && loss != "static") throw UsageError("--loss must be dynamic or static");
        c.loss = loss == "static" ? LossMode::Static : LossMode::Dynamic;
        if (penalty_opt && penalty_opt->count() > 0) c.penalty = penalty;
        return c;
    }
};

std::uint64_t default_seed() {
    const char* env = std::getenv("MOTIFQ_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError(std::string("MOTIFQ_SEED is not an unsigned integer: ") + env);
    return v;
}

void add_network_options(CLI::App* app, NetworkArgs& a) {
    app->add_option("--net", a.net, "Edge-list network (src<TAB>dst<TAB>A|R|U)");
    app->add_option("--trrust", a.trrust, "TRRUST 4-column file");
    app->add_option("--genes", a.genes, "Gene list restricting the network");
    app->add_option("--min-score", a.min_score, "Minimum gene score when the list has scores");
}

void add_run_options(CLI::App* app, RunArgs& a) {
    auto& c = a.config;
    app->add_option("--solver", a.solver, "qaoa | baseline | exact")->capture_default_str();
    app->add_option("--p", c.p, "QAOA depth")->capture_default_str();
    app->add_option("--shots", c.shots, "Measurement shots")->capture_default_str();
    app->add_option("--restarts", c.restarts, "Optimizer restarts")->capture_default_str();
    app->add_option("--max-evals", c.max_evals, "Evaluations per restart")->capture_default_str();
    a.penalty_opt = app->add_option("--penalty", a.penalty, "Penalty constant A (default |E|+1)");
    app->add_option("--qubit-cap", c.qubit_cap, "Largest simulated part")->capture_default_str();
    app->add_option("--h-mode", a.h_mode, "anchored | orbit")->capture_default_str();
    app->add_flag("--wildcard", c.wildcard, "Let U edges match either sign");
    app->add_option("--seed", c.seed, "Random seed (default $MOTIFQ_SEED or 0)");
    app->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
    app->add_option("--exact-cap", c.exact_cap, "Largest candidate set for the exact solver")->capture_default_str();
    app->add_option("--exact-budget-ms", c.exact_budget_ms, "Exact solver time budget")->capture_default_str();
    app->add_option("--loss", a.loss, "Greedy loss: dynamic | static")->capture_default_str();
    app->add_option("--term-cap", c.term_cap, "Largest objective polynomial")->capture_default_str();
}

RegulatoryNetwork load_network(const InputSpec& in, std::ostream& err) {
    std::vector<std::string> warnings;
    RegulatoryNetwork net = in.format == "trrust" ? parse_trrust_file(in.network, &warnings)
                                                  : read_network_file(in.network, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    if (!in.genes.empty()) {
        net = filter_by_gene_list(net, read_gene_list(in.genes, in.min_score));
    }
    return net;
}

InputSpec input_spec(const NetworkArgs& a, const std::string& motif) {
    if (a.net.empty() == a.trrust.empty()) throw UsageError("give exactly one of --net or --trrust");
    InputSpec in;
    in.network = a.net.empty() ? a.trrust : a.net;
    in.format = a.net.empty() ? "trrust" : "tsv";
    in.motif = motif;
    in.genes = a.genes;
    in.min_score = a.min_score;
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    return f;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        auto f = open_output(path);
        f << text;
    }
}

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// --- subcommands ---------------------------------------------------------------

struct FindArgs {
    NetworkArgs net;
    RunArgs run;
    std::string motif = "ffl";
    std::string out;
    std::string csv;
    std::string replay;
    bool timings = false;
};

int run_find(const FindArgs& a, std::ostream& out, std::ostream& err) {
    InputSpec in;
    RunConfig config;
    if (!a.replay.empty()) {
        std::ifstream f(a.replay);
        if (!f) throw Error("cannot open " + a.replay);
        const auto j = nlohmann::json::parse(f);
        if (j.value("schema_version", 0) != kSchemaVersion) throw Error("unsupported report schema in " + a.replay);
        const auto& ji = j.at("inputs");
        in.network = ji.at("network").get<std::string>();
        in.format = ji.at("format").get<std::string>();
        in.motif = ji.at("motif").get<std::string>();
        in.genes = ji.at("genes").get<std::string>();
        in.min_score = ji.at("min_score").get<double>();
        config = config_from_json(j.at("config"));
    } else {
        in = input_spec(a.net, a.motif);
        config = a.run.resolve();
    }

    const auto net = load_network(in, err);
    const auto motif = resolve_motif(in.motif);
    const auto start = std::chrono::steady_clock::now();
    const auto report = run_identification(net, motif, config);
    const double elapsed = ms_since(start);

    emit(a.out, report_to_json(report, net, in, a.timings).dump(2) + "\n", out);
    if (!a.csv.empty()) {
        emit(a.csv, csv_header() + "\n" + csv_row(net.name(), report, elapsed) + "\n", out);
    }
    return kExitOk;
}

struct GenerateArgs {
    SynthSpec spec;
    std::string motif = "ffl";
    std::string convention = "total";
    std::string manifest;
    std::string out_dir = ".";
    CLI::Option* seed_opt = nullptr;
};

int run_generate(GenerateArgs a, std::ostream& out) {
    std::vector<SynthSpec> specs;
    if (!a.manifest.empty()) {
        std::ifstream f(a.manifest);
        if (!f) throw Error("cannot open " + a.manifest);
        specs = parse_manifest(f, a.manifest);
    } else {
        auto m = builtin_motif(a.motif);
        if (!m) throw UsageError("unknown motif " + a.motif);
        a.spec.motif = *m;
        if (a.convention != "total" && a.convention != "out") throw UsageError("--convention must be total or out");
        a.spec.convention = a.convention == "out" ? DegreeConvention::OutDegree : DegreeConvention::Total;
        specs.push_back(a.spec);
    }
    std::filesystem::create_directories(a.out_dir);
    for (const auto& spec : specs) {
        const auto net = generate(spec);
        const auto base = std::filesystem::path(a.out_dir) / spec.instance_name();
        {
            auto f = open_output(base.string() + ".tsv");
            write_network(f, net);
        }
        {
            auto f = open_output(base.string() + ".plants");
            for (const auto& copy : planted_copies(spec)) {
                for (std::size_t i = 0; i < copy.size(); ++i) f << (i ? "\t" : "") << copy[i];
                f << '\n';
            }
        }
        out << base.string() << ".tsv\t" << net.node_count() << '\t' << net.edge_count() << '\n';
    }
    return kExitOk;
}

struct ZScoreArgs {
    NetworkArgs net;
    RunArgs run;
    std::string motif = "ffl";
    std::size_t replicates = 100;
    std::string null_model = "degree";
    std::string out;
    std::string csv;
};

int run_zscore(const ZScoreArgs& a, std::ostream& out, std::ostream& err) {
    const auto in = input_spec(a.net, a.motif);
    const auto config = a.run.resolve();
    if (a.null_model != "degree" && a.null_model != "uniform") throw UsageError("--null must be degree or uniform");
    const auto model = a.null_model == "uniform" ? NullModel::Uniform : NullModel::DegreePreserving;
    const auto net = load_network(in, err);
    const auto motif = resolve_motif(in.motif);
    const auto z = zscore(net, motif, a.replicates, config, config.seed, model);

    auto j = zscore_to_json(z);
    j["schema_version"] = kSchemaVersion;
    j["network"] = net.name();
    j["motif"] = motif.name();
    j["config"] = config_to_json(config);
    emit(a.out, j.dump(2) + "\n", out);
    if (!a.csv.empty()) {
        std::ostringstream row;
        row << "instance,motif,solver,observed,null_mean,null_std,z,classification,replicates,null_model,seed\n"
            << net.name() << ',' << motif.name() << ',' << solver_name(config.solver) << ',' << z.observed << ','
            << z.null_mean << ',' << z.null_std << ',' << z.z << ',' << representation_name(z.classification) << ','
            << z.replicates << ',' << null_model_name(model) << ',' << z.seed << '\n';
        emit(a.csv, row.str(), out);
    }
    return kExitOk;
}

struct CompareArgs {
    RunArgs run;
    std::string manifest;
    std::vector<std::string> solvers{"qaoa", "baseline", "exact"};
    std::size_t jobs = 1;
    std::string csv;
};

int run_compare(const CompareArgs& a, std::ostream& out) {
    std::ifstream f(a.manifest);
    if (!f) throw Error("cannot open " + a.manifest);
    const auto specs = parse_manifest(f, a.manifest);
    const auto base = a.run.resolve();
    std::vector<SolverKind> solvers;
    for (const auto& s : a.solvers) {
        auto k = solver_from_name(s);
        if (!k) throw UsageError("unknown solver " + s);
        solvers.push_back(*k);
    }

    std::vector<std::string> rows(specs.size());
    parallel_for(specs.size(), a.jobs, [&](std::size_t i) {
        const auto& spec = specs[i];
        const auto net = generate(spec);
        std::ostringstream block;
        for (auto solver : solvers) {
            RunConfig config = base;
            config.solver = solver;
            config.seed = spec.seed;
            config.threads = 1;
            const auto start = std::chrono::steady_clock::now();
            const auto report = run_identification(net, spec.motif, config);
            block << csv_row(spec.instance_name(), report, ms_since(start)) << ',' << spec.n << ',' << spec.d << ','
                  << spec.r_act << '\n';
        }
        rows[i] = block.str();
    });

    std::string text = csv_header() + ",n,d,r_act\n";
    for (const auto& r : rows) text += r;
    emit(a.csv, text, out);
    return kExitOk;
}

std::string describe_motif(const MotifPattern& m) {
    std::ostringstream s;
    s << m.name() << '\t' << m.size() << " nodes\t";
    for (std::size_t i = 0; i < m.edges().size(); ++i) {
        const auto& e = m.edges()[i];
        s << (i ? " " : "") << e.a + 1 << '>' << e.b + 1 << ':' << relation_code(e.rel);
    }
    return s.str();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regulatory network motif identification", "motifq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::uint64_t seed = 0;
    try {
        seed = default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    FindArgs find;
    find.run.config.seed = seed;
    auto* find_cmd = app.add_subcommand("find", "Find a maximum set of node-disjoint motif copies");
    add_network_options(find_cmd, find.net);
    add_run_options(find_cmd, find.run);
    find_cmd->add_option("--motif", find.motif, "Builtin motif name or motif file")->capture_default_str();
    find_cmd->add_option("--out", find.out, "Report JSON path (default stdout)");
    find_cmd->add_option("--csv", find.csv, "CSV summary path");
    find_cmd->add_option("--replay", find.replay, "Re-run the inputs and config recorded in a report");
    find_cmd->add_flag("--timings", find.timings, "Include stage timings in the report");

    GenerateArgs gen;
    gen.spec.seed = seed;
    auto* gen_cmd = app.add_subcommand("generate", "Write synthetic networks with planted motifs");
    gen_cmd->add_option("--n", gen.spec.n, "Node count")->capture_default_str();
    gen_cmd->add_option("--d", gen.spec.d, "Mean degree")->capture_default_str();
    gen_cmd->add_option("--r", gen.spec.r_act, "Activation ratio of filler edges")->capture_default_str();
    gen_cmd->add_option("--motif", gen.motif, "Planted motif")->capture_default_str();
    gen_cmd->add_option("--plants", gen.spec.plant_count, "Planted copies")->capture_default_str();
    gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
    gen_cmd->add_option("--convention", gen.convention, "Degree convention: total | out")->capture_default_str();
    gen_cmd->add_option("--name", gen.spec.name, "Instance name");
    gen_cmd->add_option("--manifest", gen.manifest, "Manifest with one spec per line");
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

    ZScoreArgs zs;
    zs.run.config.seed = seed;
    zs.run.solver = "exact";
    auto* zs_cmd = app.add_subcommand("zscore", "Motif-count significance against a randomized null");
    add_network_options(zs_cmd, zs.net);
    add_run_options(zs_cmd, zs.run);
    zs_cmd->add_option("--motif", zs.motif, "Builtin motif name or motif file")->capture_default_str();
    zs_cmd->add_option("--replicates", zs.replicates, "Null networks")->capture_default_str();
    zs_cmd->add_option("--null", zs.null_model, "degree | uniform")->capture_default_str();
    zs_cmd->add_option("--out", zs.out, "JSON path (default stdout)");
    zs_cmd->add_option("--csv", zs.csv, "CSV summary path");

    CompareArgs cmp;
    cmp.run.config.seed = seed;
    auto* cmp_cmd = app.add_subcommand("compare", "Run several solvers over a manifest of synthetic instances");
    add_run_options(cmp_cmd, cmp.run);
    cmp_cmd->add_option("--manifest", cmp.manifest, "Manifest file")->required();
    cmp_cmd->add_option("--solvers", cmp.solvers, "Solvers to run")->delimiter(',')->capture_default_str();
    cmp_cmd->add_option("--jobs", cmp.jobs, "Instances solved concurrently")->capture_default_str();
    cmp_cmd->add_option("--csv", cmp.csv, "CSV path (default stdout)");

    auto* motifs_cmd = app.add_subcommand("motifs", "List or dump builtin motifs");
    motifs_cmd->require_subcommand(1);
    motifs_cmd->add_subcommand("list", "List builtin motifs");
    std::string dump_name;
    auto* dump_cmd = motifs_cmd->add_subcommand("dump", "Print a motif in file format");
    dump_cmd->add_option("name", dump_name, "Motif name")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (find_cmd->parsed()) return run_find(find, out, err);
        if (gen_cmd->parsed()) return run_generate(gen, out);
        if (zs_cmd->parsed()) return run_zscore(zs, out, err);
        if (cmp_cmd->parsed()) return run_compare(cmp, out);
        if (dump_cmd->parsed()) {
            write_motif(out, resolve_motif(dump_name));
            return kExitOk;
        }
        for (const auto& m : builtin_motifs()) out << describe_motif(m) << '\n';
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace motifq
