#include "motifq/io.hpp"

#include "motifq/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace motifq {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return fields;
}

/// Yields (line number, content) for non-blank, non-comment lines.
template <class F>
void for_each_record(std::istream& in, F&& f) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; })) continue;
        f(line_no, line);
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

RegulatoryNetwork parse_network(std::istream& in, const std::string& source, std::string name,
                                std::vector<std::string>* warnings) {
    std::vector<NamedEdge> edges;
    for_each_record(in, [&](std::size_t line_no, const std::string& line) {
        auto f = split_tabs(line);
        if (f.size() != 3) throw ParseError(source, line_no, "expected 3 tab-separated fields, got " + std::to_string(f.size()));
        if (f[0].empty() || f[1].empty()) throw ParseError(source, line_no, "empty node name");
        auto rel = relation_from_code(f[2]);
        if (!rel) throw ParseError(source, line_no, "relation must be A, R or U, got '" + f[2] + "'");
        edges.push_back({f[0], f[1], *rel});
    });
    return RegulatoryNetwork::from_named_edges(std::move(name), edges, {}, warnings);
}

RegulatoryNetwork read_network_file(const std::string& path, std::vector<std::string>* warnings) {
    auto in = open_input(path);
    return parse_network(in, path, stem(path), warnings);
}

void write_network(std::ostream& out, const RegulatoryNetwork& net) {
    for (const auto& e : net.edges()) {
        out << net.node_name(e.src) << '\t' << net.node_name(e.dst) << '\t' << relation_code(e.rel) << '\n';
    }
}

MotifPattern parse_motif(std::istream& in, const std::string& source, std::string name) {
    std::map<std::string, std::uint32_t> ids;
    std::vector<std::string> order;
    auto id_of = [&](const std::string& label) {
        auto [it, inserted] = ids.emplace(label, static_cast<std::uint32_t>(order.size()));
        if (inserted) order.push_back(label);
        return it->second;
    };
    std::vector<MotifEdge> edges;
    for_each_record(in, [&](std::size_t line_no, const std::string& line) {
        auto f = split_tabs(line);
        if (f.size() != 3) throw ParseError(source, line_no, "expected 3 tab-separated fields");
        auto rel = relation_from_code(f[2]);
        if (!rel || *rel == Relation::Unknown) throw ParseError(source, line_no, "motif relation must be A or R");
        if (f[0] == f[1]) throw ParseError(source, line_no, "motif self-loop");
        const auto a = id_of(f[0]);
        const auto b = id_of(f[1]);
        for (const auto& e : edges) {
            if (e.a == a && e.b == b) throw ParseError(source, line_no, "duplicate motif edge");
        }
        edges.push_back({a, b, *rel});
    });
    return canonicalize_motif(MotifPattern(std::move(name), static_cast<std::uint32_t>(order.size()), std::move(edges)));
}

MotifPattern read_motif_file(const std::string& path) {
    auto in = open_input(path);
    return parse_motif(in, path, stem(path));
}

void write_motif(std::ostream& out, const MotifPattern& motif) {
    for (const auto& e : motif.edges()) out << e.a + 1 << '\t' << e.b + 1 << '\t' << relation_code(e.rel) << '\n';
}

MotifPattern resolve_motif(const std::string& name_or_path) {
    if (auto m = builtin_motif(name_or_path)) return *m;
    if (std::filesystem::exists(name_or_path)) return read_motif_file(name_or_path);
    throw Error("unknown motif '" + name_or_path + "' (builtin: cascade, ffl, bifan, biparallel)");
}

TrrustRecord parse_trrust_line(const std::string& line, const std::string& source, std::size_t line_no) {
    auto f = split_tabs(line);
    if (f.size() != 4) throw ParseError(source, line_no, "TRRUST rows need 4 tab-separated fields, got " + std::to_string(f.size()));
    if (f[0].empty() || f[1].empty()) throw ParseError(source, line_no, "empty gene symbol");
    if (f[2] != "Activation" && f[2] != "Repression" && f[2] != "Unknown") {
        throw ParseError(source, line_no, "relation must be Activation, Repression or Unknown, got '" + f[2] + "'");
    }
    TrrustRecord rec{f[0], f[1], f[2], {}};
    std::istringstream ids(f[3]);
    std::string id;
    while (std::getline(ids, id, ';')) {
        if (!id.empty()) rec.pmids.push_back(id);
    }
    return rec;
}

RegulatoryNetwork parse_trrust(std::istream& in, const std::string& source, std::string name,
                               std::vector<std::string>* warnings) {
    std::vector<NamedEdge> edges;
    for_each_record(in, [&](std::size_t line_no, const std::string& line) {
        auto rec = parse_trrust_line(line, source, line_no);
        const Relation rel = rec.relation_raw == "Activation" ? Relation::Activation
                             : rec.relation_raw == "Repression" ? Relation::Repression
                                                                : Relation::Unknown;
        edges.push_back({rec.tf, rec.target, rel});
    });
    if (edges.empty()) throw EmptyNetwork();
    return RegulatoryNetwork::from_named_edges(std::move(name), edges, {}, warnings);
}

RegulatoryNetwork parse_trrust_file(const std::string& path, std::vector<std::string>* warnings) {
    auto in = open_input(path);
    return parse_trrust(in, path, stem(path), warnings);
}

std::set<std::string> parse_gene_list(std::istream& in, const std::string& source, double min_score) {
    std::set<std::string> genes;
    for_each_record(in, [&](std::size_t line_no, const std::string& line) {
        auto f = split_tabs(line);
        if (f.size() > 2 || f[0].empty()) throw ParseError(source, line_no, "expected symbol or symbol<TAB>score");
        if (f.size() == 2) {
            double score = 0.0;
            try {
                std::size_t used = 0;
                score = std::stod(f[1], &used);
                if (used != f[1].size()) throw std::invalid_argument(f[1]);
            } catch (const std::exception&) {
                throw ParseError(source, line_no, "bad score '" + f[1] + "'");
            }
            if (score < min_score) return;
        }
        genes.insert(f[0]);
    });
    return genes;
}

std::set<std::string> read_gene_list(const std::string& path, double min_score) {
    auto in = open_input(path);
    return parse_gene_list(in, path, min_score);
}

RegulatoryNetwork filter_by_gene_list(const RegulatoryNetwork& net, const std::set<std::string>& genes) {
    std::vector<NodeId> keep;
    for (NodeId v = 0; v < net.node_count(); ++v) {
        if (genes.count(net.node_name(v))) keep.push_back(v);
    }
    return net.induced(keep);
}

// --- JSON ----------------------------------------------------------------------

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["solver"] = solver_name(c.solver);
    j["p"] = c.p;
    j["shots"] = c.shots;
    j["restarts"] = c.restarts;
    j["max_evals"] = c.max_evals;
    j["ftol"] = c.ftol;
    j["xtol"] = c.xtol;
    j["penalty"] = c.penalty ? nlohmann::json(*c.penalty) : nlohmann::json(nullptr);
    j["qubit_cap"] = c.qubit_cap;
    j["h_mode"] = h_mode_name(c.h_mode);
    j["wildcard"] = c.wildcard;
    j["seed"] = c.seed;
    j["exact_cap"] = c.exact_cap;
    j["exact_budget_ms"] = c.exact_budget_ms;
    j["loss"] = c.loss == LossMode::Dynamic ? "dynamic" : "static";
    j["term_cap"] = c.term_cap;
    j["threads"] = c.threads;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    auto solver = solver_from_name(j.value("solver", std::string(solver_name(c.solver))));
    if (!solver) throw Error("bad solver in config");
    c.solver = *solver;
    c.p = j.value("p", c.p);
    c.shots = j.value("shots", c.shots);
    c.restarts = j.value("restarts", c.restarts);
    c.max_evals = j.value("max_evals", c.max_evals);
    c.ftol = j.value("ftol", c.ftol);
    c.xtol = j.value("xtol", c.xtol);
    if (j.contains("penalty") && !j["penalty"].is_null()) c.penalty = j["penalty"].get<double>();
    c.qubit_cap = j.value("qubit_cap", c.qubit_cap);
    auto mode = h_mode_from_name(j.value("h_mode", std::string(h_mode_name(c.h_mode))));
    if (!mode) throw Error("bad h_mode in config");
    c.h_mode = *mode;
    c.wildcard = j.value("wildcard", c.wildcard);
    c.seed = j.value("seed", c.seed);
    c.exact_cap = j.value("exact_cap", c.exact_cap);
    c.exact_budget_ms = j.value("exact_budget_ms", c.exact_budget_ms);
    c.loss = j.value("loss", std::string("dynamic")) == "static" ? LossMode::Static : LossMode::Dynamic;
    c.term_cap = j.value("term_cap", c.term_cap);
    c.threads = j.value("threads", c.threads);
    return c;
}

nlohmann::json report_to_json(const SolutionReport& report, const RegulatoryNetwork& net, const InputSpec& inputs,
                              bool include_timings) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "motifq";
    j["version"] = kToolVersion;
    j["inputs"] = {{"network", inputs.network},
                   {"format", inputs.format},
                   {"motif", inputs.motif},
                   {"genes", inputs.genes},
                   {"min_score", inputs.min_score}};
    j["config"] = config_to_json(report.config);
    j["seed"] = report.config.seed;
    j["network"] = {{"name", report.network}, {"nodes", report.network_nodes}, {"edges", report.network_edges}};
    j["motif"] = report.motif;
    j["motif_count"] = report.motif_count;
    j["activation_count"] = report.activation_count;
    j["repression_count"] = report.repression_count;
    j["unknown_count"] = report.unknown_count;
    j["dropped_edges"] = report.dropped_edges;

    auto embs = nlohmann::json::array();
    for (const auto& emb : report.embeddings.embeddings) {
        auto edges = nlohmann::json::array();
        for (EdgeId e : emb.edge_ids) {
            const auto& edge = net.edge(e);
            edges.push_back({net.node_name(edge.src), net.node_name(edge.dst), std::string(1, relation_code(edge.rel))});
        }
        auto mapping = nlohmann::json::array();
        for (NodeId v : emb.mapping) mapping.push_back(net.node_name(v));
        embs.push_back({{"mapping", mapping}, {"edges", edges}});
    }
    j["embeddings"] = embs;

    auto parts = nlohmann::json::array();
    for (const auto& p : report.parts) {
        nlohmann::json pj{{"index", p.index},
                          {"nodes", p.nodes},
                          {"edges", p.edges},
                          {"candidates", p.candidates},
                          {"motif_count", p.motif_count},
                          {"solver", p.solver},
                          {"fallback", p.fallback}};
        if (!p.note.empty()) pj["note"] = p.note;
        if (p.expectation) pj["expectation"] = *p.expectation;
        if (p.repaired) pj["repaired"] = *p.repaired;
        if (p.f_value) pj["f_value"] = *p.f_value;
        if (p.proven_optimal) pj["proven_optimal"] = *p.proven_optimal;
        parts.push_back(std::move(pj));
    }
    j["parts"] = parts;

    if (include_timings) {
        auto ms = [](std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); };
        j["timings_ms"] = {{"enumeration", ms(report.timings.enumeration)},
                           {"compile", ms(report.timings.compile)},
                           {"optimize", ms(report.timings.optimize)},
                           {"sample", ms(report.timings.sample)},
                           {"decode", ms(report.timings.decode)}};
    }
    return j;
}

nlohmann::json zscore_to_json(const ZScoreReport& z) {
    return {{"observed", z.observed},
            {"null_mean", z.null_mean},
            {"null_std", z.null_std},
            {"z", z.z},
            {"replicates", z.replicates},
            {"classification", representation_name(z.classification)},
            {"degenerate", z.degenerate},
            {"seed", z.seed},
            {"null_model", null_model_name(z.model)},
            {"null_counts", z.null_counts}};
}

std::string csv_header() { return "instance,motif,solver,motif_count,AC,RC,UC,elapsed_ms,seed"; }

std::string csv_row(const std::string& instance, const SolutionReport& report, double elapsed_ms) {
    std::ostringstream out;
    out << instance << ',' << report.motif << ',' << solver_name(report.config.solver) << ',' << report.motif_count
        << ',' << report.activation_count << ',' << report.repression_count << ',' << report.unknown_count << ','
        << format_double(elapsed_ms) << ',' << report.config.seed;
    return out.str();
}

}  // namespace motifq
