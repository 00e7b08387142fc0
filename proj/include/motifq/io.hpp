#pragma once

#include "motifq/graph.hpp"
#include "motifq/pipeline.hpp"
#include "motifq/stats.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace motifq {

// --- Edge-list text format ---------------------------------------------------
// One edge per line: src<TAB>dst<TAB>{A,R,U}. Lines starting with '#' and
// blank lines are ignored. Motif files use the same layout without U.

RegulatoryNetwork parse_network(std::istream& in, const std::string& source, std::string name,
                                std::vector<std::string>* warnings = nullptr);
RegulatoryNetwork read_network_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Canonical form: edges in index order, no comments. Isolated nodes are not
/// representable.
void write_network(std::ostream& out, const RegulatoryNetwork& net);

/// Node labels are arbitrary tokens; the result is canonicalized.
MotifPattern parse_motif(std::istream& in, const std::string& source, std::string name);
MotifPattern read_motif_file(const std::string& path);
/// 1-based canonical labels.
void write_motif(std::ostream& out, const MotifPattern& motif);

/// Builtin name (cascade, ffl, bifan, biparallel) or path to a motif file.
MotifPattern resolve_motif(const std::string& name_or_path);

// --- TRRUST ------------------------------------------------------------------

struct TrrustRecord {
    std::string tf;
    std::string target;
    std::string relation_raw;
    std::vector<std::string> pmids;
};

/// TF<TAB>target<TAB>{Activation,Repression,Unknown}<TAB>pmid;pmid...
TrrustRecord parse_trrust_line(const std::string& line, const std::string& source, std::size_t line_no);
RegulatoryNetwork parse_trrust(std::istream& in, const std::string& source, std::string name,
                               std::vector<std::string>* warnings = nullptr);
RegulatoryNetwork parse_trrust_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// --- Gene lists --------------------------------------------------------------

/// One symbol per line, optionally `symbol<TAB>score`; rows scoring below
/// `min_score` are skipped.
std::set<std::string> parse_gene_list(std::istream& in, const std::string& source, double min_score = 0.0);
std::set<std::string> read_gene_list(const std::string& path, double min_score = 0.0);

/// Induced subnetwork on the nodes named in `genes`.
RegulatoryNetwork filter_by_gene_list(const RegulatoryNetwork& net, const std::set<std::string>& genes);

// --- Reports -----------------------------------------------------------------

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Where a run's inputs came from, so the report can be replayed.
struct InputSpec {
    std::string network;
    std::string format = "tsv";  // tsv | trrust
    std::string motif;
    std::string genes;
    double min_score = 0.0;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const SolutionReport& report, const RegulatoryNetwork& net, const InputSpec& inputs,
                              bool include_timings);
nlohmann::json zscore_to_json(const ZScoreReport& z);

/// Fixed CSV summary: instance,motif,solver,motif_count,AC,RC,UC,elapsed_ms,seed
std::string csv_header();
std::string csv_row(const std::string& instance, const SolutionReport& report, double elapsed_ms);

}  // namespace motifq
