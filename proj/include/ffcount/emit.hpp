// Run configuration and deterministic CSV/JSON emission.
#pragma once

#include "ffcount/asymptotics.hpp"
#include "ffcount/bigint.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ffc {

using Json = nlohmann::ordered_json;

// Every field a run can depend on; embedded verbatim in all outputs so a
// result file identifies its own provenance.
struct RunConfig {
    std::uint64_t q = 2;
    unsigned n_max = 0;
    unsigned trunc_degree = 40;
    double oracle_guard = 1e7;
    unsigned quad_nodes = 0;  // 0 = auto
    double epsilon = 0.5;
    double B = 2.0;
    std::string xi = "loglog";
    double eta = 0.0;  // 0 = auto (e-1) q
    double delta = 0.6;
    int threads = 0;  // 0 = FFCOUNT_THREADS or 1
    bool strict = false;

    Json to_json() const;
    // Unknown keys are rejected; partial objects override defaults only for
    // the keys present.
    void merge_json(const Json& j);
};

int resolve_threads(int requested);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// CSV: "# config <json>" header line, then "n,k,exact,estimate,ratio,regime"
// with exact as a decimal string. Deterministic bytes for a given config.
std::string comparison_csv(const ComparisonReport& rep, const RunConfig& cfg);

Json comparison_json(const ComparisonReport& rep, const RunConfig& cfg,
                     const std::vector<Check>& checks);

// Counts table: "n,k,count" rows, counts as decimal strings.
std::string table_csv(const BivariateSeries& s, unsigned k_max,
                      const RunConfig& cfg);
Json table_json(const BivariateSeries& s, unsigned k_max, const RunConfig& cfg);

// Round-trip helpers for the emit tests.
struct CsvDocument {
    Json config;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvDocument parse_csv(const std::string& text);

std::string format_double(double v);

} // namespace ffc
