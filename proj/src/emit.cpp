#include "ffcount/emit.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json RunConfig::to_json() const {
    Json j;
    j["q"] = q;
    j["n_max"] = n_max;
    j["trunc_degree"] = trunc_degree;
    j["oracle_guard"] = oracle_guard;
    j["quad_nodes"] = quad_nodes;
    j["epsilon"] = epsilon;
    j["B"] = B;
    j["xi"] = xi;
    j["eta"] = eta;
    j["delta"] = delta;
    j["threads"] = threads;
    j["strict"] = strict;
    return j;
}

void RunConfig::merge_json(const Json& j) {
    if (!j.is_object()) throw config_error("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "q") q = val.get<std::uint64_t>();
            else if (key == "n_max") n_max = val.get<unsigned>();
            else if (key == "trunc_degree") trunc_degree = val.get<unsigned>();
            else if (key == "oracle_guard") oracle_guard = val.get<double>();
            else if (key == "quad_nodes") quad_nodes = val.get<unsigned>();
            else if (key == "epsilon") epsilon = val.get<double>();
            else if (key == "B") B = val.get<double>();
            else if (key == "xi") xi = val.get<std::string>();
            else if (key == "eta") eta = val.get<double>();
            else if (key == "delta") delta = val.get<double>();
            else if (key == "threads") threads = val.get<int>();
            else if (key == "strict") strict = val.get<bool>();
            else throw config_error("unknown config key \"" + key + "\"");
        } catch (const Json::exception& e) {
            throw config_error("config key \"" + key + "\": " + e.what());
        }
    }
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FFCOUNT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::string comparison_csv(const ComparisonReport& rep, const RunConfig& cfg) {
    std::ostringstream out;
    out << "# config " << cfg.to_json().dump() << "\n";
    out << "n,k,exact,estimate,ratio,regime\n";
    for (const auto& row : rep.rows) {
        out << row.n << ',' << row.k << ',' << to_decimal(row.exact) << ','
            << format_double(row.estimate) << ',' << format_double(row.ratio) << ','
            << regime_name(row.regime) << "\n";
    }
    return out.str();
}

Json comparison_json(const ComparisonReport& rep, const RunConfig& cfg,
                     const std::vector<Check>& checks) {
    Json j;
    j["config"] = cfg.to_json();
    j["config"]["k_rule"] = rep.k_rule;
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
        Json r;
        r["n"] = row.n;
        r["k"] = row.k;
        r["exact"] = to_decimal(row.exact);
        r["estimate"] = row.estimate;
        r["ratio"] = row.ratio;
        r["regime"] = regime_name(row.regime);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    Json cs = Json::array();
    for (const auto& c : checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        cs.push_back(std::move(cj));
    }
    j["checks"] = std::move(cs);
    return j;
}

std::string table_csv(const BivariateSeries& s, unsigned k_max, const RunConfig& cfg) {
    std::ostringstream out;
    out << "# config " << cfg.to_json().dump() << "\n";
    out << "n,k,count\n";
    for (unsigned n = 0; n <= s.n_max(); ++n) {
        const unsigned top = k_max == 0 ? n : std::min(n, k_max);
        for (unsigned k = 0; k <= top; ++k) {
            out << n << ',' << k << ',' << to_decimal(s.count(n, k)) << "\n";
        }
    }
    return out.str();
}

Json table_json(const BivariateSeries& s, unsigned k_max, const RunConfig& cfg) {
    Json j;
    j["config"] = cfg.to_json();
    j["config"]["kind"] =
        s.kind() == Kind::ALL_MONICS ? "all_monics" : "no_linear_factors";
    Json rows = Json::array();
    for (unsigned n = 0; n <= s.n_max(); ++n) {
        const unsigned top = k_max == 0 ? n : std::min(n, k_max);
        for (unsigned k = 0; k <= top; ++k) {
            Json r;
            r["n"] = n;
            r["k"] = k;
            r["count"] = to_decimal(s.count(n, k));
            rows.push_back(std::move(r));
        }
    }
    j["rows"] = std::move(rows);
    j["checks"] = Json::array();
    return j;
}

CsvDocument parse_csv(const std::string& text) {
    CsvDocument doc;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# config ", 0) == 0) {
            doc.config = Json::parse(line.substr(9));
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!saw_header) {
            doc.header = std::move(cells);
            saw_header = true;
        } else {
            doc.rows.push_back(std::move(cells));
        }
    }
    return doc;
}

} // namespace ffc
