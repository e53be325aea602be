#pragma once

#include <set>
#include <string>
#include <vector>

#include "cusp/weilres.hpp"

namespace cusp {

enum class OutputFormat { Json, Csv, Pretty };
OutputFormat parse_format(const std::string& name);

struct RunConfig {
    // Glob over "type:isogeny:form".
    std::string spec = "*:*:*";
    int max_rank = 12;
    OutputFormat format = OutputFormat::Json;
    // Subset of {thmB, hii, equivariance, weilres}.
    std::set<std::string> checks{"thmB"};
    int ord_psi = -1;
    // Empty writes to the caller.
    std::string out;
    bool strict = false;
    // Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
};

const std::vector<std::string>& known_checks();
// Throws std::invalid_argument on an unusable configuration.
void validate(const RunConfig& config);

struct RunResult {
    std::string text;
    long long rows = 0;
    long long failed = 0;
    long long unverifiable = 0;
    int exit_code = 0;
};

// Evaluates the selected checks on every matched row and renders the report.
RunResult run(const RunConfig& config);

// Case table with one provenance string per row.
std::string dump_case_table(OutputFormat format);

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_record(const std::string& line);

}  // namespace cusp
