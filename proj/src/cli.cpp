#include "cusp/cli.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace cusp {

namespace {

using json = nlohmann::ordered_json;

constexpr int kReportVersion = 1;
constexpr int kCaseTableVersion = 1;

const std::vector<std::string> kRowColumns{
    "spec",        "type",     "isogeny",   "form",    "support",        "quotient",   "entry",       "degree_class",
    "case_row",    "geometric", "kac_node", "ns",      "a",              "b",          "a_prime",     "b_prime",
    "g",           "g_prime",  "orbit_count", "orbit_id", "fdeg",         "gamma_abs",  "thmB",        "hii",
    "equivariance", "weilres", "failures"};

const std::vector<std::string> kCaseColumns{"version", "id",       "provenance", "group", "support", "form_rule", "geometric",
                                            "ns_rule", "N",        "M",          "b_ad",  "component_group", "hii"};

struct RowResult {
    PacketReport report;
    Status weilres = Status::Unverifiable;
    std::vector<std::string> weilres_problems;
};

struct RestrictionResult {
    std::string base_spec;
    int degree = 1;
    long long frobenius_order = 1;
    long long rows = 0;
    long long fdeg_compared = 0;
    std::vector<std::string> problems;
};

struct GroupResult {
    std::vector<RowResult> rows;
    std::vector<RestrictionResult> restrictions;
    std::string error;
};

std::string key_of(const std::string& spec, const std::string& support, const std::string& entry) {
    return spec + "|" + support + "|" + entry;
}

GroupResult evaluate_group(const UnramifiedGroup& G, const std::string& form_glob, const RunConfig& config) {
    GroupResult out;
    auto reports = group_full_report(G, form_glob, config.ord_psi);
    const bool weil = config.checks.count("weilres") > 0;
    std::map<std::string, std::vector<std::string>> transport_problems;
    std::set<std::string> transported;
    if (weil) {
        for (int d = 2; d <= 3; ++d) {
            auto sr = restrict_spec(G, d);
            auto rep = transport_counts(sr, config.ord_psi);
            RestrictionResult rr;
            rr.base_spec = G.type_label() + ":" + G.isogeny();
            rr.degree = d;
            rr.frobenius_order = sr.frobenius_order;
            rr.rows = static_cast<long long>(rep.rows.size());
            rr.problems = rep.problems;
            for (const auto& row : rep.rows) {
                rr.fdeg_compared += row.fdeg_compared;
                const std::string k = key_of(row.base_spec, row.support, row.entry);
                transported.insert(k);
                for (const auto& f : row.failures) transport_problems[k].push_back("degree " + std::to_string(d) + ": " + f);
            }
            out.restrictions.push_back(std::move(rr));
        }
    }
    for (auto& r : reports) {
        RowResult rr;
        if (weil) {
            const std::string k = key_of(r.spec, r.support, r.entry);
            if (!transported.count(k)) rr.weilres_problems.push_back("row missing from the restricted groups");
            if (auto it = transport_problems.find(k); it != transport_problems.end())
                rr.weilres_problems.insert(rr.weilres_problems.end(), it->second.begin(), it->second.end());
            if (r.weights) {
                for (int d = 2; d <= 4; ++d) {
                    auto lt = transport_local_factors(*r.weights, d, config.ord_psi, 1);
                    if (!lt.L_inductive) rr.weilres_problems.push_back("L-function not inductive for degree " + std::to_string(d));
                    if (!lt.eps_relation) rr.weilres_problems.push_back("epsilon sign fails for degree " + std::to_string(d));
                }
            }
            rr.weilres = rr.weilres_problems.empty() ? Status::Pass : Status::Fail;
        }
        rr.report = std::move(r);
        out.rows.push_back(std::move(rr));
    }
    return out;
}

// Status of one check on a row; Pass for checks that are not selected.
Status check_status(const RunConfig& config, const RowResult& r, const std::string& check) {
    if (!config.checks.count(check)) return Status::Pass;
    if (check == "thmB") return r.report.thm_b;
    if (check == "hii") return r.report.hii;
    if (check == "equivariance") return r.report.equivariance;
    return r.weilres;
}

std::string selected_status(const RunConfig& config, const RowResult& r, const std::string& check) {
    if (!config.checks.count(check)) return "skipped";
    return to_string(check_status(config, r, check));
}

std::vector<std::string> all_failures(const RowResult& r) {
    std::vector<std::string> f = r.report.failures;
    f.insert(f.end(), r.weilres_problems.begin(), r.weilres_problems.end());
    return f;
}

std::vector<std::string> row_fields(const RunConfig& config, const RowResult& rr) {
    const PacketReport& r = rr.report;
    std::string failures;
    for (const auto& f : all_failures(rr)) failures += (failures.empty() ? "" : "; ") + f;
    return {r.spec,
            r.type_label,
            r.isogeny,
            r.form,
            r.support,
            r.quotient,
            r.entry,
            r.degree_class,
            r.row,
            r.geometric,
            std::to_string(r.kac_node),
            std::to_string(r.ns),
            std::to_string(r.inv.a),
            std::to_string(r.inv.b),
            std::to_string(r.inv.a_prime),
            std::to_string(r.inv.b_prime),
            std::to_string(r.inv.g),
            std::to_string(r.inv.g_prime),
            std::to_string(r.orbit_count),
            r.orbit_id,
            r.fdeg ? r.fdeg->value.str() : "",
            r.gamma_abs ? r.gamma_abs->str() : "",
            selected_status(config, rr, "thmB"),
            selected_status(config, rr, "hii"),
            selected_status(config, rr, "equivariance"),
            selected_status(config, rr, "weilres"),
            failures};
}

json row_json(const RunConfig& config, const RowResult& rr) {
    const PacketReport& r = rr.report;
    json j;
    j["spec"] = r.spec;
    j["type"] = r.type_label;
    j["isogeny"] = r.isogeny;
    j["form"] = r.form;
    j["omega"] = r.omega;
    j["support"] = r.support;
    j["J"] = r.J;
    j["orbit"] = r.orbit;
    j["quotient"] = r.quotient;
    j["entry"] = r.entry;
    j["degree_class"] = r.degree_class;
    j["case_row"] = r.row;
    j["geometric"] = r.geometric;
    j["kac_node"] = r.kac_node;
    j["kac_candidates"] = r.kac_candidates;
    j["ns"] = r.ns;
    j["invariants"] = {{"a", r.inv.a},
                       {"b", r.inv.b},
                       {"a_prime", r.inv.a_prime},
                       {"b_prime", r.inv.b_prime},
                       {"g", r.inv.g},
                       {"g_prime", r.inv.g_prime},
                       {"omega_theta_order", r.inv.omega_theta.size()},
                       {"stabilizer_lambda_order", r.inv.stabilizer_lambda.size()},
                       {"stabilizer_pair_order", r.inv.stabilizer_pair.size()}};
    j["orbit_count"] = r.orbit_count;
    j["orbit_id"] = r.orbit_id;
    j["fdeg"] = r.fdeg ? json(r.fdeg->value.str()) : json(nullptr);
    j["gamma_abs"] = r.gamma_abs ? json(r.gamma_abs->str()) : json(nullptr);
    json checks = json::object();
    for (const auto& c : known_checks())
        if (config.checks.count(c)) checks[c] = to_string(check_status(config, rr, c));
    j["checks"] = checks;
    if (config.checks.count("hii") && r.hii_result) j["hii"] = {{"lhs", r.hii_result->lhs.str()}, {"rhs", r.hii_result->rhs.str()}};
    if (config.checks.count("weilres")) j["restriction"] = {{"degrees", {2, 3}}, {"local_factor_degrees", r.weights ? json({2, 3, 4}) : json::array()}};
    j["failures"] = all_failures(rr);
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
    return line + "\n";
}

std::string pretty_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::ostringstream os;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        os << line << "\n";
    }
    return os.str();
}

std::string join_checks(const std::set<std::string>& checks) {
    std::string s;
    for (const auto& c : known_checks())
        if (checks.count(c)) s += (s.empty() ? "" : ",") + c;
    return s;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::Json;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "pretty") return OutputFormat::Pretty;
    throw std::invalid_argument("unknown format '" + name + "'");
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> checks{"thmB", "hii", "equivariance", "weilres"};
    return checks;
}

void validate(const RunConfig& config) {
    if (config.max_rank < 1) throw std::invalid_argument("max rank must be at least 1");
    if (config.checks.empty()) throw std::invalid_argument("select at least one check");
    for (const auto& c : config.checks)
        if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
            throw std::invalid_argument("unknown check '" + c + "'");
    if (std::count(config.spec.begin(), config.spec.end(), ':') != 2)
        throw std::invalid_argument("spec '" + config.spec + "' must have the form type:isogeny:form");
}

RunResult run(const RunConfig& config) {
    validate(config);
    const std::string form_glob = config.spec.substr(config.spec.rfind(':') + 1);
    const auto groups = select_groups(config.spec, config.max_rank);
    if (groups.empty()) throw std::invalid_argument("spec '" + config.spec + "' matches no catalogued group");

    std::vector<GroupResult> results(groups.size());
    std::atomic<std::size_t> next{0};
    unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(groups.size(), 1)));
    auto worker = [&] {
        for (std::size_t i = next++; i < groups.size(); i = next++) {
            try {
                results[i] = evaluate_group(groups[i], form_glob, config);
            } catch (const std::exception& e) {
                results[i].error = groups[i].type_label() + ":" + groups[i].isogeny() + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    RunResult res;
    std::vector<const RowResult*> rows;
    std::vector<const RestrictionResult*> restrictions;
    std::vector<std::string> errors;
    for (const auto& g : results) {
        for (const auto& r : g.rows) rows.push_back(&r);
        for (const auto& r : g.restrictions) restrictions.push_back(&r);
        if (!g.error.empty()) errors.push_back(g.error);
    }
    long long restriction_failures = 0;
    for (const auto* r : restrictions) restriction_failures += !r->problems.empty();
    for (const auto* r : rows) {
        bool failed = false, unverifiable = false;
        for (const auto& c : config.checks) {
            Status s = check_status(config, *r, c);
            failed = failed || s == Status::Fail;
            unverifiable = unverifiable || s == Status::Unverifiable;
        }
        res.failed += failed;
        res.unverifiable += unverifiable;
    }
    res.rows = static_cast<long long>(rows.size());
    const bool bad = res.failed > 0 || restriction_failures > 0 || !errors.empty() || (config.strict && res.unverifiable > 0);
    res.exit_code = bad ? 1 : 0;

    if (config.format == OutputFormat::Json) {
        json doc;
        doc["version"] = kReportVersion;
        doc["config"] = {{"spec", config.spec},
                         {"max_rank", config.max_rank},
                         {"checks", join_checks(config.checks)},
                         {"ord_psi", config.ord_psi},
                         {"strict", config.strict}};
        doc["summary"] = {{"rows", res.rows},
                          {"failed", res.failed},
                          {"unverifiable", res.unverifiable},
                          {"restriction_failures", restriction_failures},
                          {"errors", errors}};
        json arr = json::array();
        for (const auto* r : rows) arr.push_back(row_json(config, *r));
        doc["rows"] = arr;
        json rest = json::array();
        for (const auto* r : restrictions)
            rest.push_back({{"base_spec", r->base_spec},
                            {"degree", r->degree},
                            {"frobenius_order", r->frobenius_order},
                            {"rows", r->rows},
                            {"fdeg_compared", r->fdeg_compared},
                            {"status", r->problems.empty() ? "pass" : "fail"},
                            {"problems", r->problems}});
        doc["restrictions"] = rest;
        res.text = doc.dump(2) + "\n";
    } else if (config.format == OutputFormat::Csv) {
        res.text = csv_line(kRowColumns);
        for (const auto* r : rows) res.text += csv_line(row_fields(config, *r));
    } else {
        std::vector<std::vector<std::string>> table{{"spec", "support", "entry", "case row", "(a,b,a',b')", "checks", "failures"}};
        for (const auto* r : rows) {
            const auto& p = r->report;
            std::string quad = "(" + std::to_string(p.inv.a) + "," + std::to_string(p.inv.b) + "," + std::to_string(p.inv.a_prime) +
                               "," + std::to_string(p.inv.b_prime) + ")";
            std::string checks;
            for (const auto& c : known_checks())
                if (config.checks.count(c)) checks += (checks.empty() ? "" : " ") + c + "=" + to_string(check_status(config, *r, c));
            auto f = all_failures(*r);
            table.push_back({p.spec, p.support, p.entry, p.row, quad, checks, f.empty() ? "" : f[0]});
        }
        std::ostringstream os;
        os << pretty_table(table);
        for (const auto* r : restrictions)
            os << "restriction " << r->base_spec << " degree " << r->degree << ": " << r->rows << " rows, "
               << (r->problems.empty() ? "pass" : "fail: " + r->problems[0]) << "\n";
        for (const auto& e : errors) os << "error " << e << "\n";
        os << res.rows << " rows, " << res.failed << " failed, " << res.unverifiable << " unverifiable\n";
        res.text = os.str();
    }
    return res;
}

std::string dump_case_table(OutputFormat format) {
    auto fields = [](const CaseRow& r) -> std::vector<std::string> {
        return {std::to_string(kCaseTableVersion), r.id, r.id, r.group, r.support, r.form_rule, r.geometric, r.ns_rule,
                to_string(r.N), to_string(r.M), std::to_string(r.b_ad), r.component_group, r.hii};
    };
    if (format == OutputFormat::Json) {
        json doc;
        doc["version"] = kCaseTableVersion;
        json arr = json::array();
        for (const auto& r : case_table()) {
            auto f = fields(r);
            json j;
            for (std::size_t i = 1; i < kCaseColumns.size(); ++i) j[kCaseColumns[i]] = f[i];
            j["b_ad"] = r.b_ad;
            arr.push_back(j);
        }
        doc["rows"] = arr;
        return doc.dump(2) + "\n";
    }
    if (format == OutputFormat::Csv) {
        std::string out = csv_line(kCaseColumns);
        for (const auto& r : case_table()) out += csv_line(fields(r));
        return out;
    }
    std::vector<std::vector<std::string>> table{kCaseColumns};
    for (const auto& r : case_table()) table.push_back(fields(r));
    return pretty_table(table);
}

std::vector<std::string> split_csv_record(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace cusp
