#include <gtest/gtest.h>

#include <json.hpp>

#include "cusp/cli.hpp"

using namespace cusp;
using json = nlohmann::json;

namespace {

RunConfig config_for(const std::string& spec, std::set<std::string> checks, OutputFormat format = OutputFormat::Json) {
    RunConfig c;
    c.spec = spec;
    c.checks = std::move(checks);
    c.format = format;
    c.jobs = 2;
    return c;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

}  // namespace

TEST(Report, E7AdjointRows) {
    auto res = run(config_for("E7:adjoint:*", {"thmB"}));
    EXPECT_EQ(res.exit_code, 0);
    auto doc = json::parse(res.text);
    long long e6 = 0;
    for (const auto& r : doc["rows"])
        if (r["quotient"].get<std::string>().rfind("2E6", 0) == 0) {
            ++e6;
            EXPECT_EQ(r["invariants"]["a"], 2);
            EXPECT_EQ(r["invariants"]["a_prime"], 2);
            EXPECT_EQ(r["checks"]["thmB"], "pass");
        }
    EXPECT_EQ(e6, 3);
}

TEST(Report, UnitaryCatalogueExitsCleanly) {
    auto c = config_for("2A*:*:*", {"thmB"});
    c.max_rank = 12;
    auto res = run(c);
    EXPECT_EQ(res.exit_code, 0);
    EXPECT_EQ(res.failed, 0);
    EXPECT_GT(res.rows, 20);
}

TEST(Report, DivisionAlgebraHii) {
    auto res = run(config_for("A1:adjoint:an", {"hii"}));
    EXPECT_EQ(res.exit_code, 0);
    auto doc = json::parse(res.text);
    ASSERT_EQ(doc["rows"].size(), 1u);
    const auto& r = doc["rows"][0];
    EXPECT_EQ(r["checks"]["hii"], "pass");
    EXPECT_EQ(r["hii"]["lhs"], r["hii"]["rhs"]);
}

TEST(Report, StrictFailsOnUnverifiableRows) {
    auto c = config_for("E8:*:*", {"hii"});
    auto lenient = run(c);
    EXPECT_EQ(lenient.exit_code, 0);
    EXPECT_GT(lenient.unverifiable, 0);
    c.strict = true;
    EXPECT_NE(run(c).exit_code, 0);
}

TEST(Report, DeterministicAcrossThreadCounts) {
    auto c = config_for("D*:*:*", {"thmB", "equivariance", "weilres"});
    c.max_rank = 6;
    c.jobs = 1;
    auto one = run(c);
    c.jobs = 3;
    auto three = run(c);
    EXPECT_EQ(one.text, three.text);
    EXPECT_EQ(run(c).text, three.text);
}

TEST(Report, RowOrderFollowsCatalogue) {
    auto c = config_for("*:adjoint:*", {"thmB"}, OutputFormat::Csv);
    c.max_rank = 4;
    auto ls = lines(run(c).text);
    ASSERT_GT(ls.size(), 3u);
    EXPECT_EQ(split_csv_record(ls[0])[0], "spec");
    // Type labels appear in contiguous blocks.
    std::vector<std::string> order;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto type = split_csv_record(ls[i])[1];
        if (order.empty() || order.back() != type) order.push_back(type);
    }
    std::set<std::string> unique(order.begin(), order.end());
    EXPECT_EQ(unique.size(), order.size());
}

TEST(Report, CsvColumnsAreFixed) {
    auto ls = lines(run(config_for("E6:*:*", {"thmB", "hii"}, OutputFormat::Csv)).text);
    const auto header = split_csv_record(ls[0]);
    EXPECT_EQ(header.size(), 27u);
    EXPECT_EQ(header.back(), "failures");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto f = split_csv_record(ls[i]);
        EXPECT_EQ(f.size(), header.size()) << ls[i];
        EXPECT_EQ(f[22], "pass");
        EXPECT_EQ(f[25], "skipped");
    }
}

TEST(Report, RestrictionBlockIsPresent) {
    auto doc = json::parse(run(config_for("3D4:adjoint:*", {"weilres"})).text);
    ASSERT_EQ(doc["restrictions"].size(), 2u);
    EXPECT_EQ(doc["restrictions"][0]["degree"], 2);
    EXPECT_EQ(doc["restrictions"][0]["frobenius_order"], 6);
    for (const auto& r : doc["rows"]) EXPECT_EQ(r["checks"]["weilres"], "pass");
}

TEST(Report, PrettyTableSummary) {
    auto text = run(config_for("G2:*:*", {"thmB"}, OutputFormat::Pretty)).text;
    EXPECT_NE(text.find("4 rows, 0 failed, 0 unverifiable"), std::string::npos);
}

TEST(Config, RejectsBadInput) {
    auto c = config_for("A1:adjoint:*", {});
    EXPECT_THROW(validate(c), std::invalid_argument);
    c.checks = {"thmB"};
    c.max_rank = 0;
    EXPECT_THROW(validate(c), std::invalid_argument);
    c.max_rank = 3;
    c.spec = "A1:adjoint";
    EXPECT_THROW(validate(c), std::invalid_argument);
    EXPECT_THROW(run(config_for("Z*:*:*", {"thmB"})), std::invalid_argument);
    EXPECT_THROW(run(config_for("A1:nope:*", {"thmB"})), std::invalid_argument);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(CaseTableDump, JsonRoundTrip) {
    auto doc = json::parse(dump_case_table(OutputFormat::Json));
    EXPECT_EQ(doc["version"], 1);
    const auto& table = case_table();
    ASSERT_EQ(doc["rows"].size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& r = doc["rows"][i];
        EXPECT_EQ(r["id"], table[i].id);
        EXPECT_EQ(r["provenance"], table[i].id);
        EXPECT_EQ(r["geometric"], table[i].geometric);
        EXPECT_EQ(r["b_ad"], table[i].b_ad);
        EXPECT_EQ(r["N"], to_string(table[i].N));
    }
    EXPECT_EQ(json::parse(doc.dump()), doc);
}

TEST(CaseTableDump, CsvRoundTrip) {
    auto ls = lines(dump_case_table(OutputFormat::Csv));
    const auto& table = case_table();
    ASSERT_EQ(ls.size(), table.size() + 1);
    auto header = split_csv_record(ls[0]);
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto f = split_csv_record(ls[i + 1]);
        ASSERT_EQ(f.size(), header.size());
        EXPECT_EQ(f[1], table[i].id);
        EXPECT_EQ(f[4], table[i].support);
        EXPECT_EQ(f[6], table[i].geometric);
        EXPECT_EQ(f[7], table[i].ns_rule);
        EXPECT_EQ(std::stoi(f[10]), table[i].b_ad);
    }
}

TEST(CaseTableDump, SymplecticTwistedRowAndOrthogonalGeometry) {
    EXPECT_EQ(case_row("C.CsAtCs").b_ad, 2);
    EXPECT_EQ(case_row("C.CsCt").geometric, "D{p}B{q}");
    auto doc = json::parse(dump_case_table(OutputFormat::Json));
    bool found = false;
    for (const auto& r : doc["rows"])
        if (r["id"] == "C.CsAtCs") {
            found = true;
            EXPECT_EQ(r["provenance"], "C.CsAtCs");
            EXPECT_EQ(r["b_ad"], 2);
        }
    EXPECT_TRUE(found);
}

TEST(Csv, QuotedFields) {
    EXPECT_EQ(split_csv_record("a,\"b,c\",\"d\"\"e\""), (std::vector<std::string>{"a", "b,c", "d\"e"}));
    EXPECT_EQ(split_csv_record(""), (std::vector<std::string>{""}));
}
