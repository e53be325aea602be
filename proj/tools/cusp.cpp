#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cusp/cli.hpp"

namespace {

int emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 2;
    }
    out << text;
    return out ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting checks for unipotent supercuspidal packets of unramified groups"};
    app.require_subcommand(1);

    cusp::RunConfig config;
    std::string format = "json";
    std::vector<std::string> checks;
    auto* report = app.add_subcommand("report", "Evaluate the selected checks on every matched packet row");
    report->add_option("--spec", config.spec, "Glob over type:isogeny:form, e.g. 'E7:adjoint:*'")->capture_default_str();
    report->add_option("--check", checks, "thmB, hii, equivariance or weilres; repeatable")->delimiter(',');
    report->add_option("--max-rank", config.max_rank, "Largest classical rank in the catalogue")->capture_default_str();
    report->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
    report->add_option("--ordpsi", config.ord_psi, "Conductor exponent of the additive character")->capture_default_str();
    report->add_option("--out", config.out, "Output file; standard output when omitted");
    report->add_option("--jobs", config.jobs, "Worker threads; 0 uses all cores")->capture_default_str();
    report->add_flag("--strict", config.strict, "Also fail on unverifiable rows");

    std::string table_format = "json", table_out;
    auto* dump = app.add_subcommand("dump_case_table", "Write the case table used to classify packet rows");
    dump->add_option("--format", table_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    dump->add_option("--out", table_out, "Output file; standard output when omitted");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dump) return emit(cusp::dump_case_table(cusp::parse_format(table_format)), table_out);
        if (!checks.empty()) config.checks = {checks.begin(), checks.end()};
        config.format = cusp::parse_format(format);
        cusp::validate(config);
        if (!config.out.empty() && config.out != "-" && !std::ofstream(config.out, std::ios::app)) {
            std::cerr << "cannot write " << config.out << "\n";
            return 2;
        }
        auto result = cusp::run(config);
        if (int rc = emit(result.text, config.out)) return rc;
        if (!config.out.empty()) std::cerr << result.rows << " rows, " << result.failed << " failed, " << result.unverifiable << " unverifiable\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
