// Batch driver: load the schema and conversion mapping, analyze the given
// Java sources, print diagnostics, and exit 0 (clean), 1 (findings) or
// 2 (usage or configuration problem).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"

#include "oopsie/checker.hpp"
#include "oopsie/oracle.hpp"
#include "oopsie/render.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> collect_sources(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const std::string& p : paths) {
        fs::path path(p);
        if (fs::is_directory(path)) {
            for (const auto& entry : fs::recursive_directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".java")
                    files.push_back(entry.path().string());
            }
        } else {
            files.push_back(path.string());
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

bool want_color() {
    const char* env = std::getenv("OOPSIE_COLOR");
    if (env && std::string(env) == "0") return false;
    return isatty(fileno(stdout)) != 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static checker for JDBC-style database access code"};

    std::string schema_path;
    std::string mode_text = "sound";
    std::string mapping_path;
    std::string format_text = "text";
    std::string fail_on_text = "error";
    bool supported_as_warning = false;
    bool stats = false;
    int jobs = 0;
    std::vector<std::string> source_paths;

    app.add_option("--schema", schema_path, "DDL file with the database schema")->required();
    app.add_option("--mode", mode_text, "sound|degraded")->check(CLI::IsMember({"sound", "degraded"}));
    app.add_option("--mapping", mapping_path, "type conversion overrides");
    app.add_option("--format", format_text, "text|json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--supported-as-warning", supported_as_warning,
                 "report driver-dependent conversions as warnings");
    app.add_option("--fail-on", fail_on_text, "error|warning")
        ->check(CLI::IsMember({"error", "warning"}));
    app.add_flag("--stats", stats, "print access tallies after the diagnostics");
    app.add_option("--jobs", jobs, "number of analysis workers (default: all cores)");
    app.add_option("sources", source_paths, "Java files or directories")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        oopsie::SchemaCatalog catalog = oopsie::load_schema(read_file(schema_path));

        oopsie::ConversionTable conversions;
        if (!mapping_path.empty()) {
            std::string config = read_file(mapping_path);
            conversions = oopsie::load_conversion_table(std::string_view(config));
        } else {
            conversions = oopsie::default_conversion_table();
        }

        std::vector<oopsie::SourceFile> sources;
        for (const std::string& file : collect_sources(source_paths))
            sources.push_back({file, read_file(file)});

        oopsie::CheckOptions options;
        options.mode = mode_text == "degraded" ? oopsie::Mode::Degraded : oopsie::Mode::Sound;
        options.supported_as_warning = supported_as_warning;
        options.jobs = jobs;

        oopsie::CheckResult result =
            oopsie::check_program(sources, catalog, conversions, options);

        if (!result.tool_errors.empty()) {
            for (const std::string& e : result.tool_errors) std::cerr << e << "\n";
            return 2;
        }

        oopsie::OutputFormat format = format_text == "json" ? oopsie::OutputFormat::Json
                                                            : oopsie::OutputFormat::Text;
        std::cout << oopsie::render_diagnostics(result.diagnostics, format,
                                                format == oopsie::OutputFormat::Text &&
                                                    want_color());
        if (stats) std::cout << oopsie::render_stats(result.stats, format);

        oopsie::Severity threshold = fail_on_text == "warning" ? oopsie::Severity::Warning
                                                               : oopsie::Severity::Error;
        return result.has_severity_at_least(threshold) ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "oopsie: " << e.what() << "\n";
        return 2;
    }
}
