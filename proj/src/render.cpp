#include "oopsie/render.hpp"

#include <sstream>

#include "json.hpp"

namespace oopsie {

namespace {

const char* severity_color(Severity s) {
    switch (s) {
    case Severity::Error: return "\x1b[31m";
    case Severity::Warning: return "\x1b[33m";
    case Severity::Info: return "\x1b[36m";
    }
    return "";
}

} // namespace

std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics, OutputFormat format,
                               bool color) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Diagnostic& d : diagnostics) {
            nlohmann::ordered_json obj;
            obj["code"] = code_id(d.code);
            obj["severity"] = severity_name(d.severity);
            obj["file"] = d.span.file;
            obj["line"] = d.span.line;
            obj["column"] = d.span.column;
            obj["message"] = d.message;
            if (d.expected) obj["expected"] = *d.expected;
            if (d.actual) obj["actual"] = *d.actual;
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }

    std::ostringstream out;
    for (const Diagnostic& d : diagnostics) {
        out << d.span.file << ":" << d.span.line << ":" << d.span.column << ": ";
        if (color) out << severity_color(d.severity) << severity_name(d.severity) << "\x1b[0m";
        else out << severity_name(d.severity);
        out << " " << code_id(d.code) << ": " << d.message;
        if (d.expected && d.actual)
            out << " (expected " << *d.expected << "; got " << *d.actual << ")";
        out << "\n";
    }
    return out.str();
}

std::string render_stats(const CheckStats& stats, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json obj;
        obj["checked_getters"] = stats.checked_getters;
        obj["checked_setters"] = stats.checked_setters;
        obj["out_of_scope"] = stats.out_of_scope;
        obj["unchecked_accesses"] = stats.unchecked_accesses;
        return obj.dump() + "\n";
    }
    std::ostringstream out;
    out << "checked getters: " << stats.checked_getters << "\n";
    out << "checked setters: " << stats.checked_setters << "\n";
    out << "out of scope: " << stats.out_of_scope << "\n";
    out << "unchecked accesses: " << stats.unchecked_accesses << "\n";
    return out.str();
}

} // namespace oopsie
