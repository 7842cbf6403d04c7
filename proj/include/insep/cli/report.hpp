#ifndef INSEP_CLI_REPORT_HPP
#define INSEP_CLI_REPORT_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace insep::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { Text, Json };

struct ErrorInfo {
    std::string name;
    std::string module;
    std::string message;

    bool operator==(const ErrorInfo&) const = default;
};

/// status is "ok", "violated" (a checked inequality or oracle clause
/// failed) or "error" (a domain error was raised).
struct Report {
    std::string command;
    std::string anchor;
    std::string status = "ok";
    std::optional<ErrorInfo> error;
    nlohmann::json result = nlohmann::json::object();

    bool operator==(const Report&) const = default;
};

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["command"] = r.command;
    j["anchor"] = r.anchor;
    j["status"] = r.status;
    if (r.error) j["error"] = {{"name", r.error->name}, {"module", r.error->module}, {"message", r.error->message}};
    j["result"] = r.result;
    return j;
}

inline Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.anchor = j.at("anchor").get<std::string>();
    r.status = j.at("status").get<std::string>();
    if (j.contains("error")) {
        const auto& e = j.at("error");
        r.error = ErrorInfo{e.at("name").get<std::string>(), e.at("module").get<std::string>(),
                            e.at("message").get<std::string>()};
    }
    r.result = j.at("result");
    return r;
}

inline std::string emit_reports(const std::vector<Report>& reports, Format format) {
    if (format == Format::Json) {
        nlohmann::json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["reports"] = nlohmann::json::array();
        for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    for (const auto& r : reports) {
        out << r.command << "  [" << r.anchor << "]\n";
        out << "  status: " << r.status << "\n";
        if (r.error) out << "  error: " << r.error->name << " (" << r.error->module << "): " << r.error->message << "\n";
        for (const auto& [k, v] : r.result.items())
            out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return out.str();
}

inline std::string emit_report(const Report& r, Format format) { return emit_reports({r}, format); }

/// Inverse of emit_reports(..., Format::Json).
inline std::vector<Report> parse_reports(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("unsupported schema_version " + doc.at("schema_version").dump());
    std::vector<Report> out;
    for (const auto& j : doc.at("reports")) out.push_back(report_from_json(j));
    return out;
}

}  // namespace insep::cli

#endif  // INSEP_CLI_REPORT_HPP
