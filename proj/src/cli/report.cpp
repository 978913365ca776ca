#include "report.hpp"

#include <algorithm>
#include <vector>

namespace runge::cli {

namespace {

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Text: return "text";
    }
    return "json";
}

std::string scalar(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_cell(const Json& v) {
    const std::string s = scalar(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

void emit_csv(const Report& r, std::ostream& out) {
    std::vector<std::string> columns;
    for (const auto& rec : r.records) {
        for (const auto& item : rec.items()) {
            if (std::find(columns.begin(), columns.end(), item.key()) == columns.end()) {
                columns.push_back(item.key());
            }
        }
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& rec : r.records) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out << (i ? "," : "");
            if (rec.contains(columns[i])) out << csv_cell(rec[columns[i]]);
        }
        out << '\n';
    }
}

void emit_text(const Report& r, std::ostream& out) {
    out << r.command << '\n';
    for (const auto& item : r.summary.items()) out << "  " << item.key() << ": " << scalar(item.value()) << '\n';
    for (const auto& rec : r.records) {
        bool first = true;
        out << "  -";
        for (const auto& item : rec.items()) {
            out << (first ? " " : ", ") << item.key() << "=" << scalar(item.value());
            first = false;
        }
        out << '\n';
    }
}

}  // namespace

Json config_json(const RunConfig& c) {
    Json j = Json::object();
    j["precision_target"] = c.precision_target;
    j["s1"] = c.constants.s1;
    j["s2"] = c.constants.s2;
    j["c0"] = c.constants.c0;
    j["s_pga"] = c.constants.s_pga;
    j["pana_slack"] = c.constants.pana_slack;
    j["c_runge"] = c.c_runge;
    j["kappa2"] = c.kappa2;
    j["format"] = format_name(c.format);
    j["workers"] = c.workers;
    j["constants_source"] = c.constants_source;
    return j;
}

void emit(const Report& r, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::Json: {
            Json doc = Json::object();
            doc["command"] = r.command;
            doc["config"] = r.config;
            doc["records"] = r.records;
            doc["summary"] = r.summary;
            doc["version"] = kVersion;
            out << doc.dump(2) << '\n';
            break;
        }
        case OutputFormat::Csv: emit_csv(r, out); break;
        case OutputFormat::Text: emit_text(r, out); break;
    }
}

}  // namespace runge::cli
