#pragma once

#include "runge/cli.hpp"

#include <json.hpp>
#include <ostream>
#include <string>

namespace runge::cli {

using Json = nlohmann::ordered_json;

struct Report {
    std::string command;
    Json config = Json::object();
    Json records = Json::array();
    Json summary = Json::object();
};

Json config_json(const RunConfig& config);

/// JSON: one object {command, config, records, summary, version}.
/// CSV: one row per record, columns in first-seen order. Text: summary lines
/// followed by one line per record.
void emit(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace runge::cli
