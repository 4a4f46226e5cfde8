#pragma once

#include <string>
#include <vector>

#include <fockrel/checks.hpp>
#include <json.hpp>

namespace fockrel::tool {

// Serializes one report. Key order is alphabetical (nlohmann::json default),
// so identical inputs produce identical bytes.
nlohmann::json report_to_json(const CheckReport& report);

nlohmann::json reports_to_json(const std::vector<CheckReport>& reports);

// Human-readable rendering, one block per report.
std::string render_text(const std::vector<CheckReport>& reports);

} // namespace fockrel::tool
