// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qthermo/error.hpp"
#include "qthermo/sweep.hpp"

namespace qthermo {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0; // drop the sign of -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 15);
    if (ec != std::errc()) fail(ErrorCode::numerical, "number formatting failed");
    return std::string(buf, ptr);
}

std::string to_csv(const ResultTable &table) {
    std::ostringstream os;
    for (const auto &[key, value] : table.metadata) os << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const ResultRow &row : table.rows) {
        for (std::size_t c = 0; c < row.values.size(); ++c) os << (c ? "," : "") << format_number(row.values[c]);
        os << "\n";
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (!table.rows[r].error.empty()) os << "# error row=" << r << ": " << table.rows[r].error << "\n";
    }
    return os.str();
}

namespace {

nlohmann::ordered_json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    // Round-trip through the CSV text so both serializations carry the same digits.
    const std::string text = format_number(value);
    double rounded = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
}

} // namespace

std::string to_json(const ResultTable &table) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto &[key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ResultRow &row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < table.columns.size() && c < row.values.size(); ++c) {
            obj[table.columns[c]] = json_number(row.values[c]);
        }
        obj["is_zero_temperature"] = row.zero_temperature;
        if (!row.error.empty()) obj["error"] = row.error;
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string serialize(const ResultTable &table, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(table) : to_json(table);
}

std::string render(const GateReport &report) {
    std::ostringstream os;
    for (const GateCheck &c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
           << " threshold=" << format_number(c.threshold) << " (" << c.detail << ")\n";
    }
    os << (report.passed() ? "gate-check: all checks passed\n" : "gate-check: FAILED\n");
    return os.str();
}

} // namespace qthermo
