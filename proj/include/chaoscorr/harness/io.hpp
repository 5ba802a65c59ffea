// Copyright 2026 The chaoscorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * CSV tables, metadata JSON and file output for the harness.
 */

#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/harness/config.hpp"

namespace chaoscorr::harness {

/// Unwritable or unreadable files.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed or unexpected file contents.
class SchemaError : public Error {
  public:
    using Error::Error;
};

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest round-trip-safe decimal form is not needed for the outputs; 12 significant
/// digits keep files short and are identical on every run.
inline std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string format_optional(const std::optional<double> &x) { return x ? format_number(*x) : ""; }

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) {
        if (row.size() != header.size()) {
            throw SchemaError("row has " + std::to_string(row.size()) + " fields, header has " +
                              std::to_string(header.size()));
        }
        rows.push_back(std::move(row));
    }

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        throw SchemaError("missing column '" + std::string(name) + "'");
    }

    std::string to_string() const {
        std::string out;
        auto line = [&out](const std::vector<std::string> &fields) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                out += fields[i];
            }
            out += '\n';
        };
        line(header);
        for (const auto &r : rows) {
            line(r);
        }
        return out;
    }
};

inline void ensure_directory(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        ensure_directory(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f << text;
    f.close();
    if (!f) {
        throw IoError("failed writing " + path.string());
    }
}

inline std::string read_text(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void write_csv(const std::filesystem::path &path, const CsvTable &table) { write_text(path, table.to_string()); }

/// Reads a comma-separated file with a header row. Fields never contain commas or quotes.
inline CsvTable read_csv(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string &s) {
        std::vector<std::string> out;
        std::string field;
        std::istringstream fs(s);
        while (std::getline(fs, field, ',')) {
            out.push_back(field);
        }
        if (!s.empty() && s.back() == ',') {
            out.emplace_back();
        }
        return out;
    };
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (first) {
            t.header = split(line);
            first = false;
        } else {
            t.add_row(split(line));
        }
    }
    if (t.header.empty()) {
        throw SchemaError(path.string() + " is empty");
    }
    return t;
}

inline double parse_number(const std::string &field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) {
            throw SchemaError("trailing characters in number '" + field + "'");
        }
        return v;
    } catch (const std::logic_error &) {
        throw SchemaError("not a number: '" + field + "'");
    }
}

/// Run metadata written beside every output: schema version, tool version, config echo
/// and the files produced. Contains no timestamps so reruns are byte-identical.
inline nlohmann::ordered_json metadata(const ExperimentConfig &config, const std::vector<std::string> &outputs) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "chaoscorr";
    j["version"] = kVersion;
    j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                         std::to_string(EIGEN_MINOR_VERSION);
    j["master_seed"] = config.master_seed;
    j["config"] = to_json(config);
    j["outputs"] = outputs;
    return j;
}

inline void write_json(const std::filesystem::path &path, const nlohmann::ordered_json &j) {
    write_text(path, j.dump(2) + "\n");
}

} // namespace chaoscorr::harness
