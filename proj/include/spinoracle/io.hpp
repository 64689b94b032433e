// Copyright 2026 The spinoracle Authors
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

// Plain-data output. Everything written here is a pure function of its
// input: no timestamps, fixed float formatting, LF line endings.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "spinoracle/errors.hpp"

namespace spinoracle::io {

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

inline Format parse_format(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ConfigError("unknown format '" + std::string(s) + "' (csv, json)");
}

/// 9 significant digits; fmt ignores the C locale, so '.' is always the decimal point.
inline std::string format_real(double v) { return fmt::format("{:.9g}", v); }

inline std::string format_cell(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_number_unsigned()) return fmt::format("{}", v.get<std::uint64_t>());
    if (v.is_number_integer()) return fmt::format("{}", v.get<std::int64_t>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw InvariantViolation("table cells must be scalars");
}

/// Column-typed rows, rendered as CSV or as a JSON array of objects.
class Table {
   public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::initializer_list<nlohmann::json> cells) { add(std::vector<nlohmann::json>(cells)); }
    void add(std::vector<nlohmann::json> cells) {
        if (cells.size() != header_.size()) throw InvariantViolation("table row width mismatch");
        rows_.push_back(std::move(cells));
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }

    std::string csv() const {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_) {
            std::vector<std::string> cells;
            cells.reserve(r.size());
            for (const auto& c : r) cells.push_back(format_cell(c));
            append_line(out, cells);
        }
        return out;
    }

    nlohmann::json json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows_) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < r.size(); ++i) obj[header_[i]] = r[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

   private:
    static void append_line(std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<nlohmann::json>> rows_;
};

/// One JSON value per line inside a top-level array; keeps large report
/// arrays diff-friendly without the size of fully indented output.
inline std::string json_lines_array(const std::vector<nlohmann::json>& items) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += items[i].dump();
        out += i + 1 < items.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

inline void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw ConfigError("failed writing " + path.string());
}

/// An output directory; remembers what was written for manifest.json.
class OutputDir {
   public:
    explicit OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw ConfigError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    const std::filesystem::path& path() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

    /// Writes `<stem>.csv` or `<stem>.json`.
    void table(const std::string& stem, const Table& t, Format f) {
        if (f == Format::csv) {
            text(stem + ".csv", t.csv());
        } else {
            json(stem + ".json", t.json());
        }
    }

    void json(const std::string& name, const nlohmann::json& doc) { text(name, doc.dump(2) + "\n"); }

    void text(const std::string& name, std::string_view body) {
        write_text(dir_ / name, body);
        files_.push_back(name);
    }

    void manifest(const std::string& command, const nlohmann::json& config) const {
        const nlohmann::json m = {
            {"schema_version", kSchemaVersion},
            {"command", command},
            {"config", config},
            {"files", files_},
        };
        write_text(dir_ / "manifest.json", m.dump(2) + "\n");
    }

   private:
    std::filesystem::path dir_;
    std::vector<std::string> files_;
};

}  // namespace spinoracle::io
