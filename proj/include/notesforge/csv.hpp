#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "notesforge/errors.hpp"

namespace notesforge {

// Minimal RFC-4180-ish CSV: quoted fields, doubled quotes, no embedded newlines.
inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw SchemaError("unterminated quote in CSV line: " + std::string(line));
    out.push_back(std::move(field));
    return out;
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

// Reads all lines, dropping a trailing empty line.
std::vector<std::string> read_lines(const std::string& path);

void write_text_file(const std::string& path, std::string_view content);

}  // namespace notesforge
