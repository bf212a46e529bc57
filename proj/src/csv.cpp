#include "lincue/csv.hpp"

#include <fstream>
#include <sstream>

namespace lincue::csv {

std::vector<Record> parse(const std::string& content) {
    std::vector<Record> out;
    Record cur;
    cur.line = 1;
    std::string field;
    std::size_t line = 1;
    bool in_quotes = false;
    bool record_has_data = false;

    auto end_field = [&] {
        cur.fields.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        out.push_back(cur);
        cur = Record{};
        cur.line = line;
        record_has_data = false;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty()) throw CsvError("line " + std::to_string(line) + ": stray quote inside unquoted field");
                in_quotes = true;
                record_has_data = true;
                break;
            case ',':
                end_field();
                record_has_data = true;
                break;
            case '\r':
                break;  // swallowed; \r\n and bare \r both end up handled by \n
            case '\n':
                ++line;
                if (record_has_data || !field.empty() || !cur.fields.empty()) end_record();
                cur.line = line;
                break;
            default:
                field += c;
                record_has_data = true;
                break;
        }
    }
    if (in_quotes) throw CsvError("line " + std::to_string(line) + ": unterminated quoted field");
    if (record_has_data || !field.empty() || !cur.fields.empty()) {
        cur.fields.push_back(field);
        out.push_back(cur);
    }
    return out;
}

std::vector<Record> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string escape(const std::string& field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    out += '\n';
    return out;
}

}  // namespace lincue::csv
