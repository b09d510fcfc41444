#include "aeids/csv.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include "aeids/error.hpp"

namespace aeids {

namespace {

// splits one physical line; embedded newlines inside quotes are not supported
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (in_quotes)
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace

CsvFile read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open '" + path + "'");

    CsvFile csv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            csv.header = split_record(line, line_no);
            if (csv.header.empty() || (csv.header.size() == 1 && csv.header[0].empty()))
                throw ParseError("line 1: empty header row");
            continue;
        }
        if (line.empty()) continue;  // tolerate blank separator lines
        std::vector<std::string> fields = split_record(line, line_no);
        if (fields.size() != csv.header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(csv.header.size()) + " cells, got " +
                             std::to_string(fields.size()));
        std::vector<std::optional<std::string>> row;
        row.reserve(fields.size());
        for (std::string& f : fields) {
            if (f.empty())
                row.emplace_back(std::nullopt);
            else
                row.emplace_back(std::move(f));
        }
        csv.rows.push_back(std::move(row));
    }
    if (line_no == 0) throw ParseError("'" + path + "': missing header row");
    return csv;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        const std::string& f = fields[i];
        bool needs_quotes = f.find_first_of(",\"\n") != std::string::npos;
        if (!needs_quotes) {
            out += f;
            continue;
        }
        out.push_back('"');
        for (char c : f) {
            if (c == '"') out.push_back('"');
            out.push_back(c);
        }
        out.push_back('"');
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

std::string trim(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool parse_double(const std::string& text, double& out) {
    std::string t = trim(text);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace aeids
