#include "report.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "common.hpp"

#ifndef MLDE3_DEFAULT_DATA_DIR
#define MLDE3_DEFAULT_DATA_DIR "data"
#endif

namespace mlde3::report {

namespace {

std::mutex g_dir_mutex;
std::string g_dir_override;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string key_of(const std::vector<std::string>& row, const std::vector<std::size_t>& idx) {
    std::string k;
    for (std::size_t i : idx) k += (k.empty() ? "" : ",") + row[i];
    return k;
}

}  // namespace

std::size_t Table::column(const std::string& c) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == c) return i;
    fail(Errc::invalid_argument, "table " + name + " has no column " + c);
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
        os << '\n';
    }
    return os.str();
}

std::string to_markdown(const Table& t) {
    std::ostringstream os;
    os << '|';
    for (const auto& c : t.columns) os << ' ' << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << "---|";
    os << '\n';
    for (const auto& r : t.rows) {
        os << '|';
        for (const auto& v : r) os << ' ' << v << " |";
        os << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) o[t.columns[i]] = r[i];
        rows.push_back(o);
    }
    return {{"table", t.name}, {"columns", t.columns}, {"rows", rows}};
}

Table parse_csv(const std::string& text, const std::string& name) {
    Table t;
    t.name = name;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (header) {
            t.columns = std::move(fields);
            header = false;
            continue;
        }
        if (fields.size() != t.columns.size())
            fail(Errc::io, "table " + name + ": row with " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(t.columns.size()));
        t.rows.push_back(std::move(fields));
    }
    if (header) fail(Errc::io, "table " + name + " is empty");
    return t;
}

Table read_csv(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str(), name);
}

std::string data_dir() {
    {
        std::lock_guard<std::mutex> lock(g_dir_mutex);
        if (!g_dir_override.empty()) return g_dir_override;
    }
    if (const char* env = std::getenv("MLDE3_DATA_DIR"); env && *env) return env;
    return MLDE3_DEFAULT_DATA_DIR;
}

void set_data_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lock(g_dir_mutex);
    g_dir_override = dir;
}

Table load_golden(const std::string& name) { return read_csv(data_dir() + "/" + name + ".csv", name); }

std::string to_string(const Mismatch& m) {
    return m.table + " row [" + m.row + "] column " + m.column + ": expected " + m.expected + ", got " + m.actual;
}

std::vector<Mismatch> compare(const Table& expected, const Table& actual, const std::vector<std::string>& key,
                              const std::vector<std::string>& columns) {
    std::vector<std::size_t> ke, ka;
    for (const auto& k : key) {
        ke.push_back(expected.column(k));
        ka.push_back(actual.column(k));
    }
    std::map<std::string, std::vector<const std::vector<std::string>*>> em, am;
    for (const auto& r : expected.rows) em[key_of(r, ke)].push_back(&r);
    for (const auto& r : actual.rows) am[key_of(r, ka)].push_back(&r);

    // Rows sharing a key are paired after sorting on the compared columns.
    auto project = [&](const Table& t, const std::vector<const std::vector<std::string>*>& rows) {
        std::vector<std::vector<std::string>> out;
        for (const auto* r : rows) {
            std::vector<std::string> v;
            for (const auto& c : columns) v.push_back((*r)[t.column(c)]);
            out.push_back(std::move(v));
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::vector<Mismatch> out;
    for (const auto& [k, rows] : em) {
        auto it = am.find(k);
        const auto want = project(expected, rows);
        const auto got = it == am.end() ? decltype(want){} : project(actual, it->second);
        for (std::size_t i = 0; i < want.size(); ++i) {
            const std::string label = want.size() > 1 ? k + "#" + std::to_string(i + 1) : k;
            if (i >= got.size()) {
                out.push_back({expected.name, label, "<row>", "present", "<absent>"});
                continue;
            }
            for (std::size_t c = 0; c < columns.size(); ++c)
                if (want[i][c] != got[i][c]) out.push_back({expected.name, label, columns[c], want[i][c], got[i][c]});
        }
        for (std::size_t i = want.size(); i < got.size(); ++i) out.push_back({expected.name, k, "<row>", "<absent>", "present"});
    }
    for (const auto& [k, rows] : am)
        if (!em.count(k))
            for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({expected.name, k, "<row>", "<absent>", "present"});
    return out;
}

}  // namespace mlde3::report
