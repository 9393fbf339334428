#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rrsim/errors.hpp"

namespace rrsim::csv {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

// Header-addressed CSV table. Whole-file reads only; the inputs here are
// small enough that streaming gains nothing.
class Table {
public:
    static Table read_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open file: " + path);
        Table t;
        t.path_ = path;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line == "\r") continue;
            auto fields = split_line(line);
            if (t.header_.empty()) {
                t.header_ = fields;
                for (std::size_t i = 0; i < fields.size(); ++i) t.col_index_[fields[i]] = i;
            } else {
                if (fields.size() != t.header_.size()) {
                    throw InputError(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(t.header_.size()) + " fields, got " +
                                     std::to_string(fields.size()));
                }
                t.rows_.push_back(std::move(fields));
                t.row_lines_.push_back(lineno);
            }
        }
        if (t.header_.empty()) throw InputError(path + ": missing header row");
        return t;
    }

    bool has_column(const std::string& name) const { return col_index_.count(name) > 0; }

    std::size_t n_rows() const { return rows_.size(); }

    const std::string& cell(std::size_t row, const std::string& col) const {
        auto it = col_index_.find(col);
        if (it == col_index_.end()) throw InputError(path_ + ": missing column '" + col + "'");
        return rows_[row][it->second];
    }

    double number(std::size_t row, const std::string& col) const {
        const std::string& s = cell(row, col);
        double v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw InputError(path_ + ":" + std::to_string(row_lines_[row]) + ": bad number '" + s +
                             "' in column '" + col + "'");
        }
        return v;
    }

    long long integer(std::size_t row, const std::string& col) const {
        const std::string& s = cell(row, col);
        long long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
            throw InputError(path_ + ":" + std::to_string(row_lines_[row]) + ": bad integer '" + s +
                             "' in column '" + col + "'");
        }
        return v;
    }

    std::size_t source_line(std::size_t row) const { return row_lines_[row]; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::vector<std::string> header_;
    std::unordered_map<std::string, std::size_t> col_index_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> row_lines_;
};

// Shortest round-trip formatting keeps output files byte-stable across runs.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path), path_(path) {
        if (!out_) throw InputError("cannot open file for writing: " + path);
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    const std::string& path() const { return path_; }

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace rrsim::csv
