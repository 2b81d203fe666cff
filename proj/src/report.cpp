#include "gcdsum/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gcdsum {

namespace detail {

void write_metadata_line(std::ostream& os, const std::string& key, const std::string& value) {
    os << "# " << key << "=" << value << "\n";
}

std::string format_real(const Real& v, int digits) { return v.str(digits); }

}  // namespace detail

namespace {

std::string format_x(double x) {
    char buf[40];
    if (x == (double)(long long)x)
        std::snprintf(buf, sizeof(buf), "%lld", (long long)x);
    else
        std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_report_csv(std::ostream& os, const VerificationReport& rep) {
    using detail::write_metadata_line;
    write_metadata_line(os, "which", identity_token(rep.which));
    write_metadata_line(os, "s", std::to_string(rep.params.s));
    write_metadata_line(os, "a", rep.params.a ? std::to_string(*rep.params.a) : "none");
    write_metadata_line(os, "m", std::to_string(rep.params.m));
    write_metadata_line(os, "r", std::to_string(rep.params.r));
    write_metadata_line(os, "family", rep.params.family_label());
    write_metadata_line(os, "digits", std::to_string(rep.digits));
    write_metadata_line(os, "mode", rep.mode);
    write_metadata_line(os, "version", rep.version);
    write_metadata_line(os, "timestamp", rep.timestamp);
    os << "x,lhs,rhs,abs_residual,tolerance,pass\n";
    for (const auto& r : rep.rows) {
        os << format_x(r.x) << "," << detail::format_real(r.lhs, rep.digits) << ","
           << detail::format_real(r.rhs, rep.digits) << ","
           << detail::format_real(r.abs_residual, rep.digits) << ","
           << detail::format_real(r.tolerance, rep.digits) << "," << (r.pass ? 1 : 0) << "\n";
    }
}

ParsedCsv read_csv(std::istream& is) {
    ParsedCsv out;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            size_t start = body.find_first_not_of(' ');
            if (start == std::string::npos) continue;
            body = body.substr(start);
            size_t eq = body.find('=');
            if (eq != std::string::npos)
                out.metadata[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            out.header = std::move(cells);
            header_seen = true;
        } else {
            out.rows.push_back(std::move(cells));
        }
    }
    return out;
}

size_t ParsedCsv::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("csv: no column named " + name);
}

size_t ParsedCsv::count_true(const std::string& column_name) const {
    size_t ci = column(column_name);
    size_t n = 0;
    for (const auto& r : rows)
        if (ci < r.size() && r[ci] == "1") ++n;
    return n;
}

bool csv_equal_modulo_timestamp(const std::string& a, const std::string& b) {
    auto next_line = [](const std::string& s, size_t& pos) -> std::string {
        while (pos < s.size()) {
            size_t end = s.find('\n', pos);
            if (end == std::string::npos) end = s.size();
            std::string line = s.substr(pos, end - pos);
            pos = end + 1;
            if (line.rfind("# timestamp=", 0) == 0) continue;
            return line;
        }
        return {};
    };
    size_t pa = 0, pb = 0;
    while (pa < a.size() || pb < b.size()) {
        if (next_line(a, pa) != next_line(b, pb)) return false;
    }
    return true;
}

void write_table_csv(std::ostream& os, const ArithTable& table, int digits) {
    os << "n,value\n";
    for (uint64_t n = 1; n <= table.size(); ++n) {
        os << n << ",";
        switch (table.kind()) {
            case ArithTable::Kind::ExactInt: os << table.int_at(n).get_str(); break;
            case ArithTable::Kind::ExactRat: os << table.rat_at(n).get_str(); break;
            case ArithTable::Kind::RealVal:
                os << detail::format_real(table.real_at(n), digits);
                break;
        }
        os << "\n";
    }
}

}  // namespace gcdsum
