#pragma once

#include "gcdsum/identity.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gcdsum {

/// Writes the report CSV: `# key=value` metadata preamble, then
/// `x,lhs,rhs,abs_residual,tolerance,pass` rows, reals at `digits`
/// significant digits.
void write_report_csv(std::ostream& os, const VerificationReport& rep);

/// Parsed generic CSV with `#`-prefixed metadata lines.
struct ParsedCsv {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    size_t column(const std::string& name) const;
    size_t count_true(const std::string& column_name) const;
};

ParsedCsv read_csv(std::istream& is);

/// CSV bodies (all lines except `# timestamp=` metadata) compare equal.
bool csv_equal_modulo_timestamp(const std::string& a, const std::string& b);

/// Table dump: header `n,value`, exact integers verbatim, reals at
/// `digits` significant digits.
void write_table_csv(std::ostream& os, const ArithTable& table, int digits);

namespace detail {
void write_metadata_line(std::ostream& os, const std::string& key, const std::string& value);
std::string format_real(const Real& v, int digits);
}  // namespace detail

}  // namespace gcdsum
