// Deterministic CSV emission: header row, comma separator, LF endings,
// floating point at 9 significant digits, no locale dependence.
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace huygens {

inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out) {
        write_line(header);
    }

    // Comment lines are prefixed with '#' and precede data rows by convention.
    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_number(values[i]);
        }
        out_ << '\n';
    }

private:
    void write_line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ostream& out_;
};

}  // namespace huygens
