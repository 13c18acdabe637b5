#include "dimer/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dimer::csv {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::columns(const std::vector<std::string>& names) { names_ = names; }

void Table::row(const std::vector<double>& values) {
    if (values.size() != names_.size())
        throw std::invalid_argument("csv::Table: row width mismatch");
    rows_.push_back(values);
}

void Table::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open " + path);
    for (const auto& m : meta_) out << "# " << m << "\n";
    for (std::size_t i = 0; i < names_.size(); ++i)
        out << names_[i] << (i + 1 < names_.size() ? "," : "");
    out << "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << format_double(r[i]) << (i + 1 < r.size() ? "," : "");
        out << "\n";
    }
    if (!out) throw std::runtime_error("csv: write failed for " + path);
}

}  // namespace dimer::csv
