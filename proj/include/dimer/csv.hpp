#ifndef DIMER_CSV_HPP
#define DIMER_CSV_HPP

#include <string>
#include <vector>

namespace dimer::csv {

/// Column-oriented CSV with '#'-prefixed metadata lines. Doubles are
/// written with round-trip precision so re-reads are bit-exact.
class Table {
public:
    void meta(const std::string& line) { meta_.push_back(line); }
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void write(const std::string& path) const;

private:
    std::vector<std::string> meta_;
    std::vector<std::string> names_;
    std::vector<std::vector<double>> rows_;
};

std::string format_double(double v);

}  // namespace dimer::csv

#endif
