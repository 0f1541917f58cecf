#include "oudrift/cli/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oudrift/cli/scenario.hpp"

namespace oudrift::cli {

std::string format_real(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string curves_to_csv(std::span<const MseCurve> curves)
{
    if (curves.empty()) throw std::invalid_argument("no curves to write");
    const std::size_t rows = curves.front().size();
    for (const MseCurve& c : curves) {
        if (c.size() != rows) throw std::invalid_argument("curves differ in length");
        for (std::size_t i = 0; i < rows; ++i)
            if (c.entries()[i].n != curves.front().entries()[i].n)
                throw std::invalid_argument("curves differ in sample sizes");
    }

    std::ostringstream out;
    out << "N";
    for (const MseCurve& c : curves) out << ',' << c.label();
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        out << curves.front().entries()[i].n;
        for (const MseCurve& c : curves) out << ',' << format_real(c.entries()[i].value);
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open " + path.string() + " for writing");
    file << text;
    file.close();
    if (!file) throw OutputError("failed writing " + path.string());
}

void write_curves_csv(const std::filesystem::path& path, std::span<const MseCurve> curves)
{
    write_text_file(path, curves_to_csv(curves));
}

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(file, line)) throw std::runtime_error(path.string() + " is empty");
    table.header = split_line(line);
    while (std::getline(file, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& f : split_line(line)) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0' || errno == ERANGE)
                throw std::runtime_error("bad number '" + f + "' in " + path.string());
            row.push_back(v);
        }
        if (row.size() != table.header.size())
            throw std::runtime_error("ragged row in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace oudrift::cli
