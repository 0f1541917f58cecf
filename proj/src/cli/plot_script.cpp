#include "oudrift/cli/plot_script.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oudrift/cli/csv.hpp"

namespace oudrift::cli {

PlotStyle parse_plot_style(const std::string& name)
{
    if (name == "linear") return PlotStyle::linear;
    if (name == "log-x") return PlotStyle::log_x;
    if (name == "log-y") return PlotStyle::log_y;
    if (name == "log-log") return PlotStyle::log_log;
    throw std::invalid_argument("unknown plot style '" + name + "'");
}

namespace {

std::size_t column_count(const std::filesystem::path& csv)
{
    std::ifstream file(csv);
    if (!file) throw std::runtime_error("missing CSV " + csv.string());
    std::string header;
    std::getline(file, header);
    std::size_t cols = 1;
    for (char c : header) cols += c == ',' ? 1 : 0;
    return cols;
}

}  // namespace

std::string plot_script(std::span<const std::filesystem::path> csvs, PlotStyle style,
                        const std::filesystem::path& image)
{
    if (csvs.empty()) throw std::invalid_argument("no CSV files to plot");

    const auto panels = csvs.size();
    const auto cols = panels == 1 ? std::size_t{1} : std::size_t{2};
    const auto rows = (panels + cols - 1) / cols;

    std::ostringstream out;
    out << "# gnuplot script; data files are the source of truth\n";
    out << "set datafile separator ','\n";
    out << "set terminal pngcairo size " << 640 * cols << ',' << 480 * rows << '\n';
    out << "set output '" << image.string() << "'\n";
    out << "set key autotitle columnhead\n";
    out << "set xlabel 'N'\nset ylabel 'MSE'\n";
    if (style == PlotStyle::log_x || style == PlotStyle::log_log) out << "set logscale x\n";
    if (style == PlotStyle::log_y || style == PlotStyle::log_log) out << "set logscale y\n";
    out << "set multiplot layout " << rows << ',' << cols << '\n';
    for (const auto& csv : csvs) {
        const std::size_t n_cols = column_count(csv);
        out << "set title '" << csv.stem().string() << "' noenhanced\n";
        out << "plot for [i=2:" << n_cols << "] '" << csv.string() << "' using 1:i with lines\n";
    }
    out << "unset multiplot\n";
    return out.str();
}

void emit_plot_script(std::span<const std::filesystem::path> csvs, PlotStyle style,
                      const std::filesystem::path& script, const std::filesystem::path& image)
{
    write_text_file(script, plot_script(csvs, style, image));
}

}  // namespace oudrift::cli
