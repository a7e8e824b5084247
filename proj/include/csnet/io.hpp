#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "csnet/analytic.hpp"
#include "csnet/fit.hpp"
#include "csnet/graph.hpp"
#include "csnet/spectrum.hpp"

namespace csnet {

struct IngestReport {
    std::uint64_t lines_read = 0;
    std::uint64_t loops_dropped = 0;
    std::uint64_t duplicates_collapsed = 0;
};

struct IngestedGraph {
    Graph graph;
    IngestReport report;
};

// Whitespace-separated integer pairs, '#'/'%' comment lines skipped, blank
// lines ignored. Self-loops dropped, duplicate and reversed-duplicate edges
// collapsed, vertex ids compacted to 0..n-1 in first-appearance order.
// Throws std::runtime_error naming the line on malformed input or empty files.
IngestedGraph read_edge_list(const std::filesystem::path& path);

// One "u v" line per edge with u < v, ascending.
void write_edge_list(const Graph& g, const std::filesystem::path& path);

enum class TableFormat { Csv, Json };

// Columns "k,n_k,cbar"; doubles carry 17 significant digits so read-back is
// bit-exact.
void write_spectrum(const SpectrumTable& table, const std::filesystem::path& path,
                    TableFormat format = TableFormat::Csv);
SpectrumTable read_spectrum_csv(const std::filesystem::path& path);

void write_ccdf_csv(const std::vector<CcdfRow>& rows, const std::filesystem::path& path);

struct CurvePoint {
    double h = 0.0;
    double c = 0.0;
    Regime regime = Regime::I;
};

// Columns "h,c,regime".
void write_curve_csv(const std::vector<CurvePoint>& points, const std::filesystem::path& path);

void write_sigma_csv(const std::vector<std::pair<double, double>>& points,
                     const std::filesystem::path& path);

std::string fit_to_json(const FitResult& fit);

// Helper shared by the writers: shortest decimal form that round-trips.
std::string format_double(double x);

}  // namespace csnet
