#include "csnet/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace csnet {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

}  // namespace

IngestedGraph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    IngestedGraph out;
    std::unordered_map<std::uint64_t, std::uint32_t> compact;
    std::unordered_set<std::uint64_t> seen;
    std::vector<Graph::edge> edges;
    std::string line;
    std::uint64_t lineno = 0;

    auto id_of = [&](std::uint64_t raw) {
        return compact.try_emplace(raw, static_cast<std::uint32_t>(compact.size()))
            .first->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        ++out.report.lines_read;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) continue;  // blank
        if (line[i] == '#' || line[i] == '%') continue;

        std::uint64_t ids[2];
        int tokens = 0;
        bool bad = false;
        while (i < line.size() && !bad) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(line[i])) || tokens == 2) {
                bad = true;
                break;
            }
            std::uint64_t v = 0;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
                v = v * 10 + static_cast<std::uint64_t>(line[i] - '0');
                ++i;
            }
            ids[tokens++] = v;
        }
        if (bad || tokens != 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed edge line");
        const std::uint32_t u = id_of(ids[0]);
        const std::uint32_t v = id_of(ids[1]);
        if (u == v) {
            ++out.report.loops_dropped;
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        if (!seen.insert(key).second) {
            ++out.report.duplicates_collapsed;
            continue;
        }
        edges.emplace_back(u, v);
    }
    if (edges.empty())
        throw std::runtime_error(path.string() + ": no edges (empty or comment-only file)");
    out.graph = Graph::from_edges(static_cast<Graph::vertex>(compact.size()), edges);
    return out;
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (Graph::vertex u = 0; u < g.num_vertices(); ++u)
        for (auto v : g.neighbors(u))
            if (v > u) out << u << ' ' << v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_spectrum(const SpectrumTable& table, const std::filesystem::path& path,
                    TableFormat format) {
    std::ofstream out = open_out(path);
    if (format == TableFormat::Csv) {
        out << "k,n_k,cbar\n";
        for (const auto& r : table.rows)
            out << format_double(r.k) << ',' << r.n_k << ',' << format_double(r.cbar) << '\n';
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : table.rows)
            arr.push_back({{"k", r.k}, {"n_k", r.n_k}, {"cbar", r.cbar}});
        out << arr.dump(2) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

SpectrumTable read_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    SpectrumTable table;
    std::string line;
    if (!std::getline(in, line) || line != "k,n_k,cbar")
        throw std::runtime_error(path.string() + ": bad spectrum CSV header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SpectrumRow row;
        char* end = nullptr;
        row.k = std::strtod(line.c_str(), &end);
        if (!end || *end != ',') throw std::runtime_error(path.string() + ": bad row");
        row.n_k = std::strtoull(end + 1, &end, 10);
        if (!end || *end != ',') throw std::runtime_error(path.string() + ": bad row");
        row.cbar = std::strtod(end + 1, &end);
        table.rows.push_back(row);
    }
    return table;
}

void write_ccdf_csv(const std::vector<CcdfRow>& rows, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "x,ccdf\n";
    for (const auto& r : rows) out << r.x << ',' << format_double(r.p_exceed) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_curve_csv(const std::vector<CurvePoint>& points,
                     const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "h,c,regime\n";
    for (const auto& p : points)
        out << format_double(p.h) << ',' << format_double(p.c) << ',' << regime_name(p.regime)
            << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_sigma_csv(const std::vector<std::pair<double, double>>& points,
                     const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << "t,sigma\n";
    for (const auto& [t, s] : points)
        out << format_double(t) << ',' << format_double(s) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string fit_to_json(const FitResult& fit) {
    nlohmann::json j{{"exponent_hat", fit.exponent_hat},
                     {"xmin", fit.xmin},
                     {"ks_distance", fit.ks_distance},
                     {"n_tail", fit.n_tail}};
    if (fit.gof_pvalue) j["gof_pvalue"] = *fit.gof_pvalue;
    return j.dump(2);
}

}  // namespace csnet
