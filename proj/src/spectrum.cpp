#include "csnet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csnet {

std::vector<std::uint64_t> triangle_counts(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    std::vector<std::uint32_t> pos(n);  // vertex -> rank by (degree, id)
    {
        std::vector<std::uint32_t> by_rank(n);
        std::iota(by_rank.begin(), by_rank.end(), 0u);
        std::sort(by_rank.begin(), by_rank.end(), [&](std::uint32_t x, std::uint32_t y) {
            const auto dx = g.degree(x), dy = g.degree(y);
            if (dx != dy) return dx < dy;
            return x < y;
        });
        for (std::uint32_t r = 0; r < n; ++r) pos[by_rank[r]] = r;
    }

    // Forward adjacency in rank space: rank(u) -> sorted ranks above it.
    std::vector<std::uint64_t> off(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t rv = pos[v];
        for (auto u : g.neighbors(v))
            if (pos[u] > rv) ++off[rv + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) off[i + 1] += off[i];
    std::vector<std::uint32_t> fwd(off[n]);
    {
        std::vector<std::uint64_t> cursor(off.begin(), off.end() - 1);
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint32_t rv = pos[v];
            for (auto u : g.neighbors(v))
                if (pos[u] > rv) fwd[cursor[rv]++] = pos[u];
        }
        for (std::uint32_t r = 0; r < n; ++r)
            std::sort(fwd.begin() + static_cast<std::ptrdiff_t>(off[r]),
                      fwd.begin() + static_cast<std::ptrdiff_t>(off[r + 1]));
    }

    std::vector<std::uint64_t> tri_rank(n, 0);
    for (std::uint32_t r = 0; r < n; ++r) {
        for (std::uint64_t e = off[r]; e < off[r + 1]; ++e) {
            const std::uint32_t s = fwd[e];
            // common forward neighbors of ranks r and s
            std::uint64_t i = off[r], j = off[s];
            const std::uint64_t iend = off[r + 1], jend = off[s + 1];
            while (i < iend && j < jend) {
                if (fwd[i] < fwd[j]) {
                    ++i;
                } else if (fwd[i] > fwd[j]) {
                    ++j;
                } else {
                    ++tri_rank[r];
                    ++tri_rank[s];
                    ++tri_rank[fwd[i]];
                    ++i;
                    ++j;
                }
            }
        }
    }
    std::vector<std::uint64_t> tri(n);
    for (std::uint32_t v = 0; v < n; ++v) tri[v] = tri_rank[pos[v]];
    return tri;
}

double local_clustering(const Graph& g, Graph::vertex v) {
    if (v >= g.num_vertices()) throw std::out_of_range("local_clustering: bad vertex id");
    const auto nb = g.neighbors(v);
    const std::uint64_t d = nb.size();
    if (d < 2) return 0.0;
    std::vector<bool> mark(g.num_vertices(), false);
    for (auto u : nb) mark[u] = true;
    std::uint64_t links = 0;
    for (auto u : nb)
        for (auto w : g.neighbors(u))
            if (w > u && mark[w]) ++links;
    return static_cast<double>(links) / (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
}

SpectrumTable clustering_spectrum(const Graph& g) {
    const auto tri = triangle_counts(g);
    const std::uint32_t kmax = g.max_degree();
    std::vector<std::uint64_t> count(static_cast<std::size_t>(kmax) + 1, 0);
    std::vector<double> sum(static_cast<std::size_t>(kmax) + 1, 0.0);
    std::uint64_t total3 = 0;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        total3 += tri[v];
        const std::uint32_t k = g.degree(v);
        if (k < 2) continue;
        ++count[k];
        sum[k] += static_cast<double>(tri[v]) /
                  (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
    }
    SpectrumTable t;
    t.total_triangles = total3 / 3;
    for (std::uint32_t k = 2; k <= kmax; ++k)
        if (count[k] > 0)
            t.rows.push_back({static_cast<double>(k), count[k], sum[k] / static_cast<double>(count[k])});
    return t;
}

SpectrumTable log_bin_spectrum(const SpectrumTable& table, double factor, double anchor) {
    if (!(factor > 1.0)) throw std::invalid_argument("log_bin_spectrum: factor must be > 1");
    SpectrumTable out;
    out.total_triangles = table.total_triangles;
    if (table.rows.empty()) return out;
    const double k0 = anchor > 0.0 ? anchor : table.rows.front().k;
    const double lf = std::log(factor);
    long current = -1;
    std::uint64_t nsum = 0;
    double csum = 0.0, lksum = 0.0;
    auto flush = [&] {
        if (nsum == 0) return;
        const double nd = static_cast<double>(nsum);
        out.rows.push_back({std::exp(lksum / nd), nsum, csum / nd});
        nsum = 0;
        csum = 0.0;
        lksum = 0.0;
    };
    for (const auto& r : table.rows) {
        // nudge ratios sitting on a bin edge up into the bin they open
        const long bin = static_cast<long>(std::floor(std::log(r.k / k0) / lf + 1e-9));
        if (bin != current) {
            flush();
            current = bin;
        }
        const double nd = static_cast<double>(r.n_k);
        nsum += r.n_k;
        csum += nd * r.cbar;
        lksum += nd * std::log(r.k);
    }
    flush();
    return out;
}

void SpectrumAccumulator::add(const Graph& g) {
    const auto tri = triangle_counts(g);
    const std::uint32_t kmax = g.max_degree();
    if (count_.size() < static_cast<std::size_t>(kmax) + 1) {
        count_.resize(static_cast<std::size_t>(kmax) + 1, 0);
        sum_.resize(static_cast<std::size_t>(kmax) + 1, 0.0);
    }
    std::uint64_t total3 = 0;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        total3 += tri[v];
        const std::uint32_t k = g.degree(v);
        if (k < 2) continue;
        ++count_[k];
        sum_[k] += static_cast<double>(tri[v]) /
                   (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
    }
    triangles_ += total3 / 3;
}

void SpectrumAccumulator::merge(const SpectrumAccumulator& other) {
    if (count_.size() < other.count_.size()) {
        count_.resize(other.count_.size(), 0);
        sum_.resize(other.sum_.size(), 0.0);
    }
    for (std::size_t k = 0; k < other.count_.size(); ++k) {
        count_[k] += other.count_[k];
        sum_[k] += other.sum_[k];
    }
    triangles_ += other.triangles_;
}

SpectrumTable SpectrumAccumulator::table() const {
    SpectrumTable t;
    t.total_triangles = triangles_;
    for (std::size_t k = 2; k < count_.size(); ++k)
        if (count_[k] > 0)
            t.rows.push_back({static_cast<double>(k), count_[k],
                              sum_[k] / static_cast<double>(count_[k])});
    return t;
}

std::vector<CcdfRow> degree_ccdf(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    const std::uint32_t kmax = g.max_degree();
    std::vector<std::uint64_t> count(static_cast<std::size_t>(kmax) + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) ++count[g.degree(v)];
    std::vector<CcdfRow> rows;
    std::uint64_t above = n;
    for (std::uint32_t x = 0; x <= kmax; ++x) {
        const std::uint64_t c = count[x];
        above -= c;
        if (c > 0) rows.push_back({x, static_cast<double>(above) / static_cast<double>(n)});
    }
    return rows;
}

}  // namespace csnet
