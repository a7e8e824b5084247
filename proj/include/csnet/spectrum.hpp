#pragma once

#include <cstdint>
#include <vector>

#include "csnet/graph.hpp"

namespace csnet {

struct SpectrumRow {
    double k = 0.0;  // exact degree for raw spectra; geometric-mean degree for binned
    std::uint64_t n_k = 0;
    double cbar = 0.0;
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;  // sorted by k, every row has n_k >= 1
    std::uint64_t total_triangles = 0;
};

// Triangles through each vertex, counted once per triangle via sorted
// intersection of forward adjacencies in (degree, id) rank order.
std::vector<std::uint64_t> triangle_counts(const Graph& g);

// Edges among the neighbors of v divided by deg(deg-1)/2; 0 when deg < 2.
double local_clustering(const Graph& g, Graph::vertex v);

// Mean local clustering per exact degree k >= 2. Vertices of degree < 2 are
// omitted (their clustering is identically zero).
SpectrumTable clustering_spectrum(const Graph& g);

// Multiplicative bins [k0 f^t, k0 f^{t+1}); cbar is the n_k-weighted mean and
// the bin label the n_k-weighted geometric mean degree. The anchor k0 defaults
// to the first row; pass one explicitly to line up bins across tables.
SpectrumTable log_bin_spectrum(const SpectrumTable& table, double factor, double anchor = 0.0);

// Streaming per-degree mean of local clustering across realizations.
class SpectrumAccumulator {
  public:
    void add(const Graph& g);
    void merge(const SpectrumAccumulator& other);
    SpectrumTable table() const;

  private:
    std::vector<std::uint64_t> count_;
    std::vector<double> sum_;
    std::uint64_t triangles_ = 0;
};

struct CcdfRow {
    std::uint32_t x = 0;
    double p_exceed = 0.0;  // P(degree > x)
};

// Exact empirical complementary CDF at every observed degree value.
std::vector<CcdfRow> degree_ccdf(const Graph& g);

}  // namespace csnet
