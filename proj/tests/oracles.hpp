#pragma once

// Test-side oracles, deliberately independent of the library's algorithms:
// all-geodesic enumeration for shortest-path metrics, direct formula
// evaluation for distinctiveness and constraint, pairwise counting for
// Mann-Whitney, Gaussian elimination for the OLS route behind VIF, and the
// adjusted Rand index for clustering recovery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "innoprof/graph.hpp"
#include "innoprof/rng.hpp"

namespace oracles {

using innoprof::Arc;
using innoprof::ReplyGraph;
using innoprof::Rng;

// dense adjacency of a small directed graph
struct SmallGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::int64_t>> weight;  // 0 = no arc

    explicit SmallGraph(std::size_t nodes)
        : n(nodes), weight(nodes, std::vector<std::int64_t>(nodes, 0)) {}

    ReplyGraph to_reply_graph() const {
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (weight[i][j] > 0) arcs.push_back({i, j, weight[i][j]});
        return ReplyGraph(ids, arcs);
    }
};

inline SmallGraph random_graph(std::size_t max_nodes, Rng& rng) {
    std::size_t n = 1 + rng.next_below(max_nodes);
    SmallGraph g(n);
    double density = 0.15 + rng.next_double() * 0.5;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rng.next_double() < density) g.weight[i][j] = 1 + rng.next_below(4);
        }
    return g;
}

// --- all-geodesic enumeration ------------------------------------------------

/// Every directed path from s to t enumerated by DFS; geodesics counted and
/// interior vertices credited fractionally. Exponential, fine for n <= 6.
struct GeodesicCensus {
    std::size_t min_len = SIZE_MAX;
    std::vector<std::vector<std::size_t>> geodesics;  // vertex sequences
};

inline void dfs_paths(const SmallGraph& g, std::size_t v, std::size_t t,
                      std::vector<std::size_t>& path, std::vector<char>& used,
                      GeodesicCensus& census) {
    if (v == t) {
        if (path.size() - 1 < census.min_len) {
            census.min_len = path.size() - 1;
            census.geodesics.clear();
        }
        if (path.size() - 1 == census.min_len) census.geodesics.push_back(path);
        return;
    }
    if (path.size() - 1 >= census.min_len) return;  // cannot improve
    for (std::size_t u = 0; u < g.n; ++u) {
        if (!g.weight[v][u] || used[u]) continue;
        used[u] = 1;
        path.push_back(u);
        dfs_paths(g, u, t, path, used, census);
        path.pop_back();
        used[u] = 0;
    }
}

inline std::vector<double> betweenness_brute(const SmallGraph& g) {
    std::vector<double> result(g.n, 0.0);
    for (std::size_t s = 0; s < g.n; ++s) {
        for (std::size_t t = 0; t < g.n; ++t) {
            if (s == t) continue;
            GeodesicCensus census;
            std::vector<std::size_t> path{s};
            std::vector<char> used(g.n, 0);
            used[s] = 1;
            dfs_paths(g, s, t, path, used, census);
            if (census.geodesics.empty()) continue;
            double total = static_cast<double>(census.geodesics.size());
            for (const auto& geo : census.geodesics)
                for (std::size_t i = 1; i + 1 < geo.size(); ++i)
                    result[geo[i]] += 1.0 / total;
        }
    }
    return result;
}

/// Harmonic closeness from Floyd-Warshall on the undirected projection.
inline std::vector<double> closeness_brute(const SmallGraph& g) {
    const std::size_t n = g.n;
    const double inf = 1e18;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.weight[i][j] > 0) d[i][j] = d[j][i] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    std::vector<double> result(n, 0.0);
    if (n < 2) return result;
    for (std::size_t v = 0; v < n; ++v) {
        double sum = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v && d[v][u] < inf) sum += 1.0 / d[v][u];
        result[v] = sum / static_cast<double>(n - 1);
    }
    return result;
}

inline std::vector<double> in_distinctiveness_brute(const SmallGraph& g) {
    std::vector<double> result(g.n, 0.0);
    for (std::size_t v = 0; v < g.n; ++v) {
        for (std::size_t u = 0; u < g.n; ++u) {
            if (!g.weight[u][v]) continue;
            std::size_t outdeg = 0;
            for (std::size_t w = 0; w < g.n; ++w)
                if (g.weight[u][w]) ++outdeg;
            result[v] += std::log10(static_cast<double>(g.n - 1) / static_cast<double>(outdeg));
        }
    }
    return result;
}

inline std::vector<double> out_distinctiveness_brute(const SmallGraph& g) {
    std::vector<double> result(g.n, 0.0);
    for (std::size_t v = 0; v < g.n; ++v) {
        for (std::size_t u = 0; u < g.n; ++u) {
            if (!g.weight[v][u]) continue;
            std::size_t indeg = 0;
            for (std::size_t w = 0; w < g.n; ++w)
                if (g.weight[w][u]) ++indeg;
            result[v] += std::log10(static_cast<double>(g.n - 1) / static_cast<double>(indeg));
        }
    }
    return result;
}

/// Burt's constraint evaluated from a dense symmetrized proportion matrix.
inline std::vector<std::optional<double>> constraint_brute(const SmallGraph& g) {
    const std::size_t n = g.n;
    std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            z[i][j] = static_cast<double>(g.weight[i][j] + g.weight[j][i]);
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0;
        for (std::size_t j = 0; j < n; ++j) sum += z[i][j];
        if (sum > 0)
            for (std::size_t j = 0; j < n; ++j) p[i][j] = z[i][j] / sum;
    }
    std::vector<std::optional<double>> result(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j)
            if (z[i][j] > 0) any = true;
        if (!any) continue;
        double c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (z[i][j] <= 0 || j == i) continue;
            double indirect = 0;
            for (std::size_t q = 0; q < n; ++q) {
                if (q == i || q == j) continue;
                indirect += p[i][q] * p[q][j];
            }
            c += (p[i][j] + indirect) * (p[i][j] + indirect);
        }
        result[i] = c;
    }
    return result;
}

// --- statistics oracles --------------------------------------------------------

/// U statistic by direct pairwise comparison: #{a_i > b_j} + ties/2.
inline double mann_whitney_brute(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0;
    for (double x : a)
        for (double y : b) {
            if (x > y) u += 1.0;
            else if (x == y) u += 0.5;
        }
    return u;
}

/// Pearson chi-squared over an arbitrary contingency table.
inline double chi2_table_brute(const std::vector<std::vector<double>>& table) {
    std::size_t rows = table.size(), cols = table[0].size();
    std::vector<double> rs(rows, 0), cs(cols, 0);
    double n = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            rs[r] += table[r][c];
            cs[c] += table[r][c];
            n += table[r][c];
        }
    double chi2 = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double e = rs[r] * cs[c] / n;
            if (e > 0) chi2 += (table[r][c] - e) * (table[r][c] - e) / e;
        }
    return chi2;
}

/// R^2 of regressing y on X (with intercept) via normal equations and
/// Gaussian elimination with partial pivoting — independent of the
/// library's Householder route.
inline double ols_r2_brute(const std::vector<std::vector<double>>& x_cols,
                           const std::vector<double>& y) {
    const std::size_t n = y.size();
    const std::size_t k = x_cols.size() + 1;
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    auto col = [&](std::size_t j, std::size_t i) {
        return j == 0 ? 1.0 : x_cols[j - 1][i];
    };
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t i = 0; i < n; ++i) xtx[a][b] += col(a, i) * col(b, i);
        for (std::size_t i = 0; i < n; ++i) xty[a] += col(a, i) * y[i];
    }
    // gaussian elimination
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::abs(xtx[r][c]) > std::abs(xtx[pivot][c])) pivot = r;
        std::swap(xtx[c], xtx[pivot]);
        std::swap(xty[c], xty[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c || xtx[c][c] == 0) continue;
            double f = xtx[r][c] / xtx[c][c];
            for (std::size_t cc = 0; cc < k; ++cc) xtx[r][cc] -= f * xtx[c][cc];
            xty[r] -= f * xty[c];
        }
    }
    std::vector<double> beta(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        if (xtx[c][c] != 0) beta[c] = xty[c] / xtx[c][c];
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double sse = 0, sst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0;
        for (std::size_t j = 0; j < k; ++j) fit += beta[j] * col(j, i);
        sse += (y[i] - fit) * (y[i] - fit);
        sst += (y[i] - mean) * (y[i] - mean);
    }
    return sst > 0 ? 1.0 - sse / sst : 0.0;
}

// --- clustering oracle -----------------------------------------------------------

/// Adjusted Rand index between two labelings.
inline double adjusted_rand_index(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
    std::map<std::pair<std::size_t, std::size_t>, double> joint;
    std::map<std::size_t, double> ma, mb;
    const double n = static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1;
        ma[a[i]] += 1;
        mb[b[i]] += 1;
    }
    auto comb2 = [](double x) { return x * (x - 1) / 2.0; };
    double sum_joint = 0, sum_a = 0, sum_b = 0;
    for (auto& [k, v] : joint) sum_joint += comb2(v);
    for (auto& [k, v] : ma) sum_a += comb2(v);
    for (auto& [k, v] : mb) sum_b += comb2(v);
    double expected = sum_a * sum_b / comb2(n);
    double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;
    return (sum_joint - expected) / (max_index - expected);
}

}  // namespace oracles
