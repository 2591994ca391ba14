#pragma once

// Per-node centralities on the reply graph: degree suite, in/out
// distinctiveness, harmonic closeness on the undirected projection, directed
// Brandes betweenness, and Burt's constraint on the symmetrized weighted
// graph. Constraint is undefined for isolates and reported as missing, never
// zero.

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "innoprof/common.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/graph.hpp"
#include "innoprof/parallel.hpp"

namespace innoprof {

struct NodeCentralities {
    std::size_t in_degree = 0;
    std::size_t out_degree = 0;
    std::int64_t w_in_degree = 0;
    std::int64_t w_out_degree = 0;
    double in_distinctiveness = 0;
    double out_distinctiveness = 0;
    double closeness = 0;
    double betweenness = 0;
    std::optional<double> constraint;
};

enum class DistinctivenessVariant {
    Unweighted,  // sum of log10((N-1)/deg(u)) over distinct neighbors
    Weighted,    // each neighbor's term multiplied by the arc weight
};

enum class ClosenessVariant {
    Harmonic,        // mean inverse distance, disconnection-safe
    FreemanLargest,  // classic closeness, scored on the largest component only
};

struct CentralityOptions {
    DistinctivenessVariant distinctiveness = DistinctivenessVariant::Unweighted;
    ClosenessVariant closeness = ClosenessVariant::Harmonic;
    unsigned threads = 1;
};

// ---------------------------------------------------------------------------

struct DegreeSuite {
    std::size_t in_degree = 0;
    std::size_t out_degree = 0;
    std::int64_t w_in_degree = 0;
    std::int64_t w_out_degree = 0;
};

inline DegreeSuite degree_suite(const ReplyGraph& graph, std::size_t node) {
    if (node >= graph.node_count()) throw ValidationError("unknown node index");
    DegreeSuite d;
    d.in_degree = graph.in_neighbors(node).size();
    d.out_degree = graph.out_neighbors(node).size();
    for (auto& [u, w] : graph.in_neighbors(node)) d.w_in_degree += w;
    for (auto& [u, w] : graph.out_neighbors(node)) d.w_out_degree += w;
    return d;
}

enum class Direction { In, Out };

/// In-distinctiveness rewards answers from peers who answer few others;
/// out-distinctiveness rewards answering peers few others answer.
inline double distinctiveness(const ReplyGraph& graph, std::size_t node, Direction direction,
                              DistinctivenessVariant variant = DistinctivenessVariant::Unweighted) {
    const std::size_t n = graph.node_count();
    if (n < 2) throw NumericalError("degenerate graph: distinctiveness needs N >= 2");
    if (node >= n) throw ValidationError("unknown node index");
    const auto& neighbors =
        direction == Direction::In ? graph.in_neighbors(node) : graph.out_neighbors(node);
    double sum = 0;
    for (auto& [u, w] : neighbors) {
        std::size_t peer_degree = direction == Direction::In ? graph.out_neighbors(u).size()
                                                             : graph.in_neighbors(u).size();
        double term = std::log10(static_cast<double>(n - 1) / static_cast<double>(peer_degree));
        if (variant == DistinctivenessVariant::Weighted) term *= static_cast<double>(w);
        sum += term;
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Shortest-path metrics

namespace detail {

/// Undirected simple projection as sorted adjacency lists.
inline std::vector<std::vector<std::size_t>> undirected_adjacency(const ReplyGraph& graph) {
    std::vector<std::vector<std::size_t>> adj(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        for (auto& [u, w] : graph.out_neighbors(v)) {
            adj[v].push_back(u);
            adj[u].push_back(v);
        }
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return adj;
}

inline std::vector<int> bfs_distances(const std::vector<std::vector<std::size_t>>& adj,
                                      std::size_t source) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t u : adj[v]) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

/// Membership mask of the largest undirected component (ties broken by the
/// smallest contained node index).
inline std::vector<char> largest_component(const std::vector<std::vector<std::size_t>>& adj) {
    const std::size_t n = adj.size();
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    std::vector<std::size_t> comp_size;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = n_comp;
        std::size_t size = 0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            ++size;
            for (std::size_t u : adj[v])
                if (comp[u] < 0) {
                    comp[u] = n_comp;
                    queue.push_back(u);
                }
        }
        comp_size.push_back(size);
        ++n_comp;
    }
    int best = 0;
    for (int c = 1; c < n_comp; ++c)
        if (comp_size[c] > comp_size[best]) best = c;
    std::vector<char> mask(n, 0);
    for (std::size_t v = 0; v < n; ++v) mask[v] = comp[v] == best ? 1 : 0;
    return mask;
}

}  // namespace detail

/// Harmonic closeness: (1/(N-1)) * sum of inverse undirected distances,
/// with unreachable pairs contributing zero. Equals 1 exactly when the node
/// is directly connected to everyone.
inline std::vector<double> closeness_all(const ReplyGraph& graph,
                                         ClosenessVariant variant = ClosenessVariant::Harmonic,
                                         unsigned threads = 1) {
    const std::size_t n = graph.node_count();
    std::vector<double> result(n, 0.0);
    if (n < 2) return result;
    auto adj = detail::undirected_adjacency(graph);
    std::vector<char> in_largest;
    std::size_t largest_size = 0;
    if (variant == ClosenessVariant::FreemanLargest) {
        in_largest = detail::largest_component(adj);
        for (char m : in_largest) largest_size += m ? 1 : 0;
    }
    parallel_chunks(n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            if (variant == ClosenessVariant::FreemanLargest && (!in_largest[v] || largest_size < 2))
                continue;
            auto dist = detail::bfs_distances(adj, v);
            if (variant == ClosenessVariant::Harmonic) {
                double sum = 0;
                for (std::size_t u = 0; u < n; ++u)
                    if (u != v && dist[u] > 0) sum += 1.0 / dist[u];
                result[v] = sum / static_cast<double>(n - 1);
            } else {
                double sum = 0;
                for (std::size_t u = 0; u < n; ++u)
                    if (u != v && dist[u] > 0) sum += dist[u];
                result[v] = static_cast<double>(largest_size - 1) / sum;
            }
        }
    });
    return result;
}

inline double closeness(const ReplyGraph& graph, std::size_t node,
                        ClosenessVariant variant = ClosenessVariant::Harmonic) {
    if (node >= graph.node_count()) throw ValidationError("unknown node index");
    return closeness_all(graph, variant)[node];
}

/// Directed unweighted betweenness via Brandes' accumulation, unnormalized,
/// with fractional geodesic credit. Per-source passes run over a fixed chunk
/// grid so results do not depend on the thread count.
inline std::vector<double> betweenness(const ReplyGraph& graph, unsigned threads = 1) {
    const std::size_t n = graph.node_count();
    std::vector<double> result(n, 0.0);
    if (n < 3) return result;

    constexpr std::size_t kChunks = 64;
    std::size_t n_chunks = std::min(kChunks, n);
    std::vector<std::vector<double>> partial(n_chunks, std::vector<double>(n, 0.0));

    parallel_chunks(
        n, threads,
        [&](std::size_t chunk, std::size_t begin, std::size_t end) {
            auto& acc = partial[chunk];
            std::vector<std::size_t> stack;
            std::vector<std::vector<std::size_t>> pred(n);
            std::vector<double> sigma(n), delta(n);
            std::vector<int> dist(n);
            for (std::size_t s = begin; s < end; ++s) {
                stack.clear();
                for (std::size_t v = 0; v < n; ++v) {
                    pred[v].clear();
                    sigma[v] = 0;
                    dist[v] = -1;
                    delta[v] = 0;
                }
                sigma[s] = 1;
                dist[s] = 0;
                std::deque<std::size_t> queue{s};
                while (!queue.empty()) {
                    std::size_t v = queue.front();
                    queue.pop_front();
                    stack.push_back(v);
                    for (auto& [u, w] : graph.out_neighbors(v)) {
                        if (dist[u] < 0) {
                            dist[u] = dist[v] + 1;
                            queue.push_back(u);
                        }
                        if (dist[u] == dist[v] + 1) {
                            sigma[u] += sigma[v];
                            pred[u].push_back(v);
                        }
                    }
                }
                for (std::size_t i = stack.size(); i-- > 0;) {
                    std::size_t w = stack[i];
                    for (std::size_t v : pred[w])
                        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                    if (w != s) acc[w] += delta[w];
                }
            }
        },
        n_chunks);

    for (std::size_t c = 0; c < n_chunks; ++c)
        for (std::size_t v = 0; v < n; ++v) result[v] += partial[c][v];
    return result;
}

// ---------------------------------------------------------------------------
// Burt's constraint

namespace detail {

/// Symmetrized tie strengths z'_ij = z_ij + z_ji, as sorted sparse rows.
inline std::vector<std::vector<std::pair<std::size_t, double>>> symmetrized_weights(
    const ReplyGraph& graph) {
    std::vector<std::unordered_map<std::size_t, double>> acc(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        for (auto& [u, w] : graph.out_neighbors(v)) {
            acc[v][u] += static_cast<double>(w);
            acc[u][v] += static_cast<double>(w);
        }
    }
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        rows[v].assign(acc[v].begin(), acc[v].end());
        std::sort(rows[v].begin(), rows[v].end());
    }
    return rows;
}

}  // namespace detail

/// Burt's constraint C_i = sum_j (p_ij + sum_q p_iq p_qj)^2 over the
/// symmetrized weighted ego network. Returns nullopt for isolates. Raw
/// values are reported; dense small ego networks can legitimately exceed 1.
inline std::vector<std::optional<double>> constraint_all(const ReplyGraph& graph) {
    auto rows = detail::symmetrized_weights(graph);
    const std::size_t n = graph.node_count();
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
        for (auto& [u, w] : rows[v]) row_sum[v] += w;

    auto tie = [&](std::size_t a, std::size_t b) -> double {
        const auto& row = rows[a];
        auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const auto& entry, std::size_t key) { return entry.first < key; });
        return (it != row.end() && it->first == b) ? it->second : 0.0;
    };

    std::vector<std::optional<double>> result(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].empty()) continue;  // isolate: constraint undefined
        double c = 0;
        for (auto& [j, zij] : rows[i]) {
            double p_ij = zij / row_sum[i];
            double indirect = 0;
            for (auto& [q, ziq] : rows[i]) {
                if (q == j) continue;
                double zqj = tie(q, j);
                if (zqj == 0.0) continue;
                indirect += (ziq / row_sum[i]) * (zqj / row_sum[q]);
            }
            double term = p_ij + indirect;
            c += term * term;
        }
        result[i] = c;
    }
    return result;
}

inline std::optional<double> constraint(const ReplyGraph& graph, std::size_t node) {
    if (node >= graph.node_count()) throw ValidationError("unknown node index");
    return constraint_all(graph)[node];
}

// ---------------------------------------------------------------------------

inline std::vector<NodeCentralities> all_centralities(const ReplyGraph& graph,
                                                      const CentralityOptions& options = {}) {
    const std::size_t n = graph.node_count();
    std::vector<NodeCentralities> out(n);
    if (n == 0) return out;

    for (std::size_t v = 0; v < n; ++v) {
        auto d = degree_suite(graph, v);
        out[v].in_degree = d.in_degree;
        out[v].out_degree = d.out_degree;
        out[v].w_in_degree = d.w_in_degree;
        out[v].w_out_degree = d.w_out_degree;
        if (n >= 2) {
            out[v].in_distinctiveness =
                distinctiveness(graph, v, Direction::In, options.distinctiveness);
            out[v].out_distinctiveness =
                distinctiveness(graph, v, Direction::Out, options.distinctiveness);
        }
    }
    auto close = closeness_all(graph, options.closeness, options.threads);
    auto between = betweenness(graph, options.threads);
    auto constr = constraint_all(graph);
    for (std::size_t v = 0; v < n; ++v) {
        out[v].closeness = close[v];
        out[v].betweenness = between[v];
        out[v].constraint = constr[v];
    }
    return out;
}

/// One row per author, fixed column order, missing constraint as empty field.
inline std::string centralities_csv(const ReplyGraph& graph,
                                    const std::vector<NodeCentralities>& c) {
    CsvWriter csv({"author_id", "in_degree", "out_degree", "w_in_degree", "w_out_degree",
                   "in_distinctiveness", "out_distinctiveness", "closeness", "betweenness",
                   "constraint"});
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        csv.append_row({graph.node_ids()[v], std::to_string(c[v].in_degree),
                        std::to_string(c[v].out_degree), std::to_string(c[v].w_in_degree),
                        std::to_string(c[v].w_out_degree), format_number(c[v].in_distinctiveness),
                        format_number(c[v].out_distinctiveness), format_number(c[v].closeness),
                        format_number(c[v].betweenness),
                        c[v].constraint ? format_number(*c[v].constraint) : std::string()});
    }
    return csv.content();
}

}  // namespace innoprof
