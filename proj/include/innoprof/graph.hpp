#pragma once

// Directed weighted answer network: arc A -> B when A wrote at least one
// post whose parent resolves to a post authored by B. Weights count answers,
// self-replies are dropped, isolated authors stay in as nodes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "innoprof/corpus.hpp"
#include "innoprof/csv.hpp"

namespace innoprof {

struct Arc {
    std::size_t source;
    std::size_t target;
    std::int64_t weight;
};

class ReplyGraph {
public:
    ReplyGraph() = default;
    ReplyGraph(std::vector<std::string> node_ids, std::vector<Arc> arcs)
        : node_ids_(std::move(node_ids)) {
        out_adj_.resize(node_ids_.size());
        in_adj_.resize(node_ids_.size());
        std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
            return a.source != b.source ? a.source < b.source : a.target < b.target;
        });
        for (const auto& arc : arcs) {
            if (arc.source == arc.target || arc.weight <= 0) continue;
            out_adj_[arc.source].push_back({arc.target, arc.weight});
            in_adj_[arc.target].push_back({arc.source, arc.weight});
            ++arc_count_;
            total_weight_ += arc.weight;
        }
        for (auto& adj : in_adj_) std::sort(adj.begin(), adj.end());
    }

    std::size_t node_count() const { return node_ids_.size(); }
    std::size_t arc_count() const { return arc_count_; }
    std::int64_t total_weight() const { return total_weight_; }
    const std::vector<std::string>& node_ids() const { return node_ids_; }

    /// (neighbor, weight) pairs sorted by neighbor index; one entry per pair.
    const std::vector<std::pair<std::size_t, std::int64_t>>& out_neighbors(std::size_t v) const {
        return out_adj_[v];
    }
    const std::vector<std::pair<std::size_t, std::int64_t>>& in_neighbors(std::size_t v) const {
        return in_adj_[v];
    }

    bool isolate(std::size_t v) const { return out_adj_[v].empty() && in_adj_[v].empty(); }

    std::size_t isolate_count() const {
        std::size_t n = 0;
        for (std::size_t v = 0; v < node_count(); ++v)
            if (isolate(v)) ++n;
        return n;
    }

private:
    std::vector<std::string> node_ids_;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out_adj_;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> in_adj_;
    std::size_t arc_count_ = 0;
    std::int64_t total_weight_ = 0;
};

struct GraphBuildOptions {
    // When set, a thread post without an explicit parent counts as answering
    // the thread's opening post. Off by default.
    bool thread_opener_edges = false;
};

inline ReplyGraph build_graph(const Corpus& corpus, const GraphBuildOptions& options = {}) {
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> weights;
    const auto& posts = corpus.posts();
    for (std::size_t i = 0; i < posts.size(); ++i) {
        std::size_t parent = corpus.parent_of(i);
        if (parent == Corpus::kNoParent && options.thread_opener_edges) {
            const auto& thread = corpus.threads().at(posts[i].thread_id);
            if (!thread.empty() && thread.front() != i) parent = thread.front();
        }
        if (parent == Corpus::kNoParent) continue;
        std::size_t src = corpus.author_index(posts[i].author_id);
        std::size_t dst = corpus.author_index(posts[parent].author_id);
        if (src == dst) continue;
        ++weights[{src, dst}];
    }
    std::vector<Arc> arcs;
    arcs.reserve(weights.size());
    for (auto& [key, w] : weights) arcs.push_back({key.first, key.second, w});
    return ReplyGraph(corpus.authors(), std::move(arcs));
}

struct GraphSummary {
    std::size_t nodes = 0;
    std::size_t arcs = 0;
    std::int64_t total_weight = 0;
    std::size_t isolates = 0;
};

inline GraphSummary graph_summary(const ReplyGraph& graph) {
    return {graph.node_count(), graph.arc_count(), graph.total_weight(), graph.isolate_count()};
}

inline std::string edge_list_csv(const ReplyGraph& graph) {
    CsvWriter csv({"source", "target", "weight"});
    for (std::size_t v = 0; v < graph.node_count(); ++v)
        for (auto& [u, w] : graph.out_neighbors(v))
            csv.append_row({graph.node_ids()[v], graph.node_ids()[u], std::to_string(w)});
    return csv.content();
}

inline std::string node_list_csv(const ReplyGraph& graph) {
    CsvWriter csv({"author_id", "index"});
    for (std::size_t v = 0; v < graph.node_count(); ++v)
        csv.append_row({graph.node_ids()[v], std::to_string(v)});
    return csv.content();
}

}  // namespace innoprof
