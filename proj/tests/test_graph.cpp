#include <catch2/catch_amalgamated.hpp>

#include "innoprof/graph.hpp"

using namespace innoprof;

namespace {

Post make_post(std::string id, std::string author, std::string thread, const char* parent,
               std::int64_t ts) {
    Post p;
    p.post_id = std::move(id);
    p.author_id = std::move(author);
    p.thread_id = std::move(thread);
    if (parent) p.parent_post_id = parent;
    p.timestamp_ms = ts;
    p.text = "testo";
    return p;
}

}  // namespace

TEST_CASE("one post, no replies: one node, zero arcs") {
    Corpus corpus({make_post("p1", "a", "t1", nullptr, 0)});
    auto graph = build_graph(corpus);
    CHECK(graph.node_count() == 1);
    CHECK(graph.arc_count() == 0);
    auto s = graph_summary(graph);
    CHECK(s.isolates == 1);
}

TEST_CASE("reply chain produces both directions") {
    // B opens, A replies to B, B replies to A's reply
    Corpus corpus({make_post("p1", "b", "t1", nullptr, 0), make_post("p2", "a", "t1", "p1", 1),
                   make_post("p3", "b", "t1", "p2", 2)});
    auto graph = build_graph(corpus);
    REQUIRE(graph.node_count() == 2);
    std::size_t a = 0, b = 1;  // lexicographic author order
    REQUIRE(graph.out_neighbors(a).size() == 1);
    CHECK(graph.out_neighbors(a)[0] == std::pair<std::size_t, std::int64_t>{b, 1});
    REQUIRE(graph.out_neighbors(b).size() == 1);
    CHECK(graph.out_neighbors(b)[0] == std::pair<std::size_t, std::int64_t>{a, 1});

    auto s = graph_summary(graph);
    CHECK(s.nodes == 2);
    CHECK(s.arcs == 2);
    CHECK(s.total_weight == 2);
    CHECK(s.isolates == 0);
}

TEST_CASE("two replies to the same author collapse into one weighted arc") {
    Corpus corpus({make_post("p1", "b", "t1", nullptr, 0), make_post("p2", "b", "t1", nullptr, 1),
                   make_post("p3", "a", "t1", "p1", 2), make_post("p4", "a", "t1", "p2", 3)});
    auto graph = build_graph(corpus);
    REQUIRE(graph.out_neighbors(0).size() == 1);
    CHECK(graph.out_neighbors(0)[0].second == 2);
    CHECK(graph.arc_count() == 1);
    CHECK(graph.total_weight() == 2);
}

TEST_CASE("self-replies are dropped") {
    Corpus corpus({make_post("p1", "a", "t1", nullptr, 0), make_post("p2", "a", "t1", "p1", 1)});
    auto graph = build_graph(corpus);
    CHECK(graph.arc_count() == 0);
    CHECK(graph.node_count() == 1);
}

TEST_CASE("star of one answerer replying to 5 distinct authors") {
    std::vector<Post> posts;
    for (int i = 0; i < 5; ++i)
        posts.push_back(make_post("p" + std::to_string(i), "u" + std::to_string(i),
                                  "t" + std::to_string(i), nullptr, i));
    for (int i = 0; i < 5; ++i)
        posts.push_back(make_post("r" + std::to_string(i), "hub", "t" + std::to_string(i),
                                  ("p" + std::to_string(i)).c_str(), 10 + i));
    Corpus corpus(std::move(posts));
    auto s = graph_summary(build_graph(corpus));
    CHECK(s.nodes == 6);
    CHECK(s.arcs == 5);
    CHECK(s.total_weight == 5);
    CHECK(s.isolates == 0);
}

TEST_CASE("empty corpus yields an empty summary") {
    auto s = graph_summary(build_graph(Corpus(std::vector<Post>{})));
    CHECK(s.nodes == 0);
    CHECK(s.arcs == 0);
    CHECK(s.total_weight == 0);
    CHECK(s.isolates == 0);
}

TEST_CASE("graph construction is invariant under post reordering") {
    std::vector<Post> posts{make_post("p1", "b", "t1", nullptr, 0),
                            make_post("p2", "a", "t1", "p1", 1),
                            make_post("p3", "c", "t1", "p2", 2)};
    Corpus forward(posts);
    std::reverse(posts.begin(), posts.end());
    Corpus backward(posts);
    auto g1 = build_graph(forward);
    auto g2 = build_graph(backward);
    CHECK(edge_list_csv(g1) == edge_list_csv(g2));
    CHECK(node_list_csv(g1) == node_list_csv(g2));
}

TEST_CASE("arc weights equal resolvable other-author replies") {
    std::vector<Post> posts{
        make_post("p1", "a", "t1", nullptr, 0),  make_post("p2", "b", "t1", "p1", 1),
        make_post("p3", "c", "t1", "p1", 2),     make_post("p4", "a", "t1", "p2", 3),
        make_post("p5", "a", "t2", nullptr, 4),  make_post("p6", "a", "t2", "p5", 5),  // self
    };
    Corpus corpus(std::move(posts));
    auto graph = build_graph(corpus);
    std::size_t resolvable_other = 3;  // p2, p3, p4
    CHECK(static_cast<std::size_t>(graph.total_weight()) == resolvable_other);
}

TEST_CASE("thread opener edges are off by default and opt-in") {
    std::vector<Post> posts{make_post("p1", "op", "t1", nullptr, 0),
                            make_post("p2", "x", "t1", nullptr, 1)};
    Corpus corpus(std::move(posts));
    CHECK(build_graph(corpus).arc_count() == 0);
    GraphBuildOptions options;
    options.thread_opener_edges = true;
    auto graph = build_graph(corpus, options);
    CHECK(graph.arc_count() == 1);
    // x -> op
    std::size_t op = corpus.author_index("op"), x = corpus.author_index("x");
    REQUIRE(graph.out_neighbors(x).size() == 1);
    CHECK(graph.out_neighbors(x)[0].first == op);
}

TEST_CASE("edge list export is sorted and complete") {
    Corpus corpus({make_post("p1", "b", "t1", nullptr, 0), make_post("p2", "a", "t1", "p1", 1),
                   make_post("p3", "c", "t1", "p1", 2)});
    auto graph = build_graph(corpus);
    CHECK(edge_list_csv(graph) == "source,target,weight\na,b,1\nc,b,1\n");
    CHECK(node_list_csv(graph) == "author_id,index\na,0\nb,1\nc,2\n");
}
