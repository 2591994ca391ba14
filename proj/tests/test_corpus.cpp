#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "innoprof/corpus.hpp"

using namespace innoprof;

namespace {

std::string line(const std::string& id, const std::string& author, const std::string& thread,
                 const char* parent, const std::string& ts, const std::string& text) {
    nlohmann::json j;
    j["post_id"] = id;
    j["author_id"] = author;
    j["thread_id"] = thread;
    if (parent) j["parent_post_id"] = parent;
    else j["parent_post_id"] = nullptr;
    j["timestamp"] = ts;
    j["text"] = text;
    return j.dump() + "\n";
}

}  // namespace

TEST_CASE("three well-formed lines parse into 3 posts, 2 authors") {
    std::string input = line("p1", "alice", "t1", nullptr, "2021-01-01T10:00:00Z", "ciao a tutti") +
                        line("p2", "bob", "t1", "p1", "2021-01-01T10:05:00Z", "benvenuta") +
                        line("p3", "alice", "t1", "p2", "2021-01-01T10:10:00Z", "grazie");
    auto result = parse_posts(input, {.strict = true});
    CHECK(result.corpus.posts().size() == 3);
    CHECK(result.corpus.author_count() == 2);
    CHECK(result.report.findings.empty());
}

TEST_CASE("duplicate post_id names the id and both line numbers") {
    std::string input = line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "x") +
                        line("p2", "b", "t1", nullptr, "2021-01-01T10:01:00Z", "y") +
                        line("p1", "c", "t1", nullptr, "2021-01-01T10:02:00Z", "z");
    auto result = parse_posts(input);
    REQUIRE(result.report.error_count() == 1);
    const auto& f = result.report.findings[0];
    CHECK(f.line == 3);
    CHECK(f.message.find("p1") != std::string::npos);
    CHECK(f.message.find("line 1") != std::string::npos);
    CHECK(result.corpus.posts().size() == 2);  // first occurrence kept

    CHECK_THROWS_AS(parse_posts(input, {.strict = true}), ValidationError);
}

TEST_CASE("cross-thread parent is a validation error") {
    std::string input = line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "x") +
                        line("p2", "b", "t2", "p1", "2021-01-01T10:01:00Z", "y");
    auto result = parse_posts(input);
    REQUIRE(result.report.error_count() == 1);
    CHECK(result.report.findings[0].message.find("cross-thread parent") != std::string::npos);
    // the broken link is severed in lenient mode
    CHECK(result.corpus.parent_of(1) == Corpus::kNoParent);
    CHECK_THROWS_AS(parse_posts(input, {.strict = true}), ValidationError);
}

TEST_CASE("unknown parent reference is collected") {
    std::string input = line("p1", "a", "t1", "ghost", "2021-01-01T10:00:00Z", "x");
    auto result = parse_posts(input);
    REQUIRE(result.report.error_count() == 1);
    CHECK(result.report.findings[0].message.find("ghost") != std::string::npos);
}

TEST_CASE("malformed records report their line number") {
    std::string input = "{not json\n" + line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "x") +
                        R"({"post_id":"p2","author_id":"b","thread_id":"t1","timestamp":"nope","text":"y"})" "\n";
    auto result = parse_posts(input);
    CHECK(result.report.error_count() == 2);
    CHECK(result.report.findings[0].line == 1);
    CHECK(result.report.findings[1].line == 3);
    CHECK(result.corpus.posts().size() == 1);
}

TEST_CASE("author exclusion drops posts before indexing") {
    std::string input = line("p1", "hr", "t1", nullptr, "2021-01-01T10:00:00Z", "annuncio") +
                        line("p2", "a", "t1", "p1", "2021-01-01T10:01:00Z", "risposta");
    ParseOptions options;
    options.exclude_authors.insert("hr");
    auto result = parse_posts(input, options);
    CHECK(result.corpus.posts().size() == 1);
    CHECK(result.corpus.author_count() == 1);
    CHECK(result.corpus.parent_of(0) == Corpus::kNoParent);
    CHECK(result.report.error_count() == 0);  // removed parent is only a warning
    REQUIRE(result.report.findings.size() == 1);
    CHECK(result.report.findings[0].message.find("author exclusion") != std::string::npos);
}

TEST_CASE("round trip serialization is lossless") {
    std::string input =
        line("p1", "alice", "t1", nullptr, "2021-01-01T10:00:00Z", "testo, con \"virgolette\"\ne a capo") +
        line("p2", "bob", "t1", "p1", "2021-03-05T23:59:59.250Z", "ok");
    auto first = parse_posts(input, {.strict = true});
    auto serialized = corpus_to_jsonl(first.corpus);
    auto second = parse_posts(serialized, {.strict = true});
    REQUIRE(second.corpus.posts().size() == first.corpus.posts().size());
    for (std::size_t i = 0; i < first.corpus.posts().size(); ++i) {
        const auto& a = first.corpus.posts()[i];
        const auto& b = second.corpus.posts()[i];
        CHECK(a.post_id == b.post_id);
        CHECK(a.author_id == b.author_id);
        CHECK(a.thread_id == b.thread_id);
        CHECK(a.parent_post_id == b.parent_post_id);
        CHECK(a.timestamp_ms == b.timestamp_ms);
        CHECK(a.text == b.text);
    }
}

TEST_CASE("timestamp parsing variants") {
    CHECK(parse_iso8601_ms("2021-01-01T00:00:00Z") == 1609459200000);
    CHECK(parse_iso8601_ms("2021-01-01 00:00:00") == 1609459200000);
    CHECK(parse_iso8601_ms("2021-01-01T01:00:00+01:00") == 1609459200000);
    CHECK(parse_iso8601_ms("2020-12-31T23:30:00-00:30") == 1609459200000);
    CHECK(parse_iso8601_ms("2021-01-01T00:00:00.500Z") == 1609459200500);
    CHECK_FALSE(parse_iso8601_ms("01/02/2021").has_value());
    CHECK_FALSE(parse_iso8601_ms("2021-13-01T00:00:00Z").has_value());
}

TEST_CASE("labels: 5 rows, 1 flagged") {
    std::string posts;
    for (int i = 1; i <= 5; ++i)
        posts += line("p" + std::to_string(i), "u" + std::to_string(i), "t1", nullptr,
                      "2021-01-01T10:00:00Z", "ciao");
    auto corpus = parse_posts(posts, {.strict = true}).corpus;
    ValidationReport report;
    auto labels = parse_labels("author_id,innovator\nu1,0\nu2,1\nu3,false\nu4,0\nu5,0\n", corpus,
                               report);
    CHECK(labels.innovator_count() == 1);
    CHECK(labels.innovator(corpus.author_index("u2")));
}

TEST_CASE("empty label file leaves everyone non-innovator") {
    auto corpus = parse_posts(line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "x"),
                              {.strict = true})
                      .corpus;
    ValidationReport report;
    auto labels = parse_labels("author_id,innovator\n", corpus, report);
    CHECK(labels.innovator_count() == 0);
}

TEST_CASE("label for unknown author: strict errors, lenient warns") {
    auto corpus = parse_posts(line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "x"),
                              {.strict = true})
                      .corpus;
    ValidationReport lenient;
    auto labels = parse_labels("author_id,innovator\nu7,true\n", corpus, lenient);
    CHECK(labels.innovator_count() == 0);
    CHECK(lenient.findings.size() == 1);
    CHECK(lenient.error_count() == 0);

    ValidationReport strict;
    CHECK_THROWS_AS(parse_labels("author_id,innovator\nu7,true\n", corpus, strict, true),
                    ValidationError);
}

TEST_CASE("lexical indices hand counts") {
    auto one = parse_posts(line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "a b c"),
                           {.strict = true})
                   .corpus;
    auto idx = lexical_indices(one);
    CHECK(idx.token_count == 3);
    CHECK(idx.type_count == 3);
    CHECK(idx.hapax_count == 3);
    CHECK(idx.type_token_ratio == 1.0);
    CHECK(idx.hapax_pct == 1.0);

    auto two = parse_posts(line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "a a b"),
                           {.strict = true})
                   .corpus;
    auto idx2 = lexical_indices(two);
    CHECK(idx2.token_count == 3);
    CHECK(idx2.type_count == 2);
    CHECK(idx2.hapax_count == 1);
    CHECK(idx2.type_token_ratio == Catch::Approx(2.0 / 3.0));
    CHECK(idx2.hapax_pct == Catch::Approx(0.5));
}

TEST_CASE("lexical indices invariant under post reordering") {
    std::string a = line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "uno due tre") +
                    line("p2", "b", "t2", nullptr, "2021-01-01T11:00:00Z", "due tre quattro");
    std::string b = line("p2", "b", "t2", nullptr, "2021-01-01T11:00:00Z", "due tre quattro") +
                    line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "uno due tre");
    auto ia = lexical_indices(parse_posts(a, {.strict = true}).corpus);
    auto ib = lexical_indices(parse_posts(b, {.strict = true}).corpus);
    CHECK(ia.token_count == ib.token_count);
    CHECK(ia.type_count == ib.type_count);
    CHECK(ia.hapax_count == ib.hapax_count);
}

TEST_CASE("concatenating a corpus with itself doubles tokens, zeroes hapaxes") {
    std::string base = line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "uno due due") +
                       line("p2", "b", "t2", nullptr, "2021-01-01T11:00:00Z", "tre");
    std::string doubled = base + line("p3", "a", "t3", nullptr, "2021-01-02T10:00:00Z", "uno due due") +
                          line("p4", "b", "t4", nullptr, "2021-01-02T11:00:00Z", "tre");
    auto i1 = lexical_indices(parse_posts(base, {.strict = true}).corpus);
    auto i2 = lexical_indices(parse_posts(doubled, {.strict = true}).corpus);
    CHECK(i2.token_count == 2 * i1.token_count);
    CHECK(i2.type_count == i1.type_count);
    CHECK(i2.hapax_count == 0);
}

TEST_CASE("empty corpus refuses lexical indices") {
    Corpus empty;
    CHECK_THROWS_AS(lexical_indices(empty), ValidationError);
}

TEST_CASE("thread ordering is timestamp-nondecreasing with input-order ties") {
    std::string input = line("p1", "a", "t1", nullptr, "2021-01-01T10:05:00Z", "later") +
                        line("p2", "b", "t1", nullptr, "2021-01-01T10:00:00Z", "earlier") +
                        line("p3", "c", "t1", nullptr, "2021-01-01T10:00:00Z", "tie");
    auto corpus = parse_posts(input, {.strict = true}).corpus;
    const auto& thread = corpus.threads().at("t1");
    REQUIRE(thread.size() == 3);
    CHECK(corpus.posts()[thread[0]].post_id == "p2");
    CHECK(corpus.posts()[thread[1]].post_id == "p3");  // tie keeps input order
    CHECK(corpus.posts()[thread[2]].post_id == "p1");
}

TEST_CASE("empty text is flagged but not fatal") {
    std::string input = line("p1", "a", "t1", nullptr, "2021-01-01T10:00:00Z", "");
    auto result = parse_posts(input, {.strict = true});  // warnings survive strict mode
    CHECK(result.corpus.posts().size() == 1);
    REQUIRE(result.report.findings.size() == 1);
    CHECK(result.report.findings[0].severity == FindingSeverity::Warning);
}
