#include <catch2/catch_amalgamated.hpp>

#include "innoprof/text.hpp"

using namespace innoprof;

TEST_CASE("tokenizer splits on non-letters and lowercases") {
    auto tokens = tokenize_words("Ciao, Mondo! 123 test42x");
    REQUIRE(tokens == std::vector<std::string>{"ciao", "mondo", "test", "x"});
}

TEST_CASE("apostrophes split tokens") {
    auto tokens = tokenize_words("dell'acqua l’idea");
    REQUIRE(tokens == std::vector<std::string>{"dell", "acqua", "l", "idea"});
}

TEST_CASE("accented letters are kept and lowercased") {
    auto tokens = tokenize("Perché CITTÀ");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0].text == "perché");
    CHECK(tokens[1].text == "città");
    CHECK(tokens[0].n_letters == 6);
    CHECK(tokens[1].n_letters == 5);
}

TEST_CASE("letter counts use code points, not bytes") {
    auto tokens = tokenize("èèèèèèè");  // 7 x e-grave
    REQUIRE(tokens.size() == 1);
    CHECK(tokens[0].n_letters == 7);
}

TEST_CASE("malformed UTF-8 does not crash the tokenizer") {
    std::string bad = "ab\xFF\xFE cd\xC3";
    auto tokens = tokenize_words(bad);
    REQUIRE(tokens.size() >= 2);
    CHECK(tokens[0] == "ab");
}

TEST_CASE("sentence counting") {
    CHECK(count_sentences("Ciao. Come stai?") == 2);
    CHECK(count_sentences("una frase senza punto") == 1);
    CHECK(count_sentences("") == 0);
    CHECK(count_sentences("Tre... puntini! Fine.") == 2);
    CHECK(count_sentences(". . .") == 0);           // no words, no sentences
    CHECK(count_sentences("a.b") == 1);             // terminator not followed by space
    CHECK(count_sentences("prima… seconda") == 2);
}

TEST_CASE("stemmer strips the longest eligible suffix") {
    auto stemmer = Stemmer::italian();
    CHECK(stemmer.stem("innovazione") == "innov");
    CHECK(stemmer.stem("complimenti") == "compl");  // "imenti" beats nothing shorter
    CHECK(stemmer.stem("quark") == "quark");
    CHECK(stemmer.stem("ottimo") == "ottimo");  // bare vowels are never stripped
    CHECK(stemmer.stem("velocemente") == "veloce");
}

TEST_CASE("stemmer honors min stem length") {
    Stemmer s({{"zione", 4}});
    CHECK(s.stem("stazione") == "stazione");  // stripping would leave only 3 letters
    CHECK(s.stem("informazione") == "informa");
}

TEST_CASE("custom rule table") {
    Stemmer s({{"ing", 3}, {"s", 3}});
    CHECK(s.stem("walking") == "walk");
    CHECK(s.stem("cats") == "cat");
    CHECK(Stemmer::none().stem("walking") == "walking");
}
