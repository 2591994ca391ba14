#pragma once

// Per-author language characteristics: word count, words per sentence,
// six-letter share, lexicon sentiment and novelty. Novelty is the mean
// TF-IDF of an author's stemmed stop-word-free vocabulary against the
// author population: (1/n) * sum_w f_w * log10(N / n_w).

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "innoprof/corpus.hpp"
#include "innoprof/text.hpp"

namespace innoprof {

struct LanguageProfile {
    std::size_t word_count = 0;
    double wps = 0;
    double six_letter_pct = 0;
    double sentiment = 0;
    double novelty = 0;
};

inline std::size_t word_count(const std::vector<std::string>& posts) {
    std::size_t n = 0;
    for (const auto& text : posts) n += tokenize(text).size();
    return n;
}

inline double wps(const std::vector<std::string>& posts) {
    std::size_t words = 0, sentences = 0;
    for (const auto& text : posts) {
        words += tokenize(text).size();
        sentences += count_sentences(text);
    }
    return sentences ? static_cast<double>(words) / static_cast<double>(sentences) : 0.0;
}

inline double six_letter_pct(const std::vector<std::string>& posts) {
    std::size_t words = 0, longs = 0;
    for (const auto& text : posts) {
        for (const auto& t : tokenize(text)) {
            ++words;
            if (t.n_letters > 6) ++longs;
        }
    }
    return words ? 100.0 * static_cast<double>(longs) / static_cast<double>(words) : 0.0;
}

/// Mean of per-post scores; a post scores the mean polarity of its
/// lexicon-matched tokens, zero when nothing matches.
inline double sentiment(const std::vector<std::string>& posts, const PolarityLexicon& lexicon) {
    if (posts.empty()) return 0.0;
    double total = 0;
    for (const auto& text : posts) {
        double sum = 0;
        std::size_t hits = 0;
        for (const auto& t : tokenize(text)) {
            auto it = lexicon.find(t.text);
            if (it != lexicon.end()) {
                sum += it->second;
                ++hits;
            }
        }
        total += hits ? sum / static_cast<double>(hits) : 0.0;
    }
    return total / static_cast<double>(posts.size());
}

// ---------------------------------------------------------------------------

/// Population-level term statistics for the novelty score. Built once over
/// all authors' processed (stemmed, stop-word-free) token streams.
class NoveltyContext {
public:
    /// One token stream per author; the outer index is the author index.
    explicit NoveltyContext(const std::vector<std::vector<std::string>>& author_tokens)
        : n_authors_(author_tokens.size()), freq_(author_tokens.size()) {
        for (std::size_t a = 0; a < author_tokens.size(); ++a) {
            for (const auto& w : author_tokens[a]) ++freq_[a][w];
        }
        for (const auto& f : freq_)
            for (const auto& [w, c] : f) ++author_freq_[w];
    }

    static NoveltyContext from_corpus(const Corpus& corpus, const StopwordSet& stopwords,
                                      const Stemmer& stemmer) {
        std::vector<std::vector<std::string>> streams(corpus.author_count());
        for (const auto& p : corpus.posts()) {
            auto& stream = streams[corpus.author_index(p.author_id)];
            for (const auto& t : tokenize(p.text)) {
                if (stopwords.count(t.text)) continue;
                stream.push_back(stemmer.stem(t.text));
            }
        }
        return NoveltyContext(streams);
    }

    std::size_t author_count() const { return n_authors_; }

    /// Number of authors using word w (document frequency over authors).
    std::size_t author_frequency(const std::string& w) const {
        auto it = author_freq_.find(w);
        return it == author_freq_.end() ? 0 : it->second;
    }

    double novelty(std::size_t author) const {
        const auto& f = freq_[author];
        std::size_t n = 0;
        for (const auto& [w, c] : f) n += c;
        if (n == 0) return 0.0;
        double sum = 0;
        for (const auto& [w, c] : f) {
            double idf = std::log10(static_cast<double>(n_authors_) /
                                    static_cast<double>(author_freq_.at(w)));
            sum += static_cast<double>(c) * idf;
        }
        return sum / static_cast<double>(n);
    }

private:
    std::size_t n_authors_;
    std::vector<std::unordered_map<std::string, std::size_t>> freq_;
    std::unordered_map<std::string, std::size_t> author_freq_;
};

// ---------------------------------------------------------------------------

struct LanguageOptions {
    StopwordSet stopwords;
    Stemmer stemmer = Stemmer::italian();
    PolarityLexicon lexicon;
};

/// Batch computation, one profile per author index.
inline std::vector<LanguageProfile> language_profiles(const Corpus& corpus,
                                                      const LanguageOptions& options) {
    auto by_author = corpus.posts_by_author();
    auto context = NoveltyContext::from_corpus(corpus, options.stopwords, options.stemmer);
    std::vector<LanguageProfile> profiles(corpus.author_count());
    for (std::size_t a = 0; a < corpus.author_count(); ++a) {
        std::vector<std::string> texts;
        texts.reserve(by_author[a].size());
        for (std::size_t i : by_author[a]) texts.push_back(corpus.posts()[i].text);
        auto& p = profiles[a];
        p.word_count = word_count(texts);
        p.wps = wps(texts);
        p.six_letter_pct = six_letter_pct(texts);
        p.sentiment = sentiment(texts, options.lexicon);
        p.novelty = context.novelty(a);
    }
    return profiles;
}

}  // namespace innoprof
