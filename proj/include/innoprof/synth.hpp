#pragma once

// Seeded synthetic forum corpora with a plantable innovator signal, used to
// exercise the whole pipeline without any real data. Innovators can be given
// more posts, longer posts, longer sentences, exclusive jargon (novelty and
// six-letter pressure) and a higher reply rate aimed at authors who have
// received few answers (out-distinctiveness pressure). With all multipliers
// at 1 and jargon disabled the two groups are exchangeable, which is what
// the null-calibration checks rely on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "innoprof/common.hpp"
#include "innoprof/corpus.hpp"
#include "innoprof/rng.hpp"

namespace innoprof {

struct SynthSpec {
    std::size_t n_authors = 5000;
    std::size_t n_innovators = 50;
    std::uint64_t seed = 1;

    // post-count distribution: P(1), P(2), P(3); the rest is a geometric
    // tail starting at 4. Defaults echo a heavy single-post population.
    double p_one_post = 0.524;
    double p_two_posts = 0.192;
    double p_three_posts = 0.0915;
    double tail_success = 0.35;
    double innovator_post_multiplier = 5.0;

    double mean_post_words = 91.0;
    double innovator_length_multiplier = 2.5;
    double mean_sentence_words = 12.0;
    double innovator_sentence_multiplier = 1.8;

    // vocabulary mixing
    std::size_t topic_vocab_size = 150;
    std::size_t filler_vocab_size = 200;
    std::size_t jargon_vocab_size = 2000;
    double filler_weight = 0.35;
    double innovator_jargon_weight = 0.25;
    double rest_jargon_weight = 0.0;
    std::vector<double> innovator_topic_weights{0.90, 0.05, 0.05};
    std::vector<double> rest_topic_weights{0.45, 0.30, 0.25};

    // reply behavior
    double reply_prob = 0.45;
    double innovator_reply_multiplier = 1.7;
    double rest_targeting_strength = 0.0;
    double innovator_targeting_strength = 1.5;

    // sentiment vocabulary (same rates for both groups by default)
    double positive_word_rate = 0.02;
    double negative_word_rate = 0.01;

    /// Signal-free configuration: exchangeable groups.
    static SynthSpec null_config(std::size_t authors, std::size_t innovators, std::uint64_t seed) {
        SynthSpec spec;
        spec.n_authors = authors;
        spec.n_innovators = innovators;
        spec.seed = seed;
        spec.innovator_post_multiplier = 1.0;
        spec.innovator_length_multiplier = 1.0;
        spec.innovator_sentence_multiplier = 1.0;
        spec.innovator_jargon_weight = 0.0;
        spec.rest_jargon_weight = 0.0;
        spec.innovator_topic_weights = spec.rest_topic_weights;
        spec.innovator_reply_multiplier = 1.0;
        spec.innovator_targeting_strength = spec.rest_targeting_strength;
        return spec;
    }

    void validate() const {
        if (n_innovators >= n_authors)
            throw ConfigError("synth: innovator count must be smaller than author count");
        if (n_authors == 0) throw ConfigError("synth: need at least one author");
        for (double p : {p_one_post, p_two_posts, p_three_posts, tail_success, filler_weight,
                         innovator_jargon_weight, rest_jargon_weight, reply_prob,
                         positive_word_rate, negative_word_rate})
            if (p < 0.0 || p > 1.0) throw ConfigError("synth: probabilities must lie in [0,1]");
        if (p_one_post + p_two_posts + p_three_posts > 1.0)
            throw ConfigError("synth: post-count probabilities exceed 1");
        if (reply_prob * innovator_reply_multiplier > 1.0)
            throw ConfigError("synth: innovator reply probability exceeds 1");
        if (innovator_topic_weights.size() != 3 || rest_topic_weights.size() != 3)
            throw ConfigError("synth: exactly 3 topic weight entries expected");
    }
};

struct SynthGroundTruth {
    SynthSpec spec;
    std::vector<std::string> innovator_ids;
    std::vector<int> post_topic;  // aligned with corpus post order
    std::vector<std::string> positive_words;
    std::vector<std::string> negative_words;
};

struct SynthResult {
    Corpus corpus;
    LabelMap labels;
    SynthGroundTruth truth;
};

namespace detail {

/// Pool words are letters-only so the shared tokenizer sees them whole; a
/// distinct prefix per pool keeps the vocabularies disjoint.
inline std::vector<std::string> word_pool(char prefix, std::size_t count, std::size_t min_len,
                                          std::size_t max_len, Rng& rng) {
    std::vector<std::string> pool;
    pool.reserve(count);
    std::unordered_set<std::string> seen;
    while (pool.size() < count) {
        std::size_t len = min_len + rng.next_below(max_len - min_len + 1);
        std::string w(1, prefix);
        for (std::size_t i = 1; i < len; ++i)
            w += static_cast<char>('a' + rng.next_below(26));
        if (seen.insert(w).second) pool.push_back(w);
    }
    return pool;
}

}  // namespace detail

inline SynthResult generate(const SynthSpec& spec) {
    spec.validate();
    Rng vocab_rng = Rng::substream(spec.seed, 7001, 0);  // vocabulary stream
    std::vector<std::vector<std::string>> topics(3);
    topics[0] = detail::word_pool('a', spec.topic_vocab_size, 7, 12, vocab_rng);
    topics[1] = detail::word_pool('b', spec.topic_vocab_size, 5, 9, vocab_rng);
    topics[2] = detail::word_pool('c', spec.topic_vocab_size, 5, 9, vocab_rng);
    auto filler = detail::word_pool('f', spec.filler_vocab_size, 3, 6, vocab_rng);
    auto jargon = detail::word_pool('z', spec.jargon_vocab_size, 8, 13, vocab_rng);
    auto positive = detail::word_pool('p', 20, 5, 9, vocab_rng);
    auto negative = detail::word_pool('n', 20, 5, 9, vocab_rng);

    Rng rng = Rng::substream(spec.seed, 1, 0);

    // innovator subset
    std::vector<std::size_t> author_order(spec.n_authors);
    for (std::size_t i = 0; i < spec.n_authors; ++i) author_order[i] = i;
    for (std::size_t i = spec.n_authors; i-- > 1;)
        std::swap(author_order[i], author_order[rng.next_below(i + 1)]);
    std::vector<char> is_innovator(spec.n_authors, 0);
    for (std::size_t i = 0; i < spec.n_innovators; ++i) is_innovator[author_order[i]] = 1;

    auto author_id = [](std::size_t i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "u%05zu", i);
        return std::string(buf);
    };

    // per-author post counts
    std::vector<std::size_t> post_count(spec.n_authors);
    std::size_t total_posts = 0;
    for (std::size_t a = 0; a < spec.n_authors; ++a) {
        double u = rng.next_double();
        std::size_t base;
        if (u < spec.p_one_post)
            base = 1;
        else if (u < spec.p_one_post + spec.p_two_posts)
            base = 2;
        else if (u < spec.p_one_post + spec.p_two_posts + spec.p_three_posts)
            base = 3;
        else
            base = 3 + rng.geometric(spec.tail_success);
        double mult = is_innovator[a] ? spec.innovator_post_multiplier : 1.0;
        post_count[a] = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::llround(static_cast<double>(base) * mult)));
        total_posts += post_count[a];
    }

    // global posting schedule: authors interleaved by a seeded shuffle
    std::vector<std::size_t> schedule;
    schedule.reserve(total_posts);
    for (std::size_t a = 0; a < spec.n_authors; ++a)
        schedule.insert(schedule.end(), post_count[a], a);
    for (std::size_t i = schedule.size(); i-- > 1;)
        std::swap(schedule[i], schedule[rng.next_below(i + 1)]);

    std::vector<Post> posts;
    posts.reserve(total_posts);
    std::vector<int> post_topic;
    post_topic.reserve(total_posts);
    std::vector<std::size_t> in_replies(spec.n_authors, 0);  // answers received so far
    std::vector<std::size_t> post_author_index;               // author of each emitted post
    std::int64_t t0 = 1609459200000;                          // 2021-01-01T00:00:00Z

    auto make_text = [&](bool innov, int topic) {
        double mean_words = spec.mean_post_words * (innov ? spec.innovator_length_multiplier : 1.0);
        double mean_sentence =
            spec.mean_sentence_words * (innov ? spec.innovator_sentence_multiplier : 1.0);
        std::size_t n_words =
            std::max<std::size_t>(1, rng.geometric(1.0 / std::max(1.0, mean_words)));
        double jargon_w = innov ? spec.innovator_jargon_weight : spec.rest_jargon_weight;
        std::string text;
        std::size_t sentence_left =
            std::max<std::size_t>(1, rng.geometric(1.0 / std::max(1.0, mean_sentence)));
        for (std::size_t w = 0; w < n_words; ++w) {
            const std::string* word;
            double u = rng.next_double();
            if (u < spec.positive_word_rate) {
                word = &positive[rng.next_below(positive.size())];
            } else if (u < spec.positive_word_rate + spec.negative_word_rate) {
                word = &negative[rng.next_below(negative.size())];
            } else if (rng.bernoulli(spec.filler_weight)) {
                word = &filler[rng.next_below(filler.size())];
            } else if (jargon_w > 0 && rng.bernoulli(jargon_w)) {
                word = &jargon[rng.next_below(jargon.size())];
            } else {
                word = &topics[topic][rng.next_below(topics[topic].size())];
            }
            if (!text.empty()) text += ' ';
            text += *word;
            if (--sentence_left == 0 && w + 1 < n_words) {
                text += '.';
                sentence_left =
                    std::max<std::size_t>(1, rng.geometric(1.0 / std::max(1.0, mean_sentence)));
            }
        }
        text += '.';
        return text;
    };

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        std::size_t a = schedule[i];
        bool innov = is_innovator[a] != 0;
        const auto& weights = innov ? spec.innovator_topic_weights : spec.rest_topic_weights;
        int topic = static_cast<int>(rng.categorical(weights));

        Post p;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "p%06zu", i);
        p.post_id = buf;
        p.author_id = author_id(a);
        p.timestamp_ms = t0 + static_cast<std::int64_t>(i) * 60000;
        p.text = make_text(innov, topic);

        double reply_p = spec.reply_prob * (innov ? spec.innovator_reply_multiplier : 1.0);
        bool reply = !posts.empty() && rng.bernoulli(reply_p);
        if (reply) {
            // candidate posts: a bounded random sample, weighted toward
            // authors with few received answers when targeting is on
            double tau = innov ? spec.innovator_targeting_strength : spec.rest_targeting_strength;
            std::size_t best = static_cast<std::size_t>(-1);
            constexpr std::size_t kCandidates = 48;
            std::vector<std::size_t> candidates;
            std::vector<double> weights_c;
            for (std::size_t c = 0; c < kCandidates; ++c) {
                std::size_t idx = rng.next_below(posts.size());
                if (post_author_index[idx] == a) continue;  // no self-replies
                candidates.push_back(idx);
                double w = 1.0;
                if (tau > 0)
                    w = std::pow(1.0 / (1.0 + static_cast<double>(in_replies[post_author_index[idx]])),
                                 tau);
                weights_c.push_back(w);
            }
            if (!candidates.empty()) best = candidates[rng.categorical(weights_c)];
            if (best != static_cast<std::size_t>(-1)) {
                p.parent_post_id = posts[best].post_id;
                p.thread_id = posts[best].thread_id;
                ++in_replies[post_author_index[best]];
            }
        }
        if (p.thread_id.empty()) {
            std::snprintf(buf, sizeof(buf), "t%06zu", i);
            p.thread_id = buf;
        }

        post_author_index.push_back(a);
        post_topic.push_back(topic);
        posts.push_back(std::move(p));
    }

    Corpus corpus(std::move(posts));
    std::vector<std::uint8_t> flags(corpus.author_count(), 0);
    std::vector<std::string> innovator_ids;
    for (std::size_t a = 0; a < spec.n_authors; ++a) {
        if (is_innovator[a]) {
            const std::string id = author_id(a);
            flags[corpus.author_index(id)] = 1;
            innovator_ids.push_back(id);
        }
    }

    SynthResult result{std::move(corpus), LabelMap(std::move(flags)),
                       SynthGroundTruth{spec, std::move(innovator_ids), std::move(post_topic),
                                        positive, negative}};
    return result;
}

/// Label table in the ingest format.
inline std::string labels_csv(const SynthResult& result) {
    std::string out = "author_id,innovator\n";
    for (std::size_t a = 0; a < result.corpus.author_count(); ++a) {
        out += result.corpus.authors()[a];
        out += result.labels.innovator(a) ? ",1\n" : ",0\n";
    }
    return out;
}

/// Polarity lexicon covering the generator's sentiment vocabulary.
inline std::string synth_lexicon_tsv(const SynthResult& result) {
    std::string out;
    for (const auto& w : result.truth.positive_words) out += w + "\t0.8\n";
    for (const auto& w : result.truth.negative_words) out += w + "\t-0.6\n";
    return out;
}

inline std::string ground_truth_json(const SynthResult& result) {
    nlohmann::json j;
    const auto& spec = result.truth.spec;
    j["seed"] = spec.seed;
    j["n_authors"] = spec.n_authors;
    j["n_innovators"] = spec.n_innovators;
    j["innovator_post_multiplier"] = spec.innovator_post_multiplier;
    j["innovator_length_multiplier"] = spec.innovator_length_multiplier;
    j["innovator_sentence_multiplier"] = spec.innovator_sentence_multiplier;
    j["innovator_jargon_weight"] = spec.innovator_jargon_weight;
    j["innovator_reply_multiplier"] = spec.innovator_reply_multiplier;
    j["innovator_targeting_strength"] = spec.innovator_targeting_strength;
    j["innovator_ids"] = result.truth.innovator_ids;
    nlohmann::json topics = nlohmann::json::array();
    for (std::size_t i = 0; i < result.corpus.posts().size(); ++i)
        topics.push_back({result.corpus.posts()[i].post_id, result.truth.post_topic[i]});
    j["post_topics"] = std::move(topics);
    j["positive_words"] = result.truth.positive_words;
    j["negative_words"] = result.truth.negative_words;
    return j.dump(2) + "\n";
}

}  // namespace innoprof
