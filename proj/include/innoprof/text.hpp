#pragma once

// UTF-8 tokenization, sentence segmentation and the suffix-stripping stemmer.
// One tokenizer is shared by every module so that word counts, lexical
// indices and novelty all agree on what a "word" is: a maximal run of
// alphabetic code points, lowercased. Apostrophes and digits split tokens.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "innoprof/common.hpp"

namespace innoprof {

using CodePoint = std::uint32_t;

inline constexpr CodePoint kReplacementChar = 0xFFFD;

/// Decodes one UTF-8 sequence starting at `pos`; advances `pos`.
/// Malformed bytes decode to U+FFFD and advance by one byte.
inline CodePoint utf8_next(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    CodePoint cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return kReplacementChar;
    }
    if (pos + len > s.size()) {
        ++pos;
        return kReplacementChar;
    }
    for (int i = 1; i < len; ++i) {
        unsigned char bi = byte(pos + i);
        if ((bi & 0xC0) != 0x80) {
            ++pos;
            return kReplacementChar;
        }
        cp = (cp << 6) | (bi & 0x3F);
    }
    pos += len;
    return cp;
}

inline void utf8_append(std::string& out, CodePoint cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Letter classification over the blocks that matter for European-language
// corpora. Anything outside these ranges is a token separator.
inline bool is_letter(CodePoint cp) {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;  // Latin-1 letters
    if (cp >= 0x100 && cp <= 0x17F) return true;                    // Latin Extended-A
    if (cp >= 0x180 && cp <= 0x24F) return true;                    // Latin Extended-B
    if (cp >= 0x370 && cp <= 0x3FF) return cp != 0x3A2 && cp >= 0x386;  // Greek
    if (cp >= 0x400 && cp <= 0x4FF) return true;                    // Cyrillic
    return false;
}

inline CodePoint to_lower(CodePoint cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;  // Latin-1 uppercase
    if (cp >= 0x100 && cp <= 0x177 && (cp % 2) == 0) return cp + 1;  // Ā/ā pairs
    if (cp >= 0x179 && cp <= 0x17D && (cp % 2) == 1) return cp + 1;  // Ź/ź pairs
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;   // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 32;                  // Cyrillic
    return cp;
}

struct Token {
    std::string text;       // lowercased UTF-8
    std::size_t n_letters;  // length in code points
};

/// Splits `text` into lowercased alphabetic tokens.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::string current;
    std::size_t letters = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        CodePoint cp = utf8_next(text, pos);
        if (is_letter(cp)) {
            utf8_append(current, to_lower(cp));
            ++letters;
        } else if (!current.empty()) {
            tokens.push_back({std::move(current), letters});
            current.clear();
            letters = 0;
        }
    }
    if (!current.empty()) tokens.push_back({std::move(current), letters});
    return tokens;
}

inline std::vector<std::string> tokenize_words(std::string_view text) {
    std::vector<std::string> out;
    for (auto& t : tokenize(text)) out.push_back(std::move(t.text));
    return out;
}

/// Number of sentences in a post. A sentence is a segment delimited by a run
/// of [.?!…] followed by whitespace or end-of-text, and must contain at
/// least one word; a post with words but no terminal punctuation is one
/// sentence.
inline std::size_t count_sentences(std::string_view text) {
    std::size_t sentences = 0;
    bool segment_has_word = false;
    bool in_terminator = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        CodePoint cp = utf8_next(text, pos);
        bool terminator = cp == '.' || cp == '?' || cp == '!' || cp == 0x2026;
        if (terminator) {
            in_terminator = true;
            continue;
        }
        bool whitespace = cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0xA0;
        if (in_terminator && whitespace) {
            if (segment_has_word) ++sentences;
            segment_has_word = false;
        }
        in_terminator = false;
        if (is_letter(cp)) segment_has_word = true;
    }
    if (segment_has_word) ++sentences;  // covers both trailing text and end-of-text terminators
    return sentences;
}

// ---------------------------------------------------------------------------
// Suffix-stripping stemmer, driven by an ordered rule table. The longest
// matching suffix whose removal leaves at least `min_stem` code points wins.

struct StemRule {
    std::string suffix;
    std::size_t min_stem;  // minimum code points left after stripping
};

class Stemmer {
public:
    Stemmer() = default;
    explicit Stemmer(std::vector<StemRule> rules) : rules_(std::move(rules)) {
        // longest suffix first so the table order is irrelevant to callers
        std::stable_sort(rules_.begin(), rules_.end(), [](const StemRule& a, const StemRule& b) {
            return a.suffix.size() > b.suffix.size();
        });
    }

    std::string stem(const std::string& word) const {
        for (const auto& rule : rules_) {
            if (word.size() <= rule.suffix.size()) continue;
            if (word.compare(word.size() - rule.suffix.size(), rule.suffix.size(), rule.suffix) != 0)
                continue;
            std::string candidate = word.substr(0, word.size() - rule.suffix.size());
            if (count_code_points(candidate) >= rule.min_stem) return candidate;
        }
        return word;
    }

    /// Italian-oriented default rules: derivational endings and verb
    /// conjugations. Deliberately conservative — bare final vowels are left
    /// alone; inflection merging is the lemma table's job, the stemmer is
    /// only the fallback for out-of-table tokens.
    static Stemmer italian() {
        return Stemmer({
            {"azioni", 3}, {"azione", 3}, {"amenti", 3}, {"amento", 3},
            {"imenti", 3}, {"imento", 3}, {"amente", 3}, {"mente", 3},
            {"abile", 3},  {"abili", 3},  {"ibile", 3},  {"ibili", 3},
            {"ista", 3},   {"iste", 3},   {"isti", 3},
            {"ezza", 3},   {"ezze", 3},   {"oso", 3},    {"osa", 3},
            {"osi", 3},    {"ose", 3},
            {"erebbe", 3}, {"irebbe", 3}, {"eranno", 3}, {"iranno", 3},
            {"iamo", 3},   {"iate", 3},   {"ando", 3},   {"endo", 3},
            {"ato", 3},    {"ata", 3},    {"ati", 3},    {"ate", 3},
            {"uto", 3},    {"uta", 3},    {"uti", 3},    {"ute", 3},
            {"are", 3},    {"ere", 3},    {"ire", 3},
        });
    }

    /// Identity stemmer (useful for tests and non-inflecting corpora).
    static Stemmer none() { return Stemmer(std::vector<StemRule>{}); }

private:
    static std::size_t count_code_points(std::string_view s) {
        std::size_t n = 0, pos = 0;
        while (pos < s.size()) {
            utf8_next(s, pos);
            ++n;
        }
        return n;
    }

    std::vector<StemRule> rules_;
};

// ---------------------------------------------------------------------------
// Resource files: stop-word lists, lemma tables, polarity lexicons.

using StopwordSet = std::unordered_set<std::string>;
using LemmaTable = std::unordered_map<std::string, std::string>;
using PolarityLexicon = std::unordered_map<std::string, double>;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> split_lines(std::string_view content) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < content.size()) lines.emplace_back(content.substr(start));
            break;
        }
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        start = end + 1;
    }
    return lines;
}

/// One token per line; blank lines and lines starting with '#' are skipped.
inline StopwordSet load_stopwords(const std::string& path) {
    StopwordSet set;
    for (auto& line : split_lines(read_file(path))) {
        if (line.empty() || line[0] == '#') continue;
        set.insert(line);
    }
    return set;
}

/// Tab-separated (token, lemma) pairs.
inline LemmaTable load_lemma_table(const std::string& path) {
    LemmaTable table;
    std::size_t lineno = 0;
    for (auto& line : split_lines(read_file(path))) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw ValidationError("malformed lemma row at " + path + ":" + std::to_string(lineno));
        table[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return table;
}

/// Tab-separated (token, polarity) pairs with polarity in [-1, 1].
inline PolarityLexicon load_lexicon(const std::string& path) {
    PolarityLexicon lex;
    std::size_t lineno = 0;
    for (auto& line : split_lines(read_file(path))) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError("malformed lexicon row at " + path + ":" + std::to_string(lineno));
        char* end = nullptr;
        std::string value = line.substr(tab + 1);
        double polarity = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || polarity < -1.0 || polarity > 1.0)
            throw ValidationError("polarity out of [-1,1] at " + path + ":" + std::to_string(lineno));
        lex[line.substr(0, tab)] = polarity;
    }
    return lex;
}

}  // namespace innoprof
