#pragma once

// Corpus ingestion: line-delimited JSON posts, the innovator label table,
// validation, and the corpus-level lexical indices computed before any
// cleaning. The Corpus is immutable once built and safe to share across
// threads.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "innoprof/common.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/text.hpp"

namespace innoprof {

struct Post {
    std::string post_id;
    std::string author_id;
    std::string thread_id;
    std::optional<std::string> parent_post_id;
    std::int64_t timestamp_ms = 0;  // UTC epoch milliseconds
    std::string text;
};

// ---------------------------------------------------------------------------
// ISO-8601 timestamps

namespace detail {

// days since 1970-01-01 from a civil date (Howard Hinnant's algorithm)
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

}  // namespace detail

/// Parses "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|±hh[:]mm]" to UTC epoch ms.
/// Missing zone designators are read as UTC.
inline std::optional<std::int64_t> parse_iso8601_ms(std::string_view s) {
    auto digits = [&](std::size_t pos, std::size_t n, int& out) -> bool {
        if (pos + n > s.size()) return false;
        out = 0;
        for (std::size_t i = 0; i < n; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9') return false;
            out = out * 10 + (c - '0');
        }
        return true;
    };
    int y, mo, d, h, mi, se;
    if (!digits(0, 4, y) || s.size() < 19 || s[4] != '-' || !digits(5, 2, mo) || s[7] != '-' ||
        !digits(8, 2, d) || (s[10] != 'T' && s[10] != ' ') || !digits(11, 2, h) || s[13] != ':' ||
        !digits(14, 2, mi) || s[16] != ':' || !digits(17, 2, se))
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) return std::nullopt;
    std::size_t pos = 19;
    int millis = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        int scale = 100;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (scale > 0) {
                millis += (s[pos] - '0') * scale;
                scale /= 10;
            }
            ++pos;
        }
        if (pos == start) return std::nullopt;
    }
    std::int64_t offset_min = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            int oh, om = 0;
            ++pos;
            if (!digits(pos, 2, oh)) return std::nullopt;
            pos += 2;
            if (pos < s.size() && s[pos] == ':') ++pos;
            if (pos + 2 <= s.size()) {
                if (!digits(pos, 2, om)) return std::nullopt;
                pos += 2;
            }
            offset_min = oh * 60 + om;
            if (c == '-') offset_min = -offset_min;
        }
    }
    if (pos != s.size()) return std::nullopt;
    std::int64_t days = detail::days_from_civil(y, mo, d);
    std::int64_t secs = days * 86400 + h * 3600 + mi * 60 + se - offset_min * 60;
    return secs * 1000 + millis;
}

inline std::string format_iso8601_ms(std::int64_t ms) {
    std::int64_t secs = ms / 1000;
    int millis = static_cast<int>(ms % 1000);
    if (millis < 0) {
        millis += 1000;
        --secs;
    }
    std::int64_t days = secs / 86400;
    std::int64_t rem = secs % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, mo, d;
    detail::civil_from_days(days, y, mo, d);
    char buf[40];
    if (millis)
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", y, mo, d,
                      static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                      static_cast<int>(rem % 60), millis);
    else
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d,
                      static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                      static_cast<int>(rem % 60));
    return buf;
}

// ---------------------------------------------------------------------------
// Validation report

enum class FindingSeverity { Warning, Error };

struct ValidationFinding {
    FindingSeverity severity;
    std::size_t line;  // 1-based input line, 0 when not line-specific
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;

    void warn(std::size_t line, std::string msg) {
        findings.push_back({FindingSeverity::Warning, line, std::move(msg)});
    }
    void error(std::size_t line, std::string msg) {
        findings.push_back({FindingSeverity::Error, line, std::move(msg)});
    }
    std::size_t error_count() const {
        std::size_t n = 0;
        for (auto& f : findings)
            if (f.severity == FindingSeverity::Error) ++n;
        return n;
    }
    std::string to_string() const {
        std::string out;
        for (auto& f : findings) {
            out += f.severity == FindingSeverity::Error ? "error" : "warning";
            if (f.line) out += " (line " + std::to_string(f.line) + ")";
            out += ": " + f.message + "\n";
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Corpus

class Corpus {
public:
    Corpus() = default;

    /// Builds all indices. Posts keep input order; threads order by
    /// (timestamp, input position); author indices are lexicographic so the
    /// corpus view is independent of post order.
    explicit Corpus(std::vector<Post> posts) : posts_(std::move(posts)) {
        std::unordered_set<std::string> seen;
        for (const auto& p : posts_) seen.insert(p.author_id);
        authors_.assign(seen.begin(), seen.end());
        std::sort(authors_.begin(), authors_.end());
        for (std::size_t i = 0; i < authors_.size(); ++i) author_index_[authors_[i]] = i;

        for (std::size_t i = 0; i < posts_.size(); ++i) {
            post_index_[posts_[i].post_id] = i;
            threads_[posts_[i].thread_id].push_back(i);
        }
        for (auto& [tid, list] : threads_) {
            std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
                return posts_[a].timestamp_ms < posts_[b].timestamp_ms;
            });
        }

        parent_of_.assign(posts_.size(), kNoParent);
        for (std::size_t i = 0; i < posts_.size(); ++i) {
            if (!posts_[i].parent_post_id) continue;
            auto it = post_index_.find(*posts_[i].parent_post_id);
            if (it != post_index_.end() && posts_[it->second].thread_id == posts_[i].thread_id &&
                it->second != i)
                parent_of_[i] = it->second;
        }
    }

    static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

    const std::vector<Post>& posts() const { return posts_; }
    const std::vector<std::string>& authors() const { return authors_; }
    std::size_t author_count() const { return authors_.size(); }

    std::size_t author_index(const std::string& id) const {
        auto it = author_index_.find(id);
        if (it == author_index_.end())
            throw ValidationError("unknown author id: " + id);
        return it->second;
    }
    bool has_author(const std::string& id) const { return author_index_.count(id) != 0; }

    /// Resolved same-thread parent post index, or kNoParent.
    std::size_t parent_of(std::size_t post) const { return parent_of_[post]; }

    const std::map<std::string, std::vector<std::size_t>>& threads() const { return threads_; }

    /// Post indices per author, in input order.
    std::vector<std::vector<std::size_t>> posts_by_author() const {
        std::vector<std::vector<std::size_t>> by_author(authors_.size());
        for (std::size_t i = 0; i < posts_.size(); ++i)
            by_author[author_index_.at(posts_[i].author_id)].push_back(i);
        return by_author;
    }

private:
    std::vector<Post> posts_;
    std::vector<std::string> authors_;
    std::unordered_map<std::string, std::size_t> author_index_;
    std::unordered_map<std::string, std::size_t> post_index_;
    std::map<std::string, std::vector<std::size_t>> threads_;
    std::vector<std::size_t> parent_of_;
};

struct ParseResult {
    Corpus corpus;
    ValidationReport report;
};

struct ParseOptions {
    bool strict = false;
    std::unordered_set<std::string> exclude_authors;  // drop their posts at ingest
};

/// Parses line-delimited JSON posts. In lenient mode malformed records are
/// skipped, duplicate ids keep the first occurrence and unresolvable parent
/// links are severed; strict mode fails on any collected error.
inline ParseResult parse_posts(std::string_view input, const ParseOptions& options = {}) {
    ValidationReport report;
    std::vector<Post> posts;
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    std::vector<std::size_t> line_of_post;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start < input.size()) {
        std::size_t end = input.find('\n', start);
        if (end == std::string_view::npos) end = input.size();
        std::string_view line = input.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            report.error(lineno, "malformed record: not a JSON object");
            continue;
        }
        Post p;
        bool ok = true;
        for (const char* key : {"post_id", "author_id", "thread_id", "timestamp", "text"}) {
            if (!record.contains(key) || !record[key].is_string()) {
                report.error(lineno, std::string("malformed record: missing or non-string field '") +
                                         key + "'");
                ok = false;
            }
        }
        if (!ok) continue;
        p.post_id = record["post_id"].get<std::string>();
        p.author_id = record["author_id"].get<std::string>();
        p.thread_id = record["thread_id"].get<std::string>();
        p.text = record["text"].get<std::string>();
        if (record.contains("parent_post_id") && record["parent_post_id"].is_string())
            p.parent_post_id = record["parent_post_id"].get<std::string>();

        auto ts = parse_iso8601_ms(record["timestamp"].get<std::string>());
        if (!ts) {
            report.error(lineno, "malformed record: bad ISO-8601 timestamp '" +
                                     record["timestamp"].get<std::string>() + "'");
            continue;
        }
        p.timestamp_ms = *ts;

        auto dup = first_line_of_id.find(p.post_id);
        if (dup != first_line_of_id.end()) {
            report.error(lineno, "duplicate post_id '" + p.post_id + "' (first seen at line " +
                                     std::to_string(dup->second) + ")");
            continue;
        }
        first_line_of_id[p.post_id] = lineno;

        if (p.text.empty()) report.warn(lineno, "empty text in post '" + p.post_id + "'");

        if (options.exclude_authors.count(p.author_id)) continue;
        line_of_post.push_back(lineno);
        posts.push_back(std::move(p));
    }

    // parent checks against the retained posts
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < posts.size(); ++i) by_id[posts[i].post_id] = i;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        if (!posts[i].parent_post_id) continue;
        const std::string& pid = *posts[i].parent_post_id;
        auto it = by_id.find(pid);
        if (it == by_id.end()) {
            if (first_line_of_id.count(pid) && !options.exclude_authors.empty())
                report.warn(line_of_post[i],
                            "parent post '" + pid + "' was removed by author exclusion");
            else
                report.error(line_of_post[i], "unknown parent reference '" + pid + "'");
            posts[i].parent_post_id.reset();
        } else if (posts[it->second].thread_id != posts[i].thread_id) {
            report.error(line_of_post[i], "cross-thread parent: post '" + posts[i].post_id +
                                              "' references '" + pid + "' in thread '" +
                                              posts[it->second].thread_id + "'");
            posts[i].parent_post_id.reset();
        } else if (it->second == i) {
            report.error(line_of_post[i], "post '" + posts[i].post_id + "' is its own parent");
            posts[i].parent_post_id.reset();
        }
    }

    if (options.strict && report.error_count() > 0)
        throw ValidationError("strict validation failed:\n" + report.to_string());

    return {Corpus(std::move(posts)), std::move(report)};
}

/// Round-trip serialization of a corpus back to line-delimited JSON.
inline std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& p : corpus.posts()) {
        nlohmann::json record;
        record["post_id"] = p.post_id;
        record["author_id"] = p.author_id;
        record["thread_id"] = p.thread_id;
        if (p.parent_post_id)
            record["parent_post_id"] = *p.parent_post_id;
        else
            record["parent_post_id"] = nullptr;
        record["timestamp"] = format_iso8601_ms(p.timestamp_ms);
        record["text"] = p.text;
        out += record.dump();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Labels

class LabelMap {
public:
    LabelMap() = default;
    explicit LabelMap(std::vector<std::uint8_t> flags) : flags_(std::move(flags)) {
        for (auto f : flags_) innovators_ += f ? 1 : 0;
    }

    bool innovator(std::size_t author_index) const { return flags_[author_index] != 0; }
    std::size_t innovator_count() const { return innovators_; }
    std::size_t size() const { return flags_.size(); }

private:
    std::vector<std::uint8_t> flags_;
    std::size_t innovators_ = 0;
};

/// Parses the two-column label table (author_id, flag). Unlabeled authors
/// default to non-innovator; labels for unknown authors are an error only in
/// strict mode.
inline LabelMap parse_labels(std::string_view input, const Corpus& corpus,
                             ValidationReport& report, bool strict = false) {
    std::vector<std::uint8_t> flags(corpus.author_count(), 0);
    auto lines = split_lines(input);
    for (std::size_t i = 1; i < lines.size(); ++i) {  // line 0 is the header
        const std::string& line = lines[i];
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != 2) {
            report.error(i + 1, "label row must have exactly 2 columns");
            continue;
        }
        const std::string& id = fields[0];
        std::string value = fields[1];
        std::transform(value.begin(), value.end(), value.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        bool flag;
        if (value == "1" || value == "true")
            flag = true;
        else if (value == "0" || value == "false")
            flag = false;
        else {
            report.error(i + 1, "label flag must be one of {0,1,true,false}, got '" + fields[1] + "'");
            continue;
        }
        if (!corpus.has_author(id)) {
            if (strict)
                report.error(i + 1, "label for unknown author '" + id + "'");
            else
                report.warn(i + 1, "label for unknown author '" + id + "' ignored");
            continue;
        }
        flags[corpus.author_index(id)] = flag ? 1 : 0;
    }
    if (strict && report.error_count() > 0)
        throw ValidationError("strict label validation failed:\n" + report.to_string());
    return LabelMap(std::move(flags));
}

// ---------------------------------------------------------------------------
// Lexical indices (computed over raw tokens, before any cleaning)

struct LexicalIndices {
    std::size_t token_count = 0;
    std::size_t type_count = 0;
    std::size_t hapax_count = 0;
    double type_token_ratio = 0;
    double hapax_pct = 0;
};

inline LexicalIndices lexical_indices(const Corpus& corpus) {
    if (corpus.posts().empty()) throw ValidationError("lexical indices require a nonempty corpus");
    std::unordered_map<std::string, std::size_t> freq;
    std::size_t tokens = 0;
    for (const auto& p : corpus.posts()) {
        for (auto& t : tokenize_words(p.text)) {
            ++freq[t];
            ++tokens;
        }
    }
    LexicalIndices idx;
    idx.token_count = tokens;
    idx.type_count = freq.size();
    for (auto& [w, f] : freq)
        if (f == 1) ++idx.hapax_count;
    idx.type_token_ratio = tokens ? static_cast<double>(idx.type_count) / tokens : 0.0;
    idx.hapax_pct = idx.type_count ? static_cast<double>(idx.hapax_count) / idx.type_count : 0.0;
    return idx;
}

}  // namespace innoprof
