#pragma once

// Emotional Text Mining: preprocess posts into lemma streams, keep terms of
// medium rank frequency, build a binary term-document matrix, cluster the
// classifiable documents with bisecting k-means under cosine similarity,
// score candidate k with Calinski-Harabasz / Davies-Bouldin / intraclass
// rho, and extract chi-squared keyword tables per cluster.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "innoprof/ca.hpp"
#include "innoprof/common.hpp"
#include "innoprof/corpus.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/rng.hpp"
#include "innoprof/stats.hpp"
#include "innoprof/text.hpp"

namespace innoprof {

struct ProcessedDoc {
    std::string doc_id;
    std::vector<std::string> tokens;  // stop-words removed, lemmatized
};

/// Lemma-table lookup with stemmer fallback for out-of-table tokens.
inline std::vector<ProcessedDoc> preprocess(const Corpus& corpus, const StopwordSet& stopwords,
                                            const LemmaTable& lemmas, const Stemmer& stemmer) {
    std::vector<ProcessedDoc> docs;
    docs.reserve(corpus.posts().size());
    for (const auto& post : corpus.posts()) {
        ProcessedDoc doc;
        doc.doc_id = post.post_id;
        for (const auto& t : tokenize(post.text)) {
            if (stopwords.count(t.text)) continue;
            auto it = lemmas.find(t.text);
            doc.tokens.push_back(it != lemmas.end() ? it->second : stemmer.stem(t.text));
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

// ---------------------------------------------------------------------------
// Vocabulary and the term-document matrix

struct TermInfo {
    std::string term;
    std::size_t corpus_freq = 0;  // total occurrences
    std::size_t doc_freq = 0;     // documents containing the term
};

struct TermVocabulary {
    std::vector<TermInfo> terms;  // descending corpus frequency, lexicographic tiebreak
    std::unordered_map<std::string, std::size_t> index;

    std::size_t size() const { return terms.size(); }
};

/// Medium-rank selection: document frequency at least `min_doc_freq` and at
/// most `high_freq_cutoff` times the document count.
inline TermVocabulary select_terms(const std::vector<ProcessedDoc>& docs,
                                   std::size_t min_doc_freq = 5, double high_freq_cutoff = 0.5) {
    if (min_doc_freq < 2) throw ConfigError("select_terms: min_doc_freq must be >= 2");
    if (high_freq_cutoff <= 0.0 || high_freq_cutoff > 1.0)
        throw ConfigError("select_terms: high_freq_cutoff must be in (0,1]");
    std::unordered_map<std::string, TermInfo> stats;
    for (const auto& doc : docs) {
        std::unordered_map<std::string, std::size_t> local;
        for (const auto& t : doc.tokens) ++local[t];
        for (const auto& [term, count] : local) {
            auto& info = stats[term];
            info.term = term;
            info.corpus_freq += count;
            info.doc_freq += 1;
        }
    }
    double ceiling = high_freq_cutoff * static_cast<double>(docs.size());
    TermVocabulary vocab;
    for (auto& [term, info] : stats) {
        if (info.doc_freq < min_doc_freq) continue;
        if (static_cast<double>(info.doc_freq) > ceiling) continue;
        vocab.terms.push_back(info);
    }
    std::sort(vocab.terms.begin(), vocab.terms.end(), [](const TermInfo& a, const TermInfo& b) {
        if (a.corpus_freq != b.corpus_freq) return a.corpus_freq > b.corpus_freq;
        return a.term < b.term;
    });
    if (vocab.terms.empty())
        throw ValidationError(
            "select_terms: no term passes the frequency thresholds; lower min_doc_freq or raise "
            "high_freq_cutoff");
    for (std::size_t i = 0; i < vocab.terms.size(); ++i) vocab.index[vocab.terms[i].term] = i;
    return vocab;
}

enum class TdmWeighting { Binary, Counts };

struct TermDocMatrix {
    TermVocabulary vocab;
    std::vector<std::size_t> row_doc;  // row -> index into the docs list
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rows;  // (term id, count)
    std::vector<std::size_t> unclassified;  // doc indices with no selected term
    std::size_t total_docs = 0;
    TdmWeighting weighting = TdmWeighting::Binary;

    std::size_t n_rows() const { return rows.size(); }
    double coverage() const {
        return total_docs ? static_cast<double>(rows.size()) / static_cast<double>(total_docs)
                          : 0.0;
    }

    /// Unit-normalized dense vector for a row under the active weighting.
    std::vector<double> row_vector(std::size_t r) const {
        std::vector<double> v(vocab.size(), 0.0);
        double norm2 = 0;
        for (auto& [t, c] : rows[r]) {
            double value = weighting == TdmWeighting::Binary ? 1.0 : static_cast<double>(c);
            v[t] = value;
            norm2 += value * value;
        }
        double norm = std::sqrt(norm2);
        if (norm > 0)
            for (auto& [t, c] : rows[r]) v[t] /= norm;
        return v;
    }
};

inline TermDocMatrix build_tdm(const std::vector<ProcessedDoc>& docs, const TermVocabulary& vocab,
                               TdmWeighting weighting = TdmWeighting::Binary) {
    if (vocab.size() == 0) throw ValidationError("build_tdm: empty vocabulary");
    TermDocMatrix tdm;
    tdm.vocab = vocab;
    tdm.total_docs = docs.size();
    tdm.weighting = weighting;
    for (std::size_t d = 0; d < docs.size(); ++d) {
        std::map<std::size_t, std::size_t> counts;  // ordered for deterministic rows
        for (const auto& t : docs[d].tokens) {
            auto it = vocab.index.find(t);
            if (it != vocab.index.end()) ++counts[it->second];
        }
        if (counts.empty()) {
            tdm.unclassified.push_back(d);
            continue;
        }
        tdm.row_doc.push_back(d);
        tdm.rows.emplace_back(counts.begin(), counts.end());
    }
    return tdm;
}

// ---------------------------------------------------------------------------
// Bisecting k-means under cosine similarity

struct SplitLog {
    std::size_t cluster_split;                  // which cluster was bisected
    std::vector<std::vector<double>> restarts;  // per restart: objective per iteration
};

struct Clustering {
    std::size_t k = 0;
    std::vector<std::size_t> assignment;     // per TDM row, 0-based cluster id
    std::vector<std::vector<double>> centroids;  // unit-normalized means
    double coverage = 0;
    std::vector<SplitLog> split_logs;

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(k, 0);
        for (auto c : assignment) ++sizes[c];
        return sizes;
    }
};

namespace detail {

struct SparseRows {
    const TermDocMatrix* tdm;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;  // normalized values

    explicit SparseRows(const TermDocMatrix& matrix) : tdm(&matrix) {
        rows.resize(matrix.n_rows());
        for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
            double norm2 = 0;
            for (auto& [t, c] : matrix.rows[r]) {
                double value =
                    matrix.weighting == TdmWeighting::Binary ? 1.0 : static_cast<double>(c);
                norm2 += value * value;
                rows[r].push_back({t, value});
            }
            double norm = std::sqrt(norm2);
            for (auto& [t, v] : rows[r]) v /= norm;
        }
    }

    double cosine(std::size_t r, const std::vector<double>& centroid) const {
        double dot = 0;
        for (auto& [t, v] : rows[r]) dot += v * centroid[t];
        return dot;
    }
};

/// Mean of member rows, unit-normalized; zero vector when degenerate.
inline std::vector<double> normalized_centroid(const SparseRows& sparse,
                                               const std::vector<std::size_t>& members,
                                               std::size_t dim) {
    std::vector<double> c(dim, 0.0);
    for (std::size_t r : members)
        for (auto& [t, v] : sparse.rows[r]) c[t] += v;
    double norm2 = 0;
    for (double v : c) norm2 += v * v;
    double norm = std::sqrt(norm2);
    if (norm > 0)
        for (double& v : c) v /= norm;
    return c;
}

/// Euclidean scatter of unit rows around their mean: |C| - |sum x|^2 / |C|.
inline double cluster_scatter(const SparseRows& sparse, const std::vector<std::size_t>& members,
                              std::size_t dim) {
    std::vector<double> sum(dim, 0.0);
    for (std::size_t r : members)
        for (auto& [t, v] : sparse.rows[r]) sum[t] += v;
    double norm2 = 0;
    for (double v : sum) norm2 += v * v;
    return static_cast<double>(members.size()) - norm2 / static_cast<double>(members.size());
}

struct BisectResult {
    std::vector<std::size_t> left, right;
    double objective = -std::numeric_limits<double>::infinity();
    std::vector<double> trajectory;
};

/// One seeded 2-means attempt on `members`. Initialization: random row,
/// then the row farthest from it, then the row farthest from that one.
inline BisectResult two_means_once(const SparseRows& sparse,
                                   const std::vector<std::size_t>& members, std::size_t dim,
                                   Rng rng, std::size_t max_iter = 100) {
    BisectResult res;
    std::size_t start = members[rng.next_below(members.size())];

    auto farthest_from = [&](const std::vector<double>& point) {
        std::size_t best = members[0];
        double best_cos = std::numeric_limits<double>::infinity();
        for (std::size_t r : members) {
            double cs = sparse.cosine(r, point);
            if (cs < best_cos) {
                best_cos = cs;
                best = r;
            }
        }
        return best;
    };

    std::vector<double> start_vec(dim, 0.0);
    for (auto& [t, v] : sparse.rows[start]) start_vec[t] = v;
    std::size_t seed1 = farthest_from(start_vec);
    std::vector<double> c1(dim, 0.0);
    for (auto& [t, v] : sparse.rows[seed1]) c1[t] = v;
    std::size_t seed2 = farthest_from(c1);
    std::vector<double> c2(dim, 0.0);
    for (auto& [t, v] : sparse.rows[seed2]) c2[t] = v;

    std::vector<char> side(members.size(), 0);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = iter == 0;
        double objective = 0;
        std::vector<std::size_t> left, right;
        for (std::size_t m = 0; m < members.size(); ++m) {
            std::size_t r = members[m];
            double cos1 = sparse.cosine(r, c1);
            double cos2 = sparse.cosine(r, c2);
            char s = cos2 > cos1 ? 1 : 0;
            if (s != side[m]) {
                side[m] = s;
                changed = true;
            }
            objective += s ? cos2 : cos1;
            (s ? right : left).push_back(r);
        }
        res.trajectory.push_back(objective);
        res.objective = objective;
        res.left = std::move(left);
        res.right = std::move(right);
        if (!changed) break;
        if (res.left.empty() || res.right.empty()) break;
        c1 = normalized_centroid(sparse, res.left, dim);
        c2 = normalized_centroid(sparse, res.right, dim);
    }
    return res;
}

}  // namespace detail

/// Splits the largest-scatter cluster with cosine 2-means until k clusters
/// exist; each split takes the best of `restarts` seeded attempts.
/// Deterministic for fixed (seed, restarts). Final cluster ids are ordered
/// by each cluster's smallest row index.
inline Clustering bisecting_kmeans(const TermDocMatrix& tdm, std::size_t k, std::uint64_t seed,
                                   std::size_t restarts = 10) {
    if (k < 2) throw ConfigError("bisecting_kmeans: k must be >= 2");
    if (tdm.n_rows() < k)
        throw ValidationError("bisecting_kmeans: k exceeds the number of classifiable documents");

    detail::SparseRows sparse(tdm);
    const std::size_t dim = tdm.vocab.size();

    std::vector<std::vector<std::size_t>> clusters;
    {
        std::vector<std::size_t> all(tdm.n_rows());
        for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
        clusters.push_back(std::move(all));
    }

    Clustering result;
    std::size_t split_index = 0;
    while (clusters.size() < k) {
        // pick the splittable cluster with the largest scatter (ties: lowest id)
        std::size_t target = clusters.size();
        double best_scatter = -1;
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            if (clusters[c].size() < 2) continue;
            double scatter = detail::cluster_scatter(sparse, clusters[c], dim);
            if (scatter > best_scatter + 1e-15) {
                best_scatter = scatter;
                target = c;
            }
        }
        if (target == clusters.size())
            throw ValidationError("bisecting_kmeans: no cluster with >= 2 documents to split");

        SplitLog log;
        log.cluster_split = target;
        detail::BisectResult best;
        for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
            auto res = detail::two_means_once(sparse, clusters[target], dim,
                                              Rng::substream(seed, split_index, attempt));
            log.restarts.push_back(res.trajectory);
            if (!res.left.empty() && !res.right.empty() && res.objective > best.objective)
                best = std::move(res);
        }
        if (best.left.empty() || best.right.empty()) {
            // all rows of the cluster are mutually parallel; fall back to a
            // forced 1-vs-rest split (no k-means iterations to log)
            best.left.assign(clusters[target].begin(), clusters[target].end() - 1);
            best.right.assign(clusters[target].end() - 1, clusters[target].end());
        }
        clusters[target] = std::move(best.left);
        clusters.push_back(std::move(best.right));
        result.split_logs.push_back(std::move(log));
        ++split_index;
    }

    // renumber clusters by their smallest row index
    std::vector<std::size_t> order(clusters.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *std::min_element(clusters[a].begin(), clusters[a].end()) <
               *std::min_element(clusters[b].begin(), clusters[b].end());
    });

    result.k = k;
    result.assignment.assign(tdm.n_rows(), 0);
    result.centroids.resize(k);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const auto& members = clusters[order[rank]];
        for (std::size_t r : members) result.assignment[r] = rank;
        result.centroids[rank] = detail::normalized_centroid(sparse, members, dim);
    }
    result.coverage = tdm.coverage();
    return result;
}

// ---------------------------------------------------------------------------
// Cluster-count validation

struct ValidationScore {
    std::size_t k = 0;
    double calinski_harabasz = 0;
    double davies_bouldin = 0;
    double rho = 0;  // between-cluster share of total sum of squares
};

namespace detail {

/// CH, DB and rho in Euclidean geometry on the unit-normalized rows.
inline ValidationScore score_clustering(const SparseRows& sparse, const Clustering& clustering,
                                        std::size_t dim) {
    const std::size_t n = sparse.rows.size();
    const std::size_t k = clustering.k;
    ValidationScore score;
    score.k = k;

    // per-cluster arithmetic means (not normalized)
    std::vector<std::vector<double>> mean(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> size(k, 0);
    std::vector<double> global(dim, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t c = clustering.assignment[r];
        ++size[c];
        for (auto& [t, v] : sparse.rows[r]) {
            mean[c][t] += v;
            global[t] += v;
        }
    }
    for (std::size_t c = 0; c < k; ++c)
        for (double& v : mean[c]) v /= static_cast<double>(size[c]);
    for (double& v : global) v /= static_cast<double>(n);

    // within / between sums of squares; ||x||=1 so ||x-m||^2 = 1 - 2 x.m + ||m||^2
    std::vector<double> mean_norm2(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (double v : mean[c]) mean_norm2[c] += v * v;
    double wss = 0;
    std::vector<double> intra_dist_sum(k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t c = clustering.assignment[r];
        double dot = 0;
        for (auto& [t, v] : sparse.rows[r]) dot += v * mean[c][t];
        double d2 = std::max(0.0, 1.0 - 2.0 * dot + mean_norm2[c]);
        wss += d2;
        intra_dist_sum[c] += std::sqrt(d2);
    }
    double global_norm2 = 0;
    for (double v : global) global_norm2 += v * v;
    double bss = 0;
    for (std::size_t c = 0; c < k; ++c) {
        double dot = 0, m2 = mean_norm2[c];
        for (std::size_t t = 0; t < dim; ++t) dot += mean[c][t] * global[t];
        bss += static_cast<double>(size[c]) * (m2 - 2.0 * dot + global_norm2);
    }
    double tss = wss + bss;

    if (k > 1 && n > k) {
        score.calinski_harabasz =
            wss > 0 ? (bss / static_cast<double>(k - 1)) / (wss / static_cast<double>(n - k))
                    : std::numeric_limits<double>::infinity();
    }
    score.rho = tss > 0 ? bss / tss : 0.0;

    // Davies-Bouldin with centroid distances
    double db = 0;
    for (std::size_t c = 0; c < k; ++c) {
        double worst = 0;
        double s_c = intra_dist_sum[c] / static_cast<double>(size[c]);
        for (std::size_t d = 0; d < k; ++d) {
            if (d == c) continue;
            double s_d = intra_dist_sum[d] / static_cast<double>(size[d]);
            double dist2 = 0;
            for (std::size_t t = 0; t < dim; ++t) {
                double diff = mean[c][t] - mean[d][t];
                dist2 += diff * diff;
            }
            double ratio = dist2 > 0 ? (s_c + s_d) / std::sqrt(dist2)
                                     : std::numeric_limits<double>::infinity();
            worst = std::max(worst, ratio);
        }
        db += worst;
    }
    score.davies_bouldin = db / static_cast<double>(k);
    return score;
}

}  // namespace detail

/// Scores every k in [k_min, k_max]. The bisecting construction is nested,
/// so one pass to k_max reproduces what separate runs at each k would give.
inline std::vector<ValidationScore> validate_clusters(const TermDocMatrix& tdm, std::size_t k_min,
                                                      std::size_t k_max, std::uint64_t seed,
                                                      std::size_t restarts = 10) {
    if (k_min < 2 || k_max < k_min) throw ConfigError("validate_clusters: bad k range");
    if (k_max > tdm.n_rows())
        throw ValidationError("validate_clusters: k_max exceeds classifiable documents");
    detail::SparseRows sparse(tdm);
    std::vector<ValidationScore> scores;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        auto clustering = bisecting_kmeans(tdm, k, seed, restarts);
        scores.push_back(detail::score_clustering(sparse, clustering, tdm.vocab.size()));
    }
    return scores;
}

/// Rank-sum aggregation: CH ranked descending, DB ascending, midranks for
/// ties; rho is reported but not ranked. Ties on the rank sum go to the
/// smaller k.
inline std::size_t select_k(const std::vector<ValidationScore>& scores) {
    if (scores.size() < 2) throw ConfigError("select_k: need at least 2 candidate k");
    const std::size_t m = scores.size();

    auto midranks = [&](auto key, bool descending) {
        std::vector<std::size_t> order(m);
        for (std::size_t i = 0; i < m; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return descending ? key(scores[a]) > key(scores[b]) : key(scores[a]) < key(scores[b]);
        });
        std::vector<double> rank(m, 0.0);
        std::size_t i = 0;
        while (i < m) {
            std::size_t j = i;
            while (j < m && key(scores[order[j]]) == key(scores[order[i]])) ++j;
            double mid = 0.5 * static_cast<double>(i + 1 + j);
            for (std::size_t t = i; t < j; ++t) rank[order[t]] = mid;
            i = j;
        }
        return rank;
    };

    auto ch_rank = midranks([](const ValidationScore& s) { return s.calinski_harabasz; }, true);
    auto db_rank = midranks([](const ValidationScore& s) { return s.davies_bouldin; }, false);

    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        double sum = ch_rank[i] + db_rank[i];
        if (sum < best_sum - 1e-12 ||
            (std::abs(sum - best_sum) <= 1e-12 && scores[i].k < scores[best].k)) {
            best_sum = sum;
            best = i;
        }
    }
    return scores[best].k;
}

// ---------------------------------------------------------------------------
// Keyword extraction and the group-by-cluster test

struct KeywordEntry {
    std::string lemma;
    double chi2 = 0;
    std::size_t in_count = 0;   // term occurrences inside the cluster
    std::size_t out_count = 0;  // occurrences elsewhere
};

struct KeywordTable {
    std::vector<std::vector<KeywordEntry>> per_cluster;  // ranked by chi2 descending
    std::vector<double> message_share;                   // cluster rows / classified rows
};

enum class KeywordCounting { Occurrences, Documents };

/// 2x2 chi-squared without continuity correction:
/// n (ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)).
inline double chi2_2x2(double a, double b, double c, double d) {
    double n = a + b + c + d;
    double denom = (a + b) * (c + d) * (a + c) * (b + d);
    if (denom == 0) return 0.0;
    double det = a * d - b * c;
    return n * det * det / denom;
}

inline KeywordTable cluster_keywords(const TermDocMatrix& tdm, const Clustering& clustering,
                                     std::size_t top_n = 10,
                                     KeywordCounting counting = KeywordCounting::Occurrences) {
    const std::size_t k = clustering.k;
    const std::size_t v = tdm.vocab.size();
    // occurrences (or document hits) of each term per cluster
    std::vector<std::vector<std::size_t>> count(k, std::vector<std::size_t>(v, 0));
    std::vector<std::size_t> cluster_total(k, 0);
    for (std::size_t r = 0; r < tdm.n_rows(); ++r) {
        std::size_t c = clustering.assignment[r];
        for (auto& [t, occurrences] : tdm.rows[r]) {
            std::size_t units = counting == KeywordCounting::Occurrences ? occurrences : 1;
            count[c][t] += units;
            cluster_total[c] += units;
        }
    }
    std::vector<std::size_t> term_total(v, 0);
    std::size_t grand_total = 0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < v; ++t) term_total[t] += count[c][t];
        grand_total += cluster_total[c];
    }

    KeywordTable table;
    table.per_cluster.resize(k);
    auto sizes = clustering.cluster_sizes();
    for (std::size_t c = 0; c < k; ++c)
        table.message_share.push_back(static_cast<double>(sizes[c]) /
                                      static_cast<double>(tdm.n_rows()));

    for (std::size_t c = 0; c < k; ++c) {
        std::vector<KeywordEntry> entries;
        double in_total = static_cast<double>(cluster_total[c]);
        double out_total = static_cast<double>(grand_total - cluster_total[c]);
        for (std::size_t t = 0; t < v; ++t) {
            double a = static_cast<double>(count[c][t]);
            double b = static_cast<double>(term_total[t] - count[c][t]);
            if (a == 0) continue;
            // only terms over-represented in the cluster qualify as keywords
            if (out_total > 0 && a * out_total <= b * in_total) continue;
            KeywordEntry e;
            e.lemma = tdm.vocab.terms[t].term;
            e.in_count = count[c][t];
            e.out_count = term_total[t] - count[c][t];
            e.chi2 = chi2_2x2(a, in_total - a, b, out_total - b);
            entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end(), [](const KeywordEntry& x, const KeywordEntry& y) {
            if (x.chi2 != y.chi2) return x.chi2 > y.chi2;
            return x.lemma < y.lemma;
        });
        if (entries.size() > top_n) entries.resize(top_n);
        table.per_cluster[c] = std::move(entries);
    }
    return table;
}

struct GroupClusterChi2 {
    double chi2 = 0;
    std::size_t df = 0;
    double p = 1.0;
    std::vector<std::vector<std::size_t>> table;  // [group][cluster] message counts
};

inline GroupClusterChi2 group_cluster_chi2_from_table(
    const std::vector<std::vector<std::size_t>>& counts) {
    const std::size_t rows = counts.size();
    const std::size_t cols = rows ? counts[0].size() : 0;
    if (rows < 2 || cols < 2) throw ValidationError("group_cluster_chi2: table too small");
    std::vector<double> row_sum(rows, 0), col_sum(cols, 0);
    double total = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            row_sum[r] += static_cast<double>(counts[r][c]);
            col_sum[c] += static_cast<double>(counts[r][c]);
            total += static_cast<double>(counts[r][c]);
        }
    for (double s : row_sum)
        if (s == 0) throw ValidationError("group_cluster_chi2: a group has no classified messages");
    for (double s : col_sum)
        if (s == 0) throw ValidationError("group_cluster_chi2: a cluster has no messages");

    GroupClusterChi2 out;
    out.table = counts;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            double expected = row_sum[r] * col_sum[c] / total;
            double diff = static_cast<double>(counts[r][c]) - expected;
            out.chi2 += diff * diff / expected;
        }
    out.df = (rows - 1) * (cols - 1);
    out.p = dist::chi2_sf(out.chi2, static_cast<double>(out.df));
    return out;
}

/// Chi-squared test on the group x cluster contingency of classified
/// messages; groups are (innovator, rest) derived from each document's
/// author.
inline GroupClusterChi2 group_cluster_chi2(const TermDocMatrix& tdm, const Clustering& clustering,
                                           const Corpus& corpus, const LabelMap& labels) {
    std::vector<std::vector<std::size_t>> counts(2, std::vector<std::size_t>(clustering.k, 0));
    for (std::size_t r = 0; r < tdm.n_rows(); ++r) {
        const auto& post = corpus.posts()[tdm.row_doc[r]];
        bool innov = labels.innovator(corpus.author_index(post.author_id));
        ++counts[innov ? 0 : 1][clustering.assignment[r]];
    }
    return group_cluster_chi2_from_table(counts);
}

/// Term-by-cluster occurrence counts, the input of correspondence analysis.
inline ContingencyTable term_cluster_table(const TermDocMatrix& tdm,
                                           const Clustering& clustering) {
    ContingencyTable table;
    for (const auto& info : tdm.vocab.terms) table.row_names.push_back(info.term);
    for (std::size_t c = 0; c < clustering.k; ++c)
        table.col_names.push_back(std::to_string(c + 1));
    table.counts = Matrix(tdm.vocab.size(), clustering.k);
    for (std::size_t r = 0; r < tdm.n_rows(); ++r) {
        std::size_t c = clustering.assignment[r];
        for (auto& [t, occurrences] : tdm.rows[r])
            table.counts(t, c) += static_cast<double>(occurrences);
    }
    return table;
}

// ---------------------------------------------------------------------------
// CSV artifacts

inline std::string keyword_table_csv(const KeywordTable& table) {
    CsvWriter csv({"cluster", "rank", "lemma", "chi2", "in_count", "out_count"});
    for (std::size_t c = 0; c < table.per_cluster.size(); ++c) {
        for (std::size_t rank = 0; rank < table.per_cluster[c].size(); ++rank) {
            const auto& e = table.per_cluster[c][rank];
            csv.append_row({std::to_string(c + 1), std::to_string(rank + 1), e.lemma,
                            format_number(e.chi2), std::to_string(e.in_count),
                            std::to_string(e.out_count)});
        }
    }
    return csv.content();
}

inline std::string assignments_csv(const TermDocMatrix& tdm, const Clustering& clustering,
                                   const std::vector<ProcessedDoc>& docs) {
    CsvWriter csv({"post_id", "cluster"});
    for (std::size_t r = 0; r < tdm.n_rows(); ++r)
        csv.append_row({docs[tdm.row_doc[r]].doc_id,
                        std::to_string(clustering.assignment[r] + 1)});
    return csv.content();
}

inline std::string validation_scores_csv(const std::vector<ValidationScore>& scores) {
    CsvWriter csv({"k", "calinski_harabasz", "davies_bouldin", "rho"});
    for (const auto& s : scores)
        csv.append_row({std::to_string(s.k), format_number(s.calinski_harabasz),
                        format_number(s.davies_bouldin), format_number(s.rho)});
    return csv.content();
}

}  // namespace innoprof
