#pragma once

// End-to-end orchestration: a key=value run configuration, the staged
// pipeline (ingest -> graph -> metrics -> ETM -> CA -> stats), report-bundle
// writing with a reproducibility manifest, and the SVG factorial map. A
// bundle produced twice from the same config, seed and inputs is
// byte-identical; nothing here may read the clock or iterate unordered
// containers into output.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "innoprof/ca.hpp"
#include "innoprof/common.hpp"
#include "innoprof/corpus.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/etm.hpp"
#include "innoprof/graph.hpp"
#include "innoprof/language.hpp"
#include "innoprof/metrics.hpp"
#include "innoprof/sha256.hpp"
#include "innoprof/stats.hpp"
#include "innoprof/text.hpp"

namespace innoprof {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Run configuration

struct PipelineConfig {
    std::string posts_path;
    std::string labels_path;
    std::string stopwords_path;
    std::string lemmas_path;
    std::string lexicon_path;
    std::string exclude_authors_path;  // optional
    std::string output_dir = "out";

    std::uint64_t seed = 1;
    bool strict = false;
    bool thread_opener_edges = false;
    std::string distinctiveness_variant = "unweighted";  // or "weighted"
    std::string closeness_variant = "harmonic";          // or "freeman"

    std::size_t min_doc_freq = 5;
    double high_freq_cutoff = 0.5;
    std::size_t k_min = 2;
    std::size_t k_max = 6;
    std::size_t k_override = 0;  // 0 = select by validity indices
    std::size_t restarts = 10;
    std::size_t top_keywords = 10;
    std::string tdm_weighting = "binary";          // or "counts"
    std::string keyword_counting = "occurrences";  // or "documents"

    double alpha = 0.05;
    std::string significance_rule = "both";  // both | welch | mw
    std::string blocks;                      // "Name: col, col; Name2: col" or empty for defaults
    unsigned threads = 1;

    void set(const std::string& key, const std::string& value);
    static PipelineConfig from_file(const std::string& path);

    /// Canonical textual form; hashed into the manifest.
    std::string canonical() const;

    std::vector<ModelBlock> parsed_blocks() const;
    void validate_paths() const;
};

namespace detail {

inline std::string trim(std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: boolean expected for '" + key + "', got '" + v + "'");
}

inline std::uint64_t parse_uint(const std::string& v, const std::string& key) {
    try {
        std::size_t pos;
        auto out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: integer expected for '" + key + "', got '" + v + "'");
    }
}

inline double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos;
        double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: number expected for '" + key + "', got '" + v + "'");
    }
}

}  // namespace detail

inline void PipelineConfig::set(const std::string& key, const std::string& value) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_uint;
    if (key == "posts") posts_path = value;
    else if (key == "labels") labels_path = value;
    else if (key == "stopwords") stopwords_path = value;
    else if (key == "lemmas") lemmas_path = value;
    else if (key == "lexicon") lexicon_path = value;
    else if (key == "exclude_authors") exclude_authors_path = value;
    else if (key == "output_dir") output_dir = value;
    else if (key == "seed") seed = parse_uint(value, key);
    else if (key == "strict") strict = parse_bool(value, key);
    else if (key == "thread_opener_edges") thread_opener_edges = parse_bool(value, key);
    else if (key == "distinctiveness_variant") distinctiveness_variant = value;
    else if (key == "closeness_variant") closeness_variant = value;
    else if (key == "min_doc_freq") min_doc_freq = parse_uint(value, key);
    else if (key == "high_freq_cutoff") high_freq_cutoff = parse_double(value, key);
    else if (key == "k_min") k_min = parse_uint(value, key);
    else if (key == "k_max") k_max = parse_uint(value, key);
    else if (key == "k") k_override = parse_uint(value, key);
    else if (key == "restarts") restarts = parse_uint(value, key);
    else if (key == "top_keywords") top_keywords = parse_uint(value, key);
    else if (key == "tdm_weighting") tdm_weighting = value;
    else if (key == "keyword_counting") keyword_counting = value;
    else if (key == "alpha") alpha = parse_double(value, key);
    else if (key == "significance_rule") significance_rule = value;
    else if (key == "blocks") blocks = value;
    else if (key == "threads") threads = static_cast<unsigned>(parse_uint(value, key));
    else throw ConfigError("config: unknown key '" + key + "'");
}

inline PipelineConfig PipelineConfig::from_file(const std::string& path) {
    PipelineConfig config;
    std::size_t lineno = 0;
    for (auto& raw : split_lines(read_file(path))) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at " + path + ":" +
                              std::to_string(lineno));
        config.set(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    return config;
}

inline std::string PipelineConfig::canonical() const {
    std::map<std::string, std::string> kv{
        {"alpha", format_number(alpha)},
        {"blocks", blocks},
        {"closeness_variant", closeness_variant},
        {"distinctiveness_variant", distinctiveness_variant},
        {"exclude_authors", exclude_authors_path},
        {"high_freq_cutoff", format_number(high_freq_cutoff)},
        {"k", std::to_string(k_override)},
        {"k_max", std::to_string(k_max)},
        {"k_min", std::to_string(k_min)},
        {"keyword_counting", keyword_counting},
        {"labels", labels_path},
        {"lemmas", lemmas_path},
        {"lexicon", lexicon_path},
        {"min_doc_freq", std::to_string(min_doc_freq)},
        {"output_dir", output_dir},
        {"posts", posts_path},
        {"restarts", std::to_string(restarts)},
        {"seed", std::to_string(seed)},
        {"significance_rule", significance_rule},
        {"stopwords", stopwords_path},
        {"strict", strict ? "true" : "false"},
        {"tdm_weighting", tdm_weighting},
        {"thread_opener_edges", thread_opener_edges ? "true" : "false"},
        {"top_keywords", std::to_string(top_keywords)},
    };
    std::string out;
    for (auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

inline std::vector<ModelBlock> PipelineConfig::parsed_blocks() const {
    if (blocks.empty()) return default_model_blocks();
    std::vector<ModelBlock> out;
    std::size_t start = 0;
    while (start < blocks.size()) {
        std::size_t end = blocks.find(';', start);
        if (end == std::string::npos) end = blocks.size();
        std::string entry = detail::trim(blocks.substr(start, end - start));
        start = end + 1;
        if (entry.empty()) continue;
        auto colon = entry.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config: block entry '" + entry + "' needs 'Name: col, col'");
        ModelBlock block;
        block.name = detail::trim(entry.substr(0, colon));
        std::string cols = entry.substr(colon + 1);
        std::size_t cstart = 0;
        while (cstart <= cols.size()) {
            std::size_t cend = cols.find(',', cstart);
            if (cend == std::string::npos) cend = cols.size();
            std::string col = detail::trim(cols.substr(cstart, cend - cstart));
            if (!col.empty()) block.columns.push_back(col);
            cstart = cend + 1;
        }
        if (block.name.empty() || block.columns.empty())
            throw ConfigError("config: empty block name or column list in '" + entry + "'");
        out.push_back(std::move(block));
    }
    if (out.empty()) throw ConfigError("config: block specification parsed to nothing");
    return out;
}

inline void PipelineConfig::validate_paths() const {
    auto require = [](const std::string& path, const char* what) {
        if (path.empty()) throw ConfigError(std::string("config: missing required path '") + what + "'");
        if (!std::filesystem::exists(path))
            throw ConfigError(std::string("config: ") + what + " file not found: " + path);
    };
    require(posts_path, "posts");
    require(labels_path, "labels");
    require(stopwords_path, "stopwords");
    require(lemmas_path, "lemmas");
    require(lexicon_path, "lexicon");
    if (!exclude_authors_path.empty() && !std::filesystem::exists(exclude_authors_path))
        throw ConfigError("config: exclude_authors file not found: " + exclude_authors_path);
    if (k_min < 2 || k_max < k_min) throw ConfigError("config: invalid k range");
    if (k_override && (k_override < 2))
        throw ConfigError("config: k override must be >= 2");
}

// ---------------------------------------------------------------------------
// SVG factorial map

/// Cluster points on factors 1-2 with origin axes; falls back to a one
/// dimensional strip for single-factor maps. Raw coordinates are embedded
/// as data attributes so downstream checks can read them back exactly.
inline std::string emit_svg_factor_map(const FactorMap& map,
                                       const std::string& axis1_label = "factor 1",
                                       const std::string& axis2_label = "factor 2") {
    if (map.n_factors() == 0)
        throw ValidationError("factor map has zero factors; nothing to plot");
    const bool two_d = map.n_factors() >= 2;
    double max_abs = 1e-9;
    for (std::size_t j = 0; j < map.col_names.size(); ++j) {
        max_abs = std::max(max_abs, std::abs(map.col_coords(j, 0)));
        if (two_d) max_abs = std::max(max_abs, std::abs(map.col_coords(j, 1)));
    }
    const double half = 260.0, pad = 40.0, scale = half / (1.1 * max_abs);
    const double size = 2 * (half + pad);
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(size) +
           "\" height=\"" + format_number(size) + "\" viewBox=\"0 0 " + format_number(size) + " " +
           format_number(size) + "\">\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    double c = half + pad;
    svg += "  <line x1=\"" + format_number(pad) + "\" y1=\"" + format_number(c) + "\" x2=\"" +
           format_number(size - pad) + "\" y2=\"" + format_number(c) +
           "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    svg += "  <line x1=\"" + format_number(c) + "\" y1=\"" + format_number(pad) + "\" x2=\"" +
           format_number(c) + "\" y2=\"" + format_number(size - pad) +
           "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + format_number(size - pad) + "\" y=\"" + format_number(c - 8) +
           "\" text-anchor=\"end\" font-size=\"12\">" + axis1_label + "</text>\n";
    if (two_d)
        svg += "  <text x=\"" + format_number(c + 8) + "\" y=\"" + format_number(pad + 4) +
               "\" font-size=\"12\">" + axis2_label + "</text>\n";
    for (std::size_t j = 0; j < map.col_names.size(); ++j) {
        double x = map.col_coords(j, 0);
        double y = two_d ? map.col_coords(j, 1) : 0.0;
        double cx = c + x * scale;
        double cy = c - y * scale;
        svg += "  <circle cx=\"" + format_number(cx) + "\" cy=\"" + format_number(cy) +
               "\" r=\"6\" fill=\"#1f6fb2\" data-cluster=\"" + map.col_names[j] +
               "\" data-factor1=\"" + format_number(x) + "\" data-factor2=\"" +
               format_number(two_d ? map.col_coords(j, 1) : 0.0) + "\"/>\n";
        svg += "  <text x=\"" + format_number(cx + 9) + "\" y=\"" + format_number(cy + 4) +
               "\" font-size=\"13\">cluster " + map.col_names[j] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

// ---------------------------------------------------------------------------
// Report bundle

struct ReportBundle {
    std::vector<std::pair<std::string, std::string>> artifacts;  // (name, content)
    std::size_t chosen_k = 0;
    double coverage = 0;
    std::string notes;

    const std::string* find(const std::string& name) const {
        for (auto& [n, content] : artifacts)
            if (n == name) return &content;
        return nullptr;
    }
};

namespace detail {

struct StageGuard {
    const char* stage;
    const char* hint;
};

[[noreturn]] inline void rethrow_with_stage(const StageGuard& guard, const std::exception& e) {
    std::string msg = std::string("stage '") + guard.stage + "' failed: " + e.what() +
                      "\n  hint: " + guard.hint;
    if (dynamic_cast<const ConfigError*>(&e)) throw ConfigError(msg);
    if (dynamic_cast<const ValidationError*>(&e)) throw ValidationError(msg);
    throw NumericalError(msg);
}

}  // namespace detail

/// Runs every stage and assembles the artifact bundle in memory. Writing is
/// the caller's concern (see write_bundle).
inline ReportBundle run_pipeline(const PipelineConfig& config) {
    config.validate_paths();
    ReportBundle bundle;

    // --- ingest ------------------------------------------------------------
    detail::StageGuard guard{"ingest", "check the posts/labels files and --strict"};
    Corpus corpus;
    LabelMap labels;
    ValidationReport report;
    try {
        ParseOptions options;
        options.strict = config.strict;
        if (!config.exclude_authors_path.empty()) {
            for (auto& line : split_lines(read_file(config.exclude_authors_path))) {
                if (!line.empty() && line[0] != '#') options.exclude_authors.insert(line);
            }
        }
        auto parsed = parse_posts(read_file(config.posts_path), options);
        corpus = std::move(parsed.corpus);
        report = std::move(parsed.report);
        labels = parse_labels(read_file(config.labels_path), corpus, report, config.strict);
        if (corpus.posts().empty()) throw ValidationError("no posts parsed");

        std::string report_text = report.findings.empty() ? "no findings\n" : report.to_string();
        bundle.artifacts.push_back({"validation_report.txt", report_text});

        auto lex = lexical_indices(corpus);
        CsvWriter lex_csv({"token_count", "type_count", "hapax_count", "type_token_ratio",
                           "hapax_pct"});
        lex_csv.append_row({std::to_string(lex.token_count), std::to_string(lex.type_count),
                            std::to_string(lex.hapax_count), format_number(lex.type_token_ratio),
                            format_number(lex.hapax_pct)});
        bundle.artifacts.push_back({"lexical_indices.csv", lex_csv.content()});
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- graph ---------------------------------------------------------------
    guard = {"graph", "inspect parent_post_id links in the validation report"};
    ReplyGraph graph;
    try {
        GraphBuildOptions options;
        options.thread_opener_edges = config.thread_opener_edges;
        graph = build_graph(corpus, options);
        bundle.artifacts.push_back({"nodes.csv", node_list_csv(graph)});
        bundle.artifacts.push_back({"edges.csv", edge_list_csv(graph)});
        auto summary = graph_summary(graph);
        CsvWriter csv({"nodes", "arcs", "total_weight", "isolates"});
        csv.append_row({std::to_string(summary.nodes), std::to_string(summary.arcs),
                        std::to_string(summary.total_weight), std::to_string(summary.isolates)});
        bundle.artifacts.push_back({"graph_summary.csv", csv.content()});
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- metrics -------------------------------------------------------------
    guard = {"metrics", "the graph may be degenerate (fewer than 2 authors)"};
    std::vector<NodeCentralities> centralities;
    std::vector<LanguageProfile> profiles;
    try {
        CentralityOptions options;
        options.threads = config.threads;
        if (config.distinctiveness_variant == "weighted")
            options.distinctiveness = DistinctivenessVariant::Weighted;
        else if (config.distinctiveness_variant != "unweighted")
            throw ConfigError("unknown distinctiveness_variant '" + config.distinctiveness_variant +
                              "'");
        if (config.closeness_variant == "freeman")
            options.closeness = ClosenessVariant::FreemanLargest;
        else if (config.closeness_variant != "harmonic")
            throw ConfigError("unknown closeness_variant '" + config.closeness_variant + "'");
        centralities = all_centralities(graph, options);

        LanguageOptions lang;
        lang.stopwords = load_stopwords(config.stopwords_path);
        lang.lexicon = load_lexicon(config.lexicon_path);
        profiles = language_profiles(corpus, lang);

        CsvWriter csv({"author_id", "in_degree", "out_degree", "w_in_degree", "w_out_degree",
                       "in_distinctiveness", "out_distinctiveness", "closeness", "betweenness",
                       "constraint", "word_count", "wps", "six_letter_pct", "sentiment", "novelty",
                       "innovator"});
        for (std::size_t a = 0; a < corpus.author_count(); ++a) {
            const auto& c = centralities[a];
            const auto& p = profiles[a];
            csv.append_row({corpus.authors()[a], std::to_string(c.in_degree),
                            std::to_string(c.out_degree), std::to_string(c.w_in_degree),
                            std::to_string(c.w_out_degree), format_number(c.in_distinctiveness),
                            format_number(c.out_distinctiveness), format_number(c.closeness),
                            format_number(c.betweenness),
                            c.constraint ? format_number(*c.constraint) : std::string(),
                            std::to_string(p.word_count), format_number(p.wps),
                            format_number(p.six_letter_pct), format_number(p.sentiment),
                            format_number(p.novelty), labels.innovator(a) ? "1" : "0"});
        }
        bundle.artifacts.push_back({"metrics.csv", csv.content()});
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- etm -----------------------------------------------------------------
    guard = {"etm", "try lowering min_doc_freq or widening the k range"};
    TermDocMatrix tdm;
    Clustering clustering;
    std::vector<ProcessedDoc> docs;
    try {
        docs = preprocess(corpus, load_stopwords(config.stopwords_path),
                          load_lemma_table(config.lemmas_path), Stemmer::italian());
        auto vocab = select_terms(docs, config.min_doc_freq, config.high_freq_cutoff);
        TdmWeighting weighting = TdmWeighting::Binary;
        if (config.tdm_weighting == "counts") weighting = TdmWeighting::Counts;
        else if (config.tdm_weighting != "binary")
            throw ConfigError("unknown tdm_weighting '" + config.tdm_weighting + "'");
        tdm = build_tdm(docs, vocab, weighting);

        std::size_t k_max = std::min(config.k_max, tdm.n_rows());
        auto scores = validate_clusters(tdm, config.k_min, k_max, config.seed, config.restarts);
        bundle.artifacts.push_back({"etm_validation.csv", validation_scores_csv(scores)});
        std::size_t k = config.k_override ? config.k_override : select_k(scores);
        clustering = bisecting_kmeans(tdm, k, config.seed, config.restarts);
        bundle.chosen_k = k;
        bundle.coverage = clustering.coverage;

        KeywordCounting counting = KeywordCounting::Occurrences;
        if (config.keyword_counting == "documents") counting = KeywordCounting::Documents;
        else if (config.keyword_counting != "occurrences")
            throw ConfigError("unknown keyword_counting '" + config.keyword_counting + "'");
        auto keywords = cluster_keywords(tdm, clustering, config.top_keywords, counting);
        bundle.artifacts.push_back({"etm_keywords.csv", keyword_table_csv(keywords)});
        bundle.artifacts.push_back({"etm_assignments.csv", assignments_csv(tdm, clustering, docs)});

        auto table = term_cluster_table(tdm, clustering);
        std::vector<std::string> header{"term"};
        for (auto& name : table.col_names) header.push_back("cluster_" + name);
        CsvWriter tc_csv(header);
        for (std::size_t i = 0; i < table.row_names.size(); ++i) {
            std::vector<std::string> row{table.row_names[i]};
            for (std::size_t j = 0; j < table.col_names.size(); ++j)
                row.push_back(format_number(table.counts(i, j)));
            tc_csv.append_row(row);
        }
        bundle.artifacts.push_back({"term_cluster_counts.csv", tc_csv.content()});

        nlohmann::json summary;
        summary["k"] = k;
        summary["coverage"] = clustering.coverage;
        summary["classified"] = tdm.n_rows();
        summary["unclassified"] = tdm.unclassified.size();
        summary["vocabulary_size"] = tdm.vocab.size();
        for (std::size_t c = 0; c < keywords.message_share.size(); ++c)
            summary["message_share"].push_back(keywords.message_share[c]);
        try {
            auto chi2 = group_cluster_chi2(tdm, clustering, corpus, labels);
            summary["group_chi2"] = {{"chi2", chi2.chi2}, {"df", chi2.df}, {"p", chi2.p}};
            summary["group_table"] = chi2.table;
        } catch (const ValidationError& e) {
            summary["group_chi2"] = nullptr;
            bundle.notes += std::string("group/cluster test skipped: ") + e.what() + "\n";
        }
        bundle.artifacts.push_back({"etm_summary.json", summary.dump(2) + "\n"});
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- ca ------------------------------------------------------------------
    guard = {"ca", "the term-cluster table may be degenerate"};
    try {
        auto table = term_cluster_table(tdm, clustering);
        auto map = ca(table);
        bundle.artifacts.push_back({"factor_map.csv", factor_map_csv(map)});
        bundle.artifacts.push_back({"contributions.csv", contributions_csv(map)});
        bundle.artifacts.push_back({"inertia.csv", inertia_csv(map)});
        if (map.n_factors() >= 1) {
            bundle.artifacts.push_back({"factor_map.svg", emit_svg_factor_map(map)});
        } else {
            bundle.notes += "factor map not plotted: " + map.warning + "\n";
        }
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- stats ---------------------------------------------------------------
    guard = {"stats", "groups may be too small after listwise deletion"};
    try {
        MetricsTable table;
        table.columns = {"in_degree", "out_degree", "w_in_degree", "w_out_degree",
                         "in_distinctiveness", "out_distinctiveness", "closeness", "betweenness",
                         "constraint", "word_count", "wps", "six_letter_pct", "sentiment",
                         "novelty"};
        table.data.assign(table.columns.size(), {});
        for (std::size_t a = 0; a < corpus.author_count(); ++a) {
            const auto& c = centralities[a];
            const auto& p = profiles[a];
            double nan = std::numeric_limits<double>::quiet_NaN();
            table.data[0].push_back(static_cast<double>(c.in_degree));
            table.data[1].push_back(static_cast<double>(c.out_degree));
            table.data[2].push_back(static_cast<double>(c.w_in_degree));
            table.data[3].push_back(static_cast<double>(c.w_out_degree));
            table.data[4].push_back(c.in_distinctiveness);
            table.data[5].push_back(c.out_distinctiveness);
            table.data[6].push_back(c.closeness);
            table.data[7].push_back(c.betweenness);
            table.data[8].push_back(c.constraint ? *c.constraint : nan);
            table.data[9].push_back(static_cast<double>(p.word_count));
            table.data[10].push_back(p.wps);
            table.data[11].push_back(p.six_letter_pct);
            table.data[12].push_back(p.sentiment);
            table.data[13].push_back(p.novelty);
            table.innovator.push_back(labels.innovator(a) ? 1 : 0);
        }

        GroupComparisonOptions options;
        options.alpha = config.alpha;
        if (config.significance_rule == "welch") options.rule = SignificanceRule::WelchOnly;
        else if (config.significance_rule == "mw") options.rule = SignificanceRule::MannWhitneyOnly;
        else if (config.significance_rule != "both")
            throw ConfigError("unknown significance_rule '" + config.significance_rule + "'");
        auto comparison = compare_groups(table, options);
        bundle.artifacts.push_back({"group_comparison.csv", group_comparison_csv(comparison)});
        bundle.artifacts.push_back({"group_comparison.txt", group_comparison_text(comparison)});

        auto models = model_blocks(table, config.parsed_blocks());
        bundle.artifacts.push_back({"models.csv", model_blocks_csv(models)});
        bundle.artifacts.push_back({"models.txt", model_blocks_text(models)});
    } catch (const std::exception& e) {
        detail::rethrow_with_stage(guard, e);
    }

    // --- manifest --------------------------------------------------------------
    nlohmann::json manifest;
    manifest["version"] = kVersion;
    manifest["seed"] = config.seed;
    manifest["config_sha256"] = Sha256::digest(config.canonical());
    manifest["config"] = config.canonical();
    nlohmann::json inputs;
    for (auto& [name, path] : std::vector<std::pair<std::string, std::string>>{
             {"posts", config.posts_path},
             {"labels", config.labels_path},
             {"stopwords", config.stopwords_path},
             {"lemmas", config.lemmas_path},
             {"lexicon", config.lexicon_path}})
        inputs[name] = Sha256::digest(read_file(path));
    manifest["inputs"] = inputs;
    manifest["families"] = {"ingest", "graph", "metrics", "etm", "ca", "stats", "manifest"};
    nlohmann::json artifacts;
    for (auto& [name, content] : bundle.artifacts) artifacts[name] = Sha256::digest(content);
    manifest["artifacts"] = artifacts;
    bundle.artifacts.push_back({"manifest.json", manifest.dump(2) + "\n"});
    return bundle;
}

/// Writes every artifact under `dir`; on failure all files created by this
/// call are removed before rethrowing.
inline void write_bundle(const ReportBundle& bundle, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    try {
        for (auto& [name, content] : bundle.artifacts) {
            std::filesystem::path path = std::filesystem::path(dir) / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) throw ConfigError("cannot write artifact: " + path.string());
            out << content;
            written.push_back(path);
        }
    } catch (...) {
        for (auto& path : written) std::filesystem::remove(path);
        throw;
    }
}

}  // namespace innoprof
