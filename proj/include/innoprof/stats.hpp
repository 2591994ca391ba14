#pragma once

// Group-comparison statistics: Welch t-tests, Mann-Whitney U with midranks
// and tie correction, IRLS logistic regression with McFadden's R², variance
// inflation factors, and the distribution functions they need. The t and
// chi-squared CDFs are evaluated through the regularized incomplete
// beta/gamma functions (series where they converge fast, Lentz continued
// fractions elsewhere).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "innoprof/common.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/linalg.hpp"

namespace innoprof {

// ---------------------------------------------------------------------------
// Special functions

namespace dist {

inline constexpr double kEps = 1e-16;
inline constexpr int kMaxIter = 500;

/// Regularized lower incomplete gamma P(a, x), series expansion.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x), Lentz continued fraction.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw NumericalError("gamma_p domain error");
    if (x == 0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw NumericalError("gamma_q domain error");
    if (x == 0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

inline double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return h;
}

/// Regularized incomplete beta I_x(a, b).
inline double beta_inc(double a, double b, double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                   b * std::log1p(-x);
    double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Two-sided normal tail probability.
inline double normal_p_two_sided(double z) {
    double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    return std::min(1.0, p);
}

inline double student_t_cdf(double t, double df) {
    if (df <= 0) throw NumericalError("student_t_cdf: df must be positive");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    double x = df / (df + t * t);
    double half_tail = 0.5 * beta_inc(0.5 * df, 0.5, x);
    return t > 0 ? 1.0 - half_tail : half_tail;
}

/// Two-sided p for a t statistic.
inline double student_t_p_two_sided(double t, double df) {
    if (std::isinf(t)) return 0.0;
    return std::min(1.0, beta_inc(0.5 * df, 0.5, df / (df + t * t)));
}

inline double chi2_cdf(double x, double df) {
    if (x <= 0) return 0.0;
    return gamma_p(0.5 * df, 0.5 * x);
}

/// Upper tail (survival) of the chi-squared distribution.
inline double chi2_sf(double x, double df) {
    if (x <= 0) return 1.0;
    return gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace dist

// ---------------------------------------------------------------------------
// Two-sample tests

struct TestResult {
    double statistic = 0;
    std::optional<double> df;
    double p = 1.0;
    double mean_a = 0, mean_b = 0;
    std::size_t n_a = 0, n_b = 0;
    std::string warning;
};

namespace detail {
inline std::pair<double, double> mean_var(const std::vector<double>& x) {
    double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double ss = 0;
    for (double v : x) ss += (v - mean) * (v - mean);
    double var = x.size() > 1 ? ss / static_cast<double>(x.size() - 1) : 0.0;
    return {mean, var};
}
}  // namespace detail

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom and a two-sided p-value.
inline TestResult welch_t(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw ValidationError("welch_t requires at least 2 observations per group");
    auto [ma, va] = detail::mean_var(a);
    auto [mb, vb] = detail::mean_var(b);
    TestResult r;
    r.mean_a = ma;
    r.mean_b = mb;
    r.n_a = a.size();
    r.n_b = b.size();
    double sa = va / static_cast<double>(a.size());
    double sb = vb / static_cast<double>(b.size());
    if (sa + sb == 0.0) {
        if (ma == mb) {
            r.statistic = 0.0;
            r.p = 1.0;
            r.df = static_cast<double>(a.size() + b.size() - 2);
            r.warning = "zero variance in both groups with equal means";
            return r;
        }
        r.statistic = ma > mb ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
        r.df = static_cast<double>(a.size() + b.size() - 2);
        r.p = 0.0;
        r.warning = "zero variance in both groups";
        return r;
    }
    r.statistic = (ma - mb) / std::sqrt(sa + sb);
    double df = (sa + sb) * (sa + sb) /
                (sa * sa / static_cast<double>(a.size() - 1) +
                 sb * sb / static_cast<double>(b.size() - 1));
    r.df = df;
    r.p = dist::student_t_p_two_sided(r.statistic, df);
    return r;
}

/// Mann-Whitney U via midranks; normal approximation with tie and
/// continuity corrections. The statistic is U for group a (pairs where a
/// exceeds b, halves for ties).
inline TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw ValidationError("mann_whitney_u requires nonempty groups");
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::pair<double, int>> pooled;  // (value, group 0=a 1=b)
    pooled.reserve(n);
    for (double v : a) pooled.push_back({v, 0});
    for (double v : b) pooled.push_back({v, 1});
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    double rank_sum_a = 0;
    double tie_term = 0;  // sum of t^3 - t over tie groups
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);  // average of ranks i+1..j
        std::size_t t = j - i;
        if (t > 1) tie_term += static_cast<double>(t) * t * t - static_cast<double>(t);
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += midrank;
        i = j;
    }

    TestResult r;
    r.n_a = na;
    r.n_b = nb;
    auto [ma, va] = detail::mean_var(a);
    auto [mb, vb] = detail::mean_var(b);
    r.mean_a = ma;
    r.mean_b = mb;
    double u_a = rank_sum_a - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
    r.statistic = u_a;
    double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    double nn = static_cast<double>(n);
    double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                 ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (var <= 0) {
        r.p = 1.0;
        r.warning = "all pooled values identical";
        return r;
    }
    double diff = u_a - mu;
    double continuity = diff > 0 ? -0.5 : (diff < 0 ? 0.5 : 0.0);
    double z = (diff + continuity) / std::sqrt(var);
    r.p = dist::normal_p_two_sided(z);
    return r;
}

// ---------------------------------------------------------------------------
// Logistic regression (IRLS)

struct LogitModel {
    std::vector<std::string> names;  // predictor names; intercept last as "Constant"
    std::vector<double> coef;
    std::vector<double> se;
    std::vector<double> z;
    std::vector<double> p;
    double loglik = 0;
    double null_loglik = 0;
    double mcfadden = 0;
    bool converged = false;
    std::size_t iterations = 0;
    std::size_t n = 0;
    std::vector<double> fitted;  // p-hat per observation
};

namespace detail {

inline double logistic_loglik(const std::vector<double>& eta, const std::vector<int>& y) {
    double ll = 0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        // log(1+exp(x)) evaluated stably on both tails
        double a = eta[i];
        double log1pexp = a > 30 ? a : std::log1p(std::exp(a));
        ll += static_cast<double>(y[i]) * a - log1pexp;
    }
    return ll;
}

}  // namespace detail

/// Maximum-likelihood logistic fit via iteratively reweighted least squares
/// with step halving (the log-likelihood never decreases). `predictors` has
/// one column per named predictor; the intercept is added internally.
/// Converges when the score's sup-norm drops below `score_tol`.
inline LogitModel logistic_fit(const Matrix& predictors, const std::vector<int>& y,
                               std::vector<std::string> names = {}, double score_tol = 1e-8,
                               std::size_t max_iter = 100) {
    const std::size_t n = predictors.rows();
    const std::size_t k = predictors.cols();
    if (n != y.size()) throw ValidationError("logistic_fit: row count mismatch");
    if (n <= k + 1) throw ValidationError("logistic_fit: need more observations than parameters");
    if (names.empty())
        for (std::size_t j = 0; j < k; ++j) names.push_back("x" + std::to_string(j + 1));

    std::size_t ones = 0;
    for (int v : y) ones += v ? 1 : 0;
    if (ones == 0 || ones == n)
        throw ValidationError("logistic_fit: outcome has no variation");

    for (std::size_t j = 0; j < k; ++j) {
        double first = predictors(0, j);
        bool constant = true;
        for (std::size_t i = 1; i < n && constant; ++i)
            if (predictors(i, j) != first) constant = false;
        if (constant)
            throw NumericalError("logistic_fit: predictor '" + names[j] +
                                 "' is constant; drop it or check the design");
    }

    // design with intercept in column 0
    Matrix x(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (std::size_t j = 0; j < k; ++j) x(i, j + 1) = predictors(i, j);
    }

    const double explosion_bound = 1e4;
    std::vector<double> beta(k + 1, 0.0);
    std::vector<double> eta(n, 0.0);
    double ll = detail::logistic_loglik(eta, y);

    LogitModel model;
    model.n = n;
    double ybar = static_cast<double>(ones) / static_cast<double>(n);
    model.null_loglik = static_cast<double>(ones) * std::log(ybar) +
                        static_cast<double>(n - ones) * std::log1p(-ybar);

    std::vector<double> prob(n), score(k + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) prob[i] = 1.0 / (1.0 + std::exp(-eta[i]));
        std::fill(score.begin(), score.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double resid = static_cast<double>(y[i]) - prob[i];
            for (std::size_t j = 0; j <= k; ++j) score[j] += x(i, j) * resid;
        }
        double score_norm = 0;
        for (double s : score) score_norm = std::max(score_norm, std::abs(s));
        if (score_norm < score_tol) {
            model.converged = true;
            model.iterations = iter;
            break;
        }

        Matrix info(k + 1, k + 1);
        for (std::size_t i = 0; i < n; ++i) {
            double w = prob[i] * (1.0 - prob[i]);
            if (w < 1e-300) continue;
            for (std::size_t a = 0; a <= k; ++a) {
                double xa = x(i, a) * w;
                for (std::size_t b = a; b <= k; ++b) info(a, b) += xa * x(i, b);
            }
        }
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; b < a; ++b) info(a, b) = info(b, a);

        std::vector<double> delta;
        try {
            delta = cholesky_solve(info, score);
        } catch (const NumericalError&) {
            throw NumericalError(
                "logistic_fit: singular information matrix; predictors are likely collinear "
                "(check VIF)");
        }

        // step halving keeps the log-likelihood nondecreasing
        double step = 1.0;
        std::vector<double> beta_new(k + 1), eta_new(n);
        double ll_new = -std::numeric_limits<double>::infinity();
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t j = 0; j <= k; ++j) beta_new[j] = beta[j] + step * delta[j];
            for (std::size_t i = 0; i < n; ++i) {
                double e = 0;
                for (std::size_t j = 0; j <= k; ++j) e += x(i, j) * beta_new[j];
                eta_new[i] = e;
            }
            ll_new = detail::logistic_loglik(eta_new, y);
            if (ll_new >= ll - 1e-12) break;
            step *= 0.5;
        }
        beta = beta_new;
        eta = eta_new;
        ll = ll_new;
        model.iterations = iter + 1;

        double coef_norm = 0;
        for (std::size_t j = 1; j <= k; ++j) coef_norm = std::max(coef_norm, std::abs(beta[j]));
        if (coef_norm > explosion_bound) {
            std::string offenders;
            for (std::size_t j = 1; j <= k; ++j) {
                if (std::abs(beta[j]) > 0.5 * coef_norm) {
                    if (!offenders.empty()) offenders += ", ";
                    offenders += names[j - 1];
                }
            }
            throw NumericalError("logistic_fit: coefficients diverge (perfect or quasi-separation); "
                                 "offending predictors: " +
                                 offenders);
        }
    }

    model.loglik = ll;
    model.mcfadden = model.null_loglik != 0.0 ? 1.0 - ll / model.null_loglik : 0.0;
    model.fitted.resize(n);
    for (std::size_t i = 0; i < n; ++i) model.fitted[i] = 1.0 / (1.0 + std::exp(-eta[i]));

    // observed-information standard errors
    Matrix info(k + 1, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double w = model.fitted[i] * (1.0 - model.fitted[i]);
        for (std::size_t a = 0; a <= k; ++a) {
            double xa = x(i, a) * w;
            for (std::size_t b = a; b <= k; ++b) info(a, b) += xa * x(i, b);
        }
    }
    for (std::size_t a = 0; a <= k; ++a)
        for (std::size_t b = 0; b < a; ++b) info(a, b) = info(b, a);
    Matrix cov;
    try {
        cov = spd_inverse(info);
    } catch (const NumericalError&) {
        throw NumericalError(
            "logistic_fit: singular information matrix; predictors are likely collinear (check "
            "VIF)");
    }

    // report order: predictors first, intercept last
    model.names = names;
    model.names.push_back("Constant");
    model.coef.resize(k + 1);
    model.se.resize(k + 1);
    model.z.resize(k + 1);
    model.p.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        std::size_t src = j < k ? j + 1 : 0;  // shift intercept to the back
        model.coef[j] = beta[src];
        model.se[j] = std::sqrt(cov(src, src));
        model.z[j] = model.se[j] > 0 ? model.coef[j] / model.se[j] : 0.0;
        model.p[j] = dist::normal_p_two_sided(model.z[j]);
    }
    return model;
}

/// Variance inflation factors: regress each predictor on the others (with
/// intercept) and report 1/(1-R²). Exact collinearity yields infinity.
inline std::vector<double> vif(const Matrix& predictors) {
    const std::size_t n = predictors.rows();
    const std::size_t k = predictors.cols();
    if (k < 2) throw ValidationError("vif requires at least 2 predictors");
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        Matrix design(n, k);  // intercept + the other predictors
        std::vector<double> target(n);
        for (std::size_t i = 0; i < n; ++i) {
            design(i, 0) = 1.0;
            std::size_t c = 1;
            for (std::size_t m = 0; m < k; ++m) {
                if (m == j) continue;
                design(i, c++) = predictors(i, m);
            }
            target[i] = predictors(i, j);
        }
        double mean = std::accumulate(target.begin(), target.end(), 0.0) / static_cast<double>(n);
        double tss = 0;
        for (double v : target) tss += (v - mean) * (v - mean);
        if (tss == 0) {
            out[j] = std::numeric_limits<double>::infinity();
            continue;
        }
        auto ls = least_squares(design, target);
        double r2 = 1.0 - ls.rss / tss;
        out[j] = r2 >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - r2);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Metric table and the two report builders

/// One row per author: metric columns plus the innovator flag. Missing
/// values are NaN and removed listwise per metric (or per model).
struct MetricsTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major
    std::vector<int> innovator;

    std::size_t n_rows() const { return innovator.size(); }

    int column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        return -1;
    }
};

struct GroupComparisonRow {
    std::string metric;
    TestResult welch;
    TestResult mann_whitney;
    std::size_t dropped = 0;  // rows removed by listwise deletion
    bool significant = false;  // joint rule
};

enum class SignificanceRule { Both, WelchOnly, MannWhitneyOnly };

struct GroupComparisonOptions {
    double alpha = 0.05;
    SignificanceRule rule = SignificanceRule::Both;
};

inline std::vector<GroupComparisonRow> compare_groups(const MetricsTable& table,
                                                      const GroupComparisonOptions& options = {}) {
    std::size_t flagged = 0;
    for (int f : table.innovator) flagged += f ? 1 : 0;
    if (flagged == 0 || flagged == table.n_rows())
        throw ValidationError("compare_groups requires both groups nonempty");

    std::vector<GroupComparisonRow> rows;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        GroupComparisonRow row;
        row.metric = table.columns[c];
        std::vector<double> a, b;
        for (std::size_t i = 0; i < table.n_rows(); ++i) {
            double v = table.data[c][i];
            if (std::isnan(v)) {
                ++row.dropped;
                continue;
            }
            (table.innovator[i] ? a : b).push_back(v);
        }
        if (a.size() < 2 || b.size() < 2)
            throw ValidationError("metric '" + row.metric +
                                  "' leaves a group with <2 observations after deletion");
        row.welch = welch_t(a, b);
        row.mann_whitney = mann_whitney_u(a, b);
        switch (options.rule) {
            case SignificanceRule::Both:
                row.significant =
                    row.welch.p < options.alpha && row.mann_whitney.p < options.alpha;
                break;
            case SignificanceRule::WelchOnly:
                row.significant = row.welch.p < options.alpha;
                break;
            case SignificanceRule::MannWhitneyOnly:
                row.significant = row.mann_whitney.p < options.alpha;
                break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct ModelBlock {
    std::string name;
    std::vector<std::string> columns;
};

/// Predictor blocks fitted as separate models, mirroring a blockwise
/// regression table. Keeps collinear metric families apart.
inline std::vector<ModelBlock> default_model_blocks() {
    return {
        {"Model 1", {"in_degree", "out_degree"}},
        {"Model 2", {"w_in_degree", "w_out_degree"}},
        {"Model 3", {"in_distinctiveness", "out_distinctiveness"}},
        {"Model 4", {"closeness", "betweenness", "constraint"}},
        {"Model 5", {"word_count", "sentiment", "novelty", "wps", "six_letter_pct"}},
        {"Model 6", {"out_degree", "closeness", "constraint", "wps", "six_letter_pct"}},
    };
}

struct BlockModelResult {
    std::string block_name;
    LogitModel model;
    std::size_t complete_cases = 0;
};

inline std::vector<BlockModelResult> model_blocks(const MetricsTable& table,
                                                  const std::vector<ModelBlock>& blocks) {
    if (blocks.empty()) throw ConfigError("model_blocks: empty block specification");
    std::vector<BlockModelResult> results;
    for (const auto& block : blocks) {
        std::vector<int> cols;
        for (const auto& name : block.columns) {
            int idx = table.column_index(name);
            if (idx < 0)
                throw ConfigError("model_blocks: unknown column '" + name + "' in " + block.name);
            cols.push_back(idx);
        }
        // complete cases over this block's columns
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < table.n_rows(); ++i) {
            bool ok = true;
            for (int c : cols)
                if (std::isnan(table.data[c][i])) ok = false;
            if (ok) keep.push_back(i);
        }
        Matrix x(keep.size(), cols.size());
        std::vector<int> y(keep.size());
        for (std::size_t r = 0; r < keep.size(); ++r) {
            for (std::size_t j = 0; j < cols.size(); ++j) x(r, j) = table.data[cols[j]][keep[r]];
            y[r] = table.innovator[keep[r]];
        }
        try {
            BlockModelResult res;
            res.block_name = block.name;
            res.complete_cases = keep.size();
            res.model = logistic_fit(x, y, block.columns);
            results.push_back(std::move(res));
        } catch (const std::runtime_error& e) {
            throw NumericalError(block.name + ": " + e.what());
        }
    }
    return results;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    if (p < 0.1) return "^";
    return "";
}

inline std::string group_comparison_csv(const std::vector<GroupComparisonRow>& rows) {
    CsvWriter csv({"metric", "n_innovator", "n_rest", "mean_innovator", "mean_rest", "welch_t",
                   "welch_df", "welch_p", "mw_u", "mw_p", "significant"});
    for (const auto& r : rows) {
        csv.append_row({r.metric, std::to_string(r.welch.n_a), std::to_string(r.welch.n_b),
                        format_number(r.welch.mean_a), format_number(r.welch.mean_b),
                        format_number(r.welch.statistic),
                        r.welch.df ? format_number(*r.welch.df) : std::string(),
                        format_number(r.welch.p), format_number(r.mann_whitney.statistic),
                        format_number(r.mann_whitney.p), r.significant ? "1" : "0"});
    }
    return csv.content();
}

inline std::string model_blocks_csv(const std::vector<BlockModelResult>& results) {
    CsvWriter csv({"model", "term", "coef", "se", "z", "p", "stars", "mcfadden_r2", "n"});
    for (const auto& res : results) {
        const auto& m = res.model;
        for (std::size_t j = 0; j < m.names.size(); ++j) {
            csv.append_row({res.block_name, m.names[j], format_number(m.coef[j]),
                            format_number(m.se[j]), format_number(m.z[j]), format_number(m.p[j]),
                            significance_stars(m.p[j]), format_number(m.mcfadden),
                            std::to_string(m.n)});
        }
    }
    return csv.content();
}

namespace detail {
inline void append_aligned(std::string& out, const std::vector<std::vector<std::string>>& grid) {
    std::vector<std::size_t> width;
    for (const auto& row : grid) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : grid) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size()) out.append(width[i] - row[i].size() + 2, ' ');
        }
        out += '\n';
    }
}
}  // namespace detail

inline std::string group_comparison_text(const std::vector<GroupComparisonRow>& rows) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Variable", "Group", "Mean", "Welch t", "df", "Welch p", "U", "MW p", "Sig"});
    for (const auto& r : rows) {
        grid.push_back({r.metric, "Innovator", format_number(r.welch.mean_a),
                        format_number(r.welch.statistic),
                        r.welch.df ? format_number(*r.welch.df) : "",
                        format_number(r.welch.p), format_number(r.mann_whitney.statistic),
                        format_number(r.mann_whitney.p), r.significant ? "yes" : ""});
        grid.push_back({"", "Non-innovator", format_number(r.welch.mean_b), "", "", "", "", "", ""});
    }
    std::string out;
    detail::append_aligned(out, grid);
    return out;
}

inline std::string model_blocks_text(const std::vector<BlockModelResult>& results) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Model", "Term", "Coef", "SE", "z", "p", ""});
    for (const auto& res : results) {
        const auto& m = res.model;
        for (std::size_t j = 0; j < m.names.size(); ++j) {
            grid.push_back({j == 0 ? res.block_name : "", m.names[j], format_number(m.coef[j]),
                            format_number(m.se[j]), format_number(m.z[j]), format_number(m.p[j]),
                            significance_stars(m.p[j])});
        }
        grid.push_back({"", "McFadden R2", format_number(m.mcfadden), "", "",
                        "n=" + std::to_string(m.n), ""});
    }
    std::string out;
    detail::append_aligned(out, grid);
    out += "\n^ p<.1; * p<.05; ** p<.01; *** p<.001\n";
    return out;
}

}  // namespace innoprof
