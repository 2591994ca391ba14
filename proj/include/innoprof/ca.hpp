#pragma once

// Correspondence analysis of the term-by-cluster contingency table.
// Standardized residuals S = D_r^{-1/2} (P - r c^T) D_c^{-1/2} are
// decomposed through the symmetric eigenproblem of S^T S (the column count
// equals the cluster count, so this stays a tiny matrix). Principal
// coordinates, per-factor inertia shares and absolute contributions follow,
// plus the exclusive term-to-factor assignment used for axis labeling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "innoprof/common.hpp"
#include "innoprof/csv.hpp"
#include "innoprof/linalg.hpp"

namespace innoprof {

struct ContingencyTable {
    std::vector<std::string> row_names;  // terms
    std::vector<std::string> col_names;  // clusters
    Matrix counts;                       // nonnegative, no all-zero row/column
};

struct Factor {
    double singular_value = 0;
    double inertia = 0;  // lambda = singular value squared
    double share = 0;    // fraction of total inertia
};

struct FactorMap {
    std::vector<Factor> factors;
    Matrix row_coords;  // terms x factors, principal coordinates
    Matrix col_coords;  // clusters x factors, principal coordinates
    Matrix row_ac;      // absolute contributions, sum to 1 per factor
    Matrix col_ac;
    double total_inertia = 0;  // chi-squared / n
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    std::string warning;

    std::size_t n_factors() const { return factors.size(); }
};

inline FactorMap ca(const ContingencyTable& table) {
    const std::size_t nr = table.counts.rows();
    const std::size_t nc = table.counts.cols();
    if (nr < 2 || nc < 2) throw ValidationError("ca: table must be at least 2x2");

    double n = 0;
    std::vector<double> row_sum(nr, 0), col_sum(nc, 0);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            double v = table.counts(i, j);
            if (v < 0) throw ValidationError("ca: negative count");
            row_sum[i] += v;
            col_sum[j] += v;
            n += v;
        }
    if (n <= 0) throw ValidationError("ca: empty table");
    for (std::size_t i = 0; i < nr; ++i)
        if (row_sum[i] == 0) throw ValidationError("ca: all-zero row '" + table.row_names[i] + "'");
    for (std::size_t j = 0; j < nc; ++j)
        if (col_sum[j] == 0) throw ValidationError("ca: all-zero column '" + table.col_names[j] + "'");

    std::vector<double> r(nr), c(nc);
    for (std::size_t i = 0; i < nr; ++i) r[i] = row_sum[i] / n;
    for (std::size_t j = 0; j < nc; ++j) c[j] = col_sum[j] / n;

    Matrix s(nr, nc);
    double total_inertia = 0;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            double p = table.counts(i, j) / n;
            double expected = r[i] * c[j];
            s(i, j) = (p - expected) / std::sqrt(expected);
            total_inertia += s(i, j) * s(i, j);
        }

    auto eig = symmetric_eigen(matmul(s.transposed(), s));

    FactorMap map;
    map.row_names = table.row_names;
    map.col_names = table.col_names;
    map.total_inertia = total_inertia;

    const std::size_t max_factors = std::min(nr, nc) - 1;
    double lambda_max = eig.values.empty() ? 0.0 : std::max(eig.values[0], 0.0);
    std::vector<std::size_t> kept;
    for (std::size_t f = 0; f < eig.values.size() && kept.size() < max_factors; ++f) {
        if (eig.values[f] > std::max(1e-12 * lambda_max, 1e-15)) kept.push_back(f);
    }
    if (kept.empty()) {
        map.warning = "table is consistent with independence: zero factors";
        map.row_coords = Matrix(nr, 0);
        map.col_coords = Matrix(nc, 0);
        map.row_ac = Matrix(nr, 0);
        map.col_ac = Matrix(nc, 0);
        return map;
    }

    const std::size_t nf = kept.size();
    map.row_coords = Matrix(nr, nf);
    map.col_coords = Matrix(nc, nf);
    map.row_ac = Matrix(nr, nf);
    map.col_ac = Matrix(nc, nf);

    for (std::size_t fi = 0; fi < nf; ++fi) {
        std::size_t f = kept[fi];
        double lambda = eig.values[f];
        double sigma = std::sqrt(lambda);
        Factor factor;
        factor.singular_value = sigma;
        factor.inertia = lambda;
        factor.share = total_inertia > 0 ? lambda / total_inertia : 0.0;
        map.factors.push_back(factor);

        // left singular vector u = S v / sigma; principal coordinates scale
        // the singular vectors back by the margin weights
        std::vector<double> v(nc);
        for (std::size_t j = 0; j < nc; ++j) v[j] = eig.vectors(j, f);
        for (std::size_t i = 0; i < nr; ++i) {
            double sv = 0;
            for (std::size_t j = 0; j < nc; ++j) sv += s(i, j) * v[j];
            map.row_coords(i, fi) = sv / std::sqrt(r[i]);
            map.row_ac(i, fi) = r[i] * map.row_coords(i, fi) * map.row_coords(i, fi) / lambda;
        }
        for (std::size_t j = 0; j < nc; ++j) {
            map.col_coords(j, fi) = sigma * v[j] / std::sqrt(c[j]);
            map.col_ac(j, fi) = c[j] * map.col_coords(j, fi) * map.col_coords(j, fi) / lambda;
        }

        // sign convention: the top-contributing term sits on the positive pole
        std::size_t top = 0;
        for (std::size_t i = 1; i < nr; ++i)
            if (map.row_ac(i, fi) > map.row_ac(top, fi)) top = i;
        if (map.row_coords(top, fi) < 0) {
            for (std::size_t i = 0; i < nr; ++i) map.row_coords(i, fi) = -map.row_coords(i, fi);
            for (std::size_t j = 0; j < nc; ++j) map.col_coords(j, fi) = -map.col_coords(j, fi);
        }
    }
    return map;
}

// ---------------------------------------------------------------------------
// Exclusive term-to-factor assignment (the axis-labeling table)

struct TermAssignment {
    std::string term;
    std::size_t factor = 0;  // 0-based
    int pole = 1;            // +1 or -1
    double ac = 0;
};

struct FactorPoles {
    std::vector<TermAssignment> positive;  // ranked by AC descending
    std::vector<TermAssignment> negative;
};

/// Each term goes to the factor it contributes most to (ties to the lower
/// factor index); its pole is the sign of the coordinate there.
inline std::vector<FactorPoles> assign_terms(const FactorMap& map) {
    if (map.n_factors() == 0) throw ValidationError("assign_terms: factor map has no factors");
    std::vector<FactorPoles> out(map.n_factors());
    for (std::size_t i = 0; i < map.row_names.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t f = 1; f < map.n_factors(); ++f)
            if (map.row_ac(i, f) > map.row_ac(i, best)) best = f;
        TermAssignment a;
        a.term = map.row_names[i];
        a.factor = best;
        a.ac = map.row_ac(i, best);
        a.pole = map.row_coords(i, best) < 0 ? -1 : 1;
        (a.pole > 0 ? out[best].positive : out[best].negative).push_back(std::move(a));
    }
    auto by_ac = [](const TermAssignment& x, const TermAssignment& y) {
        if (x.ac != y.ac) return x.ac > y.ac;
        return x.term < y.term;
    };
    for (auto& poles : out) {
        std::sort(poles.positive.begin(), poles.positive.end(), by_ac);
        std::sort(poles.negative.begin(), poles.negative.end(), by_ac);
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV artifacts

inline std::string factor_map_csv(const FactorMap& map) {
    std::vector<std::string> header{"entity", "type"};
    for (std::size_t f = 0; f < map.n_factors(); ++f)
        header.push_back("factor" + std::to_string(f + 1) + "_coord");
    CsvWriter csv(header);
    for (std::size_t i = 0; i < map.row_names.size(); ++i) {
        std::vector<std::string> row{map.row_names[i], "term"};
        for (std::size_t f = 0; f < map.n_factors(); ++f)
            row.push_back(format_number(map.row_coords(i, f)));
        csv.append_row(row);
    }
    for (std::size_t j = 0; j < map.col_names.size(); ++j) {
        std::vector<std::string> row{map.col_names[j], "cluster"};
        for (std::size_t f = 0; f < map.n_factors(); ++f)
            row.push_back(format_number(map.col_coords(j, f)));
        csv.append_row(row);
    }
    return csv.content();
}

inline std::string contributions_csv(const FactorMap& map) {
    CsvWriter csv({"term", "factor", "ac", "pole"});
    if (map.n_factors() == 0) return csv.content();
    for (const auto& poles : assign_terms(map)) {
        for (const auto& list : {poles.positive, poles.negative}) {
            for (const auto& a : list)
                csv.append_row({a.term, std::to_string(a.factor + 1), format_number(a.ac),
                                a.pole > 0 ? "+" : "-"});
        }
    }
    return csv.content();
}

inline std::string inertia_csv(const FactorMap& map) {
    CsvWriter csv({"factor", "singular_value", "inertia", "share"});
    for (std::size_t f = 0; f < map.n_factors(); ++f)
        csv.append_row({std::to_string(f + 1), format_number(map.factors[f].singular_value),
                        format_number(map.factors[f].inertia), format_number(map.factors[f].share)});
    return csv.content();
}

}  // namespace innoprof
