#pragma once

// Just enough dense linear algebra for the fitting and factor-analysis code:
// Cholesky solves for IRLS normal equations, Householder least squares for
// collinearity diagnostics, and orthogonal iteration for the small symmetric
// eigenproblems of the factor decomposition. Problem sizes here are tiny
// (predictor counts and cluster counts), so clarity beats BLAS.

#include <cmath>
#include <cstddef>
#include <vector>

#include "innoprof/common.hpp"

namespace innoprof {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

/// Solves A x = b for symmetric positive definite A in place via Cholesky.
/// Throws NumericalError when A is not positive definite.
inline std::vector<double> cholesky_solve(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (d <= 0.0 || !std::isfinite(d))
            throw NumericalError("matrix not positive definite (column " + std::to_string(j) + ")");
        double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * b[k];
        b[i] = s / a(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a(k, ii) * b[k];
        b[ii] = s / a(ii, ii);
    }
    return b;
}

/// Inverse of a symmetric positive definite matrix (used for standard errors).
inline Matrix spd_inverse(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        auto col = cholesky_solve(a, std::move(e));
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

/// Least squares min ||A x - b|| via Householder QR with column norms
/// tracked for rank detection. Rank-deficient columns get coefficient 0.
struct LeastSquares {
    std::vector<double> coef;
    double rss = 0.0;
    bool rank_deficient = false;
};

inline LeastSquares least_squares(Matrix a, std::vector<double> b) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<double> diag(n, 0.0);
    std::vector<bool> dead(n, false);
    for (std::size_t k = 0; k < n && k < m; ++k) {
        double norm = 0;
        for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            dead[k] = true;
            continue;
        }
        if (a(k, k) > 0) norm = -norm;
        for (std::size_t i = k; i < m; ++i) a(i, k) /= norm;
        a(k, k) += 1.0;
        for (std::size_t j = k + 1; j < n; ++j) {
            double s = 0;
            for (std::size_t i = k; i < m; ++i) s += a(i, k) * a(i, j);
            s = -s / a(k, k);
            for (std::size_t i = k; i < m; ++i) a(i, j) += s * a(i, k);
        }
        double s = 0;
        for (std::size_t i = k; i < m; ++i) s += a(i, k) * b[i];
        s = -s / a(k, k);
        for (std::size_t i = k; i < m; ++i) b[i] += s * a(i, k);
        diag[k] = norm;
    }
    LeastSquares out;
    out.coef.assign(n, 0.0);
    for (std::size_t kk = n; kk-- > 0;) {
        if (dead[kk] || kk >= m) {
            out.rank_deficient = true;
            out.coef[kk] = 0.0;
            continue;
        }
        double s = b[kk];
        for (std::size_t j = kk + 1; j < n; ++j) s -= a(kk, j) * out.coef[j];
        out.coef[kk] = s / diag[kk];
    }
    for (std::size_t i = n; i < m; ++i) out.rss += b[i] * b[i];
    return out;
}

/// Eigen decomposition of a small symmetric matrix by cyclic Jacobi
/// rotations. Eigenvalues returned descending with matching eigenvector
/// columns. Quadratic convergence and exact handling of degenerate spectra;
/// the matrices here never exceed a handful of rows.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;  // column f = eigenvector f
};

inline SymmetricEigen symmetric_eigen(Matrix m, std::size_t max_sweeps = 100) {
    const std::size_t n = m.rows();
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
        if (off <= 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(order[j], order[j]) > m(order[i], order[i])) std::swap(order[i], order[j]);

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = m(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

}  // namespace innoprof
