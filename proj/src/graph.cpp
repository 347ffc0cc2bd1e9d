#include "oglp/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "oglp/kernels.hpp"

namespace oglp {

std::size_t pair_count(int d) {
    if (d < 2) throw std::invalid_argument("node count must be >= 2");
    return static_cast<std::size_t>(d) * (d - 1) / 2;
}

std::size_t pair_index(int d, int i, int j) {
    if (i < 0 || j >= d || i >= j)
        throw std::invalid_argument("pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") out of range for d=" +
                                    std::to_string(d));
    return static_cast<std::size_t>(i) * d - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
}

std::pair<int, int> index_pair(int d, std::size_t k) {
    if (k >= pair_count(d))
        throw std::invalid_argument("edge index out of range");
    // Walk the rows; d is small enough that closed-form inversion buys nothing.
    std::size_t row_start = 0;
    for (int i = 0; i < d - 1; ++i) {
        const std::size_t row_len = static_cast<std::size_t>(d - 1 - i);
        if (k < row_start + row_len)
            return {i, static_cast<int>(k - row_start) + i + 1};
        row_start += row_len;
    }
    throw std::logic_error("unreachable");
}

GraphVector zero_graph(int d) { return {d, Vec(pair_count(d), 0.0)}; }

static void check_graph(const GraphVector& g) {
    if (g.w.size() != pair_count(g.d))
        throw std::invalid_argument("graph vector length does not match d");
}

Eigen::MatrixXd vec_to_matrix(const GraphVector& g) {
    check_graph(g);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(g.d, g.d);
    std::size_t k = 0;
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j, ++k) {
            W(i, j) = g.w[k];
            W(j, i) = g.w[k];
        }
    return W;
}

GraphVector matrix_to_vec(const Eigen::MatrixXd& W, double tol) {
    const int d = static_cast<int>(W.rows());
    if (W.cols() != d || d < 2)
        throw std::invalid_argument("adjacency matrix must be square, d >= 2");
    for (int i = 0; i < d; ++i) {
        if (std::abs(W(i, i)) > tol)
            throw std::invalid_argument("adjacency matrix has nonzero diagonal");
        for (int j = i + 1; j < d; ++j)
            if (std::abs(W(i, j) - W(j, i)) > tol)
                throw std::invalid_argument("adjacency matrix is asymmetric");
    }
    GraphVector g = zero_graph(d);
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j, ++k) g.w[k] = W(i, j);
    return g;
}

void degree_apply(const double* w, int d, double* deg) {
    for (int i = 0; i < d; ++i) deg[i] = 0.0;
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j, ++k) {
            deg[i] += w[k];
            deg[j] += w[k];
        }
}

Vec degree_apply(const GraphVector& g) {
    check_graph(g);
    Vec deg(g.d);
    degree_apply(g.w.data(), g.d, deg.data());
    return deg;
}

void degree_adjoint(const double* v, int d, double* out) {
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j, ++k) out[k] = v[i] + v[j];
}

Vec degree_adjoint(const Vec& v, int d) {
    if (v.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("degree_adjoint: vector length != d");
    Vec out(pair_count(d));
    degree_adjoint(v.data(), d, out.data());
    return out;
}

double operator_norm_s(int d) {
    if (d < 2) throw std::invalid_argument("node count must be >= 2");
    return std::sqrt(2.0 * (d - 1));
}

Eigen::MatrixXd materialize_s(int d) {
    const std::size_t p = pair_count(d);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(p));
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j, ++k) {
            S(i, static_cast<Eigen::Index>(k)) = 1.0;
            S(j, static_cast<Eigen::Index>(k)) = 1.0;
        }
    return S;
}

Vec signal_to_distance(const Vec& x) {
    const int d = static_cast<int>(x.size());
    if (d < 2) throw std::invalid_argument("signal needs at least 2 nodes");
    Vec z(pair_count(d));
    std::size_t k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j, ++k) {
            const double diff = x[i] - x[j];
            z[k] = diff * diff;
        }
    return z;
}

GraphVector project_box(int d, const Vec& v, double w_max) {
    if (w_max <= 0.0) throw std::invalid_argument("w_max must be positive");
    if (v.size() != pair_count(d))
        throw std::invalid_argument("project_box: length mismatch");
    GraphVector g{d, Vec(v.size())};
    kern::clamp(v.data(), 0.0, w_max, g.w.data(), v.size());
    return g;
}

double min_degree(const GraphVector& g) {
    Vec deg = degree_apply(g);
    double m = deg[0];
    for (double v : deg) m = std::min(m, v);
    return m;
}

}  // namespace oglp
