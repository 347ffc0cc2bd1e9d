#pragma once
// Vectorized graph representation: the upper-triangle weight vector w,
// the degree operator S (matrix-free), pairwise distances and the box
// projection.

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

namespace oglp {

using Vec = std::vector<double>;

// Number of free edge weights, p = d(d-1)/2.
std::size_t pair_count(int d);

// Row-major upper-triangle ordering, 0-based: (i,j) with i<j maps to
// k = i*d - i*(i+1)/2 + (j-i-1). Throws on out-of-range input.
std::size_t pair_index(int d, int i, int j);
std::pair<int, int> index_pair(int d, std::size_t k);

// The optimization variable: d nodes, p edge weights.
struct GraphVector {
    int d = 0;
    Vec w;
};

GraphVector zero_graph(int d);

// Dense symmetric adjacency with zero diagonal.
Eigen::MatrixXd vec_to_matrix(const GraphVector& g);

// Inverse of vec_to_matrix; rejects asymmetric or nonzero-diagonal
// matrices beyond `tol` (absolute).
GraphVector matrix_to_vec(const Eigen::MatrixXd& W, double tol = 1e-9);

// Node degrees, Sw = W1. O(p), matrix-free.
Vec degree_apply(const GraphVector& g);
void degree_apply(const double* w, int d, double* deg);

// Adjoint of S: (S^T v)_k = v_i + v_j for the pair (i,j) at k.
Vec degree_adjoint(const Vec& v, int d);
void degree_adjoint(const double* v, int d, double* out);

// Spectral norm of S, closed form sqrt(2(d-1)).
double operator_norm_s(int d);

// Materialized d x p operator matrix; test support only.
Eigen::MatrixXd materialize_s(int d);

// Squared pairwise differences of a single signal snapshot:
// z_k = (x_i - x_j)^2.
Vec signal_to_distance(const Vec& x);

// Euclidean projection onto [0, w_max]^p.
GraphVector project_box(int d, const Vec& v, double w_max);

double min_degree(const GraphVector& g);

}  // namespace oglp
