#pragma once
// CSV persistence: edge lists, signal streams, AR matrices and run
// traces. All files use '.' decimals, header rows and LF endings;
// doubles are written with 17 significant digits so round trips are
// exact.

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "oglp/learner.hpp"

namespace oglp::io {

std::string fmt(double v);

// Edge list with a `# d=<n>` metadata line and an `i,j,weight` header;
// entries below 1e-12 are dropped.
void write_edge_list(const std::filesystem::path& path, const GraphVector& g);
GraphVector read_edge_list(const std::filesystem::path& path);

// `t,x_1..x_d`, one row per round.
void write_signals(const std::filesystem::path& path,
                   const std::vector<Vec>& signals);
std::vector<Vec> read_signals(const std::filesystem::path& path);

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

struct TraceRow {
    long t = 0;
    double eta = 0.0;
    double loss = 0.0;
    double rel_error = 0.0;
    double regret_increment = 0.0;
    double path_var_increment = 0.0;
};

void write_trace(const std::filesystem::path& path,
                 const std::vector<TraceRow>& rows);

}  // namespace oglp::io
