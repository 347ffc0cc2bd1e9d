#include "oglp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oglp::io {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

static std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    return out;
}

static std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read file: " + path.string());
    return in;
}

void write_edge_list(const std::filesystem::path& path, const GraphVector& g) {
    std::ofstream out = open_out(path);
    out << "# d=" << g.d << "\n";
    out << "i,j,weight\n";
    std::size_t k = 0;
    for (int i = 0; i < g.d; ++i)
        for (int j = i + 1; j < g.d; ++j, ++k)
            if (g.w[k] > 1e-12)
                out << i << "," << j << "," << fmt(g.w[k]) << "\n";
}

GraphVector read_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# d=", 0) != 0)
        throw std::runtime_error("edge list missing '# d=' header: " +
                                 path.string());
    const int d = std::stoi(line.substr(4));
    if (!std::getline(in, line) || line != "i,j,weight")
        throw std::runtime_error("edge list missing column header: " +
                                 path.string());
    GraphVector g = zero_graph(d);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const int i = std::stoi(cell);
        std::getline(row, cell, ',');
        const int j = std::stoi(cell);
        std::getline(row, cell, ',');
        g.w[pair_index(d, i, j)] = std::stod(cell);
    }
    return g;
}

void write_signals(const std::filesystem::path& path,
                   const std::vector<Vec>& signals) {
    if (signals.empty()) throw std::invalid_argument("no signals to write");
    std::ofstream out = open_out(path);
    const std::size_t d = signals.front().size();
    out << "t";
    for (std::size_t i = 1; i <= d; ++i) out << ",x_" << i;
    out << "\n";
    for (std::size_t t = 0; t < signals.size(); ++t) {
        out << (t + 1);
        for (double v : signals[t]) out << "," << fmt(v);
        out << "\n";
    }
}

std::vector<Vec> read_signals(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty signal file: " + path.string());
    std::vector<Vec> signals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');  // t column
        Vec x;
        while (std::getline(row, cell, ',')) x.push_back(std::stod(cell));
        signals.push_back(std::move(x));
    }
    return signals;
}

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m) {
    std::ofstream out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ",";
            out << fmt(m(i, j));
        }
        out << "\n";
    }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::runtime_error("empty matrix: " + path.string());
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size())
            throw std::runtime_error("ragged matrix rows: " + path.string());
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j];
    }
    return m;
}

void write_trace(const std::filesystem::path& path,
                 const std::vector<TraceRow>& rows) {
    std::ofstream out = open_out(path);
    out << "t,eta,loss,rel_error,regret_increment,path_var_increment\n";
    for (const TraceRow& r : rows)
        out << r.t << "," << fmt(r.eta) << "," << fmt(r.loss) << ","
            << fmt(r.rel_error) << "," << fmt(r.regret_increment) << ","
            << fmt(r.path_var_increment) << "\n";
}

}  // namespace oglp::io
