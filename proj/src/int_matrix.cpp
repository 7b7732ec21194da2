#include "sofic/int_matrix.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sofic {

SparseIntMatrix identity_minus(const SparseIntMatrix& a) {
    if (!a.square()) throw std::invalid_argument("identity_minus: matrix not square");
    SparseIntMatrix m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) m.set(i, i, 1);
    for (const auto& [rc, v] : a.entries()) m.add(rc.first, rc.second, -v);
    return m;
}

SparseIntMatrix adjacency_matrix(const LabelledGraph& g) {
    SparseIntMatrix m(g.vertex_count(), g.vertex_count());
    for (const auto& e : g.edges()) m.add(e.src, e.dst, 1);
    return m;
}

SparseIntMatrix SymbolicMatrix::substitute(const std::map<std::string, Int>& weights) const {
    SparseIntMatrix m(dim_, dim_);
    for (const auto& [rc, syms] : entries_) {
        Int total = 0;
        for (const auto& [name, mult] : syms) {
            auto it = weights.find(name);
            total += (it == weights.end() ? Int(1) : it->second) * mult;
        }
        m.set(rc.first, rc.second, total);
    }
    return m;
}

SymbolicMatrix symbolic_adjacency(const LabelledGraph& g) {
    SymbolicMatrix m(g.vertex_count());
    for (const auto& e : g.edges()) m.add(e.src, e.dst, g.alphabet().name(e.label));
    return m;
}

void write_matrix(std::ostream& os, const SparseIntMatrix& m) {
    os << m.rows() << ' ' << m.cols() << '\n';
    for (const auto& [rc, v] : m.entries()) os << rc.first << ' ' << rc.second << ' ' << v << '\n';
}

SparseIntMatrix read_matrix(std::istream& is) {
    int rows = -1, cols = -1;
    std::string line;
    SparseIntMatrix m;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> rows >> cols) || rows < 0 || cols < 0)
                throw std::invalid_argument("matrix file: bad header");
            m = SparseIntMatrix(rows, cols);
            have_header = true;
            continue;
        }
        int r, c;
        std::string v;
        if (!(ls >> r >> c >> v)) throw std::invalid_argument("matrix file: bad entry: " + line);
        m.set(r, c, Int(v));
    }
    if (!have_header) throw std::invalid_argument("matrix file: empty input");
    return m;
}

}  // namespace sofic
