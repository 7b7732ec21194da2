#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sofic/labelled_graph.hpp"

namespace sofic {

using Int = boost::multiprecision::cpp_int;

// Sparse integer matrix with exact entries; zero entries are absent.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    static SparseIntMatrix identity(int n) {
        SparseIntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    void set(int r, int c, Int v) {
        check(r, c);
        if (v == 0)
            entries_.erase({r, c});
        else
            entries_[{r, c}] = std::move(v);
    }

    void add(int r, int c, const Int& v) { set(r, c, at(r, c) + v); }

    Int at(int r, int c) const {
        check(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? Int(0) : it->second;
    }

    const std::map<std::pair<int, int>, Int>& entries() const { return entries_; }

    std::vector<std::vector<Int>> dense() const {
        std::vector<std::vector<Int>> d(static_cast<std::size_t>(rows_),
                                        std::vector<Int>(static_cast<std::size_t>(cols_), 0));
        for (const auto& [rc, v] : entries_)
            d[static_cast<std::size_t>(rc.first)][static_cast<std::size_t>(rc.second)] = v;
        return d;
    }

    bool operator==(const SparseIntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index out of range");
    }
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, Int> entries_;
};

// I - A for square A.
SparseIntMatrix identity_minus(const SparseIntMatrix& a);

// Entry (i,j) = number of edges i -> j regardless of label.
SparseIntMatrix adjacency_matrix(const LabelledGraph& g);

// Square matrix whose entries are formal multisets of symbol names.
class SymbolicMatrix {
public:
    SymbolicMatrix() = default;
    explicit SymbolicMatrix(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    void add(int r, int c, const std::string& symbol) { entries_[{r, c}][symbol]++; }
    const std::map<std::string, int>& at(int r, int c) const {
        static const std::map<std::string, int> kEmpty;
        auto it = entries_.find({r, c});
        return it == entries_.end() ? kEmpty : it->second;
    }
    const std::map<std::pair<int, int>, std::map<std::string, int>>& entries() const {
        return entries_;
    }

    // Replace each symbol by an integer weight (default 1) and sum.
    SparseIntMatrix substitute(const std::map<std::string, Int>& weights) const;

    bool operator==(const SymbolicMatrix& o) const {
        return dim_ == o.dim_ && entries_ == o.entries_;
    }

private:
    int dim_ = 0;
    std::map<std::pair<int, int>, std::map<std::string, int>> entries_;
};

SymbolicMatrix symbolic_adjacency(const LabelledGraph& g);

// Matrix text format: "rows cols" header, then "r c value" triples (0-based).
void write_matrix(std::ostream& os, const SparseIntMatrix& m);
SparseIntMatrix read_matrix(std::istream& is);

}  // namespace sofic
