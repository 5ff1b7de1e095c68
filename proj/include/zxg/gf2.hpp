#pragma once

// Dense linear algebra over GF(2) with a replayable row-operation log.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zxg {

struct RowOp {
    enum class Kind { add, swap };
    Kind kind;
    std::size_t a;  // add: source row; swap: first row
    std::size_t b;  // add: target row; swap: second row

    static RowOp add(std::size_t source, std::size_t target) { return {Kind::add, source, target}; }
    static RowOp swap(std::size_t x, std::size_t y) { return {Kind::swap, x, y}; }

    bool operator==(const RowOp&) const = default;
};

class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Gf2Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("Gf2Matrix: ragged rows");
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] != 0);
        }
        return m;
    }
    static Gf2Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<std::vector<int>> v;
        for (auto& r : rows) v.emplace_back(r);
        return from_rows(v);
    }
    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        check(r, c);
        return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        check(r, c);
        auto& w = bits_[r * words_ + c / 64];
        const std::uint64_t mask = std::uint64_t{1} << (c % 64);
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t r, std::size_t c) {
        check(r, c);
        bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
    }

    void add_row(std::size_t source, std::size_t target) {
        if (source >= rows_ || target >= rows_ || source == target)
            throw std::out_of_range("Gf2Matrix::add_row: bad rows");
        for (std::size_t w = 0; w < words_; ++w) bits_[target * words_ + w] ^= bits_[source * words_ + w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a >= rows_ || b >= rows_) throw std::out_of_range("Gf2Matrix::swap_rows: bad rows");
        if (a == b) return;
        for (std::size_t w = 0; w < words_; ++w) std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
    }
    void apply(const RowOp& op) {
        if (op.kind == RowOp::Kind::add) add_row(op.a, op.b);
        else swap_rows(op.a, op.b);
    }

    std::size_t row_weight(std::size_t r) const {
        std::size_t n = 0;
        for (std::size_t w = 0; w < words_; ++w) n += std::popcount(bits_[r * words_ + w]);
        return n;
    }
    bool row_is_zero(std::size_t r) const { return row_weight(r) == 0; }

    bool operator==(const Gf2Matrix&) const = default;

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("Gf2Matrix: index out of range");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct Gf2Reduction {
    Gf2Matrix reduced;
    std::vector<RowOp> ops;
    std::vector<std::size_t> pivot_cols;  // pivot column of row i, for i < rank
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination. Columns are scanned left to right and the topmost
/// available row holding a one becomes the pivot. Only the first `pivot_limit`
/// columns are eligible as pivots; the remaining columns are carried along,
/// which lets callers solve augmented systems.
inline Gf2Reduction rref_with_ops(const Gf2Matrix& m,
                                  std::size_t pivot_limit = std::numeric_limits<std::size_t>::max()) {
    Gf2Reduction out{m, {}, {}};
    Gf2Matrix& a = out.reduced;
    const std::size_t limit = std::min(pivot_limit, a.cols());
    std::size_t next = 0;
    for (std::size_t c = 0; c < limit && next < a.rows(); ++c) {
        std::size_t p = next;
        while (p < a.rows() && !a.get(p, c)) ++p;
        if (p == a.rows()) continue;
        if (p != next) {
            a.swap_rows(p, next);
            out.ops.push_back(RowOp::swap(p, next));
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != next && a.get(r, c)) {
                a.add_row(next, r);
                out.ops.push_back(RowOp::add(next, r));
            }
        }
        out.pivot_cols.push_back(c);
        ++next;
    }
    return out;
}

inline std::vector<std::size_t> zero_rows(const Gf2Matrix& m) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m.row_is_zero(r)) out.push_back(r);
    return out;
}

/// All (row, col) such that the row holds exactly one 1, at `col`.
inline std::vector<std::pair<std::size_t, std::size_t>> unit_rows(const Gf2Matrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.row_weight(r) != 1) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) {
                out.emplace_back(r, c);
                break;
            }
        }
    }
    return out;
}

}  // namespace zxg
