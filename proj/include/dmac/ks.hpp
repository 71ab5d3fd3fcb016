#pragma once

// Kautz-Singleton inner mapping and the subrange stacking layout.
//
// A q-ary codeword of length n maps to a q x n binary matrix with exactly
// one 1 per column, at the row given by the symbol's canonical enumeration
// index. For transmission the matrix is split into m parts of t columns and
// stacked into a Q x t block, part j occupying rows [j*q, (j+1)*q); rows at
// and above m*q stay zero. Indices are 0-based throughout; the 1-based
// positions of the usual presentation appear only in the text fixtures.

#include "dmac/field.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace dmac {

/// Fixed-length bit vector backed by 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }

    bool get(size_t i) const {
        bound(i);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(size_t i) {
        bound(i);
        w_[i >> 6] |= 1ull << (i & 63);
    }
    void clear(size_t i) {
        bound(i);
        w_[i >> 6] &= ~(1ull << (i & 63));
    }

    void or_with(const BitVec& o) {
        same(o);
        for (size_t j = 0; j < w_.size(); ++j) w_[j] |= o.w_[j];
    }
    void and_with(const BitVec& o) {
        same(o);
        for (size_t j = 0; j < w_.size(); ++j) w_[j] &= o.w_[j];
    }

    size_t weight() const {
        size_t c = 0;
        for (uint64_t w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    /// True when every set bit of `o` is also set here.
    bool covers(const BitVec& o) const {
        same(o);
        for (size_t j = 0; j < w_.size(); ++j)
            if (o.w_[j] & ~w_[j]) return false;
        return true;
    }

    /// Calls fn(i) for every set bit, ascending.
    template <class F>
    void for_each_set(F&& fn) const {
        for (size_t j = 0; j < w_.size(); ++j) {
            uint64_t w = w_[j];
            while (w != 0) {
                const int b = __builtin_ctzll(w);
                fn(j * 64 + static_cast<size_t>(b));
                w &= w - 1;
            }
        }
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

  private:
    void bound(size_t i) const {
        if (i >= n_) throw std::out_of_range("bit index out of range");
    }
    void same(const BitVec& o) const {
        if (n_ != o.n_) throw std::invalid_argument("bit vector length mismatch");
    }

    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

/// Binary matrix stored as columns of BitVec.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols, BitVec(rows)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_.size(); }

    bool get(size_t r, size_t c) const { return cols_.at(c).get(r); }
    void set(size_t r, size_t c) { cols_.at(c).set(r); }

    BitVec& column(size_t c) { return cols_.at(c); }
    const BitVec& column(size_t c) const { return cols_.at(c); }

    size_t weight() const {
        size_t w = 0;
        for (const auto& c : cols_) w += c.weight();
        return w;
    }

    void or_with(const BitMatrix& o) {
        same(o);
        for (size_t c = 0; c < cols_.size(); ++c) cols_[c].or_with(o.cols_[c]);
    }
    BitMatrix and_matrix(const BitMatrix& o) const {
        same(o);
        BitMatrix r = *this;
        for (size_t c = 0; c < cols_.size(); ++c) r.cols_[c].and_with(o.cols_[c]);
        return r;
    }

    bool operator==(const BitMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    /// One '0'/'1' line per row; the format of the golden fixtures.
    std::string to_text() const {
        std::string out;
        out.reserve(rows_ * (cols() + 1));
        for (size_t r = 0; r < rows_; ++r) {
            for (size_t c = 0; c < cols(); ++c) out += get(r, c) ? '1' : '0';
            out += '\n';
        }
        return out;
    }

    static BitMatrix parse(const std::string& text) {
        std::vector<std::string> lines;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            size_t start = line.find_first_not_of(' ');
            if (start == std::string::npos) continue;
            lines.push_back(line.substr(start));
        }
        if (lines.empty()) throw std::invalid_argument("empty bit-matrix text");
        const size_t cols = lines[0].size();
        BitMatrix m(lines.size(), cols);
        for (size_t r = 0; r < lines.size(); ++r) {
            if (lines[r].size() != cols)
                throw std::invalid_argument("ragged bit-matrix text");
            for (size_t c = 0; c < cols; ++c) {
                if (lines[r][c] == '1')
                    m.set(r, c);
                else if (lines[r][c] != '0')
                    throw std::invalid_argument("bit-matrix text admits only '0' and '1'");
            }
        }
        return m;
    }

  private:
    void same(const BitMatrix& o) const {
        if (rows_ != o.rows_ || cols() != o.cols())
            throw std::invalid_argument("bit matrix dimension mismatch");
    }

    size_t rows_ = 0;
    std::vector<BitVec> cols_;
};

/// One-hot q x n matrix of a codeword, stored as the row index per column.
struct KsMatrix {
    uint32_t q = 0;
    std::vector<uint32_t> col_rows;

    uint32_t n() const { return static_cast<uint32_t>(col_rows.size()); }

    BitMatrix dense() const {
        BitMatrix m(q, col_rows.size());
        for (size_t c = 0; c < col_rows.size(); ++c) m.set(col_rows[c], c);
        return m;
    }

    bool operator==(const KsMatrix& o) const { return q == o.q && col_rows == o.col_rows; }
};

/// Column j carries its 1 at the canonical enumeration index of codeword[j].
inline KsMatrix ks_encode(const Field& field, const Codeword& codeword) {
    KsMatrix m;
    m.q = static_cast<uint32_t>(field.order());
    m.col_rows.resize(codeword.size());
    for (size_t j = 0; j < codeword.size(); ++j)
        m.col_rows[j] = static_cast<uint32_t>(field.index_of(codeword[j]));
    return m;
}

inline Codeword ks_decode(const Field& field, const KsMatrix& m) {
    if (m.q != field.order()) throw std::invalid_argument("row count differs from field order");
    Codeword cw(m.col_rows.size());
    for (size_t j = 0; j < m.col_rows.size(); ++j) {
        if (m.col_rows[j] >= m.q) throw std::invalid_argument("row index out of range");
        cw[j] = field.element_at(m.col_rows[j]);
    }
    return cw;
}

/// Validates the one-1-per-column invariant of a dense matrix.
inline KsMatrix ks_from_dense(const BitMatrix& m) {
    KsMatrix ks;
    ks.q = static_cast<uint32_t>(m.rows());
    ks.col_rows.resize(m.cols());
    for (size_t c = 0; c < m.cols(); ++c) {
        if (m.column(c).weight() != 1)
            throw std::invalid_argument("column weight must be exactly 1");
        m.column(c).for_each_set([&](size_t r) { ks.col_rows[c] = static_cast<uint32_t>(r); });
    }
    return ks;
}

/// Q x t stacking of a KS matrix: per tact column, one row index per subrange,
/// subrange j shifted to rows [j*q, (j+1)*q).
struct StackedFrameBlock {
    uint32_t Q = 0, q = 0, m = 0, t = 0;
    std::vector<std::vector<uint32_t>> col_rows;  // [tact][subrange]

    BitMatrix dense() const {
        BitMatrix d(Q, t);
        for (uint32_t tau = 0; tau < t; ++tau)
            for (uint32_t r : col_rows[tau]) d.set(r, tau);
        return d;
    }
};

inline StackedFrameBlock stack(const KsMatrix& c, uint32_t m, uint32_t t, uint32_t Q) {
    if (c.n() != m * t) throw std::invalid_argument("stack dimension mismatch: n != m*t");
    if (static_cast<uint64_t>(m) * c.q > Q)
        throw std::invalid_argument("stack does not fit: m*q > Q");
    StackedFrameBlock b;
    b.Q = Q;
    b.q = c.q;
    b.m = m;
    b.t = t;
    b.col_rows.assign(t, std::vector<uint32_t>(m));
    for (uint32_t j = 0; j < m; ++j)
        for (uint32_t tau = 0; tau < t; ++tau)
            b.col_rows[tau][j] = j * c.q + c.col_rows[static_cast<size_t>(j) * t + tau];
    return b;
}

inline KsMatrix unstack(const StackedFrameBlock& b) {
    KsMatrix c;
    c.q = b.q;
    c.col_rows.resize(static_cast<size_t>(b.m) * b.t);
    for (uint32_t tau = 0; tau < b.t; ++tau) {
        for (uint32_t j = 0; j < b.m; ++j) {
            const uint32_t r = b.col_rows[tau][j];
            if (r < j * b.q || r >= (j + 1) * b.q)
                throw std::invalid_argument("subrange layout violated");
            c.col_rows[static_cast<size_t>(j) * b.t + tau] = r - j * b.q;
        }
    }
    return c;
}

/// The decoding condition: every 1 of T appears in Y.
inline bool cover_check(const StackedFrameBlock& t, const BitMatrix& y) {
    if (y.rows() != t.Q || y.cols() != t.t)
        throw std::invalid_argument("cover_check dimension mismatch");
    for (uint32_t tau = 0; tau < t.t; ++tau)
        for (uint32_t r : t.col_rows[tau])
            if (!y.get(r, tau)) return false;
    return true;
}

/// Dense form: T AND Y == T.
inline bool cover_check(const BitMatrix& t, const BitMatrix& y) {
    if (y.rows() != t.rows() || y.cols() != t.cols())
        throw std::invalid_argument("cover_check dimension mismatch");
    for (size_t c = 0; c < t.cols(); ++c)
        if (!y.column(c).covers(t.column(c))) return false;
    return true;
}

}  // namespace dmac
