#include "invwalk/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace invwalk {

Gf2Vector Gf2Vector::from_u64(std::uint64_t bits, std::size_t length) {
    if (length > 64) throw std::invalid_argument("from_u64: length > 64");
    if (length < 64 && (bits >> length) != 0)
        throw std::invalid_argument("from_u64: bits beyond length");
    Gf2Vector v(length);
    if (length > 0) v.words_[0] = bits;
    return v;
}

bool Gf2Vector::is_zero() const {
    for (word_t w : words_)
        if (w) return false;
    return true;
}

std::size_t Gf2Vector::popcount() const {
    std::size_t c = 0;
    for (word_t w : words_) c += std::popcount(w);
    return c;
}

long Gf2Vector::first_set_bit() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<long>(i * kWordBits + std::countr_zero(words_[i]));
    return -1;
}

std::uint64_t Gf2Vector::to_u64() const {
    if (length_ > 64) throw std::invalid_argument("to_u64: vector longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
    if (length_ != other.length_)
        throw std::invalid_argument("Gf2Vector xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Gf2Vector Gf2Matrix::row(std::size_t r) const {
    Gf2Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) v.set(c, true);
    return v;
}

void Gf2Matrix::set_row(std::size_t r, const Gf2Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
    auto src = v.words();
    for (std::size_t w = 0; w < stride_; ++w) words_[r * stride_ + w] = src[w];
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t w = 0; w < stride_; ++w) {
            word_t bits = words_[r * stride_ + w];
            while (bits) {
                std::size_t c = w * kWordBits + std::countr_zero(bits);
                bits &= bits - 1;
                t.set(c, r, true);
            }
        }
    return t;
}

Gf2Vector Gf2Matrix::apply(const Gf2Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    Gf2Vector y(rows_);
    auto xw = x.words();
    for (std::size_t r = 0; r < rows_; ++r) {
        word_t acc = 0;
        for (std::size_t w = 0; w < stride_; ++w) acc ^= words_[r * stride_ + w] & xw[w];
        y.set(r, std::popcount(acc) & 1);
    }
    return y;
}

void Gf2Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < stride_; ++w)
        std::swap(words_[a * stride_ + w], words_[b * stride_ + w]);
}

void Gf2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
    for (std::size_t w = 0; w < stride_; ++w)
        words_[dst * stride_ + w] ^= words_[src * stride_ + w];
}

namespace {

// Reduced row echelon form in place; returns pivot columns in order.
std::vector<std::size_t> rref_inplace(Gf2Matrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < a.cols() && next_row < a.rows(); ++col) {
        std::size_t pivot = next_row;
        while (pivot < a.rows() && !a.get(pivot, col)) ++pivot;
        if (pivot == a.rows()) continue;
        a.swap_rows(next_row, pivot);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != next_row && a.get(r, col)) a.xor_row_into(next_row, r);
        pivots.push_back(col);
        ++next_row;
    }
    return pivots;
}

} // namespace

int rank(const Gf2Matrix& m) {
    Gf2Matrix a = m;
    return static_cast<int>(rref_inplace(a).size());
}

std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m) {
    Gf2Matrix a = m;
    std::vector<std::size_t> pivots = rref_inplace(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<Gf2Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Gf2Vector x(m.cols());
        x.set(free, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (a.get(r, free)) x.set(pivots[r], true);
        basis.push_back(std::move(x));
    }
    return basis;
}

int span_dim(std::span<const Gf2Vector> vectors) {
    if (vectors.empty()) return 0;
    std::size_t width = vectors.front().size();
    Gf2Echelon ech(width);
    for (const Gf2Vector& v : vectors) {
        if (v.size() != width) throw std::invalid_argument("span_dim: length mismatch");
        ech.insert(v);
    }
    return static_cast<int>(ech.rank());
}

Gf2Vector Gf2Echelon::reduce(Gf2Vector v) const {
    if (v.size() != width_) throw std::invalid_argument("Gf2Echelon: length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i])) v ^= rows_[i];
    return v;
}

bool Gf2Echelon::insert(Gf2Vector v) {
    v = reduce(std::move(v));
    long p = v.first_set_bit();
    if (p < 0) return false;
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), static_cast<std::size_t>(p));
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    // keep existing rows reduced against the new pivot
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(static_cast<std::size_t>(p))) rows_[i] ^= v;
    pivots_.insert(pos, static_cast<std::size_t>(p));
    rows_.insert(rows_.begin() + static_cast<long>(idx), std::move(v));
    return true;
}

int rank_word_rows(std::span<const std::uint64_t> rows) {
    std::uint64_t basis[64] = {0};
    int r = 0;
    for (std::uint64_t row : rows) {
        while (row) {
            int b = std::countr_zero(row);
            if (basis[b]) {
                row ^= basis[b];
            } else {
                basis[b] = row;
                ++r;
                break;
            }
        }
    }
    return r;
}

SignedTable SignedTable::zeros(int dimension) {
    if (dimension < 0 || dimension > 30)
        throw std::invalid_argument("SignedTable: dimension out of [0, 30]");
    SignedTable t;
    t.dimension = dimension;
    t.values.assign(std::size_t{1} << dimension, 0);
    return t;
}

SignedTable walsh_hadamard(SignedTable table) {
    const std::size_t n = table.values.size();
    if (table.dimension < 0 || table.dimension > 30 ||
        n != (std::size_t{1} << table.dimension))
        throw std::invalid_argument("walsh_hadamard: size is not 2^dimension");
    auto& x = table.values;
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t block = 0; block < n; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                std::int64_t a = x[i], b = x[i + half], s, d;
                if (__builtin_add_overflow(a, b, &s) || __builtin_sub_overflow(a, b, &d))
                    throw std::overflow_error("walsh_hadamard: int64 overflow");
                x[i] = s;
                x[i + half] = d;
            }
        }
    }
    return table;
}

void walsh_hadamard_inplace(std::span<double> data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("walsh_hadamard: size is not a power of two");
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t block = 0; block < n; block += 2 * half) {
            for (std::size_t i = block; i < block + half; ++i) {
                double a = data[i], b = data[i + half];
                data[i] = a + b;
                data[i + half] = a - b;
            }
        }
    }
}

} // namespace invwalk
