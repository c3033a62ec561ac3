#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "invwalk/errors.hpp"

namespace invwalk {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

// Bit vector over GF(2), packed into 64-bit words. Bits beyond size() are
// kept zero, so operator== on the word storage is value equality.
class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t length)
        : length_(length), words_((length + kWordBits - 1) / kWordBits, 0) {}

    static Gf2Vector from_u64(std::uint64_t bits, std::size_t length);

    std::size_t size() const { return length_; }
    bool get(std::size_t i) const {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i, bool value) {
        word_t m = word_t{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= m;
        else
            words_[i / kWordBits] &= ~m;
    }
    void flip(std::size_t i) { words_[i / kWordBits] ^= word_t{1} << (i % kWordBits); }

    bool is_zero() const;
    std::size_t popcount() const;
    // Index of the lowest set bit, or -1 if zero.
    long first_set_bit() const;
    // Requires size() <= 64.
    std::uint64_t to_u64() const;

    Gf2Vector& operator^=(const Gf2Vector& other);
    friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) {
        a ^= b;
        return a;
    }
    bool operator==(const Gf2Vector&) const = default;

    std::span<const word_t> words() const { return words_; }

private:
    std::size_t length_ = 0;
    std::vector<word_t> words_;
};

// Dense bit matrix over GF(2), row-major, rows padded to whole words.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits),
          words_(rows * stride_, 0) {}

    static Gf2Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value) {
        word_t m = word_t{1} << (c % kWordBits);
        if (value)
            words_[r * stride_ + c / kWordBits] |= m;
        else
            words_[r * stride_ + c / kWordBits] &= ~m;
    }
    void flip(std::size_t r, std::size_t c) {
        words_[r * stride_ + c / kWordBits] ^= word_t{1} << (c % kWordBits);
    }

    Gf2Vector row(std::size_t r) const;
    void set_row(std::size_t r, const Gf2Vector& v);
    Gf2Matrix transposed() const;

    // y = M x over GF(2); x.size() must equal cols().
    Gf2Vector apply(const Gf2Vector& x) const;

    void swap_rows(std::size_t a, std::size_t b);
    void xor_row_into(std::size_t src, std::size_t dst); // row[dst] ^= row[src]

    bool operator==(const Gf2Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<word_t> words_;
};

// GF(2) rank by Gaussian elimination, pivoting on the first set bit per
// column. The argument is copied; the caller's matrix is unmodified.
int rank(const Gf2Matrix& m);

// Basis of {x : Mx = 0}, derived from the reduced row-echelon form with free
// columns taken in ascending order (deterministic).
std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m);

// Dimension of the span of the given vectors (all of one length).
int span_dim(std::span<const Gf2Vector> vectors);

// Incremental GF(2) row space kept in reduced echelon form.
class Gf2Echelon {
public:
    explicit Gf2Echelon(std::size_t width) : width_(width) {}

    // Adds v to the span; returns false if v was already in it.
    bool insert(Gf2Vector v);
    bool contains(Gf2Vector v) const { return reduce(std::move(v)).is_zero(); }
    // Residual of v after reduction against the current rows.
    Gf2Vector reduce(Gf2Vector v) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

private:
    std::size_t width_;
    std::vector<Gf2Vector> rows_;      // reduced, ordered by pivot index
    std::vector<std::size_t> pivots_;  // ascending
};

// Rank of a matrix whose rows fit in single words (cols <= 64). Hot path for
// the rank census and the symmetric-matrix sampler.
int rank_word_rows(std::span<const std::uint64_t> rows);

// Signed integer table indexed by the 2^dimension elements of F2^dimension.
struct SignedTable {
    int dimension = 0;
    std::vector<std::int64_t> values;

    static SignedTable zeros(int dimension);
};

// Full Walsh-Hadamard transform: out(A) = sum_z in(z) * (-1)^<A,z>.
// Applying it twice multiplies every entry by 2^dimension. Throws
// std::overflow_error if any intermediate leaves the int64 range (the
// butterfly detects overflow instead of wrapping).
SignedTable walsh_hadamard(SignedTable table);

// Same butterfly on a double table (used where eigenvalue powers are floats).
// data.size() must be a power of two.
void walsh_hadamard_inplace(std::span<double> data);

} // namespace invwalk
