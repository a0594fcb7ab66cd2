// Copyright 2026 The qeclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECLAB_GF2_H
#define QECLAB_GF2_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qeclab {

inline size_t words_for_bits(size_t n) {
    return (n + 63) >> 6;
}

/// Fixed-length bit string packed into 64 bit words.
///
/// Padding bits past `size()` in the last word are kept at zero so that
/// word-level comparisons and popcounts are exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits);
    /// Parses a string of '0' and '1' characters.
    static BitVector from_string(std::string_view bits);

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    bool operator[](size_t k) const {
        return get(k);
    }
    void set(size_t k, bool value) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }
    /// Overwrites from raw words, masking anything past size().
    void assign_words(std::span<const uint64_t> src);

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector &operator|=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    BitVector operator&(const BitVector &other) const;
    bool operator==(const BitVector &other) const = default;

    bool any() const;
    size_t popcount() const;
    /// Parity of the bitwise AND.
    bool dot(const BitVector &other) const;
    std::optional<size_t> first_set() const;
    void clear();

    /// Bits [start, start + len) as a new vector.
    BitVector slice(size_t start, size_t len) const;

    std::string str() const;

   private:
    std::vector<uint64_t> words_;
    size_t num_bits_ = 0;
};

/// Row matrix over GF(2). Row order carries meaning (generator identity).
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t num_rows, size_t num_cols);
    static BitMatrix identity(size_t n);
    /// Rows given as strings of '0'/'1'.
    static BitMatrix from_strings(const std::vector<std::string> &rows);

    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return num_cols_;
    }
    BitVector &row(size_t r) {
        return rows_[r];
    }
    const BitVector &row(size_t r) const {
        return rows_[r];
    }
    bool get(size_t r, size_t c) const {
        return rows_[r].get(c);
    }
    void set(size_t r, size_t c, bool v) {
        rows_[r].set(c, v);
    }
    void append_row(BitVector row);
    const std::vector<BitVector> &rows() const {
        return rows_;
    }

    bool operator==(const BitMatrix &other) const = default;
    std::string str() const;

   private:
    std::vector<BitVector> rows_;
    size_t num_cols_ = 0;
};

struct RowReduction {
    BitMatrix reduced;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

/// Reduced row-echelon form. Pivot column is the lowest column with a nonzero
/// entry among unprocessed rows, the pivot row the first such row. Only
/// columns below `pivot_limit` may become pivots (default: all).
RowReduction row_reduce(const BitMatrix &m, size_t pivot_limit = SIZE_MAX);

size_t rank(const BitMatrix &m);

struct RankPair {
    size_t rank_full = 0;
    size_t rank_left = 0;
};

/// rank(m) and the rank of its first `split` columns, from one elimination.
RankPair rank_pair(const BitMatrix &m, size_t split);

/// Incremental basis keyed by lowest set bit.
///
/// Every stored vector has a distinct lowest set bit and no bits below it,
/// which makes the stored set an echelon form in lowest-bit-first order.
/// Counting stored vectors whose lead is below `split` gives the rank of the
/// first `split` columns. Storage is reused across reset() calls, which
/// matters in the Monte Carlo inner loop.
class EchelonBasis {
   public:
    EchelonBasis() = default;
    explicit EchelonBasis(size_t num_cols) {
        reset(num_cols);
    }
    void reset(size_t num_cols);

    /// Reduces `row` (num_words words) against the basis and stores it if
    /// independent. Returns true when the rank grew.
    bool insert(const uint64_t *row);
    bool insert(const BitVector &row) {
        return insert(row.words().data());
    }
    size_t rank() const {
        return leads_.size();
    }
    /// Number of stored vectors whose lead column is below `split`.
    size_t rank_below(size_t split) const;
    size_t num_cols() const {
        return num_cols_;
    }
    size_t num_words() const {
        return num_words_;
    }

   private:
    size_t num_cols_ = 0;
    size_t num_words_ = 0;
    std::vector<uint64_t> storage_;
    std::vector<int32_t> slot_of_col_;
    std::vector<uint32_t> leads_;
    std::vector<uint64_t> scratch_;
};

/// Finds a set of rows of `m` whose XOR equals `target`, returned as a
/// selection vector over rows. Throws NoSolutionError if target is not in the
/// row span.
BitVector solve_row_combination(const BitMatrix &m, const BitVector &target);

}  // namespace qeclab

#endif
