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

#include "qeclab/gf2.h"

#include <algorithm>
#include <stdexcept>

#include "qeclab/errors.h"

namespace qeclab {

namespace {

uint64_t tail_mask(size_t num_bits) {
    size_t r = num_bits & 63;
    return r == 0 ? ~uint64_t{0} : (uint64_t{1} << r) - 1;
}

void require_same_size(const BitVector &a, const BitVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(
            "BitVector size mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

}  // namespace

BitVector::BitVector(size_t num_bits) : words_(words_for_bits(num_bits), 0), num_bits_(num_bits) {
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            v.set(k, true);
        } else if (bits[k] != '0') {
            throw std::invalid_argument("Bit strings may only contain '0' and '1'.");
        }
    }
    return v;
}

void BitVector::assign_words(std::span<const uint64_t> src) {
    size_t n = std::min(src.size(), words_.size());
    std::copy_n(src.begin(), n, words_.begin());
    std::fill(words_.begin() + n, words_.end(), 0);
    if (!words_.empty()) {
        words_.back() &= tail_mask(num_bits_);
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    require_same_size(*this, other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    require_same_size(*this, other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVector &BitVector::operator|=(const BitVector &other) {
    require_same_size(*this, other);
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector r = *this;
    r ^= other;
    return r;
}

BitVector BitVector::operator&(const BitVector &other) const {
    BitVector r = *this;
    r &= other;
    return r;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVector::popcount() const {
    size_t n = 0;
    for (uint64_t w : words_) {
        n += std::popcount(w);
    }
    return n;
}

bool BitVector::dot(const BitVector &other) const {
    require_same_size(*this, other);
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::optional<size_t> BitVector::first_set() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return (w << 6) + std::countr_zero(words_[w]);
        }
    }
    return std::nullopt;
}

void BitVector::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

BitVector BitVector::slice(size_t start, size_t len) const {
    if (start + len > num_bits_) {
        throw std::invalid_argument("slice out of range");
    }
    BitVector r(len);
    for (size_t k = 0; k < len; k++) {
        if (get(start + k)) {
            r.set(k, true);
        }
    }
    return r;
}

std::string BitVector::str() const {
    std::string s(num_bits_, '0');
    for (size_t k = 0; k < num_bits_; k++) {
        if (get(k)) {
            s[k] = '1';
        }
    }
    return s;
}

BitMatrix::BitMatrix(size_t num_rows, size_t num_cols) : rows_(num_rows, BitVector(num_cols)), num_cols_(num_cols) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
    BitMatrix m;
    if (!rows.empty()) {
        m.num_cols_ = rows[0].size();
    }
    for (const auto &r : rows) {
        m.append_row(BitVector::from_string(r));
    }
    return m;
}

void BitMatrix::append_row(BitVector row) {
    if (rows_.empty() && num_cols_ == 0) {
        num_cols_ = row.size();
    }
    if (row.size() != num_cols_) {
        throw std::invalid_argument("appended row has the wrong length");
    }
    rows_.push_back(std::move(row));
}

std::string BitMatrix::str() const {
    std::string s;
    for (const auto &r : rows_) {
        s += r.str();
        s += '\n';
    }
    return s;
}

RowReduction row_reduce(const BitMatrix &m, size_t pivot_limit) {
    RowReduction out;
    out.reduced = m;
    BitMatrix &a = out.reduced;
    size_t limit = std::min(pivot_limit, m.num_cols());
    size_t next_row = 0;
    for (size_t c = 0; c < limit && next_row < a.num_rows(); c++) {
        size_t pivot = next_row;
        while (pivot < a.num_rows() && !a.get(pivot, c)) {
            pivot++;
        }
        if (pivot == a.num_rows()) {
            continue;
        }
        std::swap(a.row(pivot), a.row(next_row));
        const BitVector &p = a.row(next_row);
        for (size_t r = 0; r < a.num_rows(); r++) {
            if (r != next_row && a.get(r, c)) {
                a.row(r) ^= p;
            }
        }
        out.pivots.push_back(c);
        next_row++;
    }
    out.rank = out.pivots.size();
    return out;
}

size_t rank(const BitMatrix &m) {
    EchelonBasis basis(m.num_cols());
    for (const auto &r : m.rows()) {
        basis.insert(r);
    }
    return basis.rank();
}

RankPair rank_pair(const BitMatrix &m, size_t split) {
    if (split > m.num_cols()) {
        throw std::invalid_argument(
            "rank_pair split " + std::to_string(split) + " exceeds column count " + std::to_string(m.num_cols()));
    }
    EchelonBasis basis(m.num_cols());
    for (const auto &r : m.rows()) {
        basis.insert(r);
    }
    return {basis.rank(), basis.rank_below(split)};
}

void EchelonBasis::reset(size_t num_cols) {
    if (num_cols != num_cols_ || slot_of_col_.size() != num_cols) {
        num_cols_ = num_cols;
        num_words_ = words_for_bits(num_cols);
        slot_of_col_.assign(num_cols, -1);
        scratch_.assign(num_words_, 0);
        storage_.clear();
    } else {
        for (uint32_t c : leads_) {
            slot_of_col_[c] = -1;
        }
    }
    leads_.clear();
}

bool EchelonBasis::insert(const uint64_t *row) {
    uint64_t *v = scratch_.data();
    std::copy_n(row, num_words_, v);
    size_t w = 0;
    while (true) {
        while (w < num_words_ && v[w] == 0) {
            w++;
        }
        if (w == num_words_) {
            return false;
        }
        size_t c = (w << 6) + std::countr_zero(v[w]);
        int32_t slot = slot_of_col_[c];
        if (slot < 0) {
            size_t s = leads_.size();
            if (storage_.size() < (s + 1) * num_words_) {
                storage_.resize((s + 1) * num_words_);
            }
            std::copy_n(v, num_words_, storage_.data() + s * num_words_);
            slot_of_col_[c] = (int32_t)s;
            leads_.push_back((uint32_t)c);
            return true;
        }
        const uint64_t *b = storage_.data() + (size_t)slot * num_words_;
        for (size_t k = w; k < num_words_; k++) {
            v[k] ^= b[k];
        }
    }
}

size_t EchelonBasis::rank_below(size_t split) const {
    size_t n = 0;
    for (uint32_t c : leads_) {
        n += c < split;
    }
    return n;
}

BitVector solve_row_combination(const BitMatrix &m, const BitVector &target) {
    if (target.size() != m.num_cols()) {
        throw std::invalid_argument("target length does not match matrix columns");
    }
    size_t nr = m.num_rows();
    size_t nc = m.num_cols();
    // Augment each row with a tag identifying it, eliminate, and read the
    // tag bits of whatever combination reproduces the target.
    BitMatrix aug(nr, nc + nr);
    for (size_t r = 0; r < nr; r++) {
        for (size_t c = 0; c < nc; c++) {
            if (m.get(r, c)) {
                aug.set(r, c, true);
            }
        }
        aug.set(r, nc + r, true);
    }
    RowReduction red = row_reduce(aug, nc);
    BitVector residual = target;
    BitVector selection(nr);
    for (size_t p = 0; p < red.rank; p++) {
        size_t c = red.pivots[p];
        if (residual.get(c)) {
            const BitVector &row = red.reduced.row(p);
            for (size_t k = 0; k < nc; k++) {
                if (row.get(k)) {
                    residual.flip(k);
                }
            }
            for (size_t k = 0; k < nr; k++) {
                if (row.get(nc + k)) {
                    selection.flip(k);
                }
            }
        }
    }
    if (residual.any()) {
        throw NoSolutionError("target vector is not in the row span");
    }
    return selection;
}

}  // namespace qeclab
