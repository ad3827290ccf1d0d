// Copyright 2026 The teelab Authors
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

// Exact linear algebra over the prime field F_p.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "teelab/error.hpp"

namespace teelab::ff {

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Arithmetic in F_p for a small prime p (< 256).
class PrimeField {
   public:
    explicit PrimeField(int p) : p_(p) {
        if (!is_prime(p) || p > 251) throw InvalidGeometry("field order must be a prime below 256");
        inv_.assign(static_cast<std::size_t>(p), 0);
        for (int a = 1; a < p; ++a)
            for (int b = 1; b < p; ++b)
                if (a * b % p == 1) inv_[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
    }
    int p() const noexcept {
        return p_;
    }
    std::uint8_t add(int a, int b) const {
        return static_cast<std::uint8_t>((a + b) % p_);
    }
    std::uint8_t mul(int a, int b) const {
        return static_cast<std::uint8_t>((a * b) % p_);
    }
    std::uint8_t neg(int a) const {
        return static_cast<std::uint8_t>((p_ - a) % p_);
    }
    std::uint8_t inv(int a) const {
        if (a % p_ == 0) throw std::domain_error("zero has no inverse");
        return inv_[static_cast<std::size_t>(a % p_)];
    }
    /// Reduces any integer into [0, p).
    std::uint8_t reduce(long a) const {
        return static_cast<std::uint8_t>(((a % p_) + p_) % p_);
    }

   private:
    int p_;
    std::vector<std::uint8_t> inv_;
};

/// Dense row-major matrix over F_p with one byte per entry.
class FpMatrix {
   public:
    FpMatrix(std::size_t rows, std::size_t cols, int p) : rows_(rows), cols_(cols), field_(p), data_(rows * cols, 0) {
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    int p() const noexcept {
        return field_.p();
    }
    std::uint8_t operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, long value) {
        data_[r * cols_ + c] = field_.reduce(value);
    }
    std::uint8_t *row(std::size_t r) {
        return data_.data() + r * cols_;
    }
    const std::uint8_t *row(std::size_t r) const {
        return data_.data() + r * cols_;
    }
    const PrimeField &field() const noexcept {
        return field_;
    }

    /// Rank by Gaussian elimination; the matrix is consumed.
    std::size_t rank() &&;

   private:
    std::size_t rows_, cols_;
    PrimeField field_;
    std::vector<std::uint8_t> data_;
};

/// Rows packed 64 columns per word, for p = 2.
class BitMatrix {
   public:
    BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {
    }
    void set(std::size_t r, std::size_t c, bool v) {
        auto &w = data_[r * words_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
    }
    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }

    std::size_t rank() && {
        std::size_t rank = 0;
        for (std::size_t w = 0; w < words_ && rank < rows_; ++w) {
            for (std::size_t bit = 0; bit < 64 && rank < rows_; ++bit) {
                if (w * 64 + bit >= cols_) break;
                const std::uint64_t mask = std::uint64_t{1} << bit;
                std::size_t pivot = rank;
                while (pivot < rows_ && !(data_[pivot * words_ + w] & mask)) ++pivot;
                if (pivot == rows_) continue;
                if (pivot != rank)
                    for (std::size_t k = w; k < words_; ++k) std::swap(data_[pivot * words_ + k], data_[rank * words_ + k]);
                for (std::size_t r = rank + 1; r < rows_; ++r) {
                    if (data_[r * words_ + w] & mask)
                        for (std::size_t k = w; k < words_; ++k) data_[r * words_ + k] ^= data_[rank * words_ + k];
                }
                ++rank;
            }
        }
        return rank;
    }

   private:
    std::size_t rows_, cols_, words_;
    std::vector<std::uint64_t> data_;
};

inline std::size_t FpMatrix::rank() && {
    const int p = field_.p();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows_ && data_[pivot * cols_ + c] == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != rank)
            for (std::size_t k = c; k < cols_; ++k) std::swap(data_[pivot * cols_ + k], data_[rank * cols_ + k]);
        std::uint8_t *prow = row(rank);
        const std::uint8_t inv = field_.inv(prow[c]);
        for (std::size_t k = c; k < cols_; ++k) prow[k] = field_.mul(prow[k], inv);
        for (std::size_t r = rank + 1; r < rows_; ++r) {
            std::uint8_t *rr = row(r);
            const int f = rr[c];
            if (f == 0) continue;
            const int neg = p - f;
            for (std::size_t k = c; k < cols_; ++k)
                if (prow[k]) rr[k] = static_cast<std::uint8_t>((rr[k] + neg * prow[k]) % p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace teelab::ff
