#pragma once
// Exact integer linear convolution engine (internal).
//
// All results are bit-exact int64 values regardless of backend:
//  - small inputs: direct O(nm) accumulation;
//  - mid/large inputs whose magnitude bound proves the rounded double-FFT
//    result exact: FFTW real transforms with per-entry rounding verification;
//  - otherwise: number-theoretic transform over p = 2^64 - 2^32 + 1
//    (64-bit prime with 2-adicity 32), exact for |value| < p/2.
//
// conv_bilinear evaluates sum_t coeff_t * conv(inputs[i_t], inputs[j_t])
// transforming each distinct input once; this keeps the transform count of
// composite mismatch-counting convolutions minimal.

#include <cstdint>
#include <cstddef>
#include <vector>

namespace palwild::detail {

struct BilinearTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t coeff = 1;
};

// Returns r with r[s] = sum_t coeff_t * sum_{x+y=s} inputs[i_t][x]*inputs[j_t][y],
// of length out_len (entries beyond any term's reach are zero).
// Throws Error(PrecisionBound) if exactness cannot be guaranteed.
std::vector<std::int64_t> conv_bilinear(const std::vector<std::vector<std::int64_t>>& inputs,
                                        const std::vector<BilinearTerm>& terms,
                                        std::size_t out_len);

// Plain exact convolution of two integer sequences, size |a|+|b|-1.
std::vector<std::int64_t> conv_exact(const std::vector<std::int64_t>& a,
                                     const std::vector<std::int64_t>& b);

}  // namespace palwild::detail
