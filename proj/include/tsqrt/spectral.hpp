#pragma once

#include <cstddef>
#include <vector>

#include "tsqrt/complex_matrix.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt {

// Complex frontal slices after the DFT along mode 3. All Fourier-domain
// computation lives on this carrier.
struct SpectralTensor {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t p = 0;
    std::vector<ComplexMatrix> slices;

    SpectralTensor() = default;
    SpectralTensor(std::size_t rows, std::size_t cols, std::size_t depth)
        : n(rows), m(cols), p(depth), slices(depth, ComplexMatrix(rows, cols)) {}
};

// Unnormalized forward DFT of every mode-3 tube. The output of a real tensor
// satisfies slice(p-i) = conj(slice(i)) for i = 1..p-1 (0-based).
SpectralTensor dft_mode3(const Tensor3& t);

// Inverse transform with the 1/p factor. The imaginary residue must stay below
// 1e-9 * sqrt(sum of slice norms squared); beyond that the input cannot have
// come from a real tensor and ResidualImaginaryTooLarge is thrown.
Tensor3 idft_mode3(const SpectralTensor& s);

// sqrt(sum_i ||slice_i||_F^2); equals sqrt(p) * frobenius_norm(idft(s)).
double spectral_frobenius_norm(const SpectralTensor& s);

}  // namespace tsqrt
