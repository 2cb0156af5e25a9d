#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsqrt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Kernel-level singularity (index-free; tensor-level callers attach the slice).
struct SingularMatrix : Error {
    using Error::Error;
};

struct SingularSlice : Error {
    std::size_t slice = 0;
    // Set when the singularity appeared inside an iteration. The residual
    // history up to the failure is kept for post-mortem analysis.
    std::optional<std::size_t> iteration;
    std::vector<double> partial_residuals;

    SingularSlice(const std::string& msg, std::size_t slice_index)
        : Error(msg), slice(slice_index) {}
    SingularSlice(const std::string& msg, std::size_t slice_index, std::size_t iter,
                  std::vector<double> residuals)
        : Error(msg), slice(slice_index), iteration(iter),
          partial_residuals(std::move(residuals)) {}
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    std::string which;  // "a", "b", "source", "target", or empty
    std::optional<std::size_t> slice;

    explicit NotPositiveDefinite(const std::string& msg) : Error(msg) {}
    NotPositiveDefinite(const std::string& msg, std::string which_operand,
                        std::optional<std::size_t> slice_index = std::nullopt)
        : Error(msg), which(std::move(which_operand)), slice(slice_index) {}
};

struct ResidualImaginaryTooLarge : Error {
    using Error::Error;
};

struct NotCentered : Error {
    using Error::Error;
};

struct SingularCovariance : Error {
    std::string which;  // "source" / "target" where applicable
    explicit SingularCovariance(const std::string& msg, std::string which_operand = {})
        : Error(msg), which(std::move(which_operand)) {}
};

struct ZeroVarianceChannel : Error {
    std::size_t channel = 0;
    ZeroVarianceChannel(const std::string& msg, std::size_t channel_index)
        : Error(msg), channel(channel_index) {}
};

struct WrongChannelCount : Error {
    using Error::Error;
};

}  // namespace tsqrt
