#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace vecon::nn {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Scalar type used for training. Gradient checks instantiate the same code with double.
using Real = float;

}  // namespace vecon::nn
