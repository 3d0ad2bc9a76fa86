#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecon/nn/tensor.hpp"
#include "vecon/rng.hpp"

namespace vecon::nn {

struct MlpShape {
  int inputs = 0;
  int hidden = 0;
  int outputs = 0;

  int num_params() const { return inputs * hidden + hidden + hidden * hidden + hidden + hidden * outputs + outputs; }
  friend bool operator==(const MlpShape&, const MlpShape&) = default;
};

struct TensorSlice {
  std::string name;
  int offset = 0;
  int rows = 0;
  int cols = 0;  // 1 for biases
};

/// Dense network with two tanh hidden layers and a linear output layer.
/// All parameters live in one flat vector in the order
/// w1 [in x h], b1 [h], w2 [h x h], b2 [h], w3 [h x out], b3 [out] (row-major).
template <class S>
class Mlp {
 public:
  using Mat = Matrix<S>;
  using Vec = Vector<S>;

  struct Activations {
    Mat h1, h2, out;
  };

  Mlp() = default;
  explicit Mlp(MlpShape shape) : shape_(shape), params_(Vec::Zero(shape.num_params())) {}

  const MlpShape& shape() const { return shape_; }
  int num_params() const { return shape_.num_params(); }
  Vec& params() { return params_; }
  const Vec& params() const { return params_; }

  std::vector<TensorSlice> slices() const {
    const int i = shape_.inputs, h = shape_.hidden, o = shape_.outputs;
    std::vector<TensorSlice> s;
    int off = 0;
    auto add = [&](const char* name, int rows, int cols) {
      s.push_back({name, off, rows, cols});
      off += rows * cols;
    };
    add("w1", i, h);
    add("b1", h, 1);
    add("w2", h, h);
    add("b2", h, 1);
    add("w3", h, o);
    add("b3", o, 1);
    return s;
  }

  /// Orthogonal init scaled by `hidden_gain` for the hidden layers and
  /// `output_gain` for the output layer; zero biases.
  void init(Rng& rng, double hidden_gain, double output_gain) {
    params_.setZero();
    const auto s = slices();
    orthogonal(weight(params_, s[0]), rng, hidden_gain);
    orthogonal(weight(params_, s[2]), rng, hidden_gain);
    orthogonal(weight(params_, s[4]), rng, output_gain);
  }

  void forward(const Eigen::Ref<const Mat>& x, Activations& act) const {
    if (x.cols() != shape_.inputs)
      throw std::invalid_argument("mlp input has " + std::to_string(x.cols()) + " columns, expected " +
                                  std::to_string(shape_.inputs));
    const auto s = slices();
    act.h1.noalias() = x * weight(params_, s[0]);
    act.h1.rowwise() += bias(params_, s[1]);
    act.h1 = act.h1.array().tanh();
    act.h2.noalias() = act.h1 * weight(params_, s[2]);
    act.h2.rowwise() += bias(params_, s[3]);
    act.h2 = act.h2.array().tanh();
    act.out.noalias() = act.h2 * weight(params_, s[4]);
    act.out.rowwise() += bias(params_, s[5]);
  }

  /// Adds dLoss/dParams to `grad` given dLoss/dOutput.
  void backward(const Eigen::Ref<const Mat>& x, const Activations& act, const Eigen::Ref<const Mat>& d_out,
                Vec& grad) const {
    const auto s = slices();
    auto gw3 = weight(grad, s[4]);
    gw3.noalias() += act.h2.transpose() * d_out;
    bias(grad, s[5]) += d_out.colwise().sum();
    Mat dz2 = d_out * weight(params_, s[4]).transpose();
    dz2.array() *= (S(1) - act.h2.array().square());
    weight(grad, s[2]).noalias() += act.h1.transpose() * dz2;
    bias(grad, s[3]) += dz2.colwise().sum();
    Mat dz1 = dz2 * weight(params_, s[2]).transpose();
    dz1.array() *= (S(1) - act.h1.array().square());
    weight(grad, s[0]).noalias() += x.transpose() * dz1;
    bias(grad, s[1]) += dz1.colwise().sum();
  }

  template <class V>
  static auto weight(V& flat, const TensorSlice& t) {
    using Scalar = std::remove_const_t<typename std::remove_reference_t<V>::Scalar>;
    using M = std::conditional_t<std::is_const_v<V>, const Matrix<Scalar>, Matrix<Scalar>>;
    return Eigen::Map<M>(flat.data() + t.offset, t.rows, t.cols);
  }

  template <class V>
  static auto bias(V& flat, const TensorSlice& t) {
    using Scalar = std::remove_const_t<typename std::remove_reference_t<V>::Scalar>;
    using R = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
    using M = std::conditional_t<std::is_const_v<V>, const R, R>;
    return Eigen::Map<M>(flat.data() + t.offset, 1, t.rows);
  }

 private:
  template <class M>
  static void orthogonal(M&& w, Rng& rng, double gain) {
    const Eigen::Index rows = w.rows(), cols = w.cols();
    const bool tall = rows >= cols;
    Eigen::MatrixXd g(tall ? rows : cols, tall ? cols : rows);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g.rows(), g.cols());
    const Eigen::MatrixXd r = qr.matrixQR().topRows(g.cols()).template triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j)
      if (r(j, j) < 0) q.col(j) *= -1.0;
    if (!tall) q.transposeInPlace();
    w = (gain * q).template cast<typename std::remove_reference_t<M>::Scalar>();
  }

  MlpShape shape_;
  Vec params_;
};

}  // namespace vecon::nn
