#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "vecon/nn/adam.hpp"
#include "vecon/nn/categorical.hpp"
#include "vecon/nn/mlp.hpp"
#include "vecon/ppo/loss.hpp"

namespace vecon {
namespace {

using Mat = nn::Matrix<double>;
using Vec = nn::Vector<double>;
using IntMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

TEST(Mlp, ZeroWeightsGiveUniformPolicyAndZeroValue) {
  nn::Mlp<double> net({5, 8, 4});
  Mat x = Mat::Random(3, 5);
  nn::Mlp<double>::Activations act;
  net.forward(x, act);
  EXPECT_TRUE(act.out.isZero());
  Mat logp;
  nn::masked_log_softmax<double>(act.out, nullptr, {1, 4}, logp);
  for (Eigen::Index j = 0; j < 4; ++j) EXPECT_NEAR(std::exp(logp(0, j)), 0.25, 1e-15);
}

TEST(Mlp, ShapeMismatchThrows) {
  nn::Mlp<double> net({5, 8, 4});
  nn::Mlp<double>::Activations act;
  EXPECT_THROW(net.forward(Mat::Zero(2, 6), act), std::invalid_argument);
}

TEST(Mlp, OrthogonalInitHasOrthonormalColumns) {
  nn::Mlp<double> net({16, 8, 3});
  Rng rng(1);
  net.init(rng, std::sqrt(2.0), 0.01);
  const auto s = net.slices();
  const Mat w1 = nn::Mlp<double>::weight(net.params(), s[0]);
  const Mat gram = w1.transpose() * w1;
  EXPECT_TRUE(gram.isApprox(2.0 * Mat::Identity(8, 8), 1e-10));
  const Mat w3 = nn::Mlp<double>::weight(net.params(), s[4]);
  EXPECT_NEAR(w3.col(0).norm(), 0.01, 1e-12);
}

TEST(Mlp, ForwardIsDeterministic) {
  nn::Mlp<float> net({10, 32, 6});
  Rng rng(3);
  net.init(rng, std::sqrt(2.0), 0.01);
  nn::Matrix<float> x = nn::Matrix<float>::Random(17, 10);
  nn::Mlp<float>::Activations a, b;
  net.forward(x, a);
  net.forward(x, b);
  EXPECT_EQ(std::memcmp(a.out.data(), b.out.data(), sizeof(float) * a.out.size()), 0);
}

TEST(Categorical, SingleUnmaskedActionIsCertain) {
  Mat logits = Mat::Random(1, 5);
  nn::MaskMatrix mask = nn::MaskMatrix::Zero(1, 5);
  mask(0, 3) = 1;
  Mat logp;
  nn::masked_log_softmax<double>(logits, &mask, {1, 5}, logp);
  EXPECT_EQ(logp(0, 3), 0.0);
  Rng rng(1);
  EXPECT_EQ(nn::sample_head<double>(logp.row(0), 0, 5, rng), 3);
  EXPECT_EQ(nn::head_entropy<double>(logp.row(0), 0, 5), 0.0);
}

TEST(Categorical, FullyMaskedRowThrows) {
  Mat logits = Mat::Zero(1, 3);
  nn::MaskMatrix mask = nn::MaskMatrix::Zero(1, 3);
  Mat logp;
  EXPECT_THROW(nn::masked_log_softmax<double>(logits, &mask, {1, 3}, logp), std::invalid_argument);
}

TEST(CategoricalProperty, RowsSumToOne) {
  nn::Mlp<double> net({7, 16, 9});
  Rng rng(5);
  net.init(rng, std::sqrt(2.0), 1.0);
  Mat x = Mat::Random(50, 7);
  nn::Mlp<double>::Activations act;
  net.forward(x, act);
  Mat logp;
  nn::masked_log_softmax<double>(act.out, nullptr, {3, 3}, logp);
  for (Eigen::Index i = 0; i < 50; ++i)
    for (int h = 0; h < 3; ++h) EXPECT_NEAR(logp.row(i).segment(3 * h, 3).array().exp().sum(), 1.0, 1e-6);
}

TEST(CategoricalProperty, MaskedEntropyEqualsRenormalizedEntropy) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Mat logits(1, 8);
    nn::MaskMatrix mask(1, 8);
    for (int j = 0; j < 8; ++j) {
      logits(0, j) = rng.normal(0, 2);
      mask(0, j) = rng.below(2);
    }
    mask(0, 0) = 1;
    Mat logp;
    nn::masked_log_softmax<double>(logits, &mask, {1, 8}, logp);
    std::vector<double> sub;
    for (int j = 0; j < 8; ++j)
      if (mask(0, j)) sub.push_back(logits(0, j));
    double z = 0;
    for (double v : sub) z += std::exp(v);
    double h = 0;
    for (double v : sub) h -= std::exp(v) / z * std::log(std::exp(v) / z);
    EXPECT_NEAR(nn::head_entropy<double>(logp.row(0), 0, 8), h, 1e-9);
  }
}

TEST(CategoricalProperty, SamplingFrequenciesAndMasking) {
  Mat logits = Mat::Zero(1, 5);
  nn::MaskMatrix mask = nn::MaskMatrix::Ones(1, 5);
  mask(0, 2) = 0;
  Mat logp;
  nn::masked_log_softmax<double>(logits, &mask, {1, 5}, logp);
  Rng rng(2);
  std::map<int, int> counts;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) ++counts[nn::sample_head<double>(logp.row(0), 0, 5, rng)];
  EXPECT_EQ(counts[2], 0);
  for (int j : {0, 1, 3, 4}) EXPECT_NEAR(counts[j] / double(kDraws), 0.25, 0.01);
}

// Central finite differences of a scalar function of the flat parameters.
template <class F>
Vec numeric_gradient(Vec params, F loss, double h = 1e-5) {
  Vec g(params.size());
  for (Eigen::Index k = 0; k < params.size(); ++k) {
    const double orig = params(k);
    params(k) = orig + h;
    const double up = loss(params);
    params(k) = orig - h;
    const double down = loss(params);
    params(k) = orig;
    g(k) = (up - down) / (2 * h);
  }
  return g;
}

double relative_error(const Vec& a, const Vec& b) { return (a - b).norm() / std::max(1e-12, a.norm() + b.norm()); }

struct PolicyFixture {
  nn::Mlp<double> net{nn::MlpShape{6, 8, 5}};
  Mat x;
  nn::MaskMatrix mask;
  IntMat actions;
  Vec old_logp, adv;

  explicit PolicyFixture(std::uint64_t seed) {
    Rng rng(seed);
    net.init(rng, std::sqrt(2.0), 1.0);
    const int n = 12;
    x = Mat(n, 6);
    for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = rng.normal();
    mask = nn::MaskMatrix::Ones(n, 5);
    actions = IntMat(n, 1);
    old_logp = Vec(n);
    adv = Vec(n);
    for (int i = 0; i < n; ++i) {
      mask(i, static_cast<Eigen::Index>(rng.below(5))) = 0;
      do actions(i, 0) = static_cast<int>(rng.below(5));
      while (!mask(i, actions(i, 0)));
      old_logp(i) = std::log(rng.uniform(0.05, 0.6));
      adv(i) = rng.normal();
    }
  }

  double loss(const Vec& p, double clip, double ent) {
    nn::Mlp<double> copy = net;
    copy.params() = p;
    nn::Mlp<double>::Activations act;
    copy.forward(x, act);
    return ppo::policy_loss<double>(act.out, &mask, {1, 5}, actions, old_logp, adv, clip, ent).total;
  }

  Vec analytic(double clip, double ent) {
    nn::Mlp<double>::Activations act;
    net.forward(x, act);
    const auto l = ppo::policy_loss<double>(act.out, &mask, {1, 5}, actions, old_logp, adv, clip, ent);
    Vec g = Vec::Zero(net.num_params());
    net.backward(x, act, l.d_logits, g);
    return g;
  }
};

TEST(Gradient, SurrogateMatchesFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    PolicyFixture f(seed);
    const Vec g = f.analytic(0.2, 0.0);
    const Vec fd = numeric_gradient(f.net.params(), [&](const Vec& p) { return f.loss(p, 0.2, 0.0); });
    EXPECT_LT(relative_error(g, fd), 1e-4) << "seed " << seed;
  }
}

TEST(Gradient, EntropyMatchesFiniteDifferences) {
  PolicyFixture f(4);
  f.adv.setZero();
  const Vec g = f.analytic(0.2, 1.0);
  const Vec fd = numeric_gradient(f.net.params(), [&](const Vec& p) { return f.loss(p, 0.2, 1.0); });
  EXPECT_LT(relative_error(g, fd), 1e-4);
}

TEST(Gradient, MultiHeadPolicyMatchesFiniteDifferences) {
  nn::Mlp<double> net({4, 8, 6});
  Rng rng(9);
  net.init(rng, std::sqrt(2.0), 1.0);
  const int n = 10;
  Mat x(n, 4);
  for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = rng.normal();
  IntMat actions(n, 2);
  Vec old(n), adv(n);
  for (int i = 0; i < n; ++i) {
    actions(i, 0) = static_cast<int>(rng.below(3));
    actions(i, 1) = static_cast<int>(rng.below(3));
    old(i) = std::log(rng.uniform(0.05, 0.3));
    adv(i) = rng.normal();
  }
  auto eval = [&](const Vec& p, Vec* grad) {
    nn::Mlp<double> copy = net;
    copy.params() = p;
    nn::Mlp<double>::Activations act;
    copy.forward(x, act);
    const auto l = ppo::policy_loss<double>(act.out, nullptr, {2, 3}, actions, old, adv, 0.2, 0.05);
    if (grad) {
      *grad = Vec::Zero(p.size());
      copy.backward(x, act, l.d_logits, *grad);
    }
    return l.total;
  };
  Vec g;
  eval(net.params(), &g);
  const Vec fd = numeric_gradient(net.params(), [&](const Vec& p) { return eval(p, nullptr); });
  EXPECT_LT(relative_error(g, fd), 1e-4);
}

TEST(Gradient, ValueLossMatchesFiniteDifferences) {
  nn::Mlp<double> net({6, 8, 1});
  Rng rng(11);
  net.init(rng, std::sqrt(2.0), 1.0);
  const int n = 16;
  Mat x(n, 6);
  for (Eigen::Index k = 0; k < x.size(); ++k) x.data()[k] = rng.normal();
  Vec old(n), targets(n);
  for (int i = 0; i < n; ++i) {
    old(i) = rng.normal();
    targets(i) = rng.normal(0, 3);
  }
  for (double clip : {10.0, 0.3}) {
    auto eval = [&](const Vec& p, Vec* grad) {
      nn::Mlp<double> copy = net;
      copy.params() = p;
      nn::Mlp<double>::Activations act;
      copy.forward(x, act);
      const Vec v = act.out.col(0);
      const auto l = ppo::value_loss<double>(v, old, targets, clip, 0.25);
      if (grad) {
        *grad = Vec::Zero(p.size());
        copy.backward(x, act, Mat(l.d_values), *grad);
      }
      return l.total;
    };
    Vec g;
    eval(net.params(), &g);
    const Vec fd = numeric_gradient(net.params(), [&](const Vec& p) { return eval(p, nullptr); });
    EXPECT_LT(relative_error(g, fd), 1e-4) << "clip " << clip;
  }
}

TEST(Gradient, ConstantLossHasZeroGradient) {
  PolicyFixture f(2);
  f.adv.setZero();
  EXPECT_TRUE(f.analytic(0.2, 0.0).isZero());
}

TEST(Gradient, DuplicatedRowsDoubleSumGradient) {
  nn::Mlp<double> net({3, 8, 1});
  Rng rng(4);
  net.init(rng, 1.0, 1.0);
  Mat x = Mat::Random(4, 3);
  Mat twice(8, 3);
  twice << x, x;
  Mat d = Mat::Random(4, 1);
  Mat d2(8, 1);
  d2 << d, d;
  nn::Mlp<double>::Activations a, b;
  net.forward(x, a);
  net.forward(twice, b);
  Vec g1 = Vec::Zero(net.num_params()), g2 = Vec::Zero(net.num_params());
  net.backward(x, a, d, g1);
  net.backward(twice, b, d2, g2);
  EXPECT_TRUE(g2.isApprox(2.0 * g1, 1e-12));
}

TEST(Gradient, MaskedLogitsReceiveZeroGradient) {
  PolicyFixture f(6);
  nn::Mlp<double>::Activations act;
  f.net.forward(f.x, act);
  const auto l = ppo::policy_loss<double>(act.out, &f.mask, {1, 5}, f.actions, f.old_logp, f.adv, 0.2, 0.1);
  for (Eigen::Index i = 0; i < f.mask.rows(); ++i)
    for (Eigen::Index j = 0; j < 5; ++j)
      if (!f.mask(i, j)) EXPECT_EQ(l.d_logits(i, j), 0.0);
}

TEST(PolicyLoss, UnitRatioGivesMeanAdvantage) {
  Mat logits = Mat::Zero(3, 2);
  IntMat actions(3, 1);
  actions << 0, 1, 0;
  Vec old = Vec::Constant(3, std::log(0.5));
  Vec adv(3);
  adv << 1.0, -2.0, 4.0;
  const auto l = ppo::policy_loss<double>(logits, nullptr, {1, 2}, actions, old, adv, 0.2, 0.0);
  EXPECT_NEAR(l.surrogate, -1.0, 1e-12);
}

TEST(PolicyLoss, ClippedObjective) {
  // ratio 1.5 with A = +1: min(1.5, 1.2) = 1.2
  Mat logits = Mat::Zero(1, 2);
  IntMat actions(1, 1);
  actions << 0;
  Vec old = Vec::Constant(1, std::log(0.5 / 1.5));
  Vec adv = Vec::Constant(1, 1.0);
  const auto l = ppo::policy_loss<double>(logits, nullptr, {1, 2}, actions, old, adv, 0.2, 0.0);
  EXPECT_NEAR(l.surrogate, -1.2, 1e-12);
  EXPECT_TRUE(l.d_logits.isZero());
}

TEST(Adam, ZeroGradientAndZeroRateLeaveParams) {
  Vec p = Vec::Random(10);
  const Vec before = p;
  nn::AdamState<double> st;
  Vec g = Vec::Zero(10);
  nn::adam_step(p, g, st, 1e-3, {});
  EXPECT_EQ(p, before);
  g = Vec::Random(10);
  nn::adam_step(p, g, st, 0.0, {});
  EXPECT_EQ(p, before);
}

TEST(Adam, FirstStepMovesBySignTimesRate) {
  Vec p = Vec::Zero(4);
  Vec g(4);
  g << 0.1, -0.2, 0.05, -0.01;
  nn::AdamConfig cfg;
  cfg.max_grad_norm = 0.0;
  nn::AdamState<double> st;
  nn::adam_step(p, g, st, 1e-3, cfg);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(p(k), -1e-3 * (g(k) > 0 ? 1 : -1), 1e-9);
}

TEST(Adam, ClipsGlobalNorm) {
  Vec g(2);
  g << 3.0, 4.0;
  EXPECT_DOUBLE_EQ(nn::clip_global_norm(g, 0.5), 5.0);
  EXPECT_NEAR(g.norm(), 0.5, 1e-9);
}

}  // namespace
}  // namespace vecon
