// core/src/autodiff.cc

// Copyright 2026  The tinyst Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "tinyst/autodiff.h"

#include <cmath>

#include "tinyst/errors.h"

namespace tinyst {

namespace {
constexpr double kLayerNormEps = 1e-5;
constexpr double kMaskValue = -1e9;
}  // namespace

Tape::Tape(bool training, Rng* rng, double dropout_rate)
    : training_(training), rng_(rng), dropout_rate_(dropout_rate) {
  if (dropout_rate_ < 0.0 || dropout_rate_ >= 1.0)
    throw DomainError("dropout rate must be in [0, 1)");
}

Tape::NodeId Tape::push(Tensor val, std::function<void(Tape&)> bw) {
  Node n;
  n.grad = Tensor::zeros(val.rows, val.cols);
  n.val = std::move(val);
  n.bw = std::move(bw);
  nodes_.push_back(std::move(n));
  return static_cast<NodeId>(nodes_.size() - 1);
}

Tape::NodeId Tape::leaf(Tensor value) { return push(std::move(value), {}); }

Tape::NodeId Tape::param(const Tensor& value, Tensor* grad_sink) {
  if (grad_sink == nullptr) return leaf(value);  // frozen parameter
  NodeId id = push(value, {});
  nodes_[id].bw = [id, grad_sink](Tape& t) {
    add_inplace(*grad_sink, t.grad(id));
  };
  return id;
}

Tape::NodeId Tape::add(NodeId a, NodeId b) {
  if (!val(a).same_shape(val(b))) throw LayoutError("add shape mismatch");
  Tensor out = val(a);
  add_inplace(out, val(b));
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a, b](Tape& t) {
    add_inplace(t.grad_mut(a), t.grad(id));
    add_inplace(t.grad_mut(b), t.grad(id));
  };
  return id;
}

Tape::NodeId Tape::add_rowvec(NodeId a, NodeId b) {
  const Tensor& av = val(a);
  const Tensor& bv = val(b);
  if (bv.rows != 1 || bv.cols != av.cols)
    throw LayoutError("add_rowvec wants a 1 x C row vector");
  Tensor out = av;
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t j = 0; j < out.cols; ++j) out.at(i, j) += bv.at(0, j);
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a, b](Tape& t) {
    const Tensor& g = t.grad(id);
    add_inplace(t.grad_mut(a), g);
    Tensor& gb = t.grad_mut(b);
    for (std::size_t i = 0; i < g.rows; ++i)
      for (std::size_t j = 0; j < g.cols; ++j) gb.at(0, j) += g.at(i, j);
  };
  return id;
}

Tape::NodeId Tape::scale(NodeId a, double s) {
  Tensor out = val(a);
  for (double& x : out.v) x *= s;
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a, s](Tape& t) {
    axpy_inplace(t.grad_mut(a), s, t.grad(id));
  };
  return id;
}

Tape::NodeId Tape::matmul(NodeId a, NodeId b) {
  NodeId id = push(tinyst::matmul(val(a), val(b)), {});
  nodes_[id].bw = [id, a, b](Tape& t) {
    const Tensor& g = t.grad(id);
    add_inplace(t.grad_mut(a), tinyst::matmul_nt(g, t.val(b)));
    add_inplace(t.grad_mut(b), tinyst::matmul_tn(t.val(a), g));
  };
  return id;
}

Tape::NodeId Tape::matmul_nt(NodeId a, NodeId b) {
  NodeId id = push(tinyst::matmul_nt(val(a), val(b)), {});
  nodes_[id].bw = [id, a, b](Tape& t) {
    const Tensor& g = t.grad(id);
    add_inplace(t.grad_mut(a), tinyst::matmul(g, t.val(b)));
    add_inplace(t.grad_mut(b), tinyst::matmul_tn(g, t.val(a)));
  };
  return id;
}

Tape::NodeId Tape::relu(NodeId a) {
  Tensor out = val(a);
  for (double& x : out.v)
    if (x < 0.0) x = 0.0;
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a](Tape& t) {
    const Tensor& g = t.grad(id);
    const Tensor& x = t.val(a);
    Tensor& ga = t.grad_mut(a);
    for (std::size_t i = 0; i < g.v.size(); ++i)
      if (x.v[i] > 0.0) ga.v[i] += g.v[i];
  };
  return id;
}

Tape::NodeId Tape::layernorm(NodeId x, NodeId gain, NodeId bias) {
  const Tensor& xv = val(x);
  const std::size_t C = xv.cols;
  if (val(gain).rows != 1 || val(gain).cols != C || val(bias).rows != 1 ||
      val(bias).cols != C)
    throw LayoutError("layernorm gain/bias must be 1 x C");
  // xhat and 1/std are cached for the backward closure.
  Tensor xhat(xv.rows, C);
  std::vector<double> inv_std(xv.rows);
  for (std::size_t i = 0; i < xv.rows; ++i) {
    double mean = 0.0;
    for (std::size_t j = 0; j < C; ++j) mean += xv.at(i, j);
    mean /= static_cast<double>(C);
    double var = 0.0;
    for (std::size_t j = 0; j < C; ++j) {
      const double d = xv.at(i, j) - mean;
      var += d * d;
    }
    var /= static_cast<double>(C);
    inv_std[i] = 1.0 / std::sqrt(var + kLayerNormEps);
    for (std::size_t j = 0; j < C; ++j)
      xhat.at(i, j) = (xv.at(i, j) - mean) * inv_std[i];
  }
  Tensor out(xv.rows, C);
  const Tensor& gv = val(gain);
  const Tensor& bv = val(bias);
  for (std::size_t i = 0; i < xv.rows; ++i)
    for (std::size_t j = 0; j < C; ++j)
      out.at(i, j) = xhat.at(i, j) * gv.at(0, j) + bv.at(0, j);
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, x, gain, bias, xhat = std::move(xhat),
                   inv_std = std::move(inv_std)](Tape& t) {
    const Tensor& g = t.grad(id);
    const std::size_t C = g.cols;
    const double invC = 1.0 / static_cast<double>(C);
    const Tensor& gainv = t.val(gain);
    Tensor& ggain = t.grad_mut(gain);
    Tensor& gbias = t.grad_mut(bias);
    Tensor& gx = t.grad_mut(x);
    for (std::size_t i = 0; i < g.rows; ++i) {
      double sum_dxhat = 0.0, sum_dxhat_xhat = 0.0;
      for (std::size_t j = 0; j < C; ++j) {
        const double gij = g.at(i, j);
        ggain.at(0, j) += gij * xhat.at(i, j);
        gbias.at(0, j) += gij;
        const double dxhat = gij * gainv.at(0, j);
        sum_dxhat += dxhat;
        sum_dxhat_xhat += dxhat * xhat.at(i, j);
      }
      for (std::size_t j = 0; j < C; ++j) {
        const double dxhat = g.at(i, j) * gainv.at(0, j);
        gx.at(i, j) += inv_std[i] * (dxhat - invC * sum_dxhat -
                                     xhat.at(i, j) * invC * sum_dxhat_xhat);
      }
    }
  };
  return id;
}

Tape::NodeId Tape::softmax_rows(NodeId a) {
  const Tensor& av = val(a);
  Tensor out(av.rows, av.cols);
  for (std::size_t i = 0; i < av.rows; ++i) {
    double mx = -1e300;
    for (std::size_t j = 0; j < av.cols; ++j)
      if (av.at(i, j) > mx) mx = av.at(i, j);
    double z = 0.0;
    for (std::size_t j = 0; j < av.cols; ++j) {
      out.at(i, j) = std::exp(av.at(i, j) - mx);
      z += out.at(i, j);
    }
    const double inv_z = 1.0 / z;
    for (std::size_t j = 0; j < av.cols; ++j) out.at(i, j) *= inv_z;
  }
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a](Tape& t) {
    const Tensor& g = t.grad(id);
    const Tensor& y = t.val(id);
    Tensor& ga = t.grad_mut(a);
    for (std::size_t i = 0; i < g.rows; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < g.cols; ++j) dot += g.at(i, j) * y.at(i, j);
      for (std::size_t j = 0; j < g.cols; ++j)
        ga.at(i, j) += y.at(i, j) * (g.at(i, j) - dot);
    }
  };
  return id;
}

Tape::NodeId Tape::causal_mask(NodeId a) {
  Tensor out = val(a);
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t j = i + 1; j < out.cols; ++j) out.at(i, j) += kMaskValue;
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a](Tape& t) {
    add_inplace(t.grad_mut(a), t.grad(id));
  };
  return id;
}

Tape::NodeId Tape::dropout(NodeId a) {
  if (!training_ || dropout_rate_ == 0.0) return a;
  if (rng_ == nullptr) throw UsageError("dropout needs an RNG in training mode");
  const Tensor& av = val(a);
  const double keep = 1.0 - dropout_rate_;
  const double inv_keep = 1.0 / keep;
  Tensor mask(av.rows, av.cols);
  for (double& m : mask.v) m = rng_->real01() < keep ? inv_keep : 0.0;
  Tensor out = av;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] *= mask.v[i];
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a, mask = std::move(mask)](Tape& t) {
    const Tensor& g = t.grad(id);
    Tensor& ga = t.grad_mut(a);
    for (std::size_t i = 0; i < g.v.size(); ++i) ga.v[i] += g.v[i] * mask.v[i];
  };
  return id;
}

Tape::NodeId Tape::dwconv3(NodeId x, NodeId w, NodeId b) {
  const Tensor& xv = val(x);
  const Tensor& wv = val(w);
  const Tensor& bv = val(b);
  const std::size_t T = xv.rows, C = xv.cols;
  if (wv.rows != 3 || wv.cols != C || bv.rows != 1 || bv.cols != C)
    throw LayoutError("dwconv3 wants w: 3 x C and b: 1 x C");
  Tensor out(T, C);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t c = 0; c < C; ++c) {
      double acc = bv.at(0, c);
      for (std::size_t d = 0; d < 3; ++d) {
        const long src = static_cast<long>(t) + static_cast<long>(d) - 1;
        if (src < 0 || src >= static_cast<long>(T)) continue;
        acc += xv.at(static_cast<std::size_t>(src), c) * wv.at(d, c);
      }
      out.at(t, c) = acc;
    }
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, x, w, b](Tape& t) {
    const Tensor& g = t.grad(id);
    const Tensor& xv = t.val(x);
    const Tensor& wv = t.val(w);
    Tensor& gx = t.grad_mut(x);
    Tensor& gw = t.grad_mut(w);
    Tensor& gb = t.grad_mut(b);
    const std::size_t T = g.rows, C = g.cols;
    for (std::size_t tt = 0; tt < T; ++tt)
      for (std::size_t c = 0; c < C; ++c) {
        const double gt = g.at(tt, c);
        gb.at(0, c) += gt;
        for (std::size_t d = 0; d < 3; ++d) {
          const long src = static_cast<long>(tt) + static_cast<long>(d) - 1;
          if (src < 0 || src >= static_cast<long>(T)) continue;
          gx.at(static_cast<std::size_t>(src), c) += gt * wv.at(d, c);
          gw.at(d, c) += gt * xv.at(static_cast<std::size_t>(src), c);
        }
      }
  };
  return id;
}

Tape::NodeId Tape::embed(const std::vector<int>& ids, NodeId table) {
  const Tensor& tv = val(table);
  Tensor out(ids.size(), tv.cols);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<std::size_t>(ids[i]) >= tv.rows)
      throw LayoutError("embed id out of range");
    for (std::size_t j = 0; j < tv.cols; ++j)
      out.at(i, j) = tv.at(static_cast<std::size_t>(ids[i]), j);
  }
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, ids, table](Tape& t) {
    const Tensor& g = t.grad(id);
    Tensor& gt = t.grad_mut(table);
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < g.cols; ++j)
        gt.at(static_cast<std::size_t>(ids[i]), j) += g.at(i, j);
  };
  return id;
}

Tape::NodeId Tape::frame_stack(NodeId x, std::size_t k) {
  if (k == 0) throw DomainError("frame_stack factor must be >= 1");
  const Tensor& xv = val(x);
  const std::size_t T = xv.rows, C = xv.cols;
  const std::size_t Tp = (T + k - 1) / k;
  Tensor out(Tp, k * C);
  for (std::size_t tp = 0; tp < Tp; ++tp)
    for (std::size_t d = 0; d < k; ++d) {
      const std::size_t src = tp * k + d;
      if (src >= T) break;
      for (std::size_t c = 0; c < C; ++c)
        out.at(tp, d * C + c) = xv.at(src, c);
    }
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, x, k, T, C](Tape& t) {
    const Tensor& g = t.grad(id);
    Tensor& gx = t.grad_mut(x);
    for (std::size_t tp = 0; tp < g.rows; ++tp)
      for (std::size_t d = 0; d < k; ++d) {
        const std::size_t src = tp * k + d;
        if (src >= T) break;
        for (std::size_t c = 0; c < C; ++c)
          gx.at(src, c) += g.at(tp, d * C + c);
      }
  };
  return id;
}

Tape::NodeId Tape::col_slice(NodeId a, std::size_t c0, std::size_t c1) {
  const Tensor& av = val(a);
  if (c0 >= c1 || c1 > av.cols) throw LayoutError("col_slice out of range");
  Tensor out(av.rows, c1 - c0);
  for (std::size_t i = 0; i < av.rows; ++i)
    for (std::size_t j = c0; j < c1; ++j) out.at(i, j - c0) = av.at(i, j);
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, a, c0](Tape& t) {
    const Tensor& g = t.grad(id);
    Tensor& ga = t.grad_mut(a);
    for (std::size_t i = 0; i < g.rows; ++i)
      for (std::size_t j = 0; j < g.cols; ++j) ga.at(i, c0 + j) += g.at(i, j);
  };
  return id;
}

Tape::NodeId Tape::col_concat(const std::vector<NodeId>& parts) {
  if (parts.empty()) throw LayoutError("col_concat of nothing");
  const std::size_t rows = val(parts[0]).rows;
  std::size_t cols = 0;
  for (NodeId p : parts) {
    if (val(p).rows != rows) throw LayoutError("col_concat row mismatch");
    cols += val(p).cols;
  }
  Tensor out(rows, cols);
  std::size_t off = 0;
  for (NodeId p : parts) {
    const Tensor& pv = val(p);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < pv.cols; ++j)
        out.at(i, off + j) = pv.at(i, j);
    off += pv.cols;
  }
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, parts](Tape& t) {
    const Tensor& g = t.grad(id);
    std::size_t off = 0;
    for (NodeId p : parts) {
      Tensor& gp = t.grad_mut(p);
      for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < gp.cols; ++j)
          gp.at(i, j) += g.at(i, off + j);
      off += gp.cols;
    }
  };
  return id;
}

Tape::NodeId Tape::scalar_chain(NodeId input, double value,
                                Tensor dvalue_dinput) {
  if (!dvalue_dinput.same_shape(val(input)))
    throw LayoutError("scalar_chain jacobian shape mismatch");
  Tensor out(1, 1);
  out.at(0, 0) = value;
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, input, j = std::move(dvalue_dinput)](Tape& t) {
    axpy_inplace(t.grad_mut(input), t.grad(id).at(0, 0), j);
  };
  return id;
}

Tape::NodeId Tape::weighted_sum(const std::vector<NodeId>& scalars,
                                const std::vector<double>& coeffs) {
  if (scalars.size() != coeffs.size())
    throw LayoutError("weighted_sum length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    const Tensor& s = val(scalars[i]);
    if (s.rows != 1 || s.cols != 1)
      throw LayoutError("weighted_sum wants 1 x 1 inputs");
    acc += coeffs[i] * s.at(0, 0);
  }
  Tensor out(1, 1);
  out.at(0, 0) = acc;
  NodeId id = push(std::move(out), {});
  nodes_[id].bw = [id, scalars, coeffs](Tape& t) {
    const double g = t.grad(id).at(0, 0);
    for (std::size_t i = 0; i < scalars.size(); ++i)
      t.grad_mut(scalars[i]).at(0, 0) += coeffs[i] * g;
  };
  return id;
}

void Tape::backward(NodeId loss) {
  const Tensor& lv = val(loss);
  if (lv.rows != 1 || lv.cols != 1)
    throw LayoutError("backward seed must be a 1 x 1 scalar");
  grad_mut(loss).at(0, 0) = 1.0;
  for (NodeId id = loss; id >= 0; --id)
    if (nodes_[id].bw) nodes_[id].bw(*this);
}

}  // namespace tinyst
