// scspeech/autodiff.cc

// Copyright 2026  scspeech authors

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

#include "scspeech/autodiff.h"

#include <algorithm>
#include <cmath>

namespace scspeech {

NodePtr make_param(Tensor value) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  return node;
}

NodePtr make_const(Tensor value) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  return node;
}

NodePtr Tape::make(Tensor value, std::vector<NodePtr> inputs,
                   std::function<void(Node &)> backward_fn) {
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->inputs = std::move(inputs);
  node->backward_fn = std::move(backward_fn);
  for (const auto &in : node->inputs) {
    if (in->requires_grad) {
      node->requires_grad = true;
      break;
    }
  }
  order_.push_back(node);
  return node;
}

void Tape::backward(const NodePtr &root) {
  SC_CHECK(root->value.size() == 1, "backward() root must be a scalar");
  root->ensure_grad();
  root->grad.data[0] = 1.0;
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    Node &node = **it;
    if (!node.requires_grad || !node.has_grad() || !node.backward_fn) continue;
    node.backward_fn(node);
  }
}

namespace {

inline int64_t reflect_idx(int64_t p, int64_t len) {
  if (len == 1) return 0;
  while (p < 0 || p >= len) {
    if (p < 0) p = -p;
    if (p >= len) p = 2 * len - 2 - p;
  }
  return p;
}

NodePtr unary_map(Tape &tape, NodePtr x, real (*f)(real),
                  real (*df)(real, real)) {
  Tensor out(x->value.shape);
  for (int64_t i = 0; i < out.size(); ++i) out.data[i] = f(x->value.data[i]);
  return tape.make(std::move(out), {x}, [f, df](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    for (int64_t i = 0; i < n.value.size(); ++i) {
      x->grad.data[i] += n.grad.data[i] * df(x->value.data[i],
                                             n.value.data[i]);
    }
  });
}

}  // namespace

NodePtr pad1d(Tape &tape, NodePtr x, int left, int right, PadMode mode) {
  SC_CHECK(x->value.rank() == 2, "pad1d expects [C][T]");
  SC_CHECK(left >= 0 && right >= 0, "negative padding");
  const int C = x->value.dim(0), T = x->value.dim(1);
  const int out_t = T + left + right;
  Tensor out({C, out_t});
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < out_t; ++t) {
      const int64_t src = t - left;
      if (mode == PadMode::kReflect) {
        out.at2(c, t) = x->value.at2(c, static_cast<int>(reflect_idx(src, T)));
      } else {
        out.at2(c, t) = (src >= 0 && src < T) ? x->value.at2(c, src) : 0.0;
      }
    }
  }
  return tape.make(std::move(out), {x}, [left, mode](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    const int C = x->value.dim(0), T = x->value.dim(1);
    const int out_t = n.value.dim(1);
    for (int c = 0; c < C; ++c) {
      for (int t = 0; t < out_t; ++t) {
        const int64_t src = t - left;
        if (mode == PadMode::kReflect) {
          x->grad.at2(c, static_cast<int>(reflect_idx(src, T))) +=
              n.grad.at2(c, t);
        } else if (src >= 0 && src < T) {
          x->grad.at2(c, src) += n.grad.at2(c, t);
        }
      }
    }
  });
}

NodePtr conv1d(Tape &tape, NodePtr x, NodePtr w, NodePtr b, int stride,
               int dilation) {
  SC_CHECK(x->value.rank() == 2 && w->value.rank() == 3,
           "conv1d expects x [C][T], w [O][I][K]");
  const int in_ch = x->value.dim(0), T = x->value.dim(1);
  const int out_ch = w->value.dim(0), k = w->value.dim(2);
  SC_CHECK(w->value.dim(1) == in_ch, "conv1d channel mismatch");
  SC_CHECK(b->value.size() == out_ch, "conv1d bias mismatch");
  const int span = (k - 1) * dilation + 1;
  SC_CHECK(T >= span, "conv1d input shorter than kernel span");
  const int out_t = (T - span) / stride + 1;

  Tensor out({out_ch, out_t});
  const real *xd = x->value.data.data();
  const real *wd = w->value.data.data();
  for (int o = 0; o < out_ch; ++o) {
    const real bias = b->value.data[o];
    for (int t = 0; t < out_t; ++t) {
      const int base = t * stride;
      real acc = bias;
      for (int i = 0; i < in_ch; ++i) {
        const real *xr = xd + static_cast<size_t>(i) * T + base;
        const real *wr = wd + (static_cast<size_t>(o) * in_ch + i) * k;
        for (int kk = 0; kk < k; ++kk) acc += xr[kk * dilation] * wr[kk];
      }
      out.at2(o, t) = acc;
    }
  }
  return tape.make(std::move(out), {x, w, b},
                   [stride, dilation](Node &n) {
    NodePtr x = n.inputs[0], w = n.inputs[1], b = n.inputs[2];
    const int in_ch = x->value.dim(0), T = x->value.dim(1);
    const int out_ch = w->value.dim(0), k = w->value.dim(2);
    const int out_t = n.value.dim(1);
    const real *gd = n.grad.data.data();
    if (b->requires_grad) {
      b->ensure_grad();
      for (int o = 0; o < out_ch; ++o) {
        real acc = 0.0;
        for (int t = 0; t < out_t; ++t) {
          acc += gd[static_cast<size_t>(o) * out_t + t];
        }
        b->grad.data[o] += acc;
      }
    }
    if (w->requires_grad) {
      w->ensure_grad();
      const real *xd = x->value.data.data();
      for (int o = 0; o < out_ch; ++o) {
        for (int i = 0; i < in_ch; ++i) {
          real *wg = w->grad.data.data() +
                     (static_cast<size_t>(o) * in_ch + i) * k;
          const real *gr = gd + static_cast<size_t>(o) * out_t;
          const real *xr = xd + static_cast<size_t>(i) * T;
          for (int kk = 0; kk < k; ++kk) {
            real acc = 0.0;
            const int off = kk * dilation;
            for (int t = 0; t < out_t; ++t) acc += gr[t] * xr[t * stride + off];
            wg[kk] += acc;
          }
        }
      }
    }
    if (x->requires_grad) {
      x->ensure_grad();
      const real *wd = w->value.data.data();
      for (int o = 0; o < out_ch; ++o) {
        const real *gr = gd + static_cast<size_t>(o) * out_t;
        for (int i = 0; i < in_ch; ++i) {
          real *xg = x->grad.data.data() + static_cast<size_t>(i) * T;
          const real *wr = wd + (static_cast<size_t>(o) * in_ch + i) * k;
          for (int t = 0; t < out_t; ++t) {
            const real g = gr[t];
            if (g == 0.0) continue;
            const int base = t * stride;
            for (int kk = 0; kk < k; ++kk) xg[base + kk * dilation] += g * wr[kk];
          }
        }
      }
    }
  });
}

NodePtr conv_transpose1d(Tape &tape, NodePtr x, NodePtr w, NodePtr b,
                         int stride, int crop_left, int crop_right) {
  SC_CHECK(x->value.rank() == 2 && w->value.rank() == 3,
           "conv_transpose1d expects x [C][T], w [I][O][K]");
  const int in_ch = x->value.dim(0), T = x->value.dim(1);
  const int out_ch = w->value.dim(1), k = w->value.dim(2);
  SC_CHECK(w->value.dim(0) == in_ch, "conv_transpose1d channel mismatch");
  SC_CHECK(b->value.size() == out_ch, "conv_transpose1d bias mismatch");
  const int full_t = (T - 1) * stride + k;
  const int out_t = full_t - crop_left - crop_right;
  SC_CHECK(out_t > 0, "conv_transpose1d output collapsed");

  Tensor out({out_ch, out_t});
  for (int o = 0; o < out_ch; ++o) {
    const real bias = b->value.data[o];
    for (int t = 0; t < out_t; ++t) out.at2(o, t) = bias;
  }
  const real *xd = x->value.data.data();
  const real *wd = w->value.data.data();
  for (int i = 0; i < in_ch; ++i) {
    const real *xr = xd + static_cast<size_t>(i) * T;
    for (int o = 0; o < out_ch; ++o) {
      const real *wr = wd + (static_cast<size_t>(i) * out_ch + o) * k;
      real *yr = out.data.data() + static_cast<size_t>(o) * out_t;
      for (int t = 0; t < T; ++t) {
        const real xv = xr[t];
        if (xv == 0.0) continue;
        const int base = t * stride - crop_left;
        for (int kk = 0; kk < k; ++kk) {
          const int u = base + kk;
          if (u >= 0 && u < out_t) yr[u] += xv * wr[kk];
        }
      }
    }
  }
  return tape.make(std::move(out), {x, w, b},
                   [stride, crop_left](Node &n) {
    NodePtr x = n.inputs[0], w = n.inputs[1], b = n.inputs[2];
    const int in_ch = x->value.dim(0), T = x->value.dim(1);
    const int out_ch = w->value.dim(1), k = w->value.dim(2);
    const int out_t = n.value.dim(1);
    const real *gd = n.grad.data.data();
    if (b->requires_grad) {
      b->ensure_grad();
      for (int o = 0; o < out_ch; ++o) {
        real acc = 0.0;
        for (int t = 0; t < out_t; ++t) {
          acc += gd[static_cast<size_t>(o) * out_t + t];
        }
        b->grad.data[o] += acc;
      }
    }
    if (w->requires_grad) {
      w->ensure_grad();
      const real *xd = x->value.data.data();
      for (int i = 0; i < in_ch; ++i) {
        const real *xr = xd + static_cast<size_t>(i) * T;
        for (int o = 0; o < out_ch; ++o) {
          real *wg = w->grad.data.data() +
                     (static_cast<size_t>(i) * out_ch + o) * k;
          const real *gr = gd + static_cast<size_t>(o) * out_t;
          for (int t = 0; t < T; ++t) {
            const real xv = xr[t];
            if (xv == 0.0) continue;
            const int base = t * stride - crop_left;
            for (int kk = 0; kk < k; ++kk) {
              const int u = base + kk;
              if (u >= 0 && u < out_t) wg[kk] += xv * gr[u];
            }
          }
        }
      }
    }
    if (x->requires_grad) {
      x->ensure_grad();
      const real *wd = w->value.data.data();
      for (int i = 0; i < in_ch; ++i) {
        real *xg = x->grad.data.data() + static_cast<size_t>(i) * T;
        for (int o = 0; o < out_ch; ++o) {
          const real *wr = wd + (static_cast<size_t>(i) * out_ch + o) * k;
          const real *gr = gd + static_cast<size_t>(o) * out_t;
          for (int t = 0; t < T; ++t) {
            const int base = t * stride - crop_left;
            real acc = 0.0;
            for (int kk = 0; kk < k; ++kk) {
              const int u = base + kk;
              if (u >= 0 && u < out_t) acc += wr[kk] * gr[u];
            }
            xg[t] += acc;
          }
        }
      }
    }
  });
}

NodePtr leaky_relu(Tape &tape, NodePtr x, real slope) {
  Tensor out(x->value.shape);
  for (int64_t i = 0; i < out.size(); ++i) {
    const real v = x->value.data[i];
    out.data[i] = v >= 0.0 ? v : slope * v;
  }
  return tape.make(std::move(out), {x}, [slope](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    for (int64_t i = 0; i < n.value.size(); ++i) {
      x->grad.data[i] +=
          n.grad.data[i] * (x->value.data[i] >= 0.0 ? 1.0 : slope);
    }
  });
}

NodePtr relu(Tape &tape, NodePtr x) { return leaky_relu(tape, x, 0.0); }

NodePtr tanh_op(Tape &tape, NodePtr x) {
  return unary_map(
      tape, x, [](real v) { return std::tanh(v); },
      [](real, real y) { return 1.0 - y * y; });
}

NodePtr abs_op(Tape &tape, NodePtr x) {
  return unary_map(
      tape, x, [](real v) { return std::abs(v); },
      [](real v, real) { return v >= 0.0 ? 1.0 : -1.0; });
}

NodePtr add(Tape &tape, NodePtr a, NodePtr b) {
  SC_CHECK(a->value.same_shape(b->value), "add shape mismatch");
  Tensor out(a->value.shape);
  for (int64_t i = 0; i < out.size(); ++i) {
    out.data[i] = a->value.data[i] + b->value.data[i];
  }
  return tape.make(std::move(out), {a, b}, [](Node &n) {
    for (int which = 0; which < 2; ++which) {
      NodePtr in = n.inputs[which];
      if (!in->requires_grad) continue;
      in->ensure_grad();
      for (int64_t i = 0; i < n.value.size(); ++i) {
        in->grad.data[i] += n.grad.data[i];
      }
    }
  });
}

NodePtr sub(Tape &tape, NodePtr a, NodePtr b) {
  SC_CHECK(a->value.same_shape(b->value), "sub shape mismatch");
  Tensor out(a->value.shape);
  for (int64_t i = 0; i < out.size(); ++i) {
    out.data[i] = a->value.data[i] - b->value.data[i];
  }
  return tape.make(std::move(out), {a, b}, [](Node &n) {
    NodePtr a = n.inputs[0], b = n.inputs[1];
    if (a->requires_grad) {
      a->ensure_grad();
      for (int64_t i = 0; i < n.value.size(); ++i) {
        a->grad.data[i] += n.grad.data[i];
      }
    }
    if (b->requires_grad) {
      b->ensure_grad();
      for (int64_t i = 0; i < n.value.size(); ++i) {
        b->grad.data[i] -= n.grad.data[i];
      }
    }
  });
}

NodePtr affine(Tape &tape, NodePtr x, real a, real b) {
  Tensor out(x->value.shape);
  for (int64_t i = 0; i < out.size(); ++i) {
    out.data[i] = a * x->value.data[i] + b;
  }
  return tape.make(std::move(out), {x}, [a](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    for (int64_t i = 0; i < n.value.size(); ++i) {
      x->grad.data[i] += a * n.grad.data[i];
    }
  });
}

NodePtr mean_all(Tape &tape, NodePtr x) {
  real acc = 0.0;
  for (real v : x->value.data) acc += v;
  const real inv = 1.0 / static_cast<real>(x->value.size());
  return tape.make(Tensor::scalar(acc * inv), {x}, [inv](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    const real g = n.grad.data[0] * inv;
    for (int64_t i = 0; i < x->value.size(); ++i) x->grad.data[i] += g;
  });
}

NodePtr add_scalars(Tape &tape, const std::vector<NodePtr> &terms) {
  SC_CHECK(!terms.empty(), "add_scalars needs at least one term");
  real acc = 0.0;
  for (const auto &t : terms) acc += t->value.item();
  return tape.make(Tensor::scalar(acc), terms, [](Node &n) {
    for (auto &in : n.inputs) {
      if (!in->requires_grad) continue;
      in->ensure_grad();
      in->grad.data[0] += n.grad.data[0];
    }
  });
}

NodePtr crop_time(Tape &tape, NodePtr x, int start, int length) {
  SC_CHECK(x->value.rank() == 2, "crop_time expects [C][T]");
  const int C = x->value.dim(0), T = x->value.dim(1);
  SC_CHECK(start >= 0 && length > 0 && start + length <= T,
           "crop_time out of range");
  Tensor out({C, length});
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < length; ++t) out.at2(c, t) = x->value.at2(c, start + t);
  }
  return tape.make(std::move(out), {x}, [start](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    const int C = n.value.dim(0), L = n.value.dim(1);
    for (int c = 0; c < C; ++c) {
      for (int t = 0; t < L; ++t) x->grad.at2(c, start + t) += n.grad.at2(c, t);
    }
  });
}

NodePtr avg_pool_half(Tape &tape, NodePtr x) {
  SC_CHECK(x->value.rank() == 2, "avg_pool_half expects [C][T]");
  const int C = x->value.dim(0), T = x->value.dim(1);
  const int out_t = (T + 1) / 2;
  Tensor out({C, out_t});
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < out_t; ++t) {
      const int lo = std::max(0, 2 * t - 1);
      const int hi = std::min(T, 2 * t + 3);
      real acc = 0.0;
      for (int u = lo; u < hi; ++u) acc += x->value.at2(c, u);
      out.at2(c, t) = acc / (hi - lo);
    }
  }
  return tape.make(std::move(out), {x}, [](Node &n) {
    NodePtr x = n.inputs[0];
    if (!x->requires_grad) return;
    x->ensure_grad();
    const int C = x->value.dim(0), T = x->value.dim(1);
    const int out_t = n.value.dim(1);
    for (int c = 0; c < C; ++c) {
      for (int t = 0; t < out_t; ++t) {
        const int lo = std::max(0, 2 * t - 1);
        const int hi = std::min(T, 2 * t + 3);
        const real g = n.grad.at2(c, t) / (hi - lo);
        for (int u = lo; u < hi; ++u) x->grad.at2(c, u) += g;
      }
    }
  });
}

NodePtr weight_norm(Tape &tape, NodePtr v, NodePtr g) {
  SC_CHECK(v->value.rank() == 3, "weight_norm expects rank-3 weights");
  const int lead = v->value.dim(0);
  const int64_t tail = v->value.size() / lead;
  SC_CHECK(g->value.size() == lead, "weight_norm gain size mismatch");

  std::vector<real> norms(lead, 0.0);
  for (int o = 0; o < lead; ++o) {
    const real *vr = v->value.data.data() + o * tail;
    real acc = 0.0;
    for (int64_t i = 0; i < tail; ++i) acc += vr[i] * vr[i];
    norms[o] = std::sqrt(std::max<real>(acc, 1e-24));
  }
  Tensor out(v->value.shape);
  for (int o = 0; o < lead; ++o) {
    const real s = g->value.data[o] / norms[o];
    const real *vr = v->value.data.data() + o * tail;
    real *wr = out.data.data() + o * tail;
    for (int64_t i = 0; i < tail; ++i) wr[i] = s * vr[i];
  }
  return tape.make(std::move(out), {v, g}, [norms](Node &n) {
    NodePtr v = n.inputs[0], g = n.inputs[1];
    const int lead = v->value.dim(0);
    const int64_t tail = v->value.size() / lead;
    for (int o = 0; o < lead; ++o) {
      const real *vr = v->value.data.data() + o * tail;
      const real *gr = n.grad.data.data() + o * tail;
      const real norm = norms[o];
      real dot = 0.0;  // <dL/dw, v>
      for (int64_t i = 0; i < tail; ++i) dot += gr[i] * vr[i];
      if (g->requires_grad) {
        g->ensure_grad();
        g->grad.data[o] += dot / norm;
      }
      if (v->requires_grad) {
        v->ensure_grad();
        const real gain = g->value.data[o];
        real *vg = v->grad.data.data() + o * tail;
        const real a = gain / norm;
        const real c = gain * dot / (norm * norm * norm);
        for (int64_t i = 0; i < tail; ++i) vg[i] += a * gr[i] - c * vr[i];
      }
    }
  });
}

NodePtr stop_grad(Tape &tape, NodePtr x) {
  return tape.make(x->value, {}, nullptr);
}

NodePtr mel_op(Tape &tape, NodePtr wav, const MelAnalyzer &analyzer) {
  SC_CHECK(wav->value.rank() == 2 && wav->value.dim(0) == 1,
           "mel_op expects a [1][T] waveform");
  MelSpectrogram mel = analyzer.analyze(wav->value.data);
  Tensor out({mel.n_mels, mel.n_frames}, mel.values);
  const int n_mels = mel.n_mels, n_frames = mel.n_frames;
  return tape.make(std::move(out), {wav},
                   [&analyzer, n_mels, n_frames](Node &n) {
    NodePtr wav = n.inputs[0];
    if (!wav->requires_grad) return;
    wav->ensure_grad();
    MelSpectrogram mel;
    mel.values = n.value.data;
    mel.n_mels = n_mels;
    mel.n_frames = n_frames;
    mel.config = analyzer.config();
    std::vector<real> dx =
        analyzer.adjoint(wav->value.data, mel, n.grad.data);
    for (size_t i = 0; i < dx.size(); ++i) wav->grad.data[i] += dx[i];
  });
}

NodePtr mean_abs_diff(Tape &tape, NodePtr a, NodePtr b) {
  return mean_all(tape, abs_op(tape, sub(tape, a, b)));
}

}  // namespace scspeech
