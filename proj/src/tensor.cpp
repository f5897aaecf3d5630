#include "mecrl/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace mecrl::ad {

namespace {

std::string shape_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw std::invalid_argument(std::string(op) + ": incompatible shapes " + shape_str(a.shape()) +
                              " and " + shape_str(b.shape()));
}

NodePtr make_node(std::vector<int> shape, std::vector<double> value,
                  std::vector<NodePtr> parents) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->value = std::move(value);
  n->parents = std::move(parents);
  for (const auto& p : n->parents)
    if (p->requires_grad) n->requires_grad = true;
  if (n->requires_grad) n->grad.assign(n->value.size(), 0.0);
  return n;
}

void accumulate(const NodePtr& p, int i, double g) {
  if (p->requires_grad) p->grad[i] += g;
}

// Rows/cols with 1-d tensors treated as a single row.
int rows_of(const Node& n) { return n.shape.size() == 1 ? 1 : n.shape[0]; }
int cols_of(const Node& n) { return n.shape.size() == 1 ? n.shape[0] : n.shape[1]; }

Tensor unary(const Tensor& a, std::vector<double> value,
             std::function<void(const Node&, Node&)> back) {
  auto node = make_node(a.shape(), std::move(value), {a.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node();
    node->backprop = [pa, back](const Node& self) { back(self, *pa); };
  }
  return Tensor(node);
}

}  // namespace

Tensor Tensor::constant(std::vector<int> shape, std::vector<double> values) {
  auto n = std::make_shared<Node>();
  n->shape = std::move(shape);
  n->value = std::move(values);
  if (n->numel() != static_cast<int>(n->value.size()))
    throw std::invalid_argument("tensor value length does not match shape " +
                                shape_str(n->shape));
  return Tensor(n);
}

Tensor Tensor::zeros(std::vector<int> shape) {
  int n = 1;
  for (int d : shape) n *= d;
  return constant(std::move(shape), std::vector<double>(n, 0.0));
}

Tensor Tensor::scalar(double v) { return constant({1}, {v}); }

Tensor Tensor::param(std::vector<int> shape, std::vector<double> values) {
  Tensor t = constant(std::move(shape), std::move(values));
  t.node()->requires_grad = true;
  t.node()->grad.assign(t.node()->value.size(), 0.0);
  return t;
}

int Tensor::rows() const { return rows_of(*node_); }
int Tensor::cols() const { return cols_of(*node_); }

const std::vector<double>& Tensor::grad() const {
  if (!node_->requires_grad) throw std::logic_error("tensor does not track gradients");
  return node_->grad;
}

std::vector<double>& Tensor::mutable_grad() {
  if (!node_->requires_grad) throw std::logic_error("tensor does not track gradients");
  return node_->grad;
}

void Tensor::zero_grad() {
  if (node_->requires_grad) std::fill(node_->grad.begin(), node_->grad.end(), 0.0);
}

double Tensor::item() const {
  if (numel() != 1) throw std::invalid_argument("item() requires a single-element tensor");
  return node_->value[0];
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  const int n = a.rows(), k = a.cols(), k2 = b.rows(), m = b.cols();
  if (k != k2) shape_error("matmul", a, b);
  std::vector<double> out(static_cast<size_t>(n) * m, 0.0);
  const auto& av = a.values();
  const auto& bv = b.values();
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < k; ++p) {
      const double x = av[i * k + p];
      if (x == 0.0) continue;
      for (int j = 0; j < m; ++j) out[i * m + j] += x * bv[p * m + j];
    }
  auto node = make_node({n, m}, std::move(out), {a.node(), b.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node(), pb = b.node();
    node->backprop = [pa, pb, n, k, m](const Node& self) {
      // dA += dC B^T ; dB += A^T dC
      if (pa->requires_grad)
        for (int i = 0; i < n; ++i)
          for (int p = 0; p < k; ++p) {
            double g = 0.0;
            for (int j = 0; j < m; ++j) g += self.grad[i * m + j] * pb->value[p * m + j];
            pa->grad[i * k + p] += g;
          }
      if (pb->requires_grad)
        for (int p = 0; p < k; ++p)
          for (int j = 0; j < m; ++j) {
            double g = 0.0;
            for (int i = 0; i < n; ++i) g += pa->value[i * k + p] * self.grad[i * m + j];
            pb->grad[p * m + j] += g;
          }
    };
  }
  return Tensor(node);
}

Tensor transpose(const Tensor& a) {
  const int n = a.rows(), m = a.cols();
  std::vector<double> out(static_cast<size_t>(n) * m);
  const auto& av = a.values();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[j * n + i] = av[i * m + j];
  auto node = make_node({m, n}, std::move(out), {a.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node();
    node->backprop = [pa, n, m](const Node& self) {
      if (!pa->requires_grad) return;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) pa->grad[i * m + j] += self.grad[j * n + i];
    };
  }
  return Tensor(node);
}

Tensor add(const Tensor& a, const Tensor& b) {
  const bool bias_row = (a.shape() != b.shape()) && b.rows() == 1 && b.cols() == a.cols() &&
                        a.shape().size() == 2;
  if (a.shape() != b.shape() && !bias_row) shape_error("add", a, b);
  const int n = a.rows(), m = a.cols();
  std::vector<double> out(a.values());
  const auto& bv = b.values();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[i * m + j] += bias_row ? bv[j] : bv[i * m + j];
  auto node = make_node(a.shape(), std::move(out), {a.node(), b.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node(), pb = b.node();
    node->backprop = [pa, pb, n, m, bias_row](const Node& self) {
      if (pa->requires_grad)
        for (size_t i = 0; i < self.grad.size(); ++i) pa->grad[i] += self.grad[i];
      if (pb->requires_grad) {
        if (bias_row) {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) pb->grad[j] += self.grad[i * m + j];
        } else {
          for (size_t i = 0; i < self.grad.size(); ++i) pb->grad[i] += self.grad[i];
        }
      }
    };
  }
  return Tensor(node);
}

Tensor sub(const Tensor& a, const Tensor& b) { return add(a, scale(b, -1.0)); }

Tensor mul(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_error("mul", a, b);
  std::vector<double> out(a.values());
  for (size_t i = 0; i < out.size(); ++i) out[i] *= b.values()[i];
  auto node = make_node(a.shape(), std::move(out), {a.node(), b.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node(), pb = b.node();
    node->backprop = [pa, pb](const Node& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        accumulate(pa, static_cast<int>(i), self.grad[i] * pb->value[i]);
        accumulate(pb, static_cast<int>(i), self.grad[i] * pa->value[i]);
      }
    };
  }
  return Tensor(node);
}

Tensor scale(const Tensor& a, double c) {
  std::vector<double> out(a.values());
  for (double& v : out) v *= c;
  return unary(a, std::move(out), [c](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) pa.grad[i] += c * self.grad[i];
  });
}

Tensor add_scalar(const Tensor& a, double c) {
  std::vector<double> out(a.values());
  for (double& v : out) v += c;
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) pa.grad[i] += self.grad[i];
  });
}

Tensor tanh(const Tensor& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v = std::tanh(v);
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i)
      pa.grad[i] += self.grad[i] * (1.0 - self.value[i] * self.value[i]);
  });
}

Tensor relu(const Tensor& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v = std::max(0.0, v);
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i)
      if (pa.value[i] > 0.0) pa.grad[i] += self.grad[i];
  });
}

Tensor sigmoid(const Tensor& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v = 1.0 / (1.0 + std::exp(-v));
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i)
      pa.grad[i] += self.grad[i] * self.value[i] * (1.0 - self.value[i]);
  });
}

Tensor exp(const Tensor& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v = std::exp(v);
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) pa.grad[i] += self.grad[i] * self.value[i];
  });
}

Tensor log(const Tensor& a) {
  std::vector<double> out(a.values());
  for (double& v : out) v = std::log(v);
  return unary(a, std::move(out), [](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) pa.grad[i] += self.grad[i] / pa.value[i];
  });
}

Tensor clamp(const Tensor& a, double lo, double hi) {
  std::vector<double> out(a.values());
  for (double& v : out) v = std::clamp(v, lo, hi);
  return unary(a, std::move(out), [lo, hi](const Node& self, Node& pa) {
    if (!pa.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i)
      if (pa.value[i] >= lo && pa.value[i] <= hi) pa.grad[i] += self.grad[i];
  });
}

Tensor min_elem(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_error("min_elem", a, b);
  std::vector<double> out(a.numel());
  for (int i = 0; i < a.numel(); ++i) out[i] = std::min(a.values()[i], b.values()[i]);
  auto node = make_node(a.shape(), std::move(out), {a.node(), b.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node(), pb = b.node();
    // Ties route the gradient to the first argument.
    node->backprop = [pa, pb](const Node& self) {
      for (size_t i = 0; i < self.grad.size(); ++i) {
        if (pa->value[i] <= pb->value[i])
          accumulate(pa, static_cast<int>(i), self.grad[i]);
        else
          accumulate(pb, static_cast<int>(i), self.grad[i]);
      }
    };
  }
  return Tensor(node);
}

Tensor mean(const Tensor& a) {
  const int n = a.numel();
  double s = 0.0;
  for (double v : a.values()) s += v;
  auto node = make_node({1}, {s / n}, {a.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node();
    node->backprop = [pa, n](const Node& self) {
      if (!pa->requires_grad) return;
      const double g = self.grad[0] / n;
      for (auto& pg : pa->grad) pg += g;
    };
  }
  return Tensor(node);
}

Tensor sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.values()) s += v;
  auto node = make_node({1}, {s}, {a.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node();
    node->backprop = [pa](const Node& self) {
      if (!pa->requires_grad) return;
      for (auto& pg : pa->grad) pg += self.grad[0];
    };
  }
  return Tensor(node);
}

Tensor softmax(const Tensor& a) {
  const int n = a.rows(), m = a.cols();
  std::vector<double> out(a.values());
  for (int i = 0; i < n; ++i) {
    double mx = out[i * m];
    for (int j = 1; j < m; ++j) mx = std::max(mx, out[i * m + j]);
    double z = 0.0;
    for (int j = 0; j < m; ++j) {
      out[i * m + j] = std::exp(out[i * m + j] - mx);
      z += out[i * m + j];
    }
    for (int j = 0; j < m; ++j) out[i * m + j] /= z;
  }
  auto node = make_node(a.shape(), std::move(out), {a.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node();
    node->backprop = [pa, n, m](const Node& self) {
      if (!pa->requires_grad) return;
      for (int i = 0; i < n; ++i) {
        double dot = 0.0;
        for (int j = 0; j < m; ++j) dot += self.grad[i * m + j] * self.value[i * m + j];
        for (int j = 0; j < m; ++j)
          pa->grad[i * m + j] += self.value[i * m + j] * (self.grad[i * m + j] - dot);
      }
    };
  }
  return Tensor(node);
}

Tensor mse(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) shape_error("mse", a, b);
  const int n = a.numel();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = a.values()[i] - b.values()[i];
    s += d * d;
  }
  auto node = make_node({1}, {s / n}, {a.node(), b.node()});
  if (node->requires_grad) {
    NodePtr pa = a.node(), pb = b.node();
    node->backprop = [pa, pb, n](const Node& self) {
      const double g = 2.0 * self.grad[0] / n;
      for (int i = 0; i < n; ++i) {
        const double d = pa->value[i] - pb->value[i];
        accumulate(pa, i, g * d);
        accumulate(pb, i, -g * d);
      }
    };
  }
  return Tensor(node);
}

Tensor concat_cols(const std::vector<Tensor>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat_cols: empty input");
  const int n = parts[0].rows();
  int m = 0;
  std::vector<NodePtr> parents;
  for (const auto& p : parts) {
    if (p.rows() != n) shape_error("concat_cols", parts[0], p);
    m += p.cols();
    parents.push_back(p.node());
  }
  std::vector<double> out(static_cast<size_t>(n) * m);
  int off = 0;
  for (const auto& p : parts) {
    const int pc = p.cols();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < pc; ++j) out[i * m + off + j] = p.values()[i * pc + j];
    off += pc;
  }
  auto node = make_node({n, m}, std::move(out), std::move(parents));
  if (node->requires_grad) {
    std::vector<NodePtr> ps = node->parents;
    node->backprop = [ps, n, m](const Node& self) {
      int off2 = 0;
      for (const auto& p : ps) {
        const int pc = cols_of(*p);
        if (p->requires_grad)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < pc; ++j) p->grad[i * pc + j] += self.grad[i * m + off2 + j];
        off2 += pc;
      }
    };
  }
  return Tensor(node);
}

Tensor stack_scalars(const std::vector<Tensor>& scalars) {
  if (scalars.empty()) throw std::invalid_argument("stack_scalars: empty input");
  std::vector<double> out;
  std::vector<NodePtr> parents;
  out.reserve(scalars.size());
  for (const auto& s : scalars) {
    if (s.numel() != 1) throw std::invalid_argument("stack_scalars: inputs must be scalars");
    out.push_back(s.values()[0]);
    parents.push_back(s.node());
  }
  const int n = static_cast<int>(scalars.size());
  auto node = make_node({n, 1}, std::move(out), std::move(parents));
  if (node->requires_grad) {
    std::vector<NodePtr> ps = node->parents;
    node->backprop = [ps](const Node& self) {
      for (size_t i = 0; i < ps.size(); ++i)
        if (ps[i]->requires_grad) ps[i]->grad[0] += self.grad[i];
    };
  }
  return Tensor(node);
}

Tensor scaled_dot_attention(const Tensor& q, const Tensor& k, const Tensor& v) {
  if (q.cols() != k.cols()) shape_error("scaled_dot_attention", q, k);
  if (k.rows() != v.rows()) shape_error("scaled_dot_attention", k, v);
  const double inv_sqrt_dk = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  Tensor scores = scale(matmul(q, transpose(k)), inv_sqrt_dk);
  return matmul(softmax(scores), v);
}

void backward(const Tensor& loss) {
  if (!loss.defined() || loss.numel() != 1)
    throw std::invalid_argument("backward requires a scalar loss");
  if (!loss.node()->requires_grad) return;

  // Iterative post-order DFS; parents visited in construction order.
  std::vector<Node*> order;
  std::unordered_set<Node*> seen;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(loss.node().get(), 0);
  seen.insert(loss.node().get());
  while (!stack.empty()) {
    auto& [node, idx] = stack.back();
    if (idx < node->parents.size()) {
      Node* parent = node->parents[idx++].get();
      if (parent->requires_grad && seen.insert(parent).second) stack.emplace_back(parent, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  loss.node()->grad[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if ((*it)->backprop) (*it)->backprop(**it);
}

double finite_diff_check(const std::function<Tensor(const std::vector<Tensor>&)>& f,
                         const std::vector<Tensor>& point, double h) {
  std::vector<Tensor> leaves = point;
  for (auto& t : leaves) t.zero_grad();
  Tensor loss = f(leaves);
  if (loss.numel() != 1) throw std::invalid_argument("finite_diff_check: f must be scalar-valued");
  backward(loss);

  double max_err = 0.0;
  for (auto& leaf : leaves) {
    for (int i = 0; i < leaf.numel(); ++i) {
      const double orig = leaf.values()[i];
      leaf.mutable_values()[i] = orig + h;
      const double up = f(leaves).item();
      leaf.mutable_values()[i] = orig - h;
      const double down = f(leaves).item();
      leaf.mutable_values()[i] = orig;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = leaf.grad()[i];
      const double err = std::abs(analytic - numeric) / (std::abs(numeric) + 1e-8);
      max_err = std::max(max_err, err);
    }
  }
  return max_err;
}

}  // namespace mecrl::ad
