#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace mecrl::ad {

// A node of the reverse-mode tape: forward value plus a closure that scatters
// the node's gradient into its parents. The graph is the tape; backward()
// replays it once in reverse topological order.
struct Node {
  std::vector<int> shape;
  std::vector<double> value;
  std::vector<double> grad;  // allocated iff requires_grad
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(const Node&)> backprop;  // null for leaves

  int numel() const {
    int n = 1;
    for (int d : shape) n *= d;
    return n;
  }
};

using NodePtr = std::shared_ptr<Node>;

// Value-semantics handle to a tape node. Leaves created with param() persist
// across graphs: ops capture them as parents, the optimizer mutates their
// values in place.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(NodePtr node) : node_(std::move(node)) {}

  static Tensor constant(std::vector<int> shape, std::vector<double> values);
  static Tensor zeros(std::vector<int> shape);
  static Tensor scalar(double v);
  static Tensor param(std::vector<int> shape, std::vector<double> values);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int>& shape() const { return node_->shape; }
  int numel() const { return node_->numel(); }
  int rows() const;
  int cols() const;
  bool requires_grad() const { return node_->requires_grad; }

  const std::vector<double>& values() const { return node_->value; }
  std::vector<double>& mutable_values() { return node_->value; }
  const std::vector<double>& grad() const;
  std::vector<double>& mutable_grad();
  void zero_grad();

  double item() const;  // single-element tensors only

  NodePtr node() const { return node_; }

 private:
  NodePtr node_;
};

// Primitives. 2-d shapes are (rows, cols); 1-d tensors act as a single row
// where a matrix is expected. Shape mismatches throw std::invalid_argument
// naming both shapes.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
Tensor add(const Tensor& a, const Tensor& b);  // same shape, or b a bias row
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);  // elementwise
Tensor scale(const Tensor& a, double c);
Tensor add_scalar(const Tensor& a, double c);
Tensor tanh(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor clamp(const Tensor& a, double lo, double hi);
Tensor min_elem(const Tensor& a, const Tensor& b);
Tensor mean(const Tensor& a);  // -> scalar
Tensor sum(const Tensor& a);   // -> scalar
Tensor softmax(const Tensor& a);  // along the last axis
Tensor mse(const Tensor& a, const Tensor& b);  // -> scalar
Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor stack_scalars(const std::vector<Tensor>& scalars);  // -> column vector

// softmax(Q K^T / sqrt(d_k)) V with Q:(n,d_k), K:(n,d_k), V:(n,d_v).
Tensor scaled_dot_attention(const Tensor& q, const Tensor& k, const Tensor& v);

// Reverse pass from a scalar loss; accumulates into the grads of every
// requires-grad node, visiting each node exactly once.
void backward(const Tensor& loss);

// Max over leaf coordinates of |analytic - numeric| / (|numeric| + 1e-8),
// with numeric gradients from central differences of step h.
double finite_diff_check(const std::function<Tensor(const std::vector<Tensor>&)>& f,
                         const std::vector<Tensor>& point, double h = 1e-5);

}  // namespace mecrl::ad
