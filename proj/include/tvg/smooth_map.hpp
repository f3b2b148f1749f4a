#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvg/rng.hpp"

namespace tvg {

/// Closed expression language for the maps fed to the sphere solver:
/// coordinate projections, constants, sums, products, sin/cos, and
/// fixed-weight affine combinations. Small, deterministic, JSON-serializable.
struct ExprNode {
  enum class Kind { proj, constant, add, mul, sine, cosine, affine };
  Kind kind = Kind::constant;
  int index = 0;                 // proj
  double value = 0.0;            // constant
  std::vector<ExprNode> args;    // add / mul / affine children; sin / cos: one
  std::vector<double> weights;   // affine, one per child
  double bias = 0.0;             // affine

  double eval(const Eigen::VectorXd& x) const {
    switch (kind) {
      case Kind::proj:
        return x(index);
      case Kind::constant:
        return value;
      case Kind::add: {
        double s = 0.0;
        for (const auto& a : args) s += a.eval(x);
        return s;
      }
      case Kind::mul: {
        double s = 1.0;
        for (const auto& a : args) s *= a.eval(x);
        return s;
      }
      case Kind::sine:
        return std::sin(args.at(0).eval(x));
      case Kind::cosine:
        return std::cos(args.at(0).eval(x));
      case Kind::affine: {
        double s = bias;
        for (std::size_t i = 0; i < args.size(); ++i)
          s += weights.at(i) * args[i].eval(x);
        return s;
      }
    }
    throw std::logic_error("ExprNode: unknown kind");
  }
};

inline ExprNode proj(int i) {
  ExprNode n;
  n.kind = ExprNode::Kind::proj;
  n.index = i;
  return n;
}

inline ExprNode constant(double v) {
  ExprNode n;
  n.kind = ExprNode::Kind::constant;
  n.value = v;
  return n;
}

inline ExprNode add(std::vector<ExprNode> args) {
  ExprNode n;
  n.kind = ExprNode::Kind::add;
  n.args = std::move(args);
  return n;
}

inline ExprNode mul(std::vector<ExprNode> args) {
  ExprNode n;
  n.kind = ExprNode::Kind::mul;
  n.args = std::move(args);
  return n;
}

inline ExprNode sine(ExprNode arg) {
  ExprNode n;
  n.kind = ExprNode::Kind::sine;
  n.args.push_back(std::move(arg));
  return n;
}

inline ExprNode cosine(ExprNode arg) {
  ExprNode n;
  n.kind = ExprNode::Kind::cosine;
  n.args.push_back(std::move(arg));
  return n;
}

inline ExprNode affine(std::vector<double> weights, double bias,
                       std::vector<ExprNode> args) {
  if (weights.size() != args.size())
    throw std::invalid_argument("affine node: one weight per child required");
  ExprNode n;
  n.kind = ExprNode::Kind::affine;
  n.weights = std::move(weights);
  n.bias = bias;
  n.args = std::move(args);
  return n;
}

class SmoothMap {
 public:
  SmoothMap(int input_dim, std::vector<ExprNode> outputs)
      : input_dim_(input_dim), outputs_(std::move(outputs)) {
    if (input_dim_ < 1 || outputs_.empty())
      throw std::invalid_argument("SmoothMap: need input_dim >= 1 and outputs");
    for (const auto& o : outputs_) check_indices(o);
  }

  int input_dim() const { return input_dim_; }
  int output_dim() const { return static_cast<int>(outputs_.size()); }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    if (x.size() != input_dim_)
      throw std::invalid_argument("SmoothMap: input dimension mismatch");
    Eigen::VectorXd out(output_dim());
    for (int i = 0; i < output_dim(); ++i)
      out(i) = outputs_[static_cast<std::size_t>(i)].eval(x);
    return out;
  }

  const std::vector<ExprNode>& outputs() const { return outputs_; }

  static SmoothMap from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  /// Trigonometric-polynomial corpus map: affine part plus one sin, one cos,
  /// and one quadratic monomial per output, all coefficients seeded.
  static SmoothMap random_trig(std::uint64_t seed, int input_dim, int output_dim) {
    Rng rng(seed);
    std::vector<ExprNode> outputs;
    for (int o = 0; o < output_dim; ++o) {
      std::vector<ExprNode> terms;
      std::vector<ExprNode> projections;
      std::vector<double> lin;
      for (int i = 0; i < input_dim; ++i) {
        projections.push_back(proj(i));
        lin.push_back(rng.gaussian());
      }
      terms.push_back(affine(lin, rng.gaussian(), projections));
      std::vector<double> w1, w2;
      std::vector<ExprNode> p1, p2;
      for (int i = 0; i < input_dim; ++i) {
        w1.push_back(rng.gaussian());
        w2.push_back(rng.gaussian());
        p1.push_back(proj(i));
        p2.push_back(proj(i));
      }
      terms.push_back(affine({rng.gaussian()}, 0.0,
                             {sine(affine(w1, rng.gaussian(), p1))}));
      terms.push_back(affine({rng.gaussian()}, 0.0,
                             {cosine(affine(w2, rng.gaussian(), p2))}));
      const int i = static_cast<int>(rng.uniform_int(0, input_dim - 1));
      const int j = static_cast<int>(rng.uniform_int(0, input_dim - 1));
      terms.push_back(affine({rng.gaussian()}, 0.0, {mul({proj(i), proj(j)})}));
      outputs.push_back(add(std::move(terms)));
    }
    return SmoothMap(input_dim, std::move(outputs));
  }

  /// Odd map plus a constant: linear part, sin of a linear form, one cubic
  /// monomial. f(x) - c is odd, so antipodal equal-value pairs exist for
  /// every such map.
  static SmoothMap random_odd_plus_constant(std::uint64_t seed, int input_dim) {
    Rng rng(seed);
    std::vector<ExprNode> terms;
    std::vector<ExprNode> projections;
    std::vector<double> lin, w;
    for (int i = 0; i < input_dim; ++i) {
      projections.push_back(proj(i));
      lin.push_back(rng.gaussian());
      w.push_back(rng.gaussian());
    }
    terms.push_back(constant(rng.gaussian()));
    terms.push_back(affine(lin, 0.0, projections));
    std::vector<ExprNode> p2;
    for (int i = 0; i < input_dim; ++i) p2.push_back(proj(i));
    terms.push_back(affine({rng.gaussian()}, 0.0, {sine(affine(w, 0.0, p2))}));
    const int a = static_cast<int>(rng.uniform_int(0, input_dim - 1));
    const int b = static_cast<int>(rng.uniform_int(0, input_dim - 1));
    const int c = static_cast<int>(rng.uniform_int(0, input_dim - 1));
    terms.push_back(
        affine({rng.gaussian()}, 0.0, {mul({proj(a), proj(b), proj(c)})}));
    return SmoothMap(input_dim, {add(std::move(terms))});
  }

 private:
  void check_indices(const ExprNode& n) const {
    if (n.kind == ExprNode::Kind::proj &&
        (n.index < 0 || n.index >= input_dim_))
      throw std::invalid_argument("SmoothMap: projection index out of range");
    for (const auto& a : n.args) check_indices(a);
  }

  int input_dim_;
  std::vector<ExprNode> outputs_;
};

namespace detail {

inline nlohmann::json expr_to_json(const ExprNode& n) {
  using nlohmann::json;
  switch (n.kind) {
    case ExprNode::Kind::proj:
      return json{{"op", "proj"}, {"index", n.index}};
    case ExprNode::Kind::constant:
      return json{{"op", "const"}, {"value", n.value}};
    case ExprNode::Kind::add:
    case ExprNode::Kind::mul: {
      json args = json::array();
      for (const auto& a : n.args) args.push_back(expr_to_json(a));
      return json{{"op", n.kind == ExprNode::Kind::add ? "add" : "mul"},
                  {"args", args}};
    }
    case ExprNode::Kind::sine:
      return json{{"op", "sin"}, {"arg", expr_to_json(n.args.at(0))}};
    case ExprNode::Kind::cosine:
      return json{{"op", "cos"}, {"arg", expr_to_json(n.args.at(0))}};
    case ExprNode::Kind::affine: {
      json args = json::array();
      for (const auto& a : n.args) args.push_back(expr_to_json(a));
      return json{{"op", "affine"},
                  {"weights", n.weights},
                  {"bias", n.bias},
                  {"args", args}};
    }
  }
  throw std::logic_error("expr_to_json: unknown kind");
}

inline ExprNode expr_from_json(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "proj") return proj(j.at("index").get<int>());
  if (op == "const") return constant(j.at("value").get<double>());
  if (op == "add" || op == "mul") {
    std::vector<ExprNode> args;
    for (const auto& a : j.at("args")) args.push_back(expr_from_json(a));
    return op == "add" ? add(std::move(args)) : mul(std::move(args));
  }
  if (op == "sin") return sine(expr_from_json(j.at("arg")));
  if (op == "cos") return cosine(expr_from_json(j.at("arg")));
  if (op == "affine") {
    std::vector<ExprNode> args;
    for (const auto& a : j.at("args")) args.push_back(expr_from_json(a));
    return affine(j.at("weights").get<std::vector<double>>(),
                  j.at("bias").get<double>(), std::move(args));
  }
  throw std::invalid_argument("SmoothMap: unknown expression op '" + op + "'");
}

}  // namespace detail

inline SmoothMap SmoothMap::from_json(const nlohmann::json& j) {
  std::vector<ExprNode> outputs;
  for (const auto& o : j.at("outputs")) outputs.push_back(detail::expr_from_json(o));
  return SmoothMap(j.at("input_dim").get<int>(), std::move(outputs));
}

inline nlohmann::json SmoothMap::to_json() const {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& o : outputs_) outputs.push_back(detail::expr_to_json(o));
  return nlohmann::json{{"input_dim", input_dim_}, {"outputs", outputs}};
}

}  // namespace tvg
