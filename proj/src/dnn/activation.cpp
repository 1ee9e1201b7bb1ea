// Copyright 2026 The pwlnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pwlnn/dnn/activation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "pwlnn/core/error.hpp"
#include "pwlnn/core/text_io.hpp"

namespace pwlnn {

namespace {

// Right-derivative sign of |u|.
double right_sign(double u) { return u >= 0.0 ? 1.0 : -1.0; }

std::size_t parse_count(const std::string& text, const std::string& descriptor) {
  std::size_t value = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
    throw InvalidModel("bad activation descriptor '" + descriptor + "'");
  }
  return value;
}

}  // namespace

Activation Activation::relu() { return Activation(ActivationKind::ReLU, 0.0, 0, 1); }
Activation Activation::leaky(double lambda) { return Activation(ActivationKind::Leaky, lambda, 0, 1); }
Activation Activation::prelu() { return Activation(ActivationKind::PReLU, 0.0, 0, 1); }
Activation Activation::srelu() { return Activation(ActivationKind::SReLU, 0.0, 0, 1); }
Activation Activation::frelu() { return Activation(ActivationKind::FReLU, 0.0, 0, 1); }

Activation Activation::apl(std::size_t hinges) {
  return Activation(ActivationKind::APL, 0.0, hinges, 1);
}

Activation Activation::maxout(std::size_t group) {
  if (group == 0) throw InvalidModel("maxout group size must be at least 1");
  return Activation(ActivationKind::Maxout, 0.0, 0, group);
}

Activation Activation::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string name = descriptor.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;
  if (name == "relu" && !has_arg) return relu();
  if (name == "prelu" && !has_arg) return prelu();
  if (name == "srelu" && !has_arg) return srelu();
  if (name == "frelu" && !has_arg) return frelu();
  if (name == "leaky" && has_arg) {
    try {
      return leaky(parse_number(arg, 1, 1));
    } catch (const ParseError&) {
      throw InvalidModel("bad activation descriptor '" + descriptor + "'");
    }
  }
  if (name == "apl" && has_arg) return apl(parse_count(arg, descriptor));
  if (name == "maxout" && has_arg) return maxout(parse_count(arg, descriptor));
  throw InvalidModel("unknown activation '" + descriptor + "'");
}

std::string Activation::descriptor() const {
  switch (kind_) {
    case ActivationKind::ReLU: return "relu";
    case ActivationKind::Leaky: return "leaky:" + format_number(leak_);
    case ActivationKind::PReLU: return "prelu";
    case ActivationKind::SReLU: return "srelu";
    case ActivationKind::FReLU: return "frelu";
    case ActivationKind::APL: return "apl:" + std::to_string(hinges_);
    case ActivationKind::Maxout: return "maxout:" + std::to_string(group_);
  }
  return {};
}

std::size_t Activation::inputs_per_unit() const {
  return kind_ == ActivationKind::Maxout ? group_ : 1;
}

std::size_t Activation::parameter_count() const {
  switch (kind_) {
    case ActivationKind::PReLU: return 1;
    case ActivationKind::SReLU: return 6;
    case ActivationKind::FReLU: return 2;
    case ActivationKind::APL: return 2 * hinges_;
    default: return 0;
  }
}

std::vector<double> Activation::default_parameters() const {
  switch (kind_) {
    case ActivationKind::PReLU: return {0.25};
    case ActivationKind::SReLU: return {0.5, 0.0, 0.5, 0.0, 0.0, 1.0};
    case ActivationKind::FReLU: return {0.0, 0.0};
    case ActivationKind::APL: return std::vector<double>(2 * hinges_, 0.0);
    default: return {};
  }
}

double Activation::apply(double z, const double* p) const {
  switch (kind_) {
    case ActivationKind::ReLU: return std::max(z, 0.0);
    case ActivationKind::Leaky: return std::max(z, 0.0) - leak_ * std::max(-z, 0.0);
    case ActivationKind::PReLU: return std::max(z, 0.0) - p[0] * std::max(-z, 0.0);
    case ActivationKind::SReLU:
      return p[0] * z + p[1] + p[2] * std::abs(z - p[4]) + p[3] * std::abs(z - p[5]);
    case ActivationKind::FReLU: return std::max(z + p[0], 0.0) + p[1];
    case ActivationKind::APL: {
      double v = std::max(z, 0.0);
      for (std::size_t s = 0; s < hinges_; ++s) v += p[2 * s] * std::max(0.0, -z + p[2 * s + 1]);
      return v;
    }
    case ActivationKind::Maxout: break;
  }
  throw InvalidModel("maxout has no scalar form");
}

double Activation::derivative(double z, const double* p) const {
  switch (kind_) {
    case ActivationKind::ReLU: return z >= 0.0 ? 1.0 : 0.0;
    case ActivationKind::Leaky: return z >= 0.0 ? 1.0 : leak_;
    case ActivationKind::PReLU: return z >= 0.0 ? 1.0 : p[0];
    case ActivationKind::SReLU: return p[0] + p[2] * right_sign(z - p[4]) + p[3] * right_sign(z - p[5]);
    case ActivationKind::FReLU: return z + p[0] >= 0.0 ? 1.0 : 0.0;
    case ActivationKind::APL: {
      double d = z >= 0.0 ? 1.0 : 0.0;
      for (std::size_t s = 0; s < hinges_; ++s) {
        if (-z + p[2 * s + 1] > 0.0) d -= p[2 * s];
      }
      return d;
    }
    case ActivationKind::Maxout: break;
  }
  throw InvalidModel("maxout has no scalar form");
}

void Activation::accumulate_parameter_gradient(double z, const double* p, double upstream,
                                               double* grad) const {
  switch (kind_) {
    case ActivationKind::PReLU:
      grad[0] += upstream * -std::max(-z, 0.0);
      break;
    case ActivationKind::SReLU:
      grad[0] += upstream * z;
      grad[1] += upstream;
      grad[2] += upstream * std::abs(z - p[4]);
      grad[3] += upstream * std::abs(z - p[5]);
      grad[4] += upstream * -p[2] * right_sign(z - p[4]);
      grad[5] += upstream * -p[3] * right_sign(z - p[5]);
      break;
    case ActivationKind::FReLU:
      grad[0] += upstream * (z + p[0] >= 0.0 ? 1.0 : 0.0);
      grad[1] += upstream;
      break;
    case ActivationKind::APL:
      for (std::size_t s = 0; s < hinges_; ++s) {
        const double u = -z + p[2 * s + 1];
        grad[2 * s] += upstream * std::max(0.0, u);
        grad[2 * s + 1] += upstream * (u > 0.0 ? p[2 * s] : 0.0);
      }
      break;
    default:
      break;
  }
}

std::size_t Activation::piece(double z, const double* p) const {
  switch (kind_) {
    case ActivationKind::ReLU:
    case ActivationKind::Leaky:
    case ActivationKind::PReLU: return z >= 0.0 ? 1 : 0;
    case ActivationKind::SReLU: return (z - p[4] >= 0.0 ? 1 : 0) + (z - p[5] >= 0.0 ? 2 : 0);
    case ActivationKind::FReLU: return z + p[0] >= 0.0 ? 1 : 0;
    case ActivationKind::APL: {
      std::size_t bits = z >= 0.0 ? 1 : 0;
      for (std::size_t s = 0; s < hinges_; ++s) {
        if (-z + p[2 * s + 1] > 0.0) bits |= std::size_t{1} << (s + 1);
      }
      return bits;
    }
    case ActivationKind::Maxout: break;
  }
  throw InvalidModel("maxout has no scalar form");
}

void Activation::piece_map(std::size_t piece, const double* p, double& slope,
                           double& intercept) const {
  switch (kind_) {
    case ActivationKind::ReLU:
      slope = piece ? 1.0 : 0.0;
      intercept = 0.0;
      return;
    case ActivationKind::Leaky:
      slope = piece ? 1.0 : leak_;
      intercept = 0.0;
      return;
    case ActivationKind::PReLU:
      slope = piece ? 1.0 : p[0];
      intercept = 0.0;
      return;
    case ActivationKind::SReLU: {
      const double sl = (piece & 1) ? 1.0 : -1.0;
      const double sr = (piece & 2) ? 1.0 : -1.0;
      slope = p[0] + p[2] * sl + p[3] * sr;
      intercept = p[1] - p[2] * sl * p[4] - p[3] * sr * p[5];
      return;
    }
    case ActivationKind::FReLU:
      slope = piece ? 1.0 : 0.0;
      intercept = piece ? p[0] + p[1] : p[1];
      return;
    case ActivationKind::APL:
      slope = (piece & 1) ? 1.0 : 0.0;
      intercept = 0.0;
      for (std::size_t s = 0; s < hinges_; ++s) {
        if (piece & (std::size_t{1} << (s + 1))) {
          slope -= p[2 * s];
          intercept += p[2 * s] * p[2 * s + 1];
        }
      }
      return;
    case ActivationKind::Maxout: break;
  }
  throw InvalidModel("maxout has no scalar form");
}

std::vector<double> Activation::kinks(const double* p) const {
  switch (kind_) {
    case ActivationKind::SReLU: return {p[4], p[5]};
    case ActivationKind::FReLU: return {-p[0]};
    case ActivationKind::APL: {
      std::vector<double> k{0.0};
      for (std::size_t s = 0; s < hinges_; ++s) k.push_back(p[2 * s + 1]);
      return k;
    }
    case ActivationKind::Maxout: return {};
    default: return {0.0};
  }
}

}  // namespace pwlnn
