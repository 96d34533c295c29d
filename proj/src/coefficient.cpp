#include "ribopt/coefficient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ribopt/error.hpp"

namespace ribopt {

namespace {

std::size_t expected_params(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Constant: return 1;
    case CoefficientKind::Exponential: return 2;
    case CoefficientKind::Affine:
    case CoefficientKind::SquaredAffine: return 3;
    case CoefficientKind::RadialQuadratic: return 4;
  }
  return 0;
}

const char* kind_name(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Constant: return "constant";
    case CoefficientKind::Affine: return "affine";
    case CoefficientKind::RadialQuadratic: return "radialq";
    case CoefficientKind::Exponential: return "exp";
    case CoefficientKind::SquaredAffine: return "sqaffine";
  }
  return "?";
}

std::array<Vec2, 4> corners(const Box& b) {
  return {b.lo, Vec2{b.hi.x, b.lo.y}, b.hi, Vec2{b.lo.x, b.hi.y}};
}

// Range of a + b x + c y over the box.
std::pair<double, double> affine_range(const std::vector<double>& q, const Box& box) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (Vec2 c : corners(box)) {
    const double v = q[0] + q[1] * c.x + q[2] * c.y;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// Range of |p - center|^2 over the box.
std::pair<double, double> squared_radius_range(Vec2 center, const Box& box) {
  const Vec2 nearest{std::clamp(center.x, box.lo.x, box.hi.x),
                     std::clamp(center.y, box.lo.y, box.hi.y)};
  double far = 0.0;
  for (Vec2 c : corners(box)) far = std::max(far, dot(c - center, c - center));
  const Vec2 d = nearest - center;
  return {dot(d, d), far};
}

}  // namespace

CoefficientField::CoefficientField(CoefficientKind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
  if (params_.size() != expected_params(kind_)) {
    throw InvalidInput(std::string("coefficient '") + kind_name(kind_) + "' expects " +
                       std::to_string(expected_params(kind_)) + " parameters, got " +
                       std::to_string(params_.size()));
  }
  for (double v : params_) {
    if (!std::isfinite(v)) throw InvalidInput("coefficient parameters must be finite");
  }
}

CoefficientField CoefficientField::constant(double c) { return {CoefficientKind::Constant, {c}}; }
CoefficientField CoefficientField::affine(double a, double b, double c) {
  return {CoefficientKind::Affine, {a, b, c}};
}
CoefficientField CoefficientField::radial_quadratic(double a, double b, Vec2 center) {
  return {CoefficientKind::RadialQuadratic, {a, b, center.x, center.y}};
}
CoefficientField CoefficientField::exponential(double a, double b) {
  return {CoefficientKind::Exponential, {a, b}};
}
CoefficientField CoefficientField::squared_affine(double a, double b, double c) {
  return {CoefficientKind::SquaredAffine, {a, b, c}};
}

bool CoefficientField::is_constant() const {
  const auto& q = params_;
  switch (kind_) {
    case CoefficientKind::Constant: return true;
    case CoefficientKind::Affine:
    case CoefficientKind::SquaredAffine: return q[1] == 0.0 && q[2] == 0.0;
    case CoefficientKind::RadialQuadratic:
    case CoefficientKind::Exponential: return q[1] == 0.0;
  }
  return false;
}

double CoefficientField::operator()(Vec2 p) const {
  const auto& q = params_;
  switch (kind_) {
    case CoefficientKind::Constant: return q[0];
    case CoefficientKind::Affine: return q[0] + q[1] * p.x + q[2] * p.y;
    case CoefficientKind::RadialQuadratic: {
      const Vec2 d = p - Vec2{q[2], q[3]};
      return q[0] + q[1] * dot(d, d);
    }
    case CoefficientKind::Exponential: return q[0] * std::exp(q[1] * p.x);
    case CoefficientKind::SquaredAffine: {
      const double g = q[0] + q[1] * p.x + q[2] * p.y;
      return g * g;
    }
  }
  return 0.0;
}

double CoefficientField::min_over(const Box& box) const {
  const auto& q = params_;
  switch (kind_) {
    case CoefficientKind::Constant: return q[0];
    case CoefficientKind::Affine: return affine_range(q, box).first;
    case CoefficientKind::RadialQuadratic: {
      const auto [r0, r1] = squared_radius_range({q[2], q[3]}, box);
      return q[0] + std::min(q[1] * r0, q[1] * r1);
    }
    case CoefficientKind::Exponential:
      return std::min((*this)(box.lo), (*this)(box.hi));
    case CoefficientKind::SquaredAffine: {
      const auto [lo, hi] = affine_range(q, box);
      if (lo <= 0.0 && hi >= 0.0) return 0.0;
      return std::min(lo * lo, hi * hi);
    }
  }
  return 0.0;
}

double CoefficientField::max_over(const Box& box) const {
  const auto& q = params_;
  switch (kind_) {
    case CoefficientKind::Constant: return q[0];
    case CoefficientKind::Affine: return affine_range(q, box).second;
    case CoefficientKind::RadialQuadratic: {
      const auto [r0, r1] = squared_radius_range({q[2], q[3]}, box);
      return q[0] + std::max(q[1] * r0, q[1] * r1);
    }
    case CoefficientKind::Exponential:
      return std::max((*this)(box.lo), (*this)(box.hi));
    case CoefficientKind::SquaredAffine: {
      const auto [lo, hi] = affine_range(q, box);
      return std::max(lo * lo, hi * hi);
    }
  }
  return 0.0;
}

std::string CoefficientField::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "kind=" << kind_name(kind_) << " params=";
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) out << ',';
    out << params_[i];
  }
  return out.str();
}

CoefficientField parse_coefficient(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  std::string kind;
  std::string params;
  bool have_params = false;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw InvalidInput("coefficient token without '=': " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "kind") {
      kind = value;
    } else if (key == "params") {
      params = value;
      have_params = true;
    } else {
      throw InvalidInput("unknown coefficient key '" + key + "'");
    }
  }
  CoefficientKind k;
  if (kind == "constant") {
    k = CoefficientKind::Constant;
  } else if (kind == "affine") {
    k = CoefficientKind::Affine;
  } else if (kind == "radialq") {
    k = CoefficientKind::RadialQuadratic;
  } else if (kind == "exp") {
    k = CoefficientKind::Exponential;
  } else if (kind == "sqaffine") {
    k = CoefficientKind::SquaredAffine;
  } else {
    throw InvalidInput("unknown coefficient kind '" + kind + "'");
  }
  if (!have_params) throw InvalidInput("coefficient spec lacks params=");
  std::vector<double> values;
  std::istringstream list(params);
  std::string item;
  while (std::getline(list, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("bad coefficient parameter '" + item + "'");
    }
  }
  return CoefficientField(k, std::move(values));
}

void require_positive(const CoefficientField& field, const Domain& domain, std::string_view name) {
  const double m = field.min_over(domain.bounding_box());
  if (!(m > 0.0)) {
    throw InvalidInput(std::string(name) + " must be strictly positive on the domain (minimum " +
                       std::to_string(m) + ")");
  }
}

}  // namespace ribopt
