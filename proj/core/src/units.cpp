#include "csl/units.hpp"

#include <cmath>

#include "csl/error.hpp"

namespace csl {
namespace {

void require_same(Dimension a, Dimension b, const char* op) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + " of " + to_string(a) + " and " + to_string(b));
  }
}

}  // namespace

std::string to_string(Dimension d) {
  if (d == dim::dimensionless) return "1";
  std::string out;
  auto term = [&out](const char* sym, int e) {
    if (e == 0) return;
    if (!out.empty()) out += " ";
    out += sym;
    if (e != 1) out += "^" + std::to_string(e);
  };
  term("kg", d.mass);
  term("m", d.length);
  term("s", d.time);
  return out;
}

double Quantity::in(const Quantity& unit) const {
  require_same(dim_, unit.dim_, "conversion");
  return value_ / unit.value_;
}

const Quantity& Quantity::require(Dimension d, const char* what) const {
  if (dim_ != d) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must have dimension " + to_string(d) + ", got " + to_string(dim_));
  }
  return *this;
}

Quantity& Quantity::operator+=(const Quantity& other) {
  require_same(dim_, other.dim_, "sum");
  value_ += other.value_;
  return *this;
}

Quantity& Quantity::operator-=(const Quantity& other) {
  require_same(dim_, other.dim_, "difference");
  value_ -= other.value_;
  return *this;
}

bool operator<(const Quantity& a, const Quantity& b) {
  require_same(a.dim_, b.dim_, "comparison");
  return a.value_ < b.value_;
}

bool operator==(const Quantity& a, const Quantity& b) {
  require_same(a.dim_, b.dim_, "comparison");
  return a.value_ == b.value_;
}

Quantity sqrt(const Quantity& q) {
  const Dimension d = q.dimension();
  if (d.time % 2 != 0 || d.length % 2 != 0 || d.mass % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "square root of " + to_string(d));
  }
  return {std::sqrt(q.si()), Dimension{d.time / 2, d.length / 2, d.mass / 2}};
}

}  // namespace csl
