#pragma once

#include <string>

namespace csl {

/// Exponents of SI base dimensions. Nucleon counts are dimensionless.
struct Dimension {
  int time = 0;
  int length = 0;
  int mass = 0;

  friend constexpr bool operator==(Dimension, Dimension) = default;
  friend constexpr Dimension operator+(Dimension a, Dimension b) {
    return {a.time + b.time, a.length + b.length, a.mass + b.mass};
  }
  friend constexpr Dimension operator-(Dimension a, Dimension b) {
    return {a.time - b.time, a.length - b.length, a.mass - b.mass};
  }
};

namespace dim {
inline constexpr Dimension dimensionless{};
inline constexpr Dimension time{1, 0, 0};
inline constexpr Dimension rate{-1, 0, 0};
inline constexpr Dimension length{0, 1, 0};
inline constexpr Dimension mass{0, 0, 1};
inline constexpr Dimension power{-3, 2, 1};
inline constexpr Dimension action{-1, 2, 1};
}  // namespace dim

std::string to_string(Dimension d);

/// A value in SI base units tagged with its dimension. Addition, subtraction
/// and comparison across different dimensions throw DimensionMismatch.
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr Quantity(double si_amount, Dimension dimension) : value_(si_amount), dim_(dimension) {}

  constexpr double si() const noexcept { return value_; }
  constexpr Dimension dimension() const noexcept { return dim_; }

  /// Value expressed in `unit`; throws DimensionMismatch if incompatible.
  double in(const Quantity& unit) const;

  /// Throws DimensionMismatch unless this quantity has dimension `d`.
  const Quantity& require(Dimension d, const char* what) const;

  Quantity& operator+=(const Quantity& other);
  Quantity& operator-=(const Quantity& other);

  friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
  friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
  friend constexpr Quantity operator*(const Quantity& a, const Quantity& b) {
    return {a.value_ * b.value_, a.dim_ + b.dim_};
  }
  friend constexpr Quantity operator/(const Quantity& a, const Quantity& b) {
    return {a.value_ / b.value_, a.dim_ - b.dim_};
  }
  friend constexpr Quantity operator*(double s, const Quantity& q) { return {s * q.value_, q.dim_}; }
  friend constexpr Quantity operator*(const Quantity& q, double s) { return {q.value_ * s, q.dim_}; }
  friend constexpr Quantity operator/(const Quantity& q, double s) { return {q.value_ / s, q.dim_}; }
  friend constexpr Quantity operator/(double s, const Quantity& q) {
    return {s / q.value_, Dimension{} - q.dim_};
  }

  friend bool operator<(const Quantity& a, const Quantity& b);
  friend bool operator>(const Quantity& a, const Quantity& b) { return b < a; }
  friend bool operator==(const Quantity& a, const Quantity& b);

 private:
  double value_ = 0.0;
  Dimension dim_{};
};

Quantity sqrt(const Quantity& q);  // requires even exponents

/// Unit and constant table. Every boundary conversion goes through here.
namespace units {
inline constexpr Quantity second{1.0, dim::time};
inline constexpr Quantity millisecond{1e-3, dim::time};
inline constexpr Quantity per_second{1.0, dim::rate};
inline constexpr Quantity meter{1.0, dim::length};
inline constexpr Quantity centimeter{1e-2, dim::length};
inline constexpr Quantity kilogram{1.0, dim::mass};
inline constexpr Quantity dalton{1.66053906660e-27, dim::mass};  // CODATA 2018
inline constexpr Quantity watt{1.0, dim::power};
inline constexpr Quantity one{1.0, dim::dimensionless};
}  // namespace units

namespace constants {
inline constexpr Quantity hbar{1.054571817e-34, dim::action};          // J s
inline constexpr Quantity nucleon_mass{1.67262192369e-27, dim::mass};  // proton mass
}  // namespace constants

constexpr Quantity seconds(double v) { return v * units::second; }
constexpr Quantity per_seconds(double v) { return v * units::per_second; }
constexpr Quantity centimeters(double v) { return v * units::centimeter; }
constexpr Quantity meters(double v) { return v * units::meter; }
constexpr Quantity daltons(double v) { return v * units::dalton; }
constexpr Quantity kilograms(double v) { return v * units::kilogram; }

}  // namespace csl
