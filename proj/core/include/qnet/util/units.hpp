#pragma once

#include <compare>
#include <numbers>

namespace qnet {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angular frequency in rad/s. Cyclic values (Hz, MHz) only enter through
/// the named factories so the 2*pi conversion happens in one place.
class AngularFrequency {
 public:
  constexpr AngularFrequency() = default;

  static constexpr AngularFrequency rad_per_s(double w) { return AngularFrequency(w); }
  static constexpr AngularFrequency hz(double f) { return AngularFrequency(two_pi * f); }
  static constexpr AngularFrequency khz(double f) { return hz(f * 1e3); }
  static constexpr AngularFrequency mhz(double f) { return hz(f * 1e6); }

  constexpr double value() const { return w_; }
  constexpr double in_hz() const { return w_ / two_pi; }
  constexpr double in_mhz() const { return w_ / two_pi * 1e-6; }

  constexpr AngularFrequency operator-() const { return AngularFrequency(-w_); }
  constexpr AngularFrequency operator+(AngularFrequency o) const { return AngularFrequency(w_ + o.w_); }
  constexpr AngularFrequency operator-(AngularFrequency o) const { return AngularFrequency(w_ - o.w_); }
  constexpr AngularFrequency operator*(double s) const { return AngularFrequency(w_ * s); }
  constexpr AngularFrequency operator/(double s) const { return AngularFrequency(w_ / s); }
  constexpr double operator/(AngularFrequency o) const { return w_ / o.w_; }
  constexpr auto operator<=>(const AngularFrequency&) const = default;

 private:
  constexpr explicit AngularFrequency(double w) : w_(w) {}
  double w_ = 0.0;
};

constexpr AngularFrequency operator*(double s, AngularFrequency w) { return w * s; }

inline constexpr double ns = 1e-9;
inline constexpr double us = 1e-6;

}  // namespace qnet
