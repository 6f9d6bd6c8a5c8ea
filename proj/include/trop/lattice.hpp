#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>

namespace trop {

/// Integer vector in Z^2. Used both for primitive directions u(F) and for
/// weighted directions v(F) = w * u(F).
struct Vec2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  constexpr Vec2() = default;
  constexpr Vec2(std::int64_t x_, std::int64_t y_) : x(x_), y(y_) {}

  constexpr bool is_zero() const { return x == 0 && y == 0; }

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(std::int64_t k) const { return {x * k, y * k}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }

  constexpr auto operator<=>(const Vec2&) const = default;
};

constexpr Vec2 operator*(std::int64_t k, Vec2 v) { return v * k; }

constexpr std::int64_t det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

constexpr bool parallel(Vec2 a, Vec2 b) { return det(a, b) == 0; }

/// gcd(|x|, |y|); zero for the zero vector.
inline std::int64_t content(Vec2 v) { return std::gcd(std::llabs(v.x), std::llabs(v.y)); }

/// Primitive vector pointing the same way; precondition: v nonzero.
inline Vec2 primitive(Vec2 v) {
  const std::int64_t c = content(v);
  return {v.x / c, v.y / c};
}

inline bool is_primitive(Vec2 v) { return content(v) == 1; }

inline std::int64_t norm_inf(Vec2 v) { return std::max(std::llabs(v.x), std::llabs(v.y)); }

inline std::ostream& operator<<(std::ostream& os, Vec2 v) {
  return os << '(' << v.x << ',' << v.y << ')';
}

}  // namespace trop
