#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace fracop {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BoundedSpace {
  bool operator==(const BoundedSpace&) const = default;
};
// 0 < p <= inf; a quasi-norm when p < 1.
struct LpSpace {
  double p{2.0};
  bool operator==(const LpSpace&) const = default;
};
struct CkSpace {
  int k{0};
  bool operator==(const CkSpace&) const = default;
};
// k >= 1, 1 <= p <= inf.
struct SobolevSpace {
  int k{1};
  double p{2.0};
  bool operator==(const SobolevSpace&) const = default;
};
// k >= 0, 0 < sigma <= 1.
struct HoelderSpace {
  int k{0};
  double sigma{1.0};
  bool operator==(const HoelderSpace&) const = default;
};

// The ambient function space. Construct through the named factories, which
// enforce the parameter ranges (kInvalidArgument / kUnsupportedOrder).
class SpaceSpec {
 public:
  using Variant = std::variant<BoundedSpace, LpSpace, CkSpace, SobolevSpace, HoelderSpace>;

  SpaceSpec() = default;

  static SpaceSpec bounded();
  static SpaceSpec lp(double p);
  static SpaceSpec ck(int k);
  static SpaceSpec sobolev(int k, double p);
  static SpaceSpec hoelder(int k, double sigma);
  // "bounded", "lp:2", "lp:inf", "ck:1", "sobolev:1,2", "hoelder:1,0.5".
  static SpaceSpec parse(std::string_view text);

  const Variant& variant() const noexcept { return variant_; }
  template <class T>
  const T* as() const noexcept { return std::get_if<T>(&variant_); }

  // Highest derivative order the norm reads.
  int derivative_order() const noexcept;
  // Highest derivative order at which the base function must agree with the
  // seed at both ends of I (0 means values only).
  int endpoint_match_order() const noexcept;
  bool needs_constant_scaling() const noexcept;

  std::string kind_name() const;
  std::string to_string() const;

  bool operator==(const SpaceSpec&) const = default;

 private:
  explicit SpaceSpec(Variant v) : variant_(v) {}

  Variant variant_{BoundedSpace{}};
};

}  // namespace fracop
