#include "fracop/space.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fracop/error.hpp"
#include "fracop/grid_function.hpp"

namespace fracop {

namespace {

void check_order(int k, int min_k) {
  if (k < min_k) {
    throw Error(ErrorCode::kInvalidArgument,
                "derivative order must be >= " + std::to_string(min_k));
  }
  if (k > kMaxDerivativeOrder) {
    throw Error(ErrorCode::kUnsupportedOrder, "derivative orders above 4 are not supported");
  }
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

double parse_number(std::string_view s) {
  const std::string str(s);
  if (str == "inf" || str == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "malformed number '" + str + "' in space spec");
  }
  if (used != str.size()) {
    throw Error(ErrorCode::kParseError, "malformed number '" + str + "' in space spec");
  }
  return v;
}

int parse_int(std::string_view s) {
  const double v = parse_number(s);
  if (v != std::floor(v) || std::isinf(v)) {
    throw Error(ErrorCode::kParseError, "expected an integer order in space spec");
  }
  return static_cast<int>(v);
}

std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

SpaceSpec SpaceSpec::bounded() { return SpaceSpec(BoundedSpace{}); }

SpaceSpec SpaceSpec::lp(double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Lp requires p > 0");
  return SpaceSpec(LpSpace{p});
}

SpaceSpec SpaceSpec::ck(int k) {
  check_order(k, 0);
  return SpaceSpec(CkSpace{k});
}

SpaceSpec SpaceSpec::sobolev(int k, double p) {
  check_order(k, 1);
  if (!(p >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "Sobolev spaces require p >= 1");
  return SpaceSpec(SobolevSpace{k, p});
}

SpaceSpec SpaceSpec::hoelder(int k, double sigma) {
  check_order(k, 0);
  if (!(sigma > 0.0 && sigma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Hoelder exponent must lie in (0, 1]");
  }
  return SpaceSpec(HoelderSpace{k, sigma});
}

SpaceSpec SpaceSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::vector<std::string_view> args =
      colon == std::string_view::npos ? std::vector<std::string_view>{}
                                      : split_args(text.substr(colon + 1));
  auto want = [&](std::size_t n) {
    if (args.size() != n) {
      throw Error(ErrorCode::kParseError, "space '" + std::string(text) + "' expects " +
                                              std::to_string(n) + " argument(s)");
    }
  };
  if (kind == "bounded") {
    want(0);
    return bounded();
  }
  if (kind == "lp") {
    want(1);
    return lp(parse_number(args[0]));
  }
  if (kind == "ck") {
    want(1);
    return ck(parse_int(args[0]));
  }
  if (kind == "sobolev") {
    want(2);
    return sobolev(parse_int(args[0]), parse_number(args[1]));
  }
  if (kind == "hoelder") {
    want(2);
    return hoelder(parse_int(args[0]), parse_number(args[1]));
  }
  throw Error(ErrorCode::kParseError, "unknown space kind '" + std::string(kind) + "'");
}

int SpaceSpec::derivative_order() const noexcept {
  if (auto s = as<CkSpace>()) return s->k;
  if (auto s = as<SobolevSpace>()) return s->k;
  if (auto s = as<HoelderSpace>()) return s->k;
  return 0;
}

int SpaceSpec::endpoint_match_order() const noexcept {
  if (auto s = as<CkSpace>()) return s->k;
  if (auto s = as<HoelderSpace>()) return s->k;
  // A W^{k,p} function on an interval is C^{k-1}; the pieces of Tg join with
  // matching derivatives only up to that order.
  if (auto s = as<SobolevSpace>()) return s->k - 1;
  return 0;
}

bool SpaceSpec::needs_constant_scaling() const noexcept {
  return as<SobolevSpace>() != nullptr || as<HoelderSpace>() != nullptr;
}

std::string SpaceSpec::kind_name() const {
  if (as<BoundedSpace>()) return "bounded";
  if (as<LpSpace>()) return "lp";
  if (as<CkSpace>()) return "ck";
  if (as<SobolevSpace>()) return "sobolev";
  return "hoelder";
}

std::string SpaceSpec::to_string() const {
  if (as<BoundedSpace>()) return "bounded";
  if (auto s = as<LpSpace>()) return "lp:" + format_p(s->p);
  if (auto s = as<CkSpace>()) return "ck:" + std::to_string(s->k);
  if (auto s = as<SobolevSpace>()) return "sobolev:" + std::to_string(s->k) + "," + format_p(s->p);
  const auto* h = as<HoelderSpace>();
  return "hoelder:" + std::to_string(h->k) + "," + format_p(h->sigma);
}

}  // namespace fracop
