#include "strel/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

namespace strel {

namespace {

double checked_sum(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) {
    throw IntervalError("indeterminate form inf + -inf in interval sum");
  }
  return s;
}

double endpoint_distance(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) {
    return 0.0;
  }
  return std::fabs(a - b);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

} // namespace

Interval add_scalar(const Interval& i, double c) {
  return {checked_sum(i.lo, c), checked_sum(i.hi, c)};
}

Interval neg(const Interval& i) {
  Interval r;
  r.lo = -i.hi;
  r.hi = -i.lo;
  return r;
}

Interval add(const Interval& a, const Interval& b) {
  return {checked_sum(a.lo, b.lo), checked_sum(a.hi, b.hi)};
}

Interval sub(const Interval& a, const Interval& b) { return add(a, neg(b)); }

Interval imax_all(std::span<const Interval> xs) {
  if (xs.empty()) {
    throw IntervalError("imax_all of an empty set");
  }
  Interval r = xs.front();
  for (const auto& x : xs.subspan(1)) {
    r = imax(r, x);
  }
  return r;
}

Interval imin_all(std::span<const Interval> xs) {
  if (xs.empty()) {
    throw IntervalError("imin_all of an empty set");
  }
  Interval r = xs.front();
  for (const auto& x : xs.subspan(1)) {
    r = imin(r, x);
  }
  return r;
}

Interval radius(const Interval& i) {
  const double a = std::fabs(i.lo);
  const double b = std::fabs(i.hi);
  return {std::min(a, b), std::max(a, b)};
}

double hausdorff(const Interval& a, const Interval& b) {
  return std::max(endpoint_distance(a.lo, b.lo), endpoint_distance(a.hi, b.hi));
}

std::string format_real(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (v == 0.0) {
    return "0";  // folds -0
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

double parse_real(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "+inf" || s == "Inf" || s == "+Inf" || s == "infinity") {
    return kInf;
  }
  if (s == "-inf" || s == "-Inf" || s == "-infinity") {
    return -kInf;
  }
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || std::isnan(v)) {
    throw std::invalid_argument("not a real number: '" + std::string(text) + "'");
  }
  return v;
}

std::string to_string(const Interval& i) {
  return "[" + format_real(i.lo) + "," + format_real(i.hi) + "]";
}

Interval parse_interval(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') {
    throw std::invalid_argument("not an interval: '" + std::string(text) + "'");
  }
  const std::string_view body = s.substr(1, s.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("not an interval: '" + std::string(text) + "'");
  }
  return {parse_real(body.substr(0, comma)), parse_real(body.substr(comma + 1))};
}

} // namespace strel
