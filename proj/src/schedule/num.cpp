#include <cmath>
#include <limits>
#include <sstream>

#include "lacolor/schedule.hpp"

namespace lac {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

long double log2_of(const BigInt& v) {
  if (v <= 0) return kNegInf;
  std::size_t top = boost::multiprecision::msb(v);
  if (top < 63) return std::log2l(static_cast<long double>(static_cast<std::uint64_t>(v)));
  BigInt head = v >> (top - 63);
  return static_cast<long double>(top - 63) +
         std::log2l(static_cast<long double>(static_cast<std::uint64_t>(head)));
}

std::size_t bits(const BigInt& v) { return v == 0 ? 0 : boost::multiprecision::msb(v) + 1; }

}  // namespace

Num::Num(const BigInt& v) : exact(v), lg(log2_of(v)) {
  if (v < 0) throw ScheduleError("negative schedule quantity");
}

Num Num::estimate(long double lg2) {
  Num n;
  n.lg = lg2;
  return n;
}

const BigInt& Num::value(const char* what) const {
  if (!exact) throw ScheduleError(std::string(what) + " is not materialized (" + str() + ")");
  return *exact;
}

std::string Num::str() const {
  if (exact) return exact->str();
  if (std::isnan(lg)) return "n/a";
  if (std::isinf(lg)) return "~2^(overflow)";
  std::ostringstream os;
  os.precision(6);
  os << "~2^" << lg;
  return os.str();
}

Num add(const Num& a, const Num& b, std::size_t cap) {
  if (a.exact && b.exact) {
    BigInt s = *a.exact + *b.exact;
    if (bits(s) <= cap) return Num(s);
  }
  if (std::isnan(a.lg) || std::isnan(b.lg)) return Num::estimate(NAN);
  long double hi = std::max(a.lg, b.lg), lo = std::min(a.lg, b.lg);
  if (hi == kNegInf) return Num(0);
  if (std::isinf(hi)) return Num::estimate(hi);
  return Num::estimate(hi + std::log2l(1.0L + std::exp2l(lo - hi)));
}

Num mul(const Num& a, const Num& b, std::size_t cap) {
  if ((a.exact && *a.exact == 0) || (b.exact && *b.exact == 0)) return Num(0);
  if (a.exact && b.exact && bits(*a.exact) + bits(*b.exact) <= cap) return Num(*a.exact * *b.exact);
  return Num::estimate(a.lg + b.lg);
}

Num pow(const Num& base, const Num& e, std::size_t cap) {
  if (e.exact && *e.exact == 0) return Num(1);
  if (base.exact && (*base.exact == 0 || *base.exact == 1)) return Num(*base.exact);
  if (base.exact && e.exact && *e.exact <= cap) {
    auto ev = static_cast<std::uint64_t>(*e.exact);
    if (bits(*base.exact) * ev <= cap)
      return Num(boost::multiprecision::pow(*base.exact, static_cast<unsigned>(ev)));
  }
  long double ev = e.exact ? static_cast<long double>(*e.exact) : std::exp2l(e.lg);
  return Num::estimate(base.lg * ev);
}

Num sub_small(const Num& a, std::uint64_t b) {
  if (a.exact) {
    if (*a.exact < b) throw ScheduleError("schedule subtraction underflow");
    return Num(*a.exact - b);
  }
  if (a.lg > 80 || std::isnan(a.lg)) return Num::estimate(a.lg);
  return Num::estimate(std::log2l(std::exp2l(a.lg) - static_cast<long double>(b)));
}

BigRational Pow2::value() const {
  if (boost::multiprecision::abs(exponent) > 1'000'000)
    throw ScheduleError("power of two too large to materialize: 2^" + exponent.str());
  auto e = static_cast<long long>(exponent);
  BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? BigRational(BigInt(1), p) : BigRational(p);
}

}  // namespace lac
