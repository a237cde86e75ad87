#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lac {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonnegative quantity: exact when it fits the materialization cap, and
// always carried as a log2 estimate (infinite when that overflows too).
struct Num {
  std::optional<BigInt> exact;
  long double lg = 0;  // log2 of the value; -inf for zero

  Num() = default;
  Num(const BigInt& v);  // NOLINT
  Num(std::uint64_t v) : Num(BigInt(v)) {}  // NOLINT
  static Num estimate(long double lg2);

  bool known() const { return exact.has_value(); }
  const BigInt& value(const char* what) const;
  std::string str() const;  // decimal or "~2^x"
};

inline constexpr std::size_t kDefaultMaterializeBits = std::size_t{1} << 20;

Num add(const Num& a, const Num& b, std::size_t cap = kDefaultMaterializeBits);
Num mul(const Num& a, const Num& b, std::size_t cap = kDefaultMaterializeBits);
Num pow(const Num& base, const Num& exponent, std::size_t cap = kDefaultMaterializeBits);
Num sub_small(const Num& a, std::uint64_t b);  // a - b, requires a >= b when exact

enum class ScheduleMode { paper, desk };

// Parameters of an eta-type function 2^floor((a - A - 1)/D).
struct EtaParams {
  Num A;  // Δ_{n-1}^11
  Num D;  // Δ^3 at level 0, Δ_{n-2}^{r̄_{n-1}^2 s_{n-1}} after
};

// 2^exponent with an integer, possibly negative, exponent.
struct Pow2 {
  BigInt exponent;
  BigRational value() const;  // throws when |exponent| is too large
  bool operator==(const Pow2&) const = default;
};

// floor((a - A - 1)/D); nullopt only when D is not materialized and a is
// not small enough to decide the floor from the log estimate.
std::optional<BigInt> eta_exponent(const EtaParams& p, const BigInt& a);

struct LevelConstants {
  int n = 0;
  BigInt eps;
  Num s, r_hat, r_bar, r, r_minus, r_plus;
  Num R_minus, R_plus, l, Delta, L, Gamma_minus, Gamma_plus;
  Num K_bar, K, W, Upsilon, delta;
  // same functions evaluated on the tuple (r̄_0,...,r̄_n)
  Num R_plus_bar, L_bar, Gamma_minus_bar, Gamma_plus_bar, Delta_bar;
  EtaParams eta;
  std::string r_source;  // "override", "r_bar", "r_hat"
  std::map<std::string, std::string> notes;
};

struct ScheduleRequest {
  ScheduleMode mode = ScheduleMode::desk;
  std::uint64_t delta = 2;
  std::vector<BigInt> eps;                 // desk: defaults to 1..levels
  std::vector<std::uint64_t> r, s;         // desk overrides
  std::vector<bool> use_hat;               // paper: case (B) per level
  std::size_t levels = 0;                  // paper: number of levels (defaults to eps.size())
  std::size_t materialize_bits = kDefaultMaterializeBits;
};

class ParameterSchedule {
 public:
  ScheduleMode mode = ScheduleMode::desk;
  std::uint64_t delta = 2;
  std::vector<LevelConstants> levels;

  std::size_t size() const { return levels.size(); }
  const LevelConstants& at(std::size_t n) const { return levels.at(n); }

  // machine-sized accessors; throw ScheduleError when not materialized
  std::uint64_t r(std::size_t n) const;
  std::uint64_t s(std::size_t n) const;
  std::uint64_t r_plus(std::size_t n) const;
  std::uint64_t r_minus(std::size_t n) const;
  std::uint64_t R_plus(std::size_t n) const;
  std::uint64_t R_minus(std::size_t n) const;
  std::uint64_t L(std::size_t n) const;  // L(-1) via L_prev
  std::uint64_t L_prev(std::size_t n) const;
  std::uint64_t Gamma_plus(std::size_t n) const;
  std::uint64_t eps(std::size_t n) const;
};

std::uint64_t to_u64(const Num& v, const char* what);

// η̄_n(a) of a built schedule.
Pow2 eta_bar(std::size_t n, const BigInt& a, const ParameterSchedule& sched);

// Right-hand side (4 m^{k r} + 6)^2 < 2^E, decided exactly.
bool r_hat_predicate(const EtaParams& eta, const BigInt& m, const BigInt& k, const BigInt& r);
// Least positive r satisfying r_hat_predicate.
BigInt solve_r_hat(const EtaParams& eta, const BigInt& m, const BigInt& k);
BigInt solve_r_hat(std::size_t n, const ParameterSchedule& sched);

ParameterSchedule build_schedule(const ScheduleRequest& req);

struct GammaLemmaResult {
  bool minus_ok = false, plus_ok = false;
  Num lhs_minus, rhs_minus, lhs_plus, rhs_plus;
};
// a_n s_n >= 2Γ⁻_n(a)+ε_n and a_n s_n² >= 2Γ⁺_n(a)+ε_n for the tuple a.
GammaLemmaResult check_gamma_lemma(const ParameterSchedule& sched, std::size_t n,
                                   const std::vector<Num>& a);

// Γ^±_n, L_n and R^±_n evaluated on an arbitrary tuple.
struct TupleValues {
  Num L, Gamma_minus, Gamma_plus, R_minus, R_plus, Delta;
};
TupleValues evaluate_tuple(const ParameterSchedule& sched, const std::vector<Num>& a);

std::string format_schedule_table(const ParameterSchedule& sched);

}  // namespace lac
