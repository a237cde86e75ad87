#include "lacolor/schedule.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace lac {

namespace {

std::size_t bits(const BigInt& v) { return v == 0 ? 0 : boost::multiprecision::msb(v) + 1; }

BigInt floor_div(const BigInt& a, const BigInt& d) {
  BigInt q = a / d;
  if (a < 0 && q * d != a) q -= 1;
  return q;
}

Num na() { return Num::estimate(NAN); }

}  // namespace

std::optional<BigInt> eta_exponent(const EtaParams& p, const BigInt& a) {
  if (!p.A.exact) return std::nullopt;
  BigInt num = a - *p.A.exact - 1;
  if (p.D.exact) return floor_div(num, *p.D.exact);
  // huge denominator: the floor is 0 or -1 once |num| is far below D
  BigInt mag = num < 0 ? BigInt(-num) : num;
  if (p.D.lg > static_cast<long double>(bits(mag) + 1)) return num < 0 ? BigInt(-1) : BigInt(0);
  return std::nullopt;
}

std::uint64_t to_u64(const Num& v, const char* what) {
  const BigInt& x = v.value(what);
  if (x > std::numeric_limits<std::uint64_t>::max())
    throw ScheduleError(std::string(what) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(x);
}

std::uint64_t ParameterSchedule::r(std::size_t n) const { return to_u64(at(n).r, "r_n"); }
std::uint64_t ParameterSchedule::s(std::size_t n) const { return to_u64(at(n).s, "s_n"); }
std::uint64_t ParameterSchedule::r_plus(std::size_t n) const { return to_u64(at(n).r_plus, "r_n^+"); }
std::uint64_t ParameterSchedule::r_minus(std::size_t n) const {
  return to_u64(at(n).r_minus, "r_n^-");
}
std::uint64_t ParameterSchedule::R_plus(std::size_t n) const { return to_u64(at(n).R_plus, "R_n^+"); }
std::uint64_t ParameterSchedule::R_minus(std::size_t n) const {
  return to_u64(at(n).R_minus, "R_n^-");
}
std::uint64_t ParameterSchedule::L(std::size_t n) const { return to_u64(at(n).L, "L_n"); }
std::uint64_t ParameterSchedule::L_prev(std::size_t n) const { return n == 0 ? 1 : L(n - 1); }
std::uint64_t ParameterSchedule::Gamma_plus(std::size_t n) const {
  return to_u64(at(n).Gamma_plus, "Gamma_n^+");
}
std::uint64_t ParameterSchedule::eps(std::size_t n) const {
  return static_cast<std::uint64_t>(at(n).eps);
}

Pow2 eta_bar(std::size_t n, const BigInt& a, const ParameterSchedule& sched) {
  auto e = eta_exponent(sched.at(n).eta, a);
  if (!e) throw ScheduleError("eta_bar exponent not decidable at level " + std::to_string(n));
  return {*e};
}

bool r_hat_predicate(const EtaParams& eta, const BigInt& m, const BigInt& k, const BigInt& r) {
  auto e1 = eta_exponent(eta, r);
  if (!e1) throw ScheduleError("eta exponent not decidable");
  if (*e1 < 0) return false;  // sqrt(eta) < 1, so the left side is below 1
  if (*e1 > (BigInt(1) << 26)) throw ScheduleError("eta exponent too large to square-root");
  auto e1u = static_cast<unsigned>(*e1);
  BigInt y = (e1u % 2 == 0) ? (BigInt(1) << (e1u / 2))
                            : BigInt(boost::multiprecision::sqrt(BigInt(1) << e1u));
  auto E = eta_exponent(eta, y - 6);
  if (!E) throw ScheduleError("eta exponent not decidable");
  if (*E < 0) return false;  // left side < 1 < right side
  if (m <= 1) {
    // (4*m^{kr}+6)^2 is 36 or 100
    BigInt rhs = m == 0 ? 36 : 100;
    return *E > bits(rhs) + 1 || (BigInt(1) << static_cast<unsigned>(*E)) > rhs;
  }
  BigInt kr = k * r;
  std::size_t mb = bits(m);
  if (kr * mb <= (BigInt(1) << 20)) {
    BigInt t = 4 * boost::multiprecision::pow(m, static_cast<unsigned>(kr)) + 6;
    BigInt rhs = t * t;
    std::size_t rb = bits(rhs);
    if (*E >= rb) return true;
    if (*E + 1 < rb) return false;
    return (BigInt(1) << static_cast<unsigned>(*E)) > rhs;
  }
  if ((m & (m - 1)) == 0) {
    // m = 2^j: rhs lies in (2^{2T+4}, 3.0625 * 2^{2T+4}] with T = kr*j
    BigInt T = kr * (mb - 1);
    BigInt lo = 2 * T + 4;
    if (*E <= lo) return false;
    if (*E >= lo + 2) return true;
    return T >= 2;
  }
  long double t = static_cast<long double>(kr) * std::log2l(static_cast<long double>(m));
  long double lo = 2 * (2 + t), hi = lo + 2 * std::log2l(1.75L);
  long double Ev = static_cast<long double>(*E);
  long double slack = 1e-12L * std::max(1.0L, lo) + 1;
  if (Ev > hi + slack) return true;
  if (Ev < lo - slack) return false;
  throw ScheduleError("r_hat predicate undecidable within long double precision");
}

BigInt solve_r_hat(const EtaParams& eta, const BigInt& m, const BigInt& k) {
  if (!eta.A.exact || !eta.D.exact) throw ScheduleError("eta parameters not materialized");
  // Within a block of constant floor exponent the left side is constant and
  // the right side nondecreasing in r, so the least solution is a block start.
  const BigInt& A = *eta.A.exact;
  const BigInt& D = *eta.D.exact;
  for (unsigned e = 0; e < (1u << 20); ++e) {
    BigInt r = A + 1 + D * e;
    if (r >= 1 && r_hat_predicate(eta, m, k, r)) return r;
  }
  throw ScheduleError("r_hat search exceeded block limit");
}

BigInt solve_r_hat(std::size_t n, const ParameterSchedule& sched) {
  const auto& lv = sched.at(n);
  BigInt m = (n == 0 ? BigInt(sched.delta) : sched.at(n - 1).Delta_bar.value("Delta_{n-1}")) - 1;
  const BigInt& s = lv.s.value("s_n");
  return solve_r_hat(lv.eta, m, s * s * (3 * s + 1));
}

TupleValues evaluate_tuple(const ParameterSchedule& sched, const std::vector<Num>& a) {
  TupleValues out;
  Num L = 1, Gp = 0, Delta = sched.delta;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Num& s = sched.at(i).s;
    Num Rm = sub_small(mul(4, a[i]), 1);
    Num Rp = mul(a[i], add(mul(2, s), 3));
    Num Gm_i = add(mul(Rm, L), Gp);
    Num Gp_i = add(mul(Rp, L), Gp);
    Delta = mul(4, pow(sub_small(Delta, 1), mul(2, Rp)));
    L = mul(L, add(mul(2, Rp), 1));
    out.R_minus = Rm;
    out.R_plus = Rp;
    out.Gamma_minus = Gm_i;
    out.Gamma_plus = Gp_i;
    Gp = Gp_i;
  }
  out.L = L;
  out.Delta = Delta;
  return out;
}

namespace {

// true/false when decidable from exact values or a clear log gap
bool geq(const Num& a, const Num& b) {
  if (a.exact && b.exact) return *a.exact >= *b.exact;
  if (a.lg > b.lg + 1) return true;
  if (a.lg + 1 < b.lg) return false;
  throw ScheduleError("comparison of unmaterialized quantities is undecidable");
}

}  // namespace

GammaLemmaResult check_gamma_lemma(const ParameterSchedule& sched, std::size_t n,
                                   const std::vector<Num>& a) {
  if (a.size() != n + 1) throw ScheduleError("tuple length must be n+1");
  auto tv = evaluate_tuple(sched, a);
  const auto& lv = sched.at(n);
  GammaLemmaResult r;
  r.lhs_minus = mul(a[n], lv.s);
  r.rhs_minus = add(mul(2, tv.Gamma_minus), lv.eps);
  r.lhs_plus = mul(a[n], mul(lv.s, lv.s));
  r.rhs_plus = add(mul(2, tv.Gamma_plus), lv.eps);
  r.minus_ok = geq(r.lhs_minus, r.rhs_minus);
  r.plus_ok = geq(r.lhs_plus, r.rhs_plus);
  return r;
}

ParameterSchedule build_schedule(const ScheduleRequest& req) {
  if (req.delta < 2) throw ScheduleError("degree bound must be at least 2");
  const bool desk = req.mode == ScheduleMode::desk;
  std::size_t N = desk ? req.r.size() : (req.levels ? req.levels : req.eps.size());
  if (desk && req.s.size() != req.r.size())
    throw ScheduleError("desk mode needs one s_n per r_n");
  if (N == 0) throw ScheduleError("schedule needs at least one level");
  std::vector<BigInt> eps = req.eps;
  if (eps.empty() && desk)
    for (std::size_t i = 0; i < N; ++i) eps.push_back(i + 1);
  if (eps.size() < N) throw ScheduleError("need one epsilon per level");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] <= 0) throw ScheduleError("epsilon values must be positive");
    if (i && eps[i] <= eps[i - 1]) throw ScheduleError("epsilon values must be strictly increasing");
  }
  if (desk)
    for (std::size_t i = 0; i < N; ++i) {
      if (req.s[i] < 3) throw ScheduleError("desk s_" + std::to_string(i) + " must be >= 3");
      std::uint64_t need = i == 0 ? 12 : 1;
      if (req.r[i] < need)
        throw ScheduleError("desk r_" + std::to_string(i) + " must be >= " + std::to_string(need));
    }

  const std::size_t cap = req.materialize_bits;
  ParameterSchedule S;
  S.mode = req.mode;
  S.delta = req.delta;
  S.levels.resize(N);

  Num L_prev = 1, Lbar_prev = 1, Gp_prev = 0, Gpbar_prev = 0;
  Num Delta_prev = req.delta, Deltabar_prev = req.delta, Deltabar_prev2 = req.delta;
  Num Ups_prev = 0;

  for (std::size_t n = 0; n < N; ++n) {
    LevelConstants& lv = S.levels[n];
    lv.n = static_cast<int>(n);
    lv.eps = eps[n];

    if (desk) {
      lv.s = req.s[n];
    } else if (n == 0) {
      lv.s = Num(27 + eps[0]);
    } else {
      lv.s = add(add(add(27, mul(10, Lbar_prev, cap), cap), mul(2, Gpbar_prev, cap), cap),
                 Num(eps[n]), cap);
    }

    lv.eta.A = pow(Deltabar_prev, 11, cap);
    if (n == 0) {
      lv.eta.D = pow(Num(req.delta), 3, cap);
    } else {
      const auto& pl = S.levels[n - 1];
      lv.eta.D = pow(Deltabar_prev2, mul(mul(pl.r_bar, pl.r_bar, cap), pl.s, cap), cap);
    }

    if (desk) {
      lv.r_hat = req.r[n];
      lv.r_source = "override";
      lv.notes["r_hat"] = "desk mode: r_hat := r";
    } else if (lv.eta.A.known() && lv.eta.D.known() && lv.s.known() && Deltabar_prev.known()) {
      const BigInt& s = *lv.s.exact;
      lv.r_hat = solve_r_hat(lv.eta, *Deltabar_prev.exact - 1, s * s * (3 * s + 1));
    } else {
      lv.r_hat = Num::estimate(add(lv.eta.A, mul(lv.eta.D, 128)).lg);
      lv.notes["r_hat"] = "not materialized; log2 estimate of A + D*2^7";
    }
    lv.r_bar = mul(lv.r_hat, add(mul(3, lv.s), 1), cap);

    if (desk) {
      lv.r = req.r[n];
    } else if (n < req.use_hat.size() && req.use_hat[n]) {
      lv.r = lv.r_hat;
      lv.r_source = "r_hat";
    } else {
      lv.r = lv.r_bar;
      lv.r_source = "r_bar";
    }
    lv.r_minus = lv.r;
    lv.r_plus = mul(lv.r, lv.s, cap);

    Num two_s_3 = add(mul(2, lv.s), 3);
    lv.R_minus = sub_small(mul(4, lv.r, cap), 1);
    lv.R_plus = mul(lv.r, two_s_3, cap);
    lv.l = add(mul(2, lv.R_plus, cap), 1, cap);
    lv.L = mul(L_prev, lv.l, cap);
    lv.Gamma_minus = add(mul(lv.R_minus, L_prev, cap), Gp_prev, cap);
    lv.Gamma_plus = add(mul(lv.R_plus, L_prev, cap), Gp_prev, cap);
    lv.Delta = mul(4, pow(sub_small(Delta_prev, 1), mul(2, lv.R_plus, cap), cap), cap);

    lv.R_plus_bar = mul(lv.r_bar, two_s_3, cap);
    Num Rm_bar = sub_small(mul(4, lv.r_bar, cap), 1);
    lv.L_bar = mul(Lbar_prev, add(mul(2, lv.R_plus_bar, cap), 1, cap), cap);
    lv.Gamma_minus_bar = add(mul(Rm_bar, Lbar_prev, cap), Gpbar_prev, cap);
    lv.Gamma_plus_bar = add(mul(lv.R_plus_bar, Lbar_prev, cap), Gpbar_prev, cap);
    lv.Delta_bar = mul(4, pow(sub_small(Deltabar_prev, 1), mul(2, lv.R_plus_bar, cap), cap), cap);

    lv.W = n == 0 ? 10 : 2;
    lv.Upsilon = add(add(add(Ups_prev, mul(L_prev, add(add(lv.W, mul(3, lv.R_plus, cap), cap), 1),
                                           cap),
                             cap),
                         mul(2, lv.Gamma_plus, cap), cap),
                     mul(n, lv.L, cap), cap);
    lv.delta = add(add(mul(4, lv.Gamma_plus, cap), lv.Upsilon, cap), mul(2, lv.L, cap), cap);

    L_prev = lv.L;
    Lbar_prev = lv.L_bar;
    Gp_prev = lv.Gamma_plus;
    Gpbar_prev = lv.Gamma_plus_bar;
    Delta_prev = lv.Delta;
    Deltabar_prev2 = Deltabar_prev;
    Deltabar_prev = lv.Delta_bar;
    Ups_prev = lv.Upsilon;
  }

  // K needs s and r̄ one level ahead
  Num K_prev = 0;
  for (std::size_t n = 0; n < N; ++n) {
    LevelConstants& lv = S.levels[n];
    Num inner = add(mul(lv.r, mul(lv.s, lv.s, cap), cap),
                    mul(lv.r, add(mul(2, lv.s), 1), cap), cap);
    lv.K_bar = add(K_prev, mul(lv.L, inner, cap), cap);
    if (n + 1 < N) {
      const auto& nx = S.levels[n + 1];
      Num tail = add(add(mul(nx.s, nx.R_plus_bar, cap), lv.Gamma_plus_bar, cap),
                     mul(2, lv.R_plus_bar, cap), cap);
      lv.K = add(lv.K_bar, mul(lv.L, tail, cap), cap);
    } else {
      lv.K = na();
      lv.notes["K"] = "needs s and r_bar of level n+1";
    }
    K_prev = lv.K;
  }
  return S;
}

std::string format_schedule_table(const ParameterSchedule& S) {
  std::ostringstream os;
  os << "mode=" << (S.mode == ScheduleMode::paper ? "paper" : "desk") << " Delta=" << S.delta
     << "\n";
  auto row = [&](const char* name, auto get) {
    os << std::left << std::setw(12) << name;
    for (const auto& lv : S.levels) os << " | " << get(lv).str();
    os << "\n";
  };
  os << std::left << std::setw(12) << "n";
  for (const auto& lv : S.levels) os << " | " << lv.n;
  os << "\n";
  row("eps", [](const LevelConstants& l) { return Num(l.eps); });
  row("s", [](const LevelConstants& l) { return l.s; });
  row("r_hat", [](const LevelConstants& l) { return l.r_hat; });
  row("r_bar", [](const LevelConstants& l) { return l.r_bar; });
  row("r", [](const LevelConstants& l) { return l.r; });
  row("r+", [](const LevelConstants& l) { return l.r_plus; });
  row("R-", [](const LevelConstants& l) { return l.R_minus; });
  row("R+", [](const LevelConstants& l) { return l.R_plus; });
  row("l", [](const LevelConstants& l) { return l.l; });
  row("L", [](const LevelConstants& l) { return l.L; });
  row("Gamma-", [](const LevelConstants& l) { return l.Gamma_minus; });
  row("Gamma+", [](const LevelConstants& l) { return l.Gamma_plus; });
  row("Delta", [](const LevelConstants& l) { return l.Delta; });
  row("K_bar", [](const LevelConstants& l) { return l.K_bar; });
  row("K", [](const LevelConstants& l) { return l.K; });
  row("Upsilon", [](const LevelConstants& l) { return l.Upsilon; });
  row("delta", [](const LevelConstants& l) { return l.delta; });
  for (const auto& lv : S.levels)
    for (const auto& [k, v] : lv.notes) os << "note[" << lv.n << "] " << k << ": " << v << "\n";
  return os.str();
}

}  // namespace lac
