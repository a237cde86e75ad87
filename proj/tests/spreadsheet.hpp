#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

// Plain re-evaluation of the level recursions from (r_n, s_n), written
// straight from the formulas and sharing no code with the library.
namespace sheet {

using boost::multiprecision::cpp_int;

inline cpp_int ipow(cpp_int b, unsigned e) {
  cpp_int out = 1;
  while (e--) out *= b;
  return out;
}

struct Row {
  cpp_int R_minus, R_plus, l, L, Gamma_minus, Gamma_plus, Delta, K_bar, K, Upsilon, delta;
  bool delta_small = false;
};

inline std::vector<Row> spreadsheet(std::uint64_t D, const std::vector<std::uint64_t>& r, const std::vector<std::uint64_t>& s) {
  std::vector<Row> rows(r.size());
  cpp_int L_prev = 1, Gp_prev = 0, Delta_prev = D, Ups_prev = 0;
  bool small = true;
  for (std::size_t n = 0; n < r.size(); ++n) {
    Row& w = rows[n];
    w.R_minus = 4 * cpp_int(r[n]) - 1;
    w.R_plus = cpp_int(r[n]) * (2 * s[n] + 3);
    w.l = 2 * w.R_plus + 1;
    w.L = L_prev * w.l;
    w.Gamma_minus = w.R_minus * L_prev + Gp_prev;
    w.Gamma_plus = w.R_plus * L_prev + Gp_prev;
    // only materialize Δ_n while it stays modest
    if (small && msb(Delta_prev) * 2 * static_cast<unsigned>(w.R_plus) < 200000) {
      w.Delta = 4 * ipow(Delta_prev - 1, 2 * static_cast<unsigned>(w.R_plus));
      w.delta_small = true;
    } else {
      small = false;
    }
    cpp_int W = n == 0 ? 10 : 2;
    w.Upsilon = Ups_prev + L_prev * (W + 3 * w.R_plus + 1) + 2 * w.Gamma_plus + cpp_int(n) * w.L;
    w.delta = 4 * w.Gamma_plus + w.Upsilon + 2 * w.L;
    L_prev = w.L;
    Gp_prev = w.Gamma_plus;
    if (w.delta_small) Delta_prev = w.Delta;
    Ups_prev = w.Upsilon;
  }
  // K̄_n, K_n with r̄ = r(3s+1) plugged into the barred tuple
  cpp_int K_prev = 0, Lbar_prev = 1, Gpbar_prev = 0;
  std::vector<cpp_int> Rpbar(r.size()), Gpbar(r.size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    cpp_int rbar = cpp_int(r[n]) * (3 * s[n] + 1);
    Rpbar[n] = rbar * (2 * s[n] + 3);
    Gpbar[n] = Rpbar[n] * Lbar_prev + Gpbar_prev;
    Lbar_prev *= 2 * Rpbar[n] + 1;
    Gpbar_prev = Gpbar[n];
  }
  for (std::size_t n = 0; n < r.size(); ++n) {
    Row& w = rows[n];
    cpp_int rn = r[n], sn = s[n];
    w.K_bar = K_prev + w.L * (rn * sn * sn + rn * (2 * sn + 1));
    if (n + 1 < r.size()) w.K = w.K_bar + w.L * (cpp_int(s[n + 1]) * Rpbar[n + 1] + Gpbar[n] + 2 * Rpbar[n]);
    K_prev = w.K;
  }
  return rows;
}

// r̂_0 for degree 2 by a direct scan.  Δ-1 = 1 makes the right side
// (4+6)^2 = 100; η̄_0(a) = 2^floor((a-2049)/8) exceeds it iff
// floor((a-2049)/8) >= 7 iff a >= 2105, with a = sqrt(η̄_0(r)) - 6.
inline long long r_hat0_degree2_scan(long long limit = 5000) {
  for (long long r = 2049; r < limit; ++r) {
    long long e1 = (r - 2049) / 8;
    if (ipow(2, static_cast<unsigned>(e1)) >= cpp_int(2111) * 2111) return r;
  }
  return -1;
}

}  // namespace sheet
