// Copyright 2026 The relim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Error-probability arithmetic for the randomized lower bound, in log2 space.
// Quantities such as 2^-(D^(2T+2)) are far outside double range; only their
// base-2 logarithms are stored.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "relim/error.hpp"

namespace relim {

class ErrorBound {
 public:
  /// log2 of the value; -inf encodes 0.
  long double log2 = -std::numeric_limits<long double>::infinity();
  std::string provenance;
  std::vector<std::string> flags;

  static ErrorBound zero(std::string why = "zero") {
    ErrorBound b;
    b.provenance = std::move(why);
    return b;
  }
  static ErrorBound from_log2(long double l, std::string why = "input") {
    ErrorBound b;
    b.log2 = l;
    b.provenance = std::move(why);
    return b;
  }
  static ErrorBound from_value(long double v, std::string why = "input") {
    if (v < 0 || std::isnan(v)) throw InvalidArgument("error bound must be nonnegative");
    return v == 0 ? zero(std::move(why)) : from_log2(std::log2(v), std::move(why));
  }
  /// 2^-k.
  static ErrorBound pow2(long double k) { return from_log2(-k, "2^-" + std::to_string(k)); }

  bool is_zero() const { return std::isinf(log2) && log2 < 0; }
  long double value() const { return is_zero() ? 0.0L : std::exp2(log2); }
  bool flagged() const { return !flags.empty(); }
  bool is_probability() const { return is_zero() || log2 <= 0; }
};

inline long double log2_of(long double v) { return std::log2(v); }

inline void check_delta(int delta) {
  if (delta < 1) throw InvalidArgument("delta must be positive");
}

/// q = 5 D p^(1/(D+1)). Valid for p <= 4^-(D+1); computed and flagged beyond.
inline ErrorBound amplified_error(const ErrorBound& p, int delta) {
  check_delta(delta);
  if (p.is_zero()) return ErrorBound::zero("amplified_error");
  ErrorBound q = ErrorBound::from_log2(log2_of(5.0L * delta) + p.log2 / (delta + 1),
                                       "amplified_error");
  if (p.log2 > -2.0L * (delta + 1)) q.flags.push_back("p above 4^-(D+1)");
  if (!q.is_probability()) q.flags.push_back("not a probability");
  return q;
}

/// (5D)^2 p^(1/(D+1)^T).
inline ErrorBound iterated_error(const ErrorBound& p, int delta, int t) {
  check_delta(delta);
  if (t < 0) throw InvalidArgument("T must be nonnegative");
  if (p.is_zero()) return ErrorBound::zero("iterated_error");
  const long double scale = std::pow(static_cast<long double>(delta + 1), t);
  ErrorBound q = ErrorBound::from_log2(2 * log2_of(5.0L * delta) + p.log2 / scale,
                                       "iterated_error");
  if (!p.is_probability()) q.flags.push_back("input not a probability");
  if (!q.is_probability()) q.flags.push_back("not a probability");
  return q;
}

/// D^-D; the base-case lemma assumes D >= 8.
inline ErrorBound base_threshold(int delta) {
  check_delta(delta);
  ErrorBound b = ErrorBound::from_log2(-delta * log2_of(delta), "base_threshold");
  if (delta < 8) b.flags.push_back("D below 8");
  return b;
}

struct MultiRoundThreshold {
  ErrorBound threshold;
  /// log2 of ((5D)^2 D^D)^((D+1)^T), the reciprocal of the smallest error
  /// probability the induction rules out.
  long double chain_lhs_log2 = 0;
  /// D^(2T+2), so that the threshold is 2^-rhs.
  long double chain_rhs_log2 = 0;
  bool chain_holds = false;
};

/// 2^-(D^(2T+2)), with the proof inequality ((5D)^2 D^D)^((D+1)^T) < 2^(D^(2T+2)).
inline MultiRoundThreshold multi_round_threshold(int delta, int t) {
  check_delta(delta);
  if (t < 0) throw InvalidArgument("T must be nonnegative");
  MultiRoundThreshold m;
  m.chain_rhs_log2 = std::pow(static_cast<long double>(delta), 2 * t + 2);
  m.threshold = ErrorBound::from_log2(-m.chain_rhs_log2, "multi_round_threshold");
  if (t > std::sqrt(static_cast<long double>(delta)) / 16) {
    m.threshold.flags.push_back("T above sqrt(D)/16");
  }
  m.chain_lhs_log2 = std::pow(static_cast<long double>(delta + 1), t) *
                     (2 * log2_of(5.0L * delta) + delta * log2_of(delta));
  m.chain_holds = m.chain_lhs_log2 < m.chain_rhs_log2;
  return m;
}

struct FailureComparison {
  /// log2 of 2^-(D^(2T+2)).
  long double failure_log2 = 0;
  /// log2 of 1/n.
  long double inverse_n_log2 = 0;
  bool failure_exceeds = false;
};

/// Is 2^-(D^(2T+2)) > 1/n?
inline FailureComparison failure_vs_n(int delta, int t, long double n) {
  check_delta(delta);
  if (n < 2) throw InvalidArgument("n must be at least 2");
  FailureComparison c;
  c.failure_log2 = -std::pow(static_cast<long double>(delta), 2 * t + 2);
  c.inverse_n_log2 = -log2_of(n);
  c.failure_exceeds = c.failure_log2 > c.inverse_n_log2;
  return c;
}

struct IntermediateInequality {
  /// D^(2T+2).
  long double lhs_exponent = 0;
  /// 2^(sqrt(D) log2(sqrt(D)) / 3).
  long double rhs_exponent = 0;
  /// 2^-lhs > 2^-rhs.
  bool holds = false;
};

inline IntermediateInequality intermediate_inequality(int delta, int t) {
  check_delta(delta);
  IntermediateInequality r;
  const long double s = std::sqrt(static_cast<long double>(delta));
  r.lhs_exponent = std::pow(static_cast<long double>(delta), 2 * t + 2);
  r.rhs_exponent = std::exp2(s * log2_of(s) / 3);
  r.holds = r.lhs_exponent < r.rhs_exponent;
  return r;
}

struct IdCountBound {
  long double neighborhood_log2 = 0;
  long double n_log2 = 0;
  bool neighborhood_below_n = false;

  long double neighborhood() const { return std::exp2(neighborhood_log2); }
  long double n() const { return std::exp2(n_log2); }
};

/// A radius-T view holds fewer than D^T nodes; the construction has about D^D.
inline IdCountBound id_count_bound(int delta, int t) {
  check_delta(delta);
  if (t < 0) throw InvalidArgument("T must be nonnegative");
  IdCountBound b;
  b.neighborhood_log2 = t * log2_of(delta);
  b.n_log2 = delta * log2_of(delta);
  b.neighborhood_below_n = b.neighborhood_log2 < b.n_log2;
  return b;
}

}  // namespace relim
