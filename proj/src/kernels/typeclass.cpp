#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "catalytic/kernels.hpp"

namespace catalytic::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Neumaier-compensated running sum; order of add() calls fixes the result.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct LogTables {
  std::vector<double> log_p, log_q;
  double log_total_factorial;
};

LogTables make_tables(std::span<const double> p, std::span<const double> q, std::size_t total) {
  LogTables t;
  for (const double x : p) t.log_p.push_back(x > 0.0 ? std::log(x) : kNegInf);
  for (const double x : q) t.log_q.push_back(x > 0.0 ? std::log(x) : kNegInf);
  t.log_total_factorial = std::lgamma(static_cast<double>(total) + 1.0);
  return t;
}

// multinomial(total; c) * |exp(lq) - exp(lp)|, evaluated in log space.
double class_term(const LogTables& t, std::span<const std::size_t> counts) {
  double log_m = t.log_total_factorial;
  double lp = 0.0, lq = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::size_t c = counts[i];
    if (c == 0) continue;
    const double cd = static_cast<double>(c);
    log_m -= std::lgamma(cd + 1.0);
    lp += cd * t.log_p[i];
    lq += cd * t.log_q[i];
  }
  const double hi = std::max(lp, lq);
  const double lo = std::min(lp, lq);
  if (hi == kNegInf || lo == hi) return 0.0;
  const double gap = lo == kNegInf ? 0.0 : std::log1p(-std::exp(lo - hi));
  return std::exp(log_m + hi + gap);
}

// Visits compositions of `remaining` into counts[from..], lexicographic with
// earlier parts ascending.
template <class Fn>
void for_each_tail(std::vector<std::size_t>& counts, std::size_t from, std::size_t remaining, Fn&& fn) {
  if (from + 1 == counts.size()) {
    counts[from] = remaining;
    fn(counts);
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[from] = c;
    for_each_tail(counts, from + 1, remaining - c, fn);
  }
}

}  // namespace

namespace serial {

double typeclass_sum(std::span<const double> p, std::span<const double> q, std::size_t total) {
  const LogTables tables = make_tables(p, q, total);
  std::vector<std::size_t> counts(p.size(), 0);
  CompensatedSum acc;
  for_each_tail(counts, 0, total, [&](std::span<const std::size_t> c) { acc.add(class_term(tables, c)); });
  return acc.value();
}

}  // namespace serial

namespace parallel {

// One partial per value of the first count, reduced in ascending order, so
// the result does not depend on the thread count.
double typeclass_sum(std::span<const double> p, std::span<const double> q, std::size_t total) {
  const LogTables tables = make_tables(p, q, total);
  const std::size_t k = p.size();
  if (k == 1) {
    const std::size_t counts[1] = {total};
    return class_term(tables, counts);
  }
  std::vector<double> partial(total + 1, 0.0);
  const auto first_values = static_cast<std::int64_t>(total + 1);

#pragma omp parallel for schedule(dynamic, 64) if (total >= 256)
  for (std::int64_t c0 = 0; c0 < first_values; ++c0) {
    std::vector<std::size_t> counts(k, 0);
    counts[0] = static_cast<std::size_t>(c0);
    CompensatedSum acc;
    for_each_tail(counts, 1, total - counts[0],
                  [&](std::span<const std::size_t> c) { acc.add(class_term(tables, c)); });
    partial[static_cast<std::size_t>(c0)] = acc.value();
  }

  CompensatedSum acc;
  for (const double x : partial) acc.add(x);
  return acc.value();
}

}  // namespace parallel

}  // namespace catalytic::kernels
