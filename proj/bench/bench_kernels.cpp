// Serial reference vs OpenMP kernels. Prints CSV:
//   kernel,size,threads,serial_ms,parallel_ms,speedup,max_abs_diff

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "catalytic/density.hpp"
#include "catalytic/kernels.hpp"

using namespace catalytic;

namespace {

double best_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& kernel, const std::string& size, double s, double p, double diff) {
  std::printf("%s,%s,%d,%.3f,%.3f,%.2f,%.3e\n", kernel.c_str(), size.c_str(), omp_get_max_threads(), s, p,
              p > 0 ? s / p : 0.0, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("kernel,size,threads,serial_ms,parallel_ms,speedup,max_abs_diff\n");

  for (const std::size_t k : {6u, 8u, 10u}) {
    const Shape shape(k, 2);
    const CMatrix a = sample_random_state(Shape(k / 2, 2), 1u << (k / 2), 1).entries();
    const CMatrix b = sample_random_state(Shape(k - k / 2, 2), 1u << (k - k / 2), 2).entries();
    CMatrix ks, kp;
    const double ts = best_ms([&] { ks = kernels::serial::kron(a, b); }, reps);
    const double tp = best_ms([&] { kp = kernels::parallel::kron(a, b); }, reps);
    row("kron", "2^" + std::to_string(k), ts, tp, max_abs_difference(ks, kp));

    std::vector<std::size_t> image(k);
    std::iota(image.begin(), image.end(), 0);
    std::rotate(image.begin(), image.begin() + 1, image.end());
    CMatrix ps, pp;
    const double ps_ms = best_ms([&] { ps = kernels::serial::permute_registers(ks, shape, image); }, reps);
    const double pp_ms = best_ms([&] { pp = kernels::parallel::permute_registers(ks, shape, image); }, reps);
    row("permute_registers", "2^" + std::to_string(k), ps_ms, pp_ms, max_abs_difference(ps, pp));

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; i += 2) keep.push_back(i);
    CMatrix ts_m, tp_m;
    const double tr_s = best_ms([&] { ts_m = kernels::serial::partial_trace(ks, shape, keep); }, reps);
    const double tr_p = best_ms([&] { tp_m = kernels::parallel::partial_trace(ks, shape, keep); }, reps);
    row("partial_trace", "2^" + std::to_string(k), tr_s, tr_p, max_abs_difference(ts_m, tp_m));
  }

  for (const std::size_t d : {64u, 256u, 512u}) {
    const CMatrix m = sample_random_state(d, d, 3).entries();
    kernels::Tridiagonal s, p;
    const double t_s = best_ms([&] { s = kernels::serial::tridiagonalize(m); }, reps);
    const double t_p = best_ms([&] { p = kernels::parallel::tridiagonalize(m); }, reps);
    const auto es = kernels::tridiagonal_eigenvalues(s);
    const auto ep = kernels::tridiagonal_eigenvalues(p);
    double diff = 0.0;
    for (std::size_t i = 0; i < es.size(); ++i) diff = std::max(diff, std::abs(es[i] - ep[i]));
    row("tridiagonalize", std::to_string(d), t_s, t_p, diff);
  }

  for (const std::size_t n : {1000u, 100000u}) {
    const std::vector<double> p{1.0, 0.0};
    const std::vector<double> q{0.5, 0.5};
    double vs = 0.0, vp = 0.0;
    const double t_s = best_ms([&] { vs = kernels::serial::typeclass_sum(p, q, n); }, reps);
    const double t_p = best_ms([&] { vp = kernels::parallel::typeclass_sum(p, q, n); }, reps);
    row("typeclass_sum_d2", std::to_string(n), t_s, t_p, std::abs(vs - vp));
  }
  {
    const std::vector<double> p{0.5, 0.3, 0.2};
    const std::vector<double> q{0.2, 0.2, 0.6};
    double vs = 0.0, vp = 0.0;
    const double t_s = best_ms([&] { vs = kernels::serial::typeclass_sum(p, q, 2000); }, reps);
    const double t_p = best_ms([&] { vp = kernels::parallel::typeclass_sum(p, q, 2000); }, reps);
    row("typeclass_sum_d3", "2000", t_s, t_p, std::abs(vs - vp));
  }
  return 0;
}
