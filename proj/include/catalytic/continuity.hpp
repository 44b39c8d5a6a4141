#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "catalytic/catalyst.hpp"
#include "catalytic/measures.hpp"

namespace catalytic {

enum class EtaKind { zero, linear, tlog };

/// Vanishing modulus eta(t) added to a continuity bound.
///   zero:   0
///   linear: c t
///   tlog:   c t log2(1/t) for t <= 1/e, and its maximum c log2(e)/e beyond
struct EtaModel {
  EtaKind kind = EtaKind::zero;
  double coefficient = 0.0;

  double operator()(double t) const;
  std::string name() const;
  // "zero", "linear:<c>", "tlog:<c>"
  static EtaModel parse(const std::string& text);
};

/// Bound |f(mu) - f(nu)| <= K t (log2 D)^alpha + eta(t) with t = ||mu - nu||_1.
/// alpha = 1 is plain asymptotic continuity.
struct ContinuityParams {
  double K = 1.0;
  double alpha = 1.0;
  EtaModel eta;

  // Throws unless K > 0 and 0 < alpha <= 1.
  void validate() const;
};

// K t (log2 D)^alpha + eta(t); throws unless t in [0, 2] and D >= 2.
double continuity_rhs(const ContinuityParams& p, double t, std::size_t dim);
// Same with log2 D supplied directly, for dimensions that do not fit an integer.
double continuity_rhs_log2(const ContinuityParams& p, double t, double log2_dim);

struct ContinuityReport {
  // max over pairs of |f(mu) - f(nu)| - rhs; positive means a counterexample
  double max_violation = 0.0;
  std::size_t worst_index = 0;
  std::size_t evaluated = 0;

  bool violated(double tol = 1e-8) const noexcept { return max_violation > tol; }
};

ContinuityReport audit_continuity(const MeasureDescriptor& f, std::span<const StatePair> pairs,
                                  const ContinuityParams& p);

struct DemoRow {
  std::size_t n = 0;
  std::size_t d = 0;
  double log2_dim = 0.0;  // log2 of d^(n+1)
  double c = 0.0;
  double T = 0.0;         // ||Gamma - Gamma'||_1
  double bound_T = 0.0;   // 2/(n-1)
  double alpha = 0.0;
  double rhs = 0.0;        // K T (log2 D)^alpha
  double rhs_paper = 0.0;  // (2K/(n-1)) (n+1)^alpha (log2 d)^alpha
  double eta = 0.0;        // eta(T), reported separately
  bool crossed = false;    // rhs_paper < c

  // d^(n+1) as an integer when it fits in 64 bits, else "d^(n+1)".
  std::string dimension_text() const;
};

struct Crossover {
  double alpha;
  std::optional<std::size_t> n;  // first tested n with rhs_paper < c
};

// Dense evaluation of the proof chain at small n.
struct DenseCheck {
  std::size_t n;
  double gap_rho_sigma;  // |f(rho (x) Gamma) - f(sigma (x) Gamma)|, should equal c
  double gap_permuted;   // |f(sigma (x) Gamma') - f(rho (x) Gamma)|, should be 0
};

struct DemoOptions {
  double K = 1.0;
  std::vector<double> alphas{0.25, 0.5, 0.75, 0.9, 1.0};
  EtaModel eta;
  DistanceMethod method = DistanceMethod::automatic;
  std::size_t dense_cap = kDefaultDenseCap;
  // largest d^(n+1) for which the chain is also evaluated densely
  std::size_t dense_check_cap = 1024;
  std::uint64_t audit_seed = 7;
  // party split of rho and sigma; single party when unset
  std::optional<Partition> partition;
};

struct DemoTable {
  double c = 0.0;
  std::vector<DemoRow> rows;  // ascending n, then alphas in the given order
  std::vector<Crossover> crossovers;
  std::vector<DenseCheck> dense_checks;
};

/// Evaluates the contradiction chain for each n: c from the base pair (f
/// additive), T from the catalyst, and both right-hand sides per alpha.
/// Throws std::domain_error if f fails its additivity or permutation audit;
/// std::invalid_argument if c vanishes or on a bad n_list or alpha list.
DemoTable theorem_demo(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasureDescriptor& f,
                       std::span<const std::size_t> n_list, const DemoOptions& opts = {});

// Header plus one row per DemoRow: n,D,c,T,bound_T,alpha,rhs,rhs_paper,crossed
std::string demo_csv(const DemoTable& table);

// Re-checks T <= bound_T + 1e-9 and rhs <= rhs_paper (1 + 1e-9); returns
// the indices of failing rows.
std::vector<std::size_t> check_demo_rows(const DemoTable& table);

struct FamilyPoint {
  double delta_f;   // |f(mu) - f(nu)|
  double distance;  // ||mu - nu||_1
  double log2_dim;
};

struct ExponentFit {
  double alpha;
  double log_K;  // intercept
  double std_error;
  double lower;  // alpha -/+ 1.96 std_error
  double upper;
  std::vector<double> residuals;
};

// Least-squares slope of log(delta_f) - log(distance) against log(log2 D).
// Throws on fewer than 4 points, non-positive values, or a single dimension.
ExponentFit fit_continuity_exponent(std::span<const FamilyPoint> family);

// (c, ||Gamma - Gamma'||_1, log2 d^(n+1)) for each n.
std::vector<FamilyPoint> theorem_family(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const MeasureDescriptor& f, std::span<const std::size_t> n_list,
                                        DistanceMethod method = DistanceMethod::automatic);

}  // namespace catalytic
