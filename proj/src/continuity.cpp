#include "catalytic/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "catalytic/eigen.hpp"
#include "catalytic/state_io.hpp"

namespace catalytic {

namespace {

constexpr double kCsvDigits = 12;

double parse_coefficient(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double c = 0.0;
  try {
    c = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(c >= 0.0)) throw std::invalid_argument("bad eta model \"" + whole + "\"");
  return c;
}

}  // namespace

double EtaModel::operator()(double t) const {
  switch (kind) {
    case EtaKind::zero:
      return 0.0;
    case EtaKind::linear:
      return coefficient * t;
    case EtaKind::tlog: {
      if (t <= 0.0) return 0.0;
      const double knee = 1.0 / std::exp(1.0);
      if (t >= knee) return coefficient * knee * std::log2(std::exp(1.0));
      return -coefficient * t * std::log2(t);
    }
  }
  return 0.0;
}

std::string EtaModel::name() const {
  switch (kind) {
    case EtaKind::zero:
      return "zero";
    case EtaKind::linear:
      return "linear:" + format_number(coefficient, 12);
    case EtaKind::tlog:
      return "tlog:" + format_number(coefficient, 12);
  }
  return "zero";
}

EtaModel EtaModel::parse(const std::string& text) {
  if (text == "zero") return {};
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const double c = colon == std::string::npos ? 1.0 : parse_coefficient(text.substr(colon + 1), text);
  if (head == "linear") return {EtaKind::linear, c};
  if (head == "tlog") return {EtaKind::tlog, c};
  throw std::invalid_argument("unknown eta model \"" + text + "\" (zero | linear:c | tlog:c)");
}

void ContinuityParams::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("continuity constant K must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("continuity exponent alpha must lie in (0, 1]");
}

double continuity_rhs_log2(const ContinuityParams& p, double t, double log2_dim) {
  p.validate();
  if (!(t >= 0.0 && t <= 2.0)) throw std::invalid_argument("1-norm distance " + std::to_string(t) + " outside [0, 2]");
  if (!(log2_dim >= 1.0)) throw std::invalid_argument("dimension must be at least 2");
  return p.K * t * std::pow(log2_dim, p.alpha) + p.eta(t);
}

double continuity_rhs(const ContinuityParams& p, double t, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
  return continuity_rhs_log2(p, t, std::log2(static_cast<double>(dim)));
}

ContinuityReport audit_continuity(const MeasureDescriptor& f, std::span<const StatePair> pairs,
                                  const ContinuityParams& p) {
  ContinuityReport rep;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [mu, nu] = pairs[i];
    if (mu.state.dimension() != nu.state.dimension())
      throw std::invalid_argument("continuity audit pair of different dimensions");
    const double t = std::min(2.0, trace_distance(mu.state, nu.state).one_norm);
    const double gap = std::abs(f.evaluate(mu) - f.evaluate(nu));
    const double v = gap - continuity_rhs(p, t, mu.state.dimension());
    if (i == 0 || v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_index = i;
    }
    ++rep.evaluated;
  }
  return rep;
}

std::string DemoRow::dimension_text() const {
  std::uint64_t dim = 1;
  bool fits = true;
  for (std::size_t i = 0; i <= n && fits; ++i) {
    if (dim > std::numeric_limits<std::uint64_t>::max() / d)
      fits = false;
    else
      dim *= d;
  }
  if (fits) return std::to_string(dim);
  return std::to_string(d) + "^" + std::to_string(n + 1);
}

DemoTable theorem_demo(const DensityMatrix& rho, const DensityMatrix& sigma, const MeasureDescriptor& f,
                       std::span<const std::size_t> n_list, const DemoOptions& opts) {
  if (n_list.empty()) throw std::invalid_argument("n list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) throw std::invalid_argument("n must be >= 2");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n list must be strictly ascending");
  }
  if (opts.alphas.empty()) throw std::invalid_argument("alpha list is empty");
  for (const double a : opts.alphas) ContinuityParams{opts.K, a, opts.eta}.validate();
  if (rho.shape() != sigma.shape()) throw std::invalid_argument("rho and sigma must share a shape");
  const std::size_t d = rho.dimension();
  if (d < 2) throw std::invalid_argument("states must have dimension at least 2");

  const Partition part = opts.partition.value_or(Partition::single_party(rho.shape()));
  const auto audit = audit_hypotheses(f, opts.audit_seed, f.partition_aware ? std::optional(part) : std::nullopt);
  if (!audit.additivity.pass())
    throw std::domain_error("measure " + f.name + " failed the additivity audit (residual " +
                            format_number(audit.additivity.max_residual, 6) + ")");
  if (!audit.permutation_invariance.pass())
    throw std::domain_error("measure " + f.name + " failed the permutation-invariance audit (residual " +
                            format_number(audit.permutation_invariance.max_residual, 6) + ")");

  DemoTable table;
  table.c = std::abs(f.evaluate({rho, part}) - f.evaluate({sigma, part}));
  if (!(table.c > kNonconstancyFloor))
    throw std::invalid_argument("|f(rho) - f(sigma)| vanishes; the pair does not witness non-constancy");

  const double log2_d = std::log2(static_cast<double>(d));
  for (const std::size_t n : n_list) {
    const double T = catalyst_trace_distance(rho, sigma, n, opts.method, opts.dense_cap);
    const double nm1 = static_cast<double>(n - 1);
    const double np1 = static_cast<double>(n + 1);
    for (const double alpha : opts.alphas) {
      DemoRow row;
      row.n = n;
      row.d = d;
      row.log2_dim = np1 * log2_d;
      row.c = table.c;
      row.T = T;
      row.bound_T = 2.0 / nm1;
      row.alpha = alpha;
      row.rhs = opts.K * T * std::pow(row.log2_dim, alpha);
      row.rhs_paper = (2.0 * opts.K / nm1) * std::pow(np1, alpha) * std::pow(log2_d, alpha);
      row.eta = opts.eta(T);
      row.crossed = row.rhs_paper < table.c;
      table.rows.push_back(row);
    }
  }

  for (const double alpha : opts.alphas) {
    Crossover x{alpha, std::nullopt};
    for (const auto& row : table.rows)
      if (row.alpha == alpha && row.crossed) {
        x.n = row.n;
        break;
      }
    table.crossovers.push_back(x);
  }

  // Proof chain without the additivity shortcut, where it fits densely.
  for (const std::size_t n : n_list) {
    std::size_t dim = 1;
    bool fits = true;
    for (std::size_t i = 0; i <= n && fits; ++i) {
      fits = dim <= opts.dense_check_cap / d;
      dim *= d;
    }
    if (!fits) break;
    const WordMixture gamma = build_catalyst(rho, sigma, n);
    const WordMixture gamma_shifted = shift_catalyst(gamma);
    const Partition big = part.copies(n + 1);
    const double f_rho_gamma = f.evaluate({densify_state(prepend(kRho, gamma)), big});
    const double f_sigma_gamma = f.evaluate({densify_state(prepend(kSigma, gamma)), big});
    const double f_sigma_shifted = f.evaluate({densify_state(prepend(kSigma, gamma_shifted)), big});
    table.dense_checks.push_back(
        {n, std::abs(f_rho_gamma - f_sigma_gamma), std::abs(f_sigma_shifted - f_rho_gamma)});
  }
  return table;
}

std::string demo_csv(const DemoTable& table) {
  const int digits = static_cast<int>(kCsvDigits);
  std::string out = "n,D,c,T,bound_T,alpha,rhs,rhs_paper,crossed\n";
  for (const auto& r : table.rows) {
    out += std::to_string(r.n);
    out += ',' + r.dimension_text();
    out += ',' + format_number(r.c, digits);
    out += ',' + format_number(r.T, digits);
    out += ',' + format_number(r.bound_T, digits);
    out += ',' + format_number(r.alpha, digits);
    out += ',' + format_number(r.rhs, digits);
    out += ',' + format_number(r.rhs_paper, digits);
    out += r.crossed ? ",1\n" : ",0\n";
  }
  return out;
}

std::vector<std::size_t> check_demo_rows(const DemoTable& table) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    const bool t_ok = r.T <= r.bound_T + 1e-9;
    const bool rhs_ok = !t_ok || r.rhs <= r.rhs_paper * (1.0 + 1e-9);
    if (!t_ok || !rhs_ok) bad.push_back(i);
  }
  return bad;
}

ExponentFit fit_continuity_exponent(std::span<const FamilyPoint> family) {
  const std::size_t m = family.size();
  if (m < 4) throw std::invalid_argument("exponent fit needs at least 4 family members");
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = family[i];
    if (!(p.delta_f > 0.0) || !(p.distance > 0.0) || !(p.log2_dim > 1.0))
      throw std::invalid_argument("degenerate family member " + std::to_string(i));
    x[i] = std::log(p.log2_dim);
    y[i] = std::log(p.delta_f) - std::log(p.distance);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("exponent fit needs at least two distinct dimensions");

  ExponentFit fit;
  fit.alpha = sxy / sxx;
  fit.log_K = my - fit.alpha * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (fit.log_K + fit.alpha * x[i]);
    fit.residuals.push_back(r);
    ssr += r * r;
  }
  fit.std_error = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  fit.lower = fit.alpha - 1.96 * fit.std_error;
  fit.upper = fit.alpha + 1.96 * fit.std_error;
  return fit;
}

std::vector<FamilyPoint> theorem_family(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const MeasureDescriptor& f, std::span<const std::size_t> n_list,
                                        DistanceMethod method) {
  const double c = std::abs(f.evaluate(rho) - f.evaluate(sigma));
  const double log2_d = std::log2(static_cast<double>(rho.dimension()));
  std::vector<FamilyPoint> out;
  for (const std::size_t n : n_list)
    out.push_back({c, catalyst_trace_distance(rho, sigma, n, method), static_cast<double>(n + 1) * log2_d});
  return out;
}

}  // namespace catalytic
