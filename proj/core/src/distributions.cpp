#include "varspc/distributions.hpp"

#include <cmath>
#include <limits>

#include "varspc/errors.hpp"

namespace varspc::dist {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;

// Lower-tail series: P(a,x) = x^a e^-x / Gamma(a+1) * sum x^k / (a+1)...(a+k).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper-tail Lentz continued fraction for Q(a,x) = 1 - P(a,x).
double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double beta_cf(double a, double b, double x) {
  const double tiny = std::numeric_limits<double>::min() / kEps;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Generic monotone-CDF inversion: Newton with a bisection safeguard on a
// bracketing interval. cdf must be nondecreasing on [lo, hi].
template <typename Cdf, typename Pdf>
double invert_cdf(Cdf cdf, Pdf pdf, double target, double lo, double hi,
                  double x0) {
  double x = x0;
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(x) - target;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = pdf(x);
    double step = slope > 0.0 ? f / slope : 0.0;
    double next = x - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-14 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double chi2_pdf(double x, double v) {
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * v;
  return std::exp((a - 1.0) * std::log(x) - 0.5 * x - a * std::log(2.0) -
                  std::lgamma(a));
}

double f_pdf(double x, double d1, double d2) {
  if (x <= 0.0) return 0.0;
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  const double lg =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
      a * std::log(d1 / d2) + (a - 1.0) * std::log(x) -
      (a + b) * std::log1p(d1 * x / d2);
  return std::exp(lg);
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (a <= 0.0) throw InvalidArgument("reg_lower_gamma: a must be positive");
  if (x < 0.0) throw InvalidArgument("reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                std::lgamma(b) + a * std::log(x) +
                                b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double chi2_cdf(double x, double v) {
  if (v <= 0.0) throw InvalidArgument("chi2_cdf: v must be positive");
  if (x <= 0.0) return 0.0;
  return reg_lower_gamma(0.5 * v, 0.5 * x);
}

double chi2_quantile_upper(double alpha, double v) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw InvalidArgument("chi2_quantile_upper: alpha must be in (0, 1)");
  if (v <= 0.0) throw InvalidArgument("chi2_quantile_upper: v must be positive");
  const double target = 1.0 - alpha;
  double hi = v + 10.0;
  while (chi2_cdf(hi, v) < target) hi *= 2.0;
  return invert_cdf([v](double x) { return chi2_cdf(x, v); },
                    [v](double x) { return chi2_pdf(x, v); }, target, 0.0, hi,
                    v);
}

double noncentral_chi2_cdf(double x, double v, double d) {
  if (v <= 0.0)
    throw InvalidArgument("noncentral_chi2_cdf: v must be positive");
  if (d < 0.0)
    throw InvalidArgument("noncentral_chi2_cdf: d must be nonnegative");
  if (x <= 0.0) return 0.0;
  if (d == 0.0) return chi2_cdf(x, v);

  // Poisson(d/2) mixture of central chi-square CDFs, summed outward from the
  // modal index. Central CDFs advance by the one-step recurrence
  //   P(a+1, y) = P(a, y) - y^a e^-y / Gamma(a+1).
  const double half_d = 0.5 * d;
  const double y = 0.5 * x;
  const long j0 = static_cast<long>(half_d);
  const double a0 = 0.5 * v + static_cast<double>(j0);

  const double log_w0 =
      -half_d + j0 * std::log(half_d) - std::lgamma(static_cast<double>(j0) + 1);
  const double w0 = std::exp(log_w0);
  const double p0 = reg_lower_gamma(a0, y);
  // delta(a) = y^a e^-y / Gamma(a+1), stepping P across mixture indices
  const double log_delta0 = a0 * std::log(y) - y - std::lgamma(a0 + 1.0);
  double sum = w0 * p0;

  double w_up = w0, p_up = p0, delta_up = std::exp(log_delta0);
  double a_up = a0;
  long j_up = j0;
  constexpr double kTail = 1e-14;
  for (int it = 0; it < 10000; ++it) {
    p_up -= delta_up;
    if (p_up < 0.0) p_up = 0.0;
    ++j_up;
    w_up *= half_d / static_cast<double>(j_up);
    a_up += 1.0;
    delta_up *= y / a_up;
    sum += w_up * p_up;
    if (w_up * p_up < kTail && static_cast<double>(j_up) > half_d) break;
  }

  double w_dn = w0, p_dn = p0;
  double a_dn = a0;
  double delta_dn = std::exp(log_delta0);
  for (long j = j0; j > 0; --j) {
    w_dn *= static_cast<double>(j) / half_d;
    delta_dn *= a_dn / y;
    p_dn += delta_dn;
    a_dn -= 1.0;
    if (p_dn > 1.0) p_dn = 1.0;
    sum += w_dn * p_dn;
    if (w_dn < kTail) break;
  }
  if (sum > 1.0) sum = 1.0;
  return sum;
}

double f_quantile_upper(double alpha, double d1, double d2) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw InvalidArgument("f_quantile_upper: alpha must be in (0, 1)");
  if (d1 <= 0.0 || d2 <= 0.0)
    throw InvalidArgument("f_quantile_upper: degrees of freedom must be positive");
  const double target = 1.0 - alpha;
  auto cdf = [d1, d2](double f) {
    if (f <= 0.0) return 0.0;
    return reg_inc_beta(0.5 * d1, 0.5 * d2, d1 * f / (d1 * f + d2));
  };
  double hi = 10.0;
  while (cdf(hi) < target) hi *= 2.0;
  return invert_cdf(cdf, [d1, d2](double f) { return f_pdf(f, d1, d2); },
                    target, 0.0, hi, 1.0);
}

}  // namespace varspc::dist
