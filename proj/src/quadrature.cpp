#include "apxbsp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace apxbsp {

namespace {

struct SimpsonState {
  const std::function<double(double)>& g;
  int max_depth;
  bool depth_hit = false;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.g(lm), frm = st.g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double both = left + right;
  const double diff = both - whole;
  // Below rounding level further splitting only adds noise.
  const double floor_tol = 64.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(left) + std::abs(right) + std::abs(whole));
  if (std::abs(diff) <= 15.0 * tol || std::abs(diff) <= floor_tol || b - a <= 1e-15)
    return both + diff / 15.0;
  if (depth >= st.max_depth) {
    st.depth_hit = true;
    return both + diff / 15.0;
  }
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double sign_of_gamma(double x) {
  if (x > 0.0) return 1.0;
  return static_cast<long long>(std::floor(-x)) % 2 == 0 ? -1.0 : 1.0;
}

// Ties within quadrature noise keep the smaller index.
bool improves(double v, double best) {
  return std::isinf(best) || v < best - 1e-12 * (1.0 + std::abs(best));
}

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureSettings& q) {
  if (!(q.abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be positive");
  if (q.max_depth < 1) throw std::invalid_argument("integrate: max_depth must be >= 1");
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return 0.0;
  const int panels = std::max(1, q.panels);
  const double width = (b - a) / panels;
  const double tol = q.abs_tol / panels;
  SimpsonState st{g, q.max_depth};
  double total = 0.0, comp = 0.0;
  double fa = g(a);
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = i + 1 == panels ? b : a + (i + 1) * width;
    const double fb = g(hi);
    const double fm = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const double part = simpson_step(st, lo, hi, fa, fm, fb, whole, tol, 0);
    // Neumaier summation across panels.
    const double t = total + part;
    comp += std::abs(total) >= std::abs(part) ? (total - t) + part : (part - t) + total;
    total = t;
    fa = fb;
  }
  total += comp;
  if (st.depth_hit)
    throw QuadratureError("integrate: max_depth " + std::to_string(q.max_depth) + " exceeded",
                          total);
  return total;
}

double f_beta(double x, double beta, const QuadratureSettings& q) {
  if (!(x > 0.0)) throw std::invalid_argument("f_beta: x must be positive");
  if (!(beta >= 1.0)) throw std::invalid_argument("f_beta: beta must be >= 1");
  QuadratureSettings qq = q;
  qq.panels = std::max(q.panels, static_cast<int>(std::ceil(x / std::numbers::pi)) * 2 + 2);
  const double v =
      integrate([beta](double t) { return std::pow(std::abs(std::sin(t)), beta); }, 0.0, x, qq);
  return v / x;
}

std::size_t ladder_position(const ExponentLadder& ladder, int n) {
  auto it = std::lower_bound(ladder.begin(), ladder.end(), n,
                             [](const LadderPoint& p, int k) { return p.k < k; });
  if (it == ladder.end() || it->k != n)
    throw std::invalid_argument("index " + std::to_string(n) + " is not on the exponent ladder");
  return static_cast<std::size_t>(it - ladder.begin());
}

IndexScan jackson_integral_sin(const ExponentLadder& ladder, int n, double order, int kmax,
                               const QuadratureSettings& q) {
  if (!(order > 0.0)) throw std::invalid_argument("jackson_integral_sin: order must be positive");
  if (kmax < n) throw std::invalid_argument("jackson_integral_sin: empty index range");
  const std::size_t start = ladder_position(ladder, n);
  const double ln = ladder[start].lambda;
  IndexScan out;
  out.value = std::numeric_limits<double>::infinity();
  std::size_t i = start;
  for (; i < ladder.size() && ladder[i].k <= kmax; ++i) {
    const double theta = ladder[i].lambda / ln;
    QuadratureSettings qq = q;
    qq.panels = std::max(q.panels, static_cast<int>(std::ceil(4.0 * theta)) + 4);
    const double v = integrate(
        [theta, order](double t) {
          // 1 - cos x = 2 sin^2(x/2) without cancellation near the zeros
          const double h = std::abs(std::sin(0.5 * theta * t));
          return h == 0.0 ? 0.0 : std::pow(2.0 * h * h, order) * std::sin(t);
        },
        0.0, std::numbers::pi, qq);
    ++out.scanned;
    if (improves(v, out.value)) out.value = v, out.argmin_k = ladder[i].k;
  }
  out.truncated = i < ladder.size();
  return out;
}

FlatScan jackson_integral_flat(const ExponentLadder& ladder, int n, double exponent, double tau,
                               int kmax, const QuadratureSettings& q) {
  if (!(tau > 0.0) || tau > 0.75 * std::numbers::pi + 1e-15)
    throw std::invalid_argument("jackson_integral_flat: tau must lie in (0, 3pi/4]");
  if (!(exponent > 0.0))
    throw std::invalid_argument("jackson_integral_flat: exponent must be positive");
  if (kmax < n) throw std::invalid_argument("jackson_integral_flat: empty index range");
  const std::size_t start = ladder_position(ladder, n);
  const double ln = ladder[start].lambda;
  auto value_at = [&](double theta) {
    QuadratureSettings qq = q;
    qq.panels = std::max(q.panels, static_cast<int>(std::ceil(2.0 * theta * tau)) + 4);
    return integrate(
        [theta, exponent](double t) {
          return std::pow(std::abs(std::sin(0.5 * theta * t)), exponent);
        },
        0.0, tau, qq);
  };
  FlatScan out;
  out.value = std::numeric_limits<double>::infinity();
  std::size_t i = start;
  for (; i < ladder.size() && ladder[i].k <= kmax; ++i) {
    const double v = value_at(ladder[i].lambda / ln);
    ++out.scanned;
    if (improves(v, out.value)) out.value = v, out.argmin_k = ladder[i].k;
  }
  out.truncated = i < ladder.size();
  out.closed_form = value_at(1.0);
  if (exponent >= 1.0) {
    out.minimizer_at_n = std::abs(out.value - out.closed_form) <= 1e-8;
    if (!out.minimizer_at_n)
      throw std::logic_error("jackson_integral_flat: scan minimum " + std::to_string(out.value) +
                             " disagrees with the k = n value " +
                             std::to_string(out.closed_form));
  }
  return out;
}

double binomial(double s, int k) {
  if (k < 0) return 0.0;
  if (k == 0) return 1.0;
  const double x = s - k + 1.0;
  if (x <= 0.0 && x == std::floor(x)) return 0.0;  // s is a nonnegative integer below k
  if (s >= 0.0 && s == std::floor(s) && k > s) return 0.0;
  const double log_mag =
      std::lgamma(s + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) - std::lgamma(x);
  return sign_of_gamma(s + 1.0) * sign_of_gamma(x) * std::exp(log_mag);
}

SeriesResult sigma_series(double s, double tol) {
  if (!(s > 0.0)) throw std::invalid_argument("sigma_series: s must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("sigma_series: tol must be positive");
  const double parity = static_cast<long long>(std::floor(s)) % 2 == 0 ? 0.0 : 1.0;
  const int first = static_cast<int>(std::floor(s / 2.0)) + 1;

  // C(2a, j) / 4^a from the centre outwards; the far tail is below double precision.
  auto bracket = [parity](int a) {
    double w = std::exp(std::lgamma(2.0 * a + 1.0) - 2.0 * std::lgamma(a + 1.0) -
                        2.0 * a * std::numbers::ln2);
    const double centre = w;
    double inner = 0.0;
    for (int j = a - 1; j >= 0; --j) {
      w *= static_cast<double>(j + 1) / static_cast<double>(2 * a - j);
      const double m = a - j;
      const double add = w * 2.0 / (4.0 * m * m - 1.0);
      inner += add;
      if (add < 1e-19 * std::abs(inner)) break;
    }
    return 2.0 * (parity * centre - inner);
  };

  SeriesResult out;
  std::vector<double> terms;
  std::vector<double> magnitudes;
  int growth = 0;
  double prev = std::numeric_limits<double>::infinity();
  const int limit = 2'000'000;
  for (int a = first; a < limit; ++a) {
    const double c = binomial(s, 2 * a);
    const double term = c == 0.0 ? 0.0 : -c * bracket(a);
    terms.push_back(term);
    magnitudes.push_back(std::abs(term));
    out.last_index = a;
    const double mag = std::abs(term);
    growth = mag > prev ? growth + 1 : 0;
    if (growth >= 5) throw std::runtime_error("sigma_series: terms grow, series does not converge");
    prev = mag;
    if (mag == 0.0) break;
    if (mag < tol && a >= first + 8) {
      // Terms decay algebraically; estimate the local exponent from a and a/2.
      const int half = (a + first) / 2;
      const double m_half = magnitudes[static_cast<std::size_t>(half - first)];
      const double q = std::log(m_half / mag) / std::log(static_cast<double>(a) / half);
      if (q > 1.05) {
        // sum_{b > a} term (a/b)^q ~ term a^q (a + 1/2)^{1-q} / (q - 1)
        out.tail = term * std::pow(a / (a + 0.5), q) * (a + 0.5) / (q - 1.0);
        break;
      }
    }
  }
  if (out.last_index >= limit - 1)
    throw std::runtime_error("sigma_series: no convergence within the index limit");
  out.value = detail::stable_sum(terms) + out.tail;
  return out;
}

}  // namespace apxbsp
