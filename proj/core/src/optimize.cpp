#include "coherence/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace coherence {

namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

Simplex build_simplex(const Objective& f, const std::vector<double>& center, double step) {
  const std::size_t n = center.size();
  Simplex s;
  s.points.assign(n + 1, center);
  for (std::size_t i = 0; i < n; ++i) s.points[i + 1][i] += step;
  s.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s.values[i] = f(s.points[i]);
  return s;
}

double sanitize(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::max();
}

} // namespace

LocalSearchResult nelder_mead(const Objective& raw_f, std::vector<double> x0,
                              const LocalSearchOptions& options) {
  if (x0.empty()) throw std::invalid_argument("nelder_mead: empty starting point");
  const auto f = [&raw_f](std::span<const double> x) { return sanitize(raw_f(x)); };
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  // Gao & Han adaptive coefficients; they degenerate in one dimension.
  const bool adaptive = n >= 2;
  const double alpha = 1.0;
  const double beta = adaptive ? 1.0 + 2.0 / dn : 2.0;
  const double gamma = adaptive ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
  const double delta = adaptive ? 1.0 - 1.0 / dn : 0.5;

  LocalSearchResult result;
  double step = options.initial_step;
  std::vector<double> center = std::move(x0);
  std::vector<double> centroid(n), trial(n), trial2(n);
  int iterations = 0;

  for (int round = 0; round <= options.rebuilds; ++round) {
    Simplex s = build_simplex(f, center, step);
    std::vector<std::size_t> order(n + 1);
    std::vector<double> best_history;
    bool converged = false;

    while (iterations < options.max_iterations) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[n - 1];

      best_history.push_back(s.values[best]);
      const auto hist = static_cast<int>(best_history.size());
      if (hist > options.stall_window &&
          best_history[hist - 1 - options.stall_window] - best_history.back() <
              options.stall_tolerance &&
          s.values[worst] - s.values[best] < options.stall_tolerance) {
        converged = true;
        break;
      }
      ++iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < n; ++k) centroid[k] += s.points[i][k];
      }
      for (double& c : centroid) c /= dn;

      for (std::size_t k = 0; k < n; ++k) {
        trial[k] = centroid[k] + alpha * (centroid[k] - s.points[worst][k]);
      }
      const double f_reflect = f(trial);

      if (f_reflect < s.values[best]) {
        for (std::size_t k = 0; k < n; ++k) {
          trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
        }
        const double f_expand = f(trial2);
        if (f_expand < f_reflect) {
          s.points[worst] = trial2;
          s.values[worst] = f_expand;
        } else {
          s.points[worst] = trial;
          s.values[worst] = f_reflect;
        }
        continue;
      }
      if (f_reflect < s.values[second_worst]) {
        s.points[worst] = trial;
        s.values[worst] = f_reflect;
        continue;
      }

      const bool outside = f_reflect < s.values[worst];
      for (std::size_t k = 0; k < n; ++k) {
        trial2[k] = outside ? centroid[k] + gamma * (trial[k] - centroid[k])
                            : centroid[k] - gamma * (centroid[k] - s.points[worst][k]);
      }
      const double f_contract = f(trial2);
      if (f_contract < (outside ? f_reflect : s.values[worst])) {
        s.points[worst] = trial2;
        s.values[worst] = f_contract;
        continue;
      }

      // Shrink toward the best vertex.
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        for (std::size_t k = 0; k < n; ++k) {
          s.points[i][k] = s.points[best][k] + delta * (s.points[i][k] - s.points[best][k]);
        }
        s.values[i] = f(s.points[i]);
      }
    }

    const auto best_it = std::min_element(s.values.begin(), s.values.end());
    const auto best_idx = static_cast<std::size_t>(best_it - s.values.begin());
    const double best_value = *best_it;
    const double spread = *std::max_element(s.values.begin(), s.values.end()) - best_value;
    const bool improved = round == 0 || best_value < result.value - options.stall_tolerance;

    if (round == 0 || best_value < result.value) {
      result.x = s.points[best_idx];
      result.value = best_value;
      result.residual = spread;
    }
    result.converged = converged;
    center = result.x;
    step *= 0.1;
    if (!converged || !improved) break;
  }
  result.iterations = iterations;
  return result;
}

MultiStartResult multi_start_minimize(const Objective& f, const StartGenerator& start,
                                      const MultiStartOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("multi_start_minimize: restarts must be >= 1");
  std::vector<LocalSearchResult> runs;
  runs.reserve(options.restarts);
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng = Rng::stream(options.seed, static_cast<std::uint64_t>(r));
    runs.push_back(nelder_mead(f, start(rng, r), options.local));
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].value < runs[best].value) best = r;
  }
  MultiStartResult out;
  out.x = runs[best].x;
  out.value = runs[best].value;
  out.residual = runs[best].residual;
  out.restarts_used = options.restarts;
  out.second_value = out.value;
  bool have_second = false;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].converged) ++out.converged_restarts;
    if (r == best) continue;
    if (!have_second || runs[r].value < out.second_value) {
      out.second_value = runs[r].value;
      have_second = true;
    }
  }
  return out;
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, double x_tolerance, int max_iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iterations && b - a > x_tolerance; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tolerance, int max_iterations) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect_root: no sign change");
  for (int i = 0; i < max_iterations && hi - lo > x_tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace coherence
