#include "lab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "lab/errors.hpp"

namespace lab {

namespace {

constexpr std::size_t kMaxSide = 256;

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

struct BasicCell {
  std::size_t row, col;
  double alloc;
};

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<std::vector<double>> pts,
                                 std::vector<double> wts)
    : points(std::move(pts)), weights(std::move(wts)) {
  if (points.empty()) throw domain_error("DiscreteMeasure: empty support");
  if (points.size() != weights.size())
    throw domain_error("DiscreteMeasure: points/weights length mismatch");
  const std::size_t d = points[0].size();
  for (const auto& p : points)
    if (p.size() != d)
      throw domain_error("DiscreteMeasure: inconsistent dimensions");
  double mass = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw domain_error("DiscreteMeasure: negative weight");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw domain_error("DiscreteMeasure: weights sum to " +
                       std::to_string(mass));
  for (double& w : weights) w /= mass;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (sq_dist(points[i], points[j]) == 0.0)
        throw domain_error("DiscreteMeasure: duplicate support point");
}

W2Result w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim())
    throw domain_error("w2: ambient dimension mismatch");
  const std::size_t m = mu.size(), n = nu.size();
  if (m > kMaxSide || n > kMaxSide)
    throw size_error("w2: support larger than 256 points");

  std::vector<double> cost(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = sq_dist(mu.points[i], nu.points[j]);

  // northwest-corner start: exactly m+n-1 basic cells, degenerate zeros kept
  std::vector<BasicCell> basis;
  basis.reserve(m + n - 1);
  {
    std::vector<double> a(mu.weights), b(nu.weights);
    std::size_t i = 0, j = 0;
    for (std::size_t k = 0; k + 1 < m + n; ++k) {
      const double t = std::min(a[i], b[j]);
      basis.push_back({i, j, t});
      a[i] -= t;
      b[j] -= t;
      if (i + 1 == m)
        ++j;
      else if (j + 1 == n)
        ++i;
      else if (a[i] <= b[j])
        ++i;
      else
        ++j;
    }
  }

  std::vector<double> u(m), v(n);
  std::vector<std::vector<std::size_t>> row_cells(m), col_cells(n);
  auto rebuild_adjacency = [&]() {
    for (auto& r : row_cells) r.clear();
    for (auto& c : col_cells) c.clear();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      row_cells[basis[k].row].push_back(k);
      col_cells[basis[k].col].push_back(k);
    }
  };
  // potentials from the basis tree: u_r + v_c = cost(r,c) on basic cells
  auto compute_potentials = [&]() {
    std::vector<char> row_done(m, 0), col_done(n, 0);
    std::deque<std::pair<char, std::size_t>> queue;  // ('r', idx) / ('c', idx)
    u[0] = 0.0;
    row_done[0] = 1;
    queue.emplace_back('r', 0);
    while (!queue.empty()) {
      auto [kind, idx] = queue.front();
      queue.pop_front();
      if (kind == 'r') {
        for (std::size_t k : row_cells[idx]) {
          const std::size_t c = basis[k].col;
          if (col_done[c]) continue;
          v[c] = cost[idx * n + c] - u[idx];
          col_done[c] = 1;
          queue.emplace_back('c', c);
        }
      } else {
        for (std::size_t k : col_cells[idx]) {
          const std::size_t r = basis[k].row;
          if (row_done[r]) continue;
          u[r] = cost[r * n + idx] - v[idx];
          row_done[r] = 1;
          queue.emplace_back('r', r);
        }
      }
    }
  };

  const std::size_t max_iters = 16 * m * n + 4096;
  std::size_t iter = 0;
  for (; iter < max_iters; ++iter) {
    rebuild_adjacency();
    compute_potentials();

    // entering cell: first (row-major) with negative reduced cost
    std::size_t er = m, ec = n;
    bool found = false;
    for (std::size_t i = 0; i < m && !found; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (cost[i * n + j] - u[i] - v[j] < -1e-12) {
          er = i;
          ec = j;
          found = true;
          break;
        }
      }
    }
    if (!found) break;

    // unique tree path from row er to column ec
    // parent[] over nodes: rows are 0..m-1, cols are m..m+n-1
    const std::size_t nodes = m + n;
    std::vector<std::size_t> parent_cell(nodes, basis.size());
    std::vector<std::size_t> parent_node(nodes, nodes);
    std::vector<char> seen(nodes, 0);
    std::deque<std::size_t> queue{er};
    seen[er] = 1;
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      if (node == m + ec) break;
      if (node < m) {
        for (std::size_t k : row_cells[node]) {
          const std::size_t next = m + basis[k].col;
          if (seen[next]) continue;
          seen[next] = 1;
          parent_cell[next] = k;
          parent_node[next] = node;
          queue.push_back(next);
        }
      } else {
        for (std::size_t k : col_cells[node - m]) {
          const std::size_t next = basis[k].row;
          if (seen[next]) continue;
          seen[next] = 1;
          parent_cell[next] = k;
          parent_node[next] = node;
          queue.push_back(next);
        }
      }
    }
    if (!seen[m + ec])
      throw domain_error("w2: basis lost its spanning tree");

    // cells along the cycle, signs alternating; entering cell is +.
    std::vector<std::size_t> minus_cells, plus_cells;
    {
      std::size_t node = m + ec;
      bool minus = true;  // cell adjacent to the entering column is -
      while (node != er) {
        const std::size_t k = parent_cell[node];
        (minus ? minus_cells : plus_cells).push_back(k);
        node = parent_node[node];
        minus = !minus;
      }
    }
    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = basis.size();
    for (std::size_t k : minus_cells) {
      const double a = basis[k].alloc;
      const std::size_t id = basis[k].row * n + basis[k].col;
      const std::size_t lid =
          leaving == basis.size()
              ? std::numeric_limits<std::size_t>::max()
              : basis[leaving].row * n + basis[leaving].col;
      if (a < theta - 1e-15 || (std::abs(a - theta) <= 1e-15 && id < lid)) {
        theta = a;
        leaving = k;
      }
    }
    for (std::size_t k : minus_cells) basis[k].alloc -= theta;
    for (std::size_t k : plus_cells) basis[k].alloc += theta;
    basis[leaving] = {er, ec, theta};
  }
  if (iter == max_iters) throw domain_error("w2: simplex iteration cap hit");

  W2Result res;
  res.plan.rows = m;
  res.plan.cols = n;
  res.plan.matrix.assign(m * n, 0.0);
  double total = 0.0;
  for (const BasicCell& cell : basis) {
    const double a = cell.alloc < 0.0 ? 0.0 : cell.alloc;  // clamp -1e-14 dust
    res.plan.matrix[cell.row * n + cell.col] += a;
    total += a * cost[cell.row * n + cell.col];
  }
  res.plan.cost = total;
  res.distance = std::sqrt(std::max(0.0, total));
  rebuild_adjacency();
  compute_potentials();
  res.duals.psi = u;
  res.duals.phi = v;
  return res;
}

RelativeEntropyResult relative_entropy(const DiscreteMeasure& mu,
                                       const DiscreteMeasure& nu) {
  if (mu.dim() != nu.dim())
    throw domain_error("relative_entropy: dimension mismatch");
  RelativeEntropyResult res;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.weights[i] == 0.0) continue;
    std::size_t match = nu.size();
    for (std::size_t j = 0; j < nu.size(); ++j) {
      bool same = true;
      for (std::size_t d = 0; d < mu.dim(); ++d)
        if (std::abs(mu.points[i][d] - nu.points[j][d]) > 1e-12) {
          same = false;
          break;
        }
      if (same) {
        match = j;
        break;
      }
    }
    if (match == nu.size() || nu.weights[match] <= 0.0) {
      res.value = std::numeric_limits<double>::infinity();
      res.absolutely_continuous = false;
      return res;
    }
    res.value += mu.weights[i] * std::log(mu.weights[i] / nu.weights[match]);
  }
  if (res.value < 0.0 && res.value > -1e-13) res.value = 0.0;
  return res;
}

DiscreteMeasure gaussian_grid(const QuadratureRule& rule, int dim) {
  if (dim < 1 || dim > 2) throw size_error("gaussian_grid: d must be 1 or 2");
  std::vector<std::vector<double>> pts;
  std::vector<double> wts;
  if (dim == 1) {
    for (std::size_t i = 0; i < rule.order(); ++i) {
      pts.push_back({rule.nodes[i]});
      wts.push_back(rule.weights[i]);
    }
  } else {
    for (std::size_t i = 0; i < rule.order(); ++i)
      for (std::size_t j = 0; j < rule.order(); ++j) {
        pts.push_back({rule.nodes[i], rule.nodes[j]});
        wts.push_back(rule.weights[i] * rule.weights[j]);
      }
  }
  return DiscreteMeasure(std::move(pts), std::move(wts));
}

double quantization_radius(const QuadratureRule& rule) {
  const auto pdf = [](double x) {
    return std::exp(-0.5 * x * x) / 2.5066282746310005024;
  };
  const auto cdf = [](double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); };
  // int_l^u (x-a)^2 phi(x) dx
  const auto cell_cost = [&](double l, double u, double a) {
    const double phi_l = std::isinf(l) ? 0.0 : pdf(l);
    const double phi_u = std::isinf(u) ? 0.0 : pdf(u);
    const double mass = cdf(u) - cdf(l);
    const double lphi_l = std::isinf(l) ? 0.0 : l * phi_l;
    const double uphi_u = std::isinf(u) ? 0.0 : u * phi_u;
    return (1.0 + a * a) * mass + lphi_l - uphi_u - 2.0 * a * (phi_l - phi_u);
  };
  const std::size_t m = rule.order();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double l = i == 0 ? -std::numeric_limits<double>::infinity()
                            : 0.5 * (rule.nodes[i - 1] + rule.nodes[i]);
    const double u = i + 1 == m ? std::numeric_limits<double>::infinity()
                                : 0.5 * (rule.nodes[i] + rule.nodes[i + 1]);
    total += cell_cost(l, u, rule.nodes[i]);
  }
  return std::sqrt(total);
}

VerificationReport t2_check(std::span<const double> density,
                            const QuadratureRule& rule, int dim,
                            double tolerance) {
  DiscreteMeasure gamma = gaussian_grid(rule, dim);
  if (density.size() != gamma.size())
    throw domain_error("t2_check: density length mismatch");
  for (double f : density)
    if (!(f > 0.0)) throw domain_error("t2_check: density must be positive");
  double z = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    z += gamma.weights[i] * density[i];
  std::vector<double> mu_w(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i)
    mu_w[i] = gamma.weights[i] * density[i] / z;
  DiscreteMeasure mu(gamma.points, mu_w);
  const W2Result ot = w2(mu, gamma);
  const RelativeEntropyResult h = relative_entropy(mu, gamma);
  return VerificationReport::check(
      "t2", ot.plan.cost, 2.0 * h.value, tolerance,
      "discrete quadrature surrogate; margin tracked across refinements");
}

std::vector<double> hopf_lax(std::span<const double> phi,
                             const std::vector<std::vector<double>>& grid,
                             double s) {
  if (!(s > 0.0)) throw domain_error("hopf_lax: s must be > 0");
  if (phi.size() != grid.size())
    throw domain_error("hopf_lax: table length mismatch");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j)
      best = std::min(best, phi[j] + sq_dist(grid[i], grid[j]) / (2.0 * s));
    out[i] = best;
  }
  return out;
}

DualityGapResult kantorovich_duality_gap(
    const DiscreteMeasure& mu, const DiscreteMeasure& nu,
    const std::vector<std::vector<double>>& extra_phi) {
  const W2Result ot = w2(mu, nu);
  DualityGapResult res;
  res.half_w2_sq = 0.5 * ot.plan.cost;
  std::vector<std::vector<double>> candidates = extra_phi;
  {
    // phi from the LP duals: half-cost potentials
    std::vector<double> phi(nu.size());
    for (std::size_t j = 0; j < nu.size(); ++j) phi[j] = -0.5 * ot.duals.phi[j];
    candidates.push_back(std::move(phi));
  }
  res.best_value = -std::numeric_limits<double>::infinity();
  for (const auto& phi : candidates) {
    if (phi.size() != nu.size())
      throw domain_error("kantorovich_duality_gap: phi length mismatch");
    double value = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      double q1 = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < nu.size(); ++j)
        q1 = std::min(q1,
                      phi[j] + 0.5 * sq_dist(mu.points[i], nu.points[j]));
      value += mu.weights[i] * q1;
    }
    for (std::size_t j = 0; j < nu.size(); ++j)
      value -= nu.weights[j] * phi[j];
    res.best_value = std::max(res.best_value, value);
  }
  res.gap = res.half_w2_sq - res.best_value;
  return res;
}

}  // namespace lab
