// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "lab/convex_distance.hpp"

namespace oracle {

inline double normal_upper_tail(double x) {
  return 0.5 * std::erfc(x / 1.4142135623730951);
}

inline double binomial_pmf(int n, int k, double p) {
  double c = 1.0;
  for (int i = 0; i < k; ++i)
    c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Min-norm point over a 0/1 vertex list by exhaustive KKT enumeration:
// for every vertex subset up to size dim+1, solve the equality-constrained
// least-norm problem and keep feasible solutions (convex coefficients).
// Caratheodory makes this exact for small instances.
inline double min_norm_enumeration(const lab::HullInstance& hull) {
  const std::size_t dim = hull.dim;
  const std::size_t m = hull.vertices.size();
  const std::size_t cap = std::min<std::size_t>(m, dim + 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> idx;
  // iterate bitmask subsets of size <= cap (vertex counts kept small in tests)
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > cap) continue;
    idx.clear();
    for (std::size_t j = 0; j < m; ++j)
      if ((mask >> j) & 1) idx.push_back(j);
    const std::size_t k = idx.size();
    // KKT system [G 1; 1^T 0][alpha; mu] = [0; 1]
    const std::size_t nn = k + 1;
    std::vector<double> M(nn * nn, 0.0), b(nn, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t c = 0; c < k; ++c)
        M[a * nn + c] = static_cast<double>(
            __builtin_popcount(hull.vertices[idx[a]] & hull.vertices[idx[c]]));
      M[a * nn + k] = 1.0;
      M[k * nn + a] = 1.0;
    }
    b[k] = 1.0;
    // Gaussian elimination with partial pivoting
    bool singular = false;
    for (std::size_t col = 0; col < nn && !singular; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < nn; ++r)
        if (std::abs(M[r * nn + col]) > std::abs(M[piv * nn + col])) piv = r;
      if (std::abs(M[piv * nn + col]) < 1e-12) {
        singular = true;
        break;
      }
      for (std::size_t c = 0; c < nn; ++c) std::swap(M[piv * nn + c], M[col * nn + c]);
      std::swap(b[piv], b[col]);
      for (std::size_t r = col + 1; r < nn; ++r) {
        const double f = M[r * nn + col] / M[col * nn + col];
        for (std::size_t c = col; c < nn; ++c) M[r * nn + c] -= f * M[col * nn + c];
        b[r] -= f * b[col];
      }
    }
    if (singular) continue;
    for (std::size_t row = nn; row-- > 0;) {
      double acc = b[row];
      for (std::size_t c = row + 1; c < nn; ++c) acc -= M[row * nn + c] * b[c];
      b[row] = acc / M[row * nn + row];
    }
    bool feasible = true;
    for (std::size_t a = 0; a < k; ++a)
      if (b[a] < -1e-10) feasible = false;
    if (!feasible) continue;
    std::vector<double> z(dim, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t d = 0; d < dim; ++d)
        if ((hull.vertices[idx[a]] >> d) & 1) z[d] += b[a];
    double norm2 = 0.0;
    for (double v : z) norm2 += v * v;
    best = std::min(best, norm2);
  }
  return std::sqrt(best);
}

// Lower bound on the distance by a zoomed direction-grid search over the
// positive orthant (the support function max_a min_v <a, v>), n <= 3.
inline double min_norm_direction_grid(const lab::HullInstance& hull) {
  const std::size_t dim = hull.dim;
  const auto support = [&](const std::vector<double>& a) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t v : hull.vertices) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d)
        if ((v >> d) & 1) dot += a[d];
      best = std::min(best, dot);
    }
    return best;
  };
  if (dim == 1) return support({1.0});
  const double half_pi = 1.5707963267948966;
  // zoom grids recentered on the best point seen so far (globally, so a
  // level without improvement cannot walk the window away from the optimum)
  double best = -1.0;
  if (dim == 2) {
    double arg_best = 0.0;
    double window = half_pi;
    for (int level = 0; level < 30; ++level) {
      const double lo = std::max(0.0, arg_best - window);
      const double hi = std::min(half_pi, arg_best + window);
      for (int i = 0; i <= 64; ++i) {
        const double th = lo + (hi - lo) * i / 64.0;
        const double val = support({std::cos(th), std::sin(th)});
        if (val > best) {
          best = val;
          arg_best = th;
        }
      }
      window /= 3.0;
    }
    // kink strata: single-vertex directions and pair bisector normals
    const auto unit2 = [&](double x, double y) {
      const double norm = std::sqrt(x * x + y * y);
      if (norm < 1e-14) return;
      const double val = support({x / norm, y / norm});
      if (val > best) best = val;
    };
    for (std::uint32_t v : hull.vertices)
      unit2(static_cast<double>(v & 1), static_cast<double>((v >> 1) & 1));
    for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < hull.vertices.size(); ++j) {
        const double dx = static_cast<double>(hull.vertices[i] & 1) -
                          static_cast<double>(hull.vertices[j] & 1);
        const double dy = static_cast<double>((hull.vertices[i] >> 1) & 1) -
                          static_cast<double>((hull.vertices[j] >> 1) & 1);
        unit2(-dy, dx);
        unit2(dy, -dx);
      }
    }
    return best;
  }
  // dim == 3: two spherical angles over the positive octant
  const auto eval = [&](double th, double ph) {
    return support({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                    std::cos(th)});
  };
  double a1 = 0.7, a2 = 0.7;
  double window = half_pi;
  for (int level = 0; level < 44; ++level) {
    const double lo1 = std::max(0.0, a1 - window);
    const double hi1 = std::min(half_pi, a1 + window);
    const double lo2 = std::max(0.0, a2 - window);
    const double hi2 = std::min(half_pi, a2 + window);
    for (int i = 0; i <= 64; ++i) {
      for (int j = 0; j <= 64; ++j) {
        const double th = lo1 + (hi1 - lo1) * i / 64.0;
        const double ph = lo2 + (hi2 - lo2) * j / 64.0;
        const double val = eval(th, ph);
        if (val > best) {
          best = val;
          a1 = th;
          a2 = ph;
        }
      }
    }
    window /= 1.7;
  }
  // Stratified polish: the maximizer sits either where one vertex is the
  // unique minimizer (then a is that vertex direction), on a two-vertex kink
  // curve (a great circle, scanned and golden-sectioned), or at a three-fold
  // kink point. All strata are evaluated through the support function only.
  const auto unit_eval = [&](double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-14) return;
    const double val = support({x / norm, y / norm, z / norm});
    if (val > best) best = val;
  };
  std::vector<std::vector<double>> verts;
  for (std::uint32_t v : hull.vertices)
    verts.push_back({static_cast<double>(v & 1), static_cast<double>((v >> 1) & 1),
                     static_cast<double>((v >> 2) & 1)});
  for (const auto& v : verts) unit_eval(v[0], v[1], v[2]);
  const auto cross = [](const std::vector<double>& a,
                        const std::vector<double>& b) {
    return std::vector<double>{a[1] * b[2] - a[2] * b[1],
                               a[2] * b[0] - a[0] * b[2],
                               a[0] * b[1] - a[1] * b[0]};
  };
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const std::vector<double> d{verts[i][0] - verts[j][0],
                                  verts[i][1] - verts[j][1],
                                  verts[i][2] - verts[j][2]};
      // orthonormal basis of the plane orthogonal to d
      std::vector<double> seed{1.0, 0.0, 0.0};
      if (std::abs(d[0]) > std::abs(d[1]) && std::abs(d[0]) > std::abs(d[2]))
        seed = {0.0, 1.0, 0.0};
      std::vector<double> e1 = cross(d, seed);
      const double n1 =
          std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
      if (n1 < 1e-12) continue;
      for (double& c : e1) c /= n1;
      std::vector<double> e2 = cross(d, e1);
      const double n2 =
          std::sqrt(e2[0] * e2[0] + e2[1] * e2[1] + e2[2] * e2[2]);
      for (double& c : e2) c /= n2;
      const auto circle_val = [&](double t) {
        const double x = e1[0] * std::cos(t) + e2[0] * std::sin(t);
        const double y = e1[1] * std::cos(t) + e2[1] * std::sin(t);
        const double z = e1[2] * std::cos(t) + e2[2] * std::sin(t);
        return support({x, y, z});
      };
      double best_t = 0.0, best_v = -1e300;
      for (int s = 0; s < 720; ++s) {
        const double t = 6.283185307179586 * s / 720.0;
        const double val = circle_val(t);
        if (val > best_v) {
          best_v = val;
          best_t = t;
        }
      }
      double lo = best_t - 0.01, hi = best_t + 0.01;
      for (int it = 0; it < 80; ++it) {
        const double m1 = lo + (hi - lo) * 0.382;
        const double m2 = lo + (hi - lo) * 0.618;
        if (circle_val(m1) < circle_val(m2))
          lo = m1;
        else
          hi = m2;
      }
      const double t = 0.5 * (lo + hi);
      unit_eval(e1[0] * std::cos(t) + e2[0] * std::sin(t),
                e1[1] * std::cos(t) + e2[1] * std::sin(t),
                e1[2] * std::cos(t) + e2[2] * std::sin(t));
      for (std::size_t k = j + 1; k < verts.size(); ++k) {
        const std::vector<double> d2{verts[j][0] - verts[k][0],
                                     verts[j][1] - verts[k][1],
                                     verts[j][2] - verts[k][2]};
        const std::vector<double> a = cross(d, d2);
        unit_eval(a[0], a[1], a[2]);
        unit_eval(-a[0], -a[1], -a[2]);
      }
    }
  }
  return best;
}

// Fixed, seedless quasi-random direction grid on the positive orthant,
// evaluating the weighted Hamming distance; every value lower-bounds F_A.
inline double sphere_grid_lower_bound(const lab::PatternSet& A, std::size_t x,
                                      std::size_t points = 10000) {
  const std::size_t n = A.base->factor_count();
  std::vector<double> a(n);
  double best = 0.0;
  for (std::size_t k = 1; k <= points; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // Weyl sequence on irrational multiples
      const double u =
          std::fmod(static_cast<double>(k) * std::sqrt(static_cast<double>(2 + 3 * i + i * i)), 1.0);
      a[i] = 0.01 + u;
      norm2 += a[i] * a[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : a) v *= inv;
    best = std::max(best, lab::weighted_hamming_to_set(A, x, a));
  }
  return best;
}

}  // namespace oracle
