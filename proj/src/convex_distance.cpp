#include "lab/convex_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include "lab/errors.hpp"

namespace lab {

namespace {

inline int popcount32(std::uint32_t v) { return __builtin_popcount(v); }

// Solves M x = b in place by Gaussian elimination with partial pivoting.
// Returns false when a pivot falls below 1e-12.
bool solve_dense(std::vector<double>& M, std::vector<double>& b,
                 std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(M[r * n + col]) > std::abs(M[piv * n + col])) piv = r;
    if (std::abs(M[piv * n + col]) < 1e-12) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(M[piv * n + c], M[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double d = M[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = M[r * n + col] / d;
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) M[r * n + c] -= factor * M[col * n + c];
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t row = n; row-- > 0;) {
    double acc = b[row];
    for (std::size_t c = row + 1; c < n; ++c) acc -= M[row * n + c] * b[c];
    b[row] = acc / M[row * n + row];
  }
  return true;
}

// Affine minimizer of ||sum alpha_j v_j||^2 subject to sum alpha = 1 over the
// corral; KKT system [G 1; 1^T 0][alpha; mu] = [0; 1].
bool affine_minimizer(const std::vector<std::uint32_t>& corral,
                      std::vector<double>& alpha) {
  const std::size_t k = corral.size();
  const std::size_t n = k + 1;
  std::vector<double> M(n * n, 0.0), b(n, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l)
      M[j * n + l] = static_cast<double>(popcount32(corral[j] & corral[l]));
    M[j * n + k] = 1.0;
    M[k * n + j] = 1.0;
  }
  b[k] = 1.0;
  if (!solve_dense(M, b, n)) return false;
  alpha.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  return true;
}

void accumulate_point(const std::vector<std::uint32_t>& corral,
                      const std::vector<double>& lambda, std::size_t dim,
                      std::vector<double>& z) {
  z.assign(dim, 0.0);
  for (std::size_t j = 0; j < corral.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i)
      if ((corral[j] >> i) & 1) z[i] += lambda[j];
  }
}

double dot_mask(std::span<const double> z, std::uint32_t mask) {
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if ((mask >> i) & 1) acc += z[i];
  return acc;
}

}  // namespace

PatternSet::PatternSet(const ProductSpace& space,
                       std::vector<std::size_t> member_idx)
    : base(&space), members(std::move(member_idx)) {
  if (members.empty()) throw domain_error("PatternSet: A must be non-empty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.back() >= space.size())
    throw domain_error("PatternSet: member index out of range");
  if (space.factor_count() > 22)
    throw size_error("PatternSet: more than 22 coordinates");
}

double PatternSet::probability() const {
  double mass = 0.0;
  for (std::size_t m : members) mass += base->weight(m);
  return mass;
}

bool PatternSet::contains(std::size_t point) const {
  return std::binary_search(members.begin(), members.end(), point);
}

HullInstance build_hull(const PatternSet& A, std::size_t x) {
  const ProductSpace& s = *A.base;
  const std::size_t n = s.factor_count();
  HullInstance hull;
  hull.dim = n;
  hull.vertices.reserve(A.members.size());
  for (std::size_t y : A.members) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (s.digit(x, i) != s.digit(y, i)) mask |= std::uint32_t{1} << i;
    hull.vertices.push_back(mask);
  }
  std::sort(hull.vertices.begin(), hull.vertices.end());
  hull.vertices.erase(std::unique(hull.vertices.begin(), hull.vertices.end()),
                      hull.vertices.end());
  hull.contains_zero = hull.vertices.front() == 0;
  return hull;
}

MinNormResult min_norm_point(const HullInstance& hull) {
  if (hull.vertices.empty())
    throw domain_error("min_norm_point: empty vertex list");
  const std::size_t dim = hull.dim;
  const auto& V = hull.vertices;

  MinNormResult result;
  result.coefficients.assign(V.size(), 0.0);

  if (hull.contains_zero) {
    result.point.assign(dim, 0.0);
    result.distance = 0.0;
    result.coefficients[0] = 1.0;  // vertices sorted, zero mask first
    result.certificate_gap = 0.0;
    return result;
  }

  // corral of affinely independent vertices; lambda are convex weights
  std::size_t start = 0;
  for (std::size_t j = 1; j < V.size(); ++j)
    if (popcount32(V[j]) < popcount32(V[start])) start = j;
  std::vector<std::uint32_t> corral{V[start]};
  std::vector<std::size_t> corral_idx{start};
  std::vector<double> lambda{1.0};
  std::vector<double> z;
  accumulate_point(corral, lambda, dim, z);

  const std::size_t max_major = 16 * V.size() + 64;
  for (std::size_t major = 0; major < max_major; ++major) {
    double zz = 0.0;
    for (double v : z) zz += v * v;
    // pricing: most negative <z, v> candidate
    std::size_t best = 0;
    double best_dot = 1.0 / 0.0;
    for (std::size_t j = 0; j < V.size(); ++j) {
      const double d = dot_mask(z, V[j]);
      if (d < best_dot) {
        best_dot = d;
        best = j;
      }
    }
    if (best_dot >= zz - 1e-12 * std::max(1.0, zz)) break;
    if (std::find(corral_idx.begin(), corral_idx.end(), best) !=
        corral_idx.end())
      break;  // numerical stall: no new vertex improves
    corral.push_back(V[best]);
    corral_idx.push_back(best);
    lambda.push_back(0.0);

    for (std::size_t minor = 0; minor < 4 * V.size() + 16; ++minor) {
      std::vector<double> alpha;
      if (!affine_minimizer(corral, alpha)) {
        // affinely dependent corral: drop the smallest-weight member
        std::size_t drop = 0;
        for (std::size_t j = 1; j < lambda.size(); ++j)
          if (lambda[j] < lambda[drop]) drop = j;
        corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(drop));
        corral_idx.erase(corral_idx.begin() + static_cast<std::ptrdiff_t>(drop));
        lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(drop));
        continue;
      }
      double min_alpha = 1.0 / 0.0;
      for (double a : alpha) min_alpha = std::min(min_alpha, a);
      if (min_alpha > -1e-12) {
        lambda = alpha;
        for (double& l : lambda) l = std::max(l, 0.0);
        break;
      }
      // step toward alpha until the first coefficient hits zero
      double theta = 1.0;
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] <= 0.0 && lambda[j] - alpha[j] > 0.0)
          theta = std::min(theta, lambda[j] / (lambda[j] - alpha[j]));
      }
      for (std::size_t j = 0; j < lambda.size(); ++j)
        lambda[j] = (1.0 - theta) * lambda[j] + theta * alpha[j];
      for (std::size_t j = lambda.size(); j-- > 0;) {
        if (lambda[j] <= 1e-12) {
          corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(j));
          corral_idx.erase(corral_idx.begin() + static_cast<std::ptrdiff_t>(j));
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(j));
        }
      }
    }
    accumulate_point(corral, lambda, dim, z);
  }

  double zz = 0.0;
  for (double v : z) zz += v * v;
  double mass = 0.0;
  for (double l : lambda) mass += l;
  result.point = z;
  result.distance = std::sqrt(zz);
  for (std::size_t j = 0; j < corral.size(); ++j)
    result.coefficients[corral_idx[j]] = lambda[j] / mass;
  double worst = 1.0 / 0.0;
  for (std::uint32_t v : V) worst = std::min(worst, dot_mask(z, v) - zz);
  result.certificate_gap = worst;
  return result;
}

double convex_distance(const PatternSet& A, std::size_t x) {
  return min_norm_point(build_hull(A, x)).distance;
}

double weighted_hamming_to_set(const PatternSet& A, std::size_t x,
                               std::span<const double> a) {
  const ProductSpace& s = *A.base;
  const std::size_t n = s.factor_count();
  double best = 1.0 / 0.0;
  for (std::size_t y : A.members) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (s.digit(x, i) != s.digit(y, i)) d += a[i];
    best = std::min(best, d);
  }
  return best;
}

double dual_distance(const PatternSet& A, std::size_t x) {
  const HullInstance hull = build_hull(A, x);
  const MinNormResult res = min_norm_point(hull);
  if (res.distance <= 1e-12) return 0.0;
  std::vector<double> a(res.point);
  for (double& v : a) v /= res.distance;
  double best = 1.0 / 0.0;
  for (std::uint32_t v : hull.vertices)
    best = std::min(best, dot_mask(a, v));
  return best;
}

std::vector<double> convex_distance_table(const PatternSet& A,
                                          par::Mode mode) {
  std::vector<double> table(A.base->size());
  par::for_each_index(
      A.base->size(),
      [&](std::size_t x) { table[x] = convex_distance(A, x); }, mode);
  return table;
}

std::vector<DistanceSolve> convex_distance_solves(const PatternSet& A,
                                                  par::Mode mode) {
  std::vector<DistanceSolve> solves(A.base->size());
  par::for_each_index(
      A.base->size(),
      [&](std::size_t x) {
        const HullInstance hull = build_hull(A, x);
        const MinNormResult res = min_norm_point(hull);
        DistanceSolve& s = solves[x];
        s.distance = res.distance;
        s.certificate_gap = res.certificate_gap;
        if (res.distance <= 1e-12) {
          s.dual = 0.0;
        } else {
          std::vector<double> a(res.point);
          for (double& v : a) v /= res.distance;
          double best = 1.0 / 0.0;
          for (std::uint32_t v : hull.vertices)
            best = std::min(best, dot_mask(a, v));
          s.dual = best;
        }
      },
      mode);
  return solves;
}

VerificationReport convex_distance_moment(const PatternSet& A, double c,
                                          std::span<const double> distance_table,
                                          double tolerance, par::Mode mode) {
  if (std::abs(c - 0.25) > 1e-15 && std::abs(c - 1.0 / 14.0) > 1e-15)
    throw precondition_error("convex_distance_moment: c must be 1/4 or 1/14");
  const ProductSpace& s = *A.base;
  const double lhs = par::reduce_sum(
      s.size(),
      [&](std::size_t x) {
        const double d = distance_table[x];
        return s.weight(x) * std::exp(c * d * d);
      },
      mode);
  const double rhs = 1.0 / A.probability();
  return VerificationReport::check(c == 0.25
                                       ? "convex_distance_moment c=1/4"
                                       : "convex_distance_moment c=1/14",
                                   lhs, rhs, tolerance);
}

VerificationReport convex_distance_moment(const PatternSet& A, double c,
                                          double tolerance, par::Mode mode) {
  const std::vector<double> table = convex_distance_table(A, mode);
  return convex_distance_moment(A, c, table, tolerance, mode);
}

VerificationReport intermediate_moment_check(const PatternSet& A,
                                             std::span<const double> distance_table,
                                             double tolerance, par::Mode mode) {
  const ProductSpace& s = *A.base;
  const double lhs = par::reduce_sum(
      s.size(),
      [&](std::size_t x) {
        const double d = distance_table[x];
        return s.weight(x) * std::exp(d * d / 14.0);
      },
      mode);
  const double rhs = std::exp(4.0 / (5.0 * A.probability()));
  return VerificationReport::check("convex_distance_intermediate", lhs, rhs,
                                   tolerance);
}

VerificationReport square_lipschitz_check(const PatternSet& A,
                                          std::span<const double> distance_table,
                                          double tolerance) {
  const ProductSpace& s = *A.base;
  double worst = -1.0 / 0.0;
  for (std::size_t x = 0; x < s.size(); ++x) {
    const double dx2 = distance_table[x] * distance_table[x];
    for (std::size_t i = 0; i < s.factor_count(); ++i) {
      for (std::size_t d = 0; d < s.factor(i).size(); ++d) {
        const std::size_t y = s.with_digit(x, i, d);
        if (y == x) continue;
        worst = std::max(worst,
                         dx2 - distance_table[y] * distance_table[y]);
      }
    }
  }
  return VerificationReport::check("square_lipschitz", worst, 1.0, tolerance);
}

double median(const ProductSpace& space, std::span<const double> F) {
  std::vector<std::size_t> order(space.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return F[a] < F[b]; });
  double cum = 0.0;
  for (std::size_t i : order) {
    cum += space.weight(i);
    if (cum >= 0.5) return F[i];
  }
  return F[order.back()];
}

namespace {

std::vector<VerificationReport> tail_reports(const ProductSpace& space,
                                             std::span<const double> F,
                                             std::span<const double> r_grid,
                                             const char* name,
                                             double tolerance) {
  const double M = median(space, F);
  std::vector<VerificationReport> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    double tail = 0.0;
    for (std::size_t x = 0; x < space.size(); ++x)
      if (std::abs(F[x] - M) >= r) tail += space.weight(x);
    out.push_back(VerificationReport::check(
        std::string(name) + " r=" + std::to_string(r), tail,
        4.0 * std::exp(-r * r / 4.0), tolerance));
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> corollary_weighted_hamming(
    const ProductSpace& space, std::span<const double> F,
    std::span<const double> a, std::span<const double> r_grid,
    double tolerance) {
  validate_values(space.size(), F);
  if (a.size() != space.factor_count())
    throw domain_error("corollary_weighted_hamming: weight length mismatch");
  double norm2 = 0.0;
  for (double v : a) {
    if (v < 0.0) throw domain_error("corollary_weighted_hamming: a_i < 0");
    norm2 += v * v;
  }
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw precondition_error("corollary_weighted_hamming: |a| != 1");
  // hypothesis F(x) <= F(y) + d_a(x,y), all pairs
  const std::size_t n = space.factor_count();
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      double da = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (space.digit(x, i) != space.digit(y, i)) da += a[i];
      if (F[x] > F[y] + da + 1e-12)
        throw precondition_error(
            "corollary_weighted_hamming: hypothesis fails at pair (" +
            std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }
  return tail_reports(space, F, r_grid, "corollary_weighted_hamming",
                      tolerance);
}

std::vector<VerificationReport> corollary_convex_lipschitz(
    const ProductSpace& space, std::span<const double> F,
    const std::vector<std::vector<double>>& embedding,
    std::span<const double> r_grid, double tolerance) {
  validate_values(space.size(), F);
  const std::size_t n = space.factor_count();
  if (embedding.size() != n)
    throw domain_error("corollary_convex_lipschitz: embedding size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (embedding[i].size() != space.factor(i).size())
      throw domain_error("corollary_convex_lipschitz: embedding size mismatch");
    for (double e : embedding[i])
      if (e < 0.0 || e > 1.0)
        throw precondition_error(
            "corollary_convex_lipschitz: embedding outside [0,1]");
  }
  auto embed = [&](std::size_t x, std::vector<double>& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = embedding[i][space.digit(x, i)];
  };
  // index embedded tuples for midpoint lookups
  std::map<std::vector<double>, std::size_t> grid;
  {
    std::vector<double> e;
    for (std::size_t x = 0; x < space.size(); ++x) {
      embed(x, e);
      grid.emplace(e, x);
    }
  }
  std::vector<double> ex, ey, mid;
  for (std::size_t x = 0; x < space.size(); ++x) {
    embed(x, ex);
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      embed(y, ey);
      double dist2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = ex[i] - ey[i];
        dist2 += d * d;
      }
      if (std::abs(F[x] - F[y]) > std::sqrt(dist2) + 1e-9)
        throw precondition_error(
            "corollary_convex_lipschitz: Lipschitz bound fails at pair (" +
            std::to_string(x) + "," + std::to_string(y) + ")");
      mid.resize(n);
      for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (ex[i] + ey[i]);
      auto it = grid.find(mid);
      if (it != grid.end() &&
          F[it->second] > 0.5 * (F[x] + F[y]) + 1e-9)
        throw precondition_error(
            "corollary_convex_lipschitz: midpoint convexity fails at pair (" +
            std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }
  return tail_reports(space, F, r_grid, "corollary_convex_lipschitz",
                      tolerance);
}

}  // namespace lab
