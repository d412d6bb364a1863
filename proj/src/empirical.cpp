#include "lab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "lab/errors.hpp"
#include "lab/rng.hpp"

namespace lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_exact(const ProcessInstance& inst) {
  if (inst.product_size() > ProcessInstance::kExactCap)
    throw size_error("empirical: product space exceeds 2^20, exact mode "
                     "unavailable");
}

// blocked deterministic enumeration of sum over the product space
template <class Body>
double enumerate_sum(const ProcessInstance& inst, Body&& body, par::Mode mode) {
  const std::size_t n = inst.n();
  return par::reduce_sum(
      inst.product_size(),
      [&, n](std::size_t index) {
        std::size_t digits_buf[32];
        std::span<std::size_t> digits(digits_buf, n);
        inst.decode(index, digits);
        return body(std::span<const std::size_t>(digits_buf, n));
      },
      mode);
}

}  // namespace

ProcessInstance::ProcessInstance(
    std::vector<FiniteSpace> spaces,
    std::vector<std::vector<std::vector<double>>> family)
    : spaces_(std::move(spaces)), family_(std::move(family)) {
  if (spaces_.empty()) throw domain_error("ProcessInstance: n must be >= 1");
  if (spaces_.size() > 32)
    throw size_error("ProcessInstance: more than 32 sample spaces");
  if (family_.empty()) throw domain_error("ProcessInstance: N must be >= 1");
  sup_norm_ = 0.0;
  for (const auto& gk : family_) {
    if (gk.size() != spaces_.size())
      throw domain_error("ProcessInstance: family table shape mismatch");
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      if (gk[i].size() != spaces_[i].size())
        throw domain_error("ProcessInstance: family table shape mismatch");
      for (double v : gk[i]) {
        if (std::isnan(v) || std::abs(v) > 1.0)
          throw domain_error("ProcessInstance: |g| <= 1 violated");
        sup_norm_ = std::max(sup_norm_, std::abs(v));
      }
    }
  }
  product_size_ = 1;
  for (const auto& s : spaces_) {
    if (product_size_ > (std::size_t{1} << 62) / s.size()) {
      product_size_ = std::size_t{1} << 62;
      break;
    }
    product_size_ *= s.size();
  }
}

void ProcessInstance::decode(std::size_t index,
                             std::span<std::size_t> digits) const {
  for (std::size_t i = spaces_.size(); i-- > 0;) {
    digits[i] = index % spaces_[i].size();
    index /= spaces_[i].size();
  }
}

double ProcessInstance::point_weight(std::span<const std::size_t> digits) const {
  double w = 1.0;
  for (std::size_t i = 0; i < spaces_.size(); ++i)
    w *= spaces_[i].weight(digits[i]);
  return w;
}

double ProcessInstance::z_at(std::span<const std::size_t> digits) const {
  double best = -kInf;
  for (const auto& gk : family_) {
    double s = 0.0;
    for (std::size_t i = 0; i < spaces_.size(); ++i) s += gk[i][digits[i]];
    best = std::max(best, s);
  }
  return best;
}

double ProcessInstance::w_at(std::span<const std::size_t> digits) const {
  double best = -kInf;
  for (const auto& gk : family_) {
    double s = 0.0;
    for (std::size_t i = 0; i < spaces_.size(); ++i) {
      const double v = gk[i][digits[i]];
      s += v * v;
    }
    best = std::max(best, s);
  }
  return best;
}

SupStatistics supremum_law_exact(const ProcessInstance& inst,
                                 std::span<const double> r_grid,
                                 par::Mode mode) {
  require_exact(inst);
  SupStatistics stats;
  stats.mean_z = enumerate_sum(
      inst, [&](auto d) { return inst.point_weight(d) * inst.z_at(d); }, mode);
  stats.v = enumerate_sum(
      inst, [&](auto d) { return inst.point_weight(d) * inst.w_at(d); }, mode);
  for (double r : r_grid) {
    const double tail = enumerate_sum(
        inst,
        [&](auto d) {
          return std::abs(inst.z_at(d) - stats.mean_z) >= r
                     ? inst.point_weight(d)
                     : 0.0;
        },
        mode);
    stats.tail.emplace_back(r, tail);
  }
  return stats;
}

SupStatistics supremum_law_monte_carlo(const ProcessInstance& inst,
                                       std::span<const double> r_grid,
                                       std::size_t samples, std::uint64_t seed,
                                       par::Mode mode) {
  if (samples == 0) throw domain_error("supremum_law: samples must be > 0");
  const std::size_t n = inst.n();
  const SeedStream rng(seed, 0x656d70ULL);
  auto sample_z = [&](std::size_t s) {
    std::size_t digits_buf[32];
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform(s * n + i);
      const FiniteSpace& sp = inst.space(i);
      double cum = 0.0;
      std::size_t pick = sp.size() - 1;
      for (std::size_t p = 0; p < sp.size(); ++p) {
        cum += sp.weight(p);
        if (u < cum) {
          pick = p;
          break;
        }
      }
      digits_buf[i] = pick;
    }
    return std::pair<double, double>(
        inst.z_at(std::span<const std::size_t>(digits_buf, n)),
        inst.w_at(std::span<const std::size_t>(digits_buf, n)));
  };
  SupStatistics stats;
  stats.mean_z = par::reduce_sum(
                     samples, [&](std::size_t s) { return sample_z(s).first; },
                     mode) /
                 static_cast<double>(samples);
  stats.v = par::reduce_sum(
                samples, [&](std::size_t s) { return sample_z(s).second; },
                mode) /
            static_cast<double>(samples);
  for (double r : r_grid) {
    const double hits = par::reduce_sum(
        samples,
        [&](std::size_t s) {
          return std::abs(sample_z(s).first - stats.mean_z) >= r ? 1.0 : 0.0;
        },
        mode);
    stats.tail.emplace_back(r, hits / static_cast<double>(samples));
  }
  return stats;
}

std::vector<VerificationReport> poisson_mgf_check(
    const ProcessInstance& inst, std::span<const double> lambda_grid,
    double tolerance, par::Mode mode) {
  require_exact(inst);
  for (std::size_t k = 0; k < inst.family_size(); ++k)
    for (std::size_t i = 0; i < inst.n(); ++i)
      for (std::size_t p = 0; p < inst.space(i).size(); ++p)
        if (inst.g(k, i, p) < 0.0)
          throw precondition_error("poisson_mgf_check: family must be >= 0");
  const double mean = enumerate_sum(
      inst, [&](auto d) { return inst.point_weight(d) * inst.z_at(d); }, mode);
  std::vector<VerificationReport> out;
  for (double lambda : lambda_grid) {
    if (lambda < 0.0)
      throw precondition_error("poisson_mgf_check: lambda must be >= 0");
    const double mgf = enumerate_sum(
        inst,
        [&](auto d) {
          return inst.point_weight(d) * std::exp(lambda * inst.z_at(d));
        },
        mode);
    out.push_back(VerificationReport::check(
        "poisson_mgf lambda=" + std::to_string(lambda), mgf,
        std::exp(mean * (std::exp(lambda) - 1.0)), tolerance));
  }
  return out;
}

std::vector<VerificationReport> poisson_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance, par::Mode mode) {
  require_exact(inst);
  const double mean = enumerate_sum(
      inst, [&](auto d) { return inst.point_weight(d) * inst.z_at(d); }, mode);
  std::vector<VerificationReport> out;
  for (double r : r_grid) {
    const std::string name = "poisson_tail r=" + std::to_string(r);
    if (mean <= 0.0) {
      VerificationReport rep = VerificationReport::check(name, 0.0, 1.0, tolerance);
      rep.witness = "skipped: E(Z) = 0 degenerates h(r/E(Z))";
      out.push_back(std::move(rep));
      continue;
    }
    const double tail = enumerate_sum(
        inst,
        [&](auto d) {
          return inst.z_at(d) >= mean + r ? inst.point_weight(d) : 0.0;
        },
        mode);
    const double u = r / mean;
    const double h = (1.0 + u) * std::log1p(u) - u;
    out.push_back(VerificationReport::check(name, tail, std::exp(-mean * h),
                                            tolerance));
  }
  return out;
}

std::vector<VerificationReport> bernstein_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance, par::Mode mode) {
  require_exact(inst);
  const double scale = inst.sup_norm();
  const SupStatistics stats = supremum_law_exact(inst, r_grid, mode);
  std::vector<VerificationReport> out;
  for (std::size_t idx = 0; idx < r_grid.size(); ++idx) {
    const double r = r_grid[idx];
    double exponent;
    if (scale == 0.0) {
      exponent = kInf;  // Z is constant
    } else {
      exponent = r / (16.0 * scale);
      if (stats.v > 0.0)
        exponent = std::min(exponent, r * r / (80.0 * stats.v));
    }
    const double bound = r == 0.0 ? 2.0 : 2.0 * std::exp(-exponent);
    out.push_back(VerificationReport::check(
        "bernstein_tail r=" + std::to_string(r), stats.tail[idx].second, bound,
        tolerance, "U=" + std::to_string(scale)));
  }
  return out;
}

std::vector<VerificationReport> talagrand_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance, par::Mode mode) {
  require_exact(inst);
  const double scale = inst.sup_norm();
  const SupStatistics stats = supremum_law_exact(inst, r_grid, mode);
  std::vector<VerificationReport> out;
  for (std::size_t idx = 0; idx < r_grid.size(); ++idx) {
    const double r = r_grid[idx];
    double bound;
    if (r == 0.0) {
      bound = 3.0;
    } else if (scale == 0.0 || stats.v <= 0.0) {
      bound = 3.0 * std::exp(-kInf);  // degenerate family, Z constant
    } else {
      bound = 3.0 * std::exp(-(r / (300.0 * scale)) *
                             std::log1p(r * scale / stats.v));
    }
    out.push_back(VerificationReport::check(
        "talagrand_tail r=" + std::to_string(r), stats.tail[idx].second, bound,
        tolerance, "U=" + std::to_string(scale)));
  }
  return out;
}

TruncationPair truncation_split(const ProcessInstance& inst, double tau,
                                par::Mode mode) {
  if (!(tau > 0.0)) throw domain_error("truncation_split: tau must be > 0");
  require_exact(inst);
  const std::size_t n = inst.n();
  auto z1_at = [&](std::span<const std::size_t> d) {
    double best = -kInf;
    for (std::size_t k = 0; k < inst.family_size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = inst.g(k, i, d[i]);
        if (std::abs(v) <= tau) s += v;
      }
      best = std::max(best, s);
    }
    return best;
  };
  auto z2_at = [&](std::span<const std::size_t> d) {
    double best = -kInf;
    for (std::size_t k = 0; k < inst.family_size(); ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = inst.g(k, i, d[i]);
        if (std::abs(v) > tau) s += std::abs(v);
      }
      best = std::max(best, s);
    }
    return best;
  };
  TruncationPair pair;
  pair.tau = tau;
  std::map<double, double> law1, law2;
  double violation = -kInf;
  std::size_t digits_buf[32];
  std::span<std::size_t> digits(digits_buf, n);
  for (std::size_t index = 0; index < inst.product_size(); ++index) {
    inst.decode(index, digits);
    std::span<const std::size_t> d(digits_buf, n);
    const double w = inst.point_weight(d);
    const double z = inst.z_at(d);
    const double z1 = z1_at(d);
    const double z2 = z2_at(d);
    law1[z1] += w;
    law2[z2] += w;
    violation = std::max(violation, std::abs(z - z1) - z2);
  }
  (void)mode;
  pair.z1_law.assign(law1.begin(), law1.end());
  pair.z2_law.assign(law2.begin(), law2.end());
  pair.max_violation = violation;
  return pair;
}

double truncation_tau(double r, double v) {
  if (!(r > 0.0)) throw domain_error("truncation_tau: r must be > 0");
  return std::sqrt(4.0 * v / (5.0 * r));
}

VerificationReport symmetrization_v_bound(const ProcessInstance& inst,
                                          double tolerance, par::Mode mode) {
  require_exact(inst);
  const std::size_t N = inst.family_size();
  // centered: E g_k(X_i) = 0 for all i, k
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t i = 0; i < inst.n(); ++i) {
      double mean = 0.0;
      for (std::size_t p = 0; p < inst.space(i).size(); ++p)
        mean += inst.space(i).weight(p) * inst.g(k, i, p);
      if (std::abs(mean) > 1e-12)
        throw precondition_error(
            "symmetrization_v_bound: family not centered at (k=" +
            std::to_string(k) + ", i=" + std::to_string(i) + ")");
    }
  }
  // closed under negation
  for (std::size_t k = 0; k < N; ++k) {
    bool matched = false;
    for (std::size_t k2 = 0; k2 < N && !matched; ++k2) {
      bool same = true;
      for (std::size_t i = 0; i < inst.n() && same; ++i)
        for (std::size_t p = 0; p < inst.space(i).size(); ++p)
          if (std::abs(inst.g(k, i, p) + inst.g(k2, i, p)) > 1e-12) {
            same = false;
            break;
          }
      matched = same;
    }
    if (!matched)
      throw precondition_error(
          "symmetrization_v_bound: family not closed under negation (k=" +
          std::to_string(k) + ")");
  }
  const SupStatistics stats = supremum_law_exact(inst, {}, mode);
  double sup_second = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < inst.n(); ++i)
      for (std::size_t p = 0; p < inst.space(i).size(); ++p)
        acc += inst.space(i).weight(p) * inst.g(k, i, p) * inst.g(k, i, p);
    sup_second = std::max(sup_second, acc);
  }
  const double rhs = inst.sup_norm() * stats.mean_z + 8.0 * sup_second;
  return VerificationReport::check("symmetrization_v_bound", stats.v, rhs,
                                   tolerance);
}

}  // namespace lab
