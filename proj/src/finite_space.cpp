#include "lab/finite_space.hpp"

#include <cmath>
#include <unordered_set>

#include "lab/errors.hpp"

namespace lab {

FiniteSpace::FiniteSpace(std::vector<std::string> points,
                         std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size())
    throw domain_error("FiniteSpace: points/weights length mismatch");
  if (points_.empty()) throw domain_error("FiniteSpace: empty space");
  std::unordered_set<std::string> seen;
  for (const auto& p : points_)
    if (!seen.insert(p).second)
      throw domain_error("FiniteSpace: duplicate point label '" + p + "'");
  double mass = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw domain_error("FiniteSpace: negative or NaN weight");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw domain_error("FiniteSpace: weights sum to " + std::to_string(mass));
  for (double& w : weights_) w /= mass;
}

FiniteSpace FiniteSpace::uniform(std::size_t size) {
  std::vector<std::string> pts(size);
  for (std::size_t i = 0; i < size; ++i) pts[i] = std::to_string(i);
  return FiniteSpace(std::move(pts),
                     std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

FiniteSpace FiniteSpace::bernoulli_pm(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("bernoulli_pm: p must lie in (0,1)");
  return FiniteSpace({"-1", "+1"}, {1.0 - p, p});
}

FiniteSpace FiniteSpace::bernoulli01(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("bernoulli01: p must lie in (0,1)");
  return FiniteSpace({"0", "1"}, {1.0 - p, p});
}

ProductSpace::ProductSpace(std::vector<FiniteSpace> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw domain_error("ProductSpace: no factors");
  for (const auto& f : factors_) {
    if (size_ > kMaxPoints / f.size())
      throw size_error("ProductSpace: more than 2^22 points");
    size_ *= f.size();
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * factors_[i].size();
}

double ProductSpace::weight(std::size_t index) const {
  double w = 1.0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    w *= factors_[i].weight((index / strides_[i]) % factors_[i].size());
  return w;
}

void ProductSpace::decode(std::size_t index,
                          std::span<std::size_t> digits) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    digits[i] = (index / strides_[i]) % factors_[i].size();
}

std::size_t ProductSpace::encode(std::span<const std::size_t> digits) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (digits[i] >= factors_[i].size())
      throw domain_error("ProductSpace::encode: digit out of range");
    index += digits[i] * strides_[i];
  }
  return index;
}

void validate_values(std::size_t space_size, std::span<const double> values) {
  if (values.size() != space_size)
    throw domain_error("FieldFunction: value table length mismatch");
  for (double v : values)
    if (std::isnan(v)) throw domain_error("FieldFunction: NaN value");
}

}  // namespace lab
