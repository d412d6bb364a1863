#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lab {

// Weighted finite point set. Weights are normalized at construction (inputs
// whose mass is within 1e-9 of 1 are rescaled, anything further off is
// rejected) so that downstream code can rely on total mass 1 within 1e-12.
class FiniteSpace {
 public:
  FiniteSpace(std::vector<std::string> points, std::vector<double> weights);

  static FiniteSpace uniform(std::size_t size);
  // two-point space {-1,+1}, weight p on +1
  static FiniteSpace bernoulli_pm(double p);
  // two-point space {0,1}, weight p on 1
  static FiniteSpace bernoulli01(double p);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::string& point(std::size_t i) const { return points_[i]; }
  std::span<const double> weights() const { return weights_; }
  const std::vector<std::string>& points() const { return points_; }

 private:
  std::vector<std::string> points_;
  std::vector<double> weights_;
};

// Product of finite spaces with lexicographic enumeration: the tuple index is
// mixed-radix with the last factor fastest. Total size is capped at 2^22,
// exhaustive enumeration being the correctness contract.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<FiniteSpace> factors);

  std::size_t factor_count() const { return factors_.size(); }
  const FiniteSpace& factor(std::size_t i) const { return factors_[i]; }
  std::size_t size() const { return size_; }
  std::size_t stride(std::size_t i) const { return strides_[i]; }

  double weight(std::size_t index) const;
  void decode(std::size_t index, std::span<std::size_t> digits) const;
  std::size_t encode(std::span<const std::size_t> digits) const;
  std::size_t digit(std::size_t index, std::size_t i) const {
    return (index / strides_[i]) % factors_[i].size();
  }
  // index with coordinate i replaced by value d
  std::size_t with_digit(std::size_t index, std::size_t i,
                         std::size_t d) const {
    return index + (d - digit(index, i)) * strides_[i];
  }

  static constexpr std::size_t kMaxPoints = std::size_t{1} << 22;

 private:
  std::vector<FiniteSpace> factors_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Real-valued function stored as a value table aligned with the space's point
// order. The space is referenced, not owned; spaces outlive fields everywhere
// in this codebase.
template <class SpaceT>
class FieldFunction {
 public:
  FieldFunction(const SpaceT& space, std::vector<double> values)
      : space_(&space), values_(std::move(values)) {
    validate();
  }

  const SpaceT& space() const { return *space_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

 private:
  void validate() const;

  const SpaceT* space_;
  std::vector<double> values_;
};

using Field = FieldFunction<FiniteSpace>;
using ProductField = FieldFunction<ProductSpace>;

// NaN forbidden, length must equal the space cardinality.
void validate_values(std::size_t space_size, std::span<const double> values);

template <class SpaceT>
void FieldFunction<SpaceT>::validate() const {
  validate_values(space_->size(), values_);
}

}  // namespace lab
