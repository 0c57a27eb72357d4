#include "citeflow/rational.hpp"

#include <stdexcept>

namespace citeflow {

void ExactMean::add(Fraction f) {
  by_den_[f.den()] += f.num();
  ++count_;
}

BigRational ExactMean::sum() const {
  BigRational total = 0;
  for (const auto& [den, num] : by_den_) total += BigRational(num, den);
  return total;
}

BigRational ExactMean::mean() const {
  if (count_ == 0) throw std::domain_error("mean of empty set");
  return sum() / BigRational(count_);
}

double ExactMean::mean_double() const { return to_double(mean()); }

double to_double(const BigRational& r) { return r.convert_to<double>(); }

}  // namespace citeflow
