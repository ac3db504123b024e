#pragma once

#include <stdexcept>

namespace spinsim {

// Half-integer spin quantum number. Stored as 2j to keep arithmetic exact.
class Spin {
 public:
  explicit Spin(double j) : twice_j_(static_cast<int>(j * 2.0 + 0.5)) {
    if (j <= 0.0 || twice_j_ < 1 || twice_j_ * 0.5 != j)
      throw std::invalid_argument("spin must be a positive half-integer");
  }

  double value() const { return 0.5 * twice_j_; }
  double jj() const { return value() * (value() + 1.0); }  // j(j+1)
  int multiplicity() const { return twice_j_ + 1; }        // 2j+1
  int twice() const { return twice_j_; }

  bool operator==(const Spin& o) const { return twice_j_ == o.twice_j_; }

 private:
  int twice_j_;
};

}  // namespace spinsim
