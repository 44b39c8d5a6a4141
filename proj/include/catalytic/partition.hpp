#pragma once

#include <cstddef>
#include <vector>

#include "catalytic/density.hpp"

namespace catalytic {

/// Register shape plus the party each register belongs to.
class Partition {
 public:
  Partition(Shape shape, std::vector<std::size_t> party_of, std::size_t parties);

  // Every register belongs to party 0.
  static Partition single_party(Shape shape);
  // Register i belongs to party i.
  static Partition per_register(Shape shape);
  // Register 0 is party 0, the remaining registers are party 1.
  static Partition bipartite(Shape shape);

  const Shape& shape() const noexcept { return shape_; }
  const std::vector<std::size_t>& party_of() const noexcept { return party_of_; }
  std::size_t parties() const noexcept { return parties_; }
  std::size_t registers() const noexcept { return shape_.size(); }
  std::vector<std::size_t> registers_of(std::size_t party) const;

  // n copies laid out copy after copy, party labels repeated.
  Partition copies(std::size_t n) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  Shape shape_;
  std::vector<std::size_t> party_of_;
  std::size_t parties_;
};

// Registers of `b` appended after those of `a`; party j of the result owns
// A_j together with B_j. Throws if the party counts differ.
Partition tensor(const Partition& a, const Partition& b);

}  // namespace catalytic
