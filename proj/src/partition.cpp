#include "catalytic/partition.hpp"

#include <stdexcept>

namespace catalytic {

Partition::Partition(Shape shape, std::vector<std::size_t> party_of, std::size_t parties)
    : shape_(std::move(shape)), party_of_(std::move(party_of)), parties_(parties) {
  if (parties_ < 1) throw std::invalid_argument("partition needs at least one party");
  if (party_of_.size() != shape_.size())
    throw std::invalid_argument("partition assigns " + std::to_string(party_of_.size()) + " labels to " +
                                std::to_string(shape_.size()) + " registers");
  for (const std::size_t p : party_of_)
    if (p >= parties_) throw std::invalid_argument("party label " + std::to_string(p) + " out of range");
}

Partition Partition::single_party(Shape shape) {
  std::vector<std::size_t> labels(shape.size(), 0);
  return Partition(std::move(shape), std::move(labels), 1);
}

Partition Partition::per_register(Shape shape) {
  std::vector<std::size_t> labels(shape.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
  const std::size_t m = labels.size();
  return Partition(std::move(shape), std::move(labels), m);
}

Partition Partition::bipartite(Shape shape) {
  if (shape.size() < 2) return single_party(std::move(shape));
  std::vector<std::size_t> labels(shape.size(), 1);
  labels[0] = 0;
  return Partition(std::move(shape), std::move(labels), 2);
}

std::vector<std::size_t> Partition::registers_of(std::size_t party) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < party_of_.size(); ++i)
    if (party_of_[i] == party) out.push_back(i);
  return out;
}

Partition Partition::copies(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("partition copies needs n >= 1");
  Shape shape;
  std::vector<std::size_t> labels;
  for (std::size_t c = 0; c < n; ++c) {
    shape.insert(shape.end(), shape_.begin(), shape_.end());
    labels.insert(labels.end(), party_of_.begin(), party_of_.end());
  }
  return Partition(std::move(shape), std::move(labels), parties_);
}

Partition tensor(const Partition& a, const Partition& b) {
  if (a.parties() != b.parties())
    throw std::invalid_argument("tensor of partitions with " + std::to_string(a.parties()) + " and " +
                                std::to_string(b.parties()) + " parties");
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  std::vector<std::size_t> labels = a.party_of();
  labels.insert(labels.end(), b.party_of().begin(), b.party_of().end());
  return Partition(std::move(shape), std::move(labels), a.parties());
}

}  // namespace catalytic
