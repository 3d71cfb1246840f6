#pragma once

#include "ccl/model.hpp"

#include <functional>

namespace ccl {

// All nonempty subsets of base in ascending bitmask order over the sorted
// member list: subsets({1,2}) = [{1},{2},{1,2}].
std::vector<Coalition> subsets(const Coalition& base);

// Visits every submask of base (nonempty) in ascending numeric order.
void for_each_submask(Mask base, const std::function<void(Mask)>& fn);

// All partitions of the agent set, restricted-growth-string order. Blocks of
// each partition are ordered by smallest member.
std::vector<CoalitionStructure> partitions(const std::vector<Agent>& agents,
                                           int size_guard = kDefaultSizeGuard);

using OrderedPartition = std::vector<Coalition>;

// Ordered partitions of s into nonempty parts. The first part runs over
// subsets of s by decreasing size then ascending mask, recursively; so the
// one-part partition comes first and fully singleton chains come last within
// their branch. Visitor returns false to stop early.
void for_each_ordered_partition(const Coalition& s,
                                const std::function<bool(const OrderedPartition&)>& fn,
                                int size_guard = kDefaultSizeGuard);

std::vector<OrderedPartition> ordered_partitions(const Coalition& s,
                                                 int size_guard = kDefaultSizeGuard);

// Single-cycle permutation on a coalition; image[i] is where the i-th member
// (in ascending order) is sent. The one-member cycle is the identity.
struct CyclePermutation {
  Coalition domain;
  std::vector<Agent> image;

  Agent image_of(Agent a) const;
  friend bool operator==(const CyclePermutation&, const CyclePermutation&) = default;
};

// All full cycles on s: (|s|-1)! of them, enumerated with the smallest member
// first and the remaining members in lexicographic order.
std::vector<CyclePermutation> full_cycles(const Coalition& s);

// Streams every outcome of g exactly once: partitions in stream order, then
// per-block choices among the nonnegative feasible vectors (first block most
// significant). Blocks with no nonnegative vector kill their partition.
void for_each_outcome(const Ccp& g, const std::function<void(const Outcome&)>& fn,
                      int size_guard = kDefaultSizeGuard);

std::vector<Outcome> outcomes(const Ccp& g, int size_guard = kDefaultSizeGuard);

}  // namespace ccl
