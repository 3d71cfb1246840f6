#include "ccl/combinatorics.hpp"

#include <algorithm>
#include <bit>

namespace ccl {

namespace {

Coalition pick(const std::vector<Agent>& sorted, Mask m) {
  Coalition c;
  for (size_t p = 0; p < sorted.size(); ++p)
    if (m & (Mask{1} << p)) c.members.push_back(sorted[p]);
  return c;
}

void check_guard(size_t n, int guard, const char* what) {
  if (static_cast<int>(n) > guard)
    throw GuardExceeded(std::string(what) + ": " + std::to_string(n) +
                        " agents exceed the size guard of " + std::to_string(guard));
}

}  // namespace

std::vector<Coalition> subsets(const Coalition& base) {
  std::vector<Coalition> out;
  size_t n = base.members.size();
  if (n == 0) return out;
  Mask full = (n >= 32) ? ~Mask{0} : (Mask{1} << n) - 1;
  out.reserve(full);
  for (Mask m = 1; m <= full && m != 0; ++m) out.push_back(pick(base.members, m));
  return out;
}

void for_each_submask(Mask base, const std::function<void(Mask)>& fn) {
  // Ascending enumeration of nonempty submasks of base.
  for (Mask m = base & (~base + 1); m != 0; m = (m - base) & base) fn(m);
}

std::vector<CoalitionStructure> partitions(const std::vector<Agent>& agents,
                                           int size_guard) {
  check_guard(agents.size(), size_guard, "partitions");
  std::vector<CoalitionStructure> out;
  int n = static_cast<int>(agents.size());
  if (n == 0) return out;

  // Restricted growth strings in lexicographic order: rgs[i] names the block
  // of the i-th agent and may exceed earlier entries by at most one.
  std::vector<int> rgs(n, 0);
  while (true) {
    int parts = *std::max_element(rgs.begin(), rgs.end()) + 1;
    CoalitionStructure f;
    f.blocks.assign(parts, Coalition{});
    for (int i = 0; i < n; ++i) f.blocks[rgs[i]].members.push_back(agents[i]);
    out.push_back(std::move(f));

    int i = n - 1;
    for (; i >= 1; --i) {
      int mx = 0;
      for (int t = 0; t < i; ++t) mx = std::max(mx, rgs[t]);
      if (rgs[i] <= mx) break;  // room to grow at i
    }
    if (i < 1) break;
    ++rgs[i];
    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
  }
  return out;
}

namespace {

// Subsets of `rest` ordered by decreasing popcount, ascending mask within a
// size class.
std::vector<Mask> parts_in_order(Mask rest) {
  std::vector<Mask> subs;
  for (Mask m = rest; m != 0; m = (m - 1) & rest) subs.push_back(m);
  std::stable_sort(subs.begin(), subs.end(), [](Mask a, Mask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  return subs;
}

bool ordered_rec(const std::vector<Agent>& sorted, Mask rest, OrderedPartition& acc,
                 const std::function<bool(const OrderedPartition&)>& fn) {
  if (rest == 0) return fn(acc);
  for (Mask part : parts_in_order(rest)) {
    acc.push_back(pick(sorted, part));
    if (!ordered_rec(sorted, rest & ~part, acc, fn)) return false;
    acc.pop_back();
  }
  return true;
}

}  // namespace

void for_each_ordered_partition(const Coalition& s,
                                const std::function<bool(const OrderedPartition&)>& fn,
                                int size_guard) {
  check_guard(s.members.size(), size_guard, "ordered_partitions");
  if (s.members.empty()) return;
  Mask full = (Mask{1} << s.members.size()) - 1;
  OrderedPartition acc;
  ordered_rec(s.members, full, acc, fn);
}

std::vector<OrderedPartition> ordered_partitions(const Coalition& s, int size_guard) {
  std::vector<OrderedPartition> out;
  for_each_ordered_partition(
      s,
      [&out](const OrderedPartition& p) {
        out.push_back(p);
        return true;
      },
      size_guard);
  return out;
}

Agent CyclePermutation::image_of(Agent a) const {
  for (size_t i = 0; i < domain.members.size(); ++i)
    if (domain.members[i] == a) return image[i];
  throw std::logic_error("image_of: agent not in cycle domain");
}

std::vector<CyclePermutation> full_cycles(const Coalition& s) {
  std::vector<CyclePermutation> out;
  int k = s.size();
  if (k == 0) return out;
  if (k == 1) {
    out.push_back({s, {s.members[0]}});
    return out;
  }
  std::vector<Agent> rest(s.members.begin() + 1, s.members.end());
  std::sort(rest.begin(), rest.end());
  do {
    // Cycle s[0] -> rest[0] -> ... -> rest[k-2] -> s[0].
    std::vector<Agent> order;
    order.push_back(s.members[0]);
    order.insert(order.end(), rest.begin(), rest.end());
    CyclePermutation c{s, std::vector<Agent>(k)};
    for (int i = 0; i < k; ++i) {
      Agent from = order[i], to = order[(i + 1) % k];
      auto it = std::lower_bound(s.members.begin(), s.members.end(), from);
      c.image[it - s.members.begin()] = to;
    }
    out.push_back(std::move(c));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

void for_each_outcome(const Ccp& g, const std::function<void(const Outcome&)>& fn,
                      int size_guard) {
  check_guard(g.agents().size(), size_guard, "outcomes");
  for (const auto& f : partitions(g.agents(), size_guard)) {
    // Nonnegative choices per block; a block without any kills the partition.
    std::vector<std::vector<const PayoffVector*>> choices;
    bool dead = false;
    for (const auto& b : f.blocks) {
      std::vector<const PayoffVector*> ok;
      for (const auto& v : g.feasible(b))
        if (v.nonnegative()) ok.push_back(&v);
      if (ok.empty()) {
        dead = true;
        break;
      }
      choices.push_back(std::move(ok));
    }
    if (dead) continue;

    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
      Outcome o;
      o.structure = f;
      o.payoff.assign(g.n(), Money(0));
      for (size_t bi = 0; bi < choices.size(); ++bi) {
        const PayoffVector& v = *choices[bi][idx[bi]];
        for (size_t j = 0; j < v.coalition.members.size(); ++j)
          o.payoff[g.pos(v.coalition.members[j])] = v.amounts[j];
      }
      fn(o);

      // Odometer: last block fastest, first block most significant.
      int bi = static_cast<int>(idx.size()) - 1;
      while (bi >= 0 && idx[bi] + 1 == choices[bi].size()) {
        idx[bi] = 0;
        --bi;
      }
      if (bi < 0) break;
      ++idx[bi];
    }
  }
}

std::vector<Outcome> outcomes(const Ccp& g, int size_guard) {
  std::vector<Outcome> out;
  for_each_outcome(g, [&out](const Outcome& o) { out.push_back(o); }, size_guard);
  return out;
}

}  // namespace ccl
