#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

namespace charp {

/// High-water marks observed while a budget was in force.
struct BudgetUsage {
  std::atomic<std::uint64_t> max_basis{0};
  std::atomic<std::uint64_t> pairs{0};
  std::atomic<std::uint64_t> max_monomials{0};

  static void raise(std::atomic<std::uint64_t>& slot, std::uint64_t v) noexcept {
    std::uint64_t cur = slot.load(std::memory_order_relaxed);
    while (cur < v && !slot.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }
};

/// Resource caps for Groebner and standard-monomial work. Exceeding any cap
/// raises ResourceBudgetExceeded.
struct Budget {
  std::uint64_t max_basis = 20'000;
  std::uint64_t max_pairs = 20'000'000;
  std::uint64_t max_monomials = 1'000'000;
  std::shared_ptr<BudgetUsage> usage = std::make_shared<BudgetUsage>();

  void note_basis(std::uint64_t n) const noexcept { BudgetUsage::raise(usage->max_basis, n); }
  void note_pairs(std::uint64_t n) const noexcept { usage->pairs.fetch_add(n, std::memory_order_relaxed); }
  void note_monomials(std::uint64_t n) const noexcept { BudgetUsage::raise(usage->max_monomials, n); }
};

}  // namespace charp
