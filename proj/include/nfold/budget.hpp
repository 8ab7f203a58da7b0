#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string_view>

namespace nfold {

/// Resource caps shared by the Graver, augmentation and enumeration routines.
/// Unset caps are unlimited. Exceeding any cap raises BudgetExceeded.
struct Budget {
  std::optional<std::size_t> max_elements;
  std::optional<std::chrono::milliseconds> max_time;
  std::size_t max_augmentations = 1'000'000;
  std::size_t max_enumeration_nodes = 2'000'000'000;
};

/// Wall-clock deadline derived from a Budget at construction time.
class Deadline {
 public:
  explicit Deadline(const Budget& budget);

  bool expired() const;
  /// Throws BudgetExceeded naming `what` once the deadline has passed.
  void check(std::string_view what) const;

 private:
  std::optional<std::chrono::steady_clock::time_point> limit_;
};

/// Throws BudgetExceeded when `count` exceeds the element cap.
void check_element_budget(const Budget& budget, std::size_t count, std::string_view what);

}  // namespace nfold
