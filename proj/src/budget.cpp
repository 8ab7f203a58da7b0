#include "nfold/budget.hpp"

#include <string>

#include "nfold/errors.hpp"

namespace nfold {

Deadline::Deadline(const Budget& budget) {
  if (budget.max_time) limit_ = std::chrono::steady_clock::now() + *budget.max_time;
}

bool Deadline::expired() const { return limit_ && std::chrono::steady_clock::now() > *limit_; }

void Deadline::check(std::string_view what) const {
  if (expired()) throw BudgetExceeded("time budget exceeded during " + std::string(what));
}

void check_element_budget(const Budget& budget, std::size_t count, std::string_view what) {
  if (budget.max_elements && count > *budget.max_elements) {
    throw BudgetExceeded("element budget of " + std::to_string(*budget.max_elements) + " exceeded during " +
                         std::string(what));
  }
}

}  // namespace nfold
