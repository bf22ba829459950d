#pragma once

#include <string_view>

#include "examsim/provider/types.hpp"

namespace examsim::provider {

inline constexpr int kDefaultTokenBudget = 8000;

// ceil(bytes / 4); a tokenizer-free estimate.
int estimate_tokens(std::string_view text);
int estimate_tokens(const ProviderRequest& request);

// Drops the oldest transcript pairs until the request fits. Instructions,
// the directive note and the final message are never dropped, so the result
// may still exceed a budget that is smaller than those alone.
ProviderRequest fit_to_budget(ProviderRequest request, int budget_tokens);

}  // namespace examsim::provider
