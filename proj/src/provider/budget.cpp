#include "examsim/provider/budget.hpp"

namespace examsim::provider {

int estimate_tokens(std::string_view text) {
  return static_cast<int>((text.size() + 3) / 4);
}

int estimate_tokens(const ProviderRequest& request) {
  int total = estimate_tokens(request.instructions);
  for (const auto& message : request.transcript) total += estimate_tokens(message.text);
  if (request.directive_note) total += estimate_tokens(*request.directive_note);
  return total;
}

ProviderRequest fit_to_budget(ProviderRequest request, int budget_tokens) {
  auto& transcript = request.transcript;
  int total = estimate_tokens(request);
  std::size_t drop = 0;
  // Pairs keep the user/assistant alternation intact.
  while (total > budget_tokens && transcript.size() - drop >= 3) {
    total -= estimate_tokens(transcript[drop].text) + estimate_tokens(transcript[drop + 1].text);
    drop += 2;
  }
  if (total > budget_tokens && transcript.size() - drop == 2) {
    total -= estimate_tokens(transcript[drop].text);
    drop += 1;
  }
  transcript.erase(transcript.begin(), transcript.begin() + static_cast<std::ptrdiff_t>(drop));
  return request;
}

}  // namespace examsim::provider
