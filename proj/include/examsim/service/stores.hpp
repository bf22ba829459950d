#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "examsim/core/session.hpp"
#include "examsim/ingest/document.hpp"

namespace examsim::service {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Called with the fully written and synced temp file, just before it is
// renamed over the target. Tests use it to interrupt a save.
using BeforeRenameHook = std::function<void(const std::filesystem::path& temp)>;

// Writes `content` to a temp file in the target's directory, fsyncs it and
// renames it into place, so readers see either the old or the new file.
void write_file_atomic(const std::filesystem::path& target, std::string_view content,
                       const BeforeRenameHook& hook = {});

// One JSON file per session, named <id>.json.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir);

  void save(const core::ExamSession& session);
  // nullopt when no such session exists (or the id is not URL-safe).
  // Throws StoreError when the file exists but cannot be decoded.
  std::optional<core::ExamSession> load(const std::string& id) const;
  std::vector<std::string> ids() const;

  // Serialises mutations of one session; other sessions are unaffected.
  std::unique_lock<std::mutex> lock(const std::string& id);

  void set_before_rename_hook(BeforeRenameHook hook) { hook_ = std::move(hook); }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path dir_;
  BeforeRenameHook hook_;
  std::mutex locks_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

class DocumentStore {
 public:
  DocumentStore(std::filesystem::path dir, int chunk_budget = ingest::kDefaultChunkBudget);

  void save(const ingest::Document& doc);
  std::optional<ingest::Document> load(const std::string& id) const;
  int chunk_budget() const { return chunk_budget_; }

 private:
  std::filesystem::path dir_;
  int chunk_budget_;
};

}  // namespace examsim::service
