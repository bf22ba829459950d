#include "examsim/service/stores.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "examsim/service/codec.hpp"

namespace examsim::service {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& what, const fs::path& path) {
  throw StoreError(what + " " + path.string() + ": " + std::strerror(errno));
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_file(const fs::path& path, const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw StoreError("corrupt JSON in " + path.string());
  return doc;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

void write_file_atomic(const fs::path& target, std::string_view content,
                       const BeforeRenameHook& hook) {
  static std::atomic<unsigned> counter{0};
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);

  int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) fail("cannot create", temp);
  std::size_t written = 0;
  while (written < content.size()) {
    auto n = ::write(fd, content.data() + written, content.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      fail("cannot write", temp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    fail("cannot sync", temp);
  }
  ::close(fd);

  if (hook) hook(temp);
  if (std::rename(temp.c_str(), target.c_str()) != 0) fail("cannot rename onto", target);

  int dir_fd = ::open(target.parent_path().c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dir_fd >= 0) {
    ::fsync(dir_fd);
    ::close(dir_fd);
  }
}

SessionStore::SessionStore(fs::path dir) : dir_(std::move(dir)) { ensure_dir(dir_); }

fs::path SessionStore::path_for(const std::string& id) const { return dir_ / (id + ".json"); }

void SessionStore::save(const core::ExamSession& session) {
  if (!is_url_safe_id(session.id)) throw StoreError("session id is not URL-safe: " + session.id);
  write_file_atomic(path_for(session.id), session_to_json(session).dump(2), hook_);
}

std::optional<core::ExamSession> SessionStore::load(const std::string& id) const {
  if (!is_url_safe_id(id)) return std::nullopt;
  auto path = path_for(id);
  auto text = read_file(path);
  if (!text) return std::nullopt;
  try {
    auto session = session_from_json(parse_file(path, *text));
    if (session.id != id) throw StoreError("session file " + path.string() + " has another id");
    return session;
  } catch (const CodecError& e) {
    throw StoreError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> SessionStore::ids() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_lock<std::mutex> SessionStore::lock(const std::string& id) {
  std::shared_ptr<std::mutex> m;
  {
    std::lock_guard guard(locks_mutex_);
    auto& slot = locks_[id];
    if (!slot) slot = std::make_shared<std::mutex>();
    m = slot;
  }
  // The map keeps the mutex alive for the life of the store.
  return std::unique_lock<std::mutex>(*m);
}

DocumentStore::DocumentStore(fs::path dir, int chunk_budget)
    : dir_(std::move(dir)), chunk_budget_(chunk_budget) {
  ensure_dir(dir_);
}

void DocumentStore::save(const ingest::Document& doc) {
  if (!is_url_safe_id(doc.id)) throw StoreError("document id is not URL-safe: " + doc.id);
  write_file_atomic(dir_ / (doc.id + ".json"), document_to_json(doc).dump());
}

std::optional<ingest::Document> DocumentStore::load(const std::string& id) const {
  if (!is_url_safe_id(id)) return std::nullopt;
  auto path = dir_ / (id + ".json");
  auto text = read_file(path);
  if (!text) return std::nullopt;
  try {
    return document_from_json(parse_file(path, *text), chunk_budget_);
  } catch (const CodecError& e) {
    throw StoreError(path.string() + ": " + e.what());
  }
}

}  // namespace examsim::service
