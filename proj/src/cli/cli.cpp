#include "examsim/cli/cli.hpp"

#include <CLI11.hpp>
#include <csignal>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "examsim/cli/chat.hpp"
#include "examsim/cli/replay.hpp"
#include "examsim/core/runner.hpp"
#include "examsim/ingest/document.hpp"
#include "examsim/provider/http_provider.hpp"
#include "examsim/provider/scripted.hpp"
#include "examsim/service/api.hpp"
#include "examsim/service/stores.hpp"

namespace examsim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<std::string> read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ingest::DocumentFormat format_for(const fs::path& file, const std::string& requested) {
  if (!requested.empty()) {
    auto format = ingest::parse_document_format(requested);
    if (!format) throw service::ConfigError("--format must be plain_text or markdown");
    return *format;
  }
  auto ext = file.extension().string();
  return ext == ".md" || ext == ".markdown" ? ingest::DocumentFormat::Markdown
                                            : ingest::DocumentFormat::PlainText;
}

// Stops the server on SIGINT/SIGTERM without running code in a signal
// handler: the signals are blocked and a helper thread waits for them.
void stop_on_signals(service::HttpServer& server) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  std::thread([set, &server] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  }).detach();
}

int serve(const std::string& config_path, std::ostream& out, std::ostream& err,
          const CliEnvironment& environment) {
  service::ServiceConfig config;
  std::unique_ptr<service::SessionStore> sessions;
  std::unique_ptr<service::DocumentStore> documents;
  try {
    config = service::load_service_config(config_path, environment.env);
    sessions = std::make_unique<service::SessionStore>(config.sessions_dir);
    documents = std::make_unique<service::DocumentStore>(config.documents_dir, config.chunk_budget);
  } catch (const std::exception& e) {
    err << "examsim serve: " << e.what() << '\n';
    return kExitConfig;
  }

  std::unique_ptr<provider::ChatProvider> provider;
  try {
    provider = service::make_provider(config.provider);
  } catch (const std::exception& e) {
    err << "examsim serve: provider: " << e.what() << '\n';
    return kExitProvider;
  }

  if (!environment.on_listening) {
    // Block before any server thread exists so every thread inherits the mask.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
  }

  core::Engine engine(config.engine);
  service::RateLimiter limiter(config.rate_limit);
  service::Api api(engine, *provider, *sessions, *documents, limiter,
                   {config.api_token, config.excerpt_budget});
  std::mutex log_mutex;
  service::HttpServer server(api, config.static_dir, [&](const std::string& line) {
    std::lock_guard lock(log_mutex);
    err << line << '\n';
  });

  int port = 0;
  try {
    port = server.bind(config.host, config.port);
  } catch (const service::BindError& e) {
    err << "examsim serve: " << e.what() << '\n';
    return kExitBind;
  }
  out << "examsim listening on http://" << config.host << ':' << port << std::endl;

  if (environment.on_listening) {
    std::thread trigger([&] {
      server.wait_until_ready();
      environment.on_listening(server, port);
    });
    server.listen();
    trigger.join();
  } else {
    stop_on_signals(server);
    server.listen();
  }
  out << "examsim stopped" << std::endl;
  return kExitOk;
}

int chat(const ChatOptions& options, const std::string& provider_kind, const std::string& script,
         const std::string& base_url, const std::string& model,
         const std::vector<std::string>& document_files, std::istream& in, std::ostream& out,
         std::ostream& err, const CliEnvironment& environment) {
  ChatOptions resolved = options;
  try {
    std::vector<ingest::Document> docs;
    for (const auto& file : document_files) {
      auto body = read_text(file);
      if (!body) throw service::ConfigError("cannot read " + file);
      ingest::Document doc;
      doc.id = "d-" + std::to_string(docs.size() + 1);
      doc.title = fs::path(file).filename().string();
      doc.body = std::move(*body);
      doc.format = format_for(file, "");
      docs.push_back(ingest::chunk_document(std::move(doc)));
    }
    if (!docs.empty()) {
      resolved.session.material_excerpts = ingest::excerpt_texts(
          docs, ingest::select_excerpts(docs, resolved.session.topic, 1500));
    }
  } catch (const std::exception& e) {
    err << "examsim chat: " << e.what() << '\n';
    return kExitConfig;
  }

  std::unique_ptr<provider::ChatProvider> provider;
  try {
    service::ProviderSettings settings;
    if (provider_kind == "http") {
      settings.kind = service::ProviderKind::Http;
      if (!base_url.empty()) settings.http.base_url = base_url;
      if (!model.empty()) settings.http.model = model;
      settings.http.api_key = environment.env(service::kProviderKeyEnv).value_or("");
    } else {
      settings.script = script;
    }
    provider = service::make_provider(settings);
  } catch (const std::exception& e) {
    err << "examsim chat: " << e.what() << '\n';
    return kExitProvider;
  }

  core::Engine engine;
  try {
    return run_chat(engine, *provider, resolved, in, out);
  } catch (const Error& e) {
    err << "examsim chat: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidConfig ? kExitConfig : kExitFailure;
  }
}

int ingest_file(const std::string& file, const std::string& title, const std::string& format,
                const std::string& documents_dir, int chunk_budget, std::ostream& out,
                std::ostream& err) {
  auto body = read_text(file);
  if (!body) {
    err << "examsim ingest: cannot read " << file << '\n';
    return kExitFailure;
  }
  try {
    ingest::Document doc;
    doc.id = random_ids("d-")();
    doc.title = title.empty() ? fs::path(file).filename().string() : title;
    doc.body = std::move(*body);
    doc.format = format_for(file, format);
    doc = ingest::chunk_document(std::move(doc), chunk_budget);

    json chunks = json::array();
    int total = 0;
    for (const auto& c : doc.chunks) {
      chunks.push_back({{"begin", c.begin}, {"end", c.end}, {"estimated_tokens", c.estimated_tokens}});
      total += c.estimated_tokens;
    }
    json report = {{"title", doc.title},
                   {"format", ingest::to_string(doc.format)},
                   {"chunk_count", doc.chunks.size()},
                   {"estimated_tokens", total},
                   {"chunks", std::move(chunks)}};
    if (!documents_dir.empty()) {
      service::DocumentStore store(documents_dir, chunk_budget);
      store.save(doc);
      report["document_id"] = doc.id;
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  } catch (const service::ConfigError& e) {
    err << "examsim ingest: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "examsim ingest: " << e.what() << '\n';
    return kExitFailure;
  }
}

int replay(const std::string& script_path, const std::string& out_path, std::ostream& out,
           std::ostream& err) {
  try {
    auto text = run_replay(load_replay(script_path));
    if (out_path.empty() || out_path == "-") {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      file << text;
      if (!file) {
        err << "examsim replay: cannot write " << out_path << '\n';
        return kExitFailure;
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "examsim replay: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err, const CliEnvironment& environment) {
  CLI::App app{"Simulated oral exams with a language-model examiner", "examsim"};
  app.require_subcommand(1);

  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--config", config_path, "JSON configuration file")->required();

  ChatOptions chat_options;
  std::string mode = "practice";
  std::string provider_kind = "mock";
  std::string script;
  std::string base_url;
  std::string model;
  std::string transcript = "examsim-transcript.txt";
  std::vector<std::string> document_files;
  auto* chat_cmd = app.add_subcommand("chat", "Run an exam session in the terminal");
  chat_cmd->add_option("--subject", chat_options.session.subject_area, "Subject area")->required();
  chat_cmd->add_option("--topic", chat_options.session.topic, "First topic")->required();
  chat_cmd->add_option("--mode", mode, "practice or exam")
      ->check(CLI::IsMember({"practice", "exam"}));
  chat_cmd->add_option("--language", chat_options.session.language, "Exam language");
  chat_cmd->add_option("--provider", provider_kind, "mock or http")
      ->check(CLI::IsMember({"mock", "http"}));
  chat_cmd->add_option("--script", script, "Mock provider script");
  chat_cmd->add_option("--base-url", base_url, "OpenAI-compatible endpoint (http provider)");
  chat_cmd->add_option("--model", model, "Model name (http provider)");
  chat_cmd->add_option("--transcript", transcript, "Where /quit writes the transcript");
  chat_cmd->add_option("--document", document_files, "Course material file (repeatable)");

  std::string file;
  std::string title;
  std::string format;
  std::string documents_dir;
  int chunk_budget = ingest::kDefaultChunkBudget;
  auto* ingest_cmd = app.add_subcommand("ingest", "Chunk a course document");
  ingest_cmd->add_option("--file", file, "Plain text or markdown file")->required();
  ingest_cmd->add_option("--title", title, "Document title");
  ingest_cmd->add_option("--format", format, "plain_text or markdown (default: by extension)");
  ingest_cmd->add_option("--documents-dir", documents_dir, "Store the document for the service");
  ingest_cmd->add_option("--chunk-budget", chunk_budget, "Tokens per chunk")
      ->check(CLI::PositiveNumber);

  std::string replay_script;
  std::string replay_out;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a scripted session deterministically");
  replay_cmd->add_option("--script", replay_script, "Replay script")->required();
  replay_cmd->add_option("--out", replay_out, "Transcript file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "examsim: " << e.what() << '\n';
    auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitConfig;
  }

  if (*serve_cmd) return serve(config_path, out, err, environment);
  if (*chat_cmd) {
    chat_options.session.mode = *core::parse_exam_mode(mode);
    chat_options.transcript_path = transcript;
    return chat(chat_options, provider_kind, script, base_url, model, document_files, in, out, err,
                environment);
  }
  if (*ingest_cmd) return ingest_file(file, title, format, documents_dir, chunk_budget, out, err);
  return replay(replay_script, replay_out, out, err);
}

}  // namespace examsim::cli
