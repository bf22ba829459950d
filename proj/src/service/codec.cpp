#include "examsim/service/codec.hpp"

#include <algorithm>

namespace examsim::service {

namespace {

template <class T, class Parse>
T parse_enum(const json& doc, const char* key, Parse parse) {
  auto value = parse(doc.at(key).get<std::string>());
  if (!value) throw CodecError(std::string("bad value for ") + key);
  return *value;
}

Timestamp read_time(const json& doc, const char* key) {
  auto t = parse_utc(doc.at(key).get<std::string>());
  if (!t) throw CodecError(std::string("bad timestamp for ") + key);
  return *t;
}

json grade_to_json(const core::GradeRecord& g) {
  return {{"grade", g.grade.to_string()},
          {"percent", g.percent},
          {"topic", g.topic},
          {"questions_covered", g.questions_covered},
          {"trigger", core::to_string(g.trigger)},
          {"disclaimer", g.disclaimer},
          {"entry_index", g.entry_index}};
}

core::GradeRecord grade_from_json(const json& doc) {
  auto grade = core::GradeValue::parse(doc.at("grade").get<std::string>());
  if (!grade) throw CodecError("bad grade value");
  return core::GradeRecord{*grade,
                           doc.at("percent").get<int>(),
                           doc.at("topic").get<std::string>(),
                           doc.at("questions_covered").get<int>(),
                           parse_enum<core::GradeTrigger>(doc, "trigger", core::parse_grade_trigger),
                           doc.at("disclaimer").get<std::string>(),
                           doc.at("entry_index").get<std::size_t>()};
}

}  // namespace

json session_to_json(const core::ExamSession& s) {
  json transcript = json::array();
  for (const auto& e : s.transcript) {
    transcript.push_back({{"index", e.index},
                          {"role", core::to_string(e.role)},
                          {"text", e.raw_text},
                          {"timestamp", format_utc(e.timestamp)}});
  }
  json grades = json::array();
  for (const auto& g : s.grades) grades.push_back(grade_to_json(g));

  return {{"schema_version", s.schema_version},
          {"id", s.id},
          {"subject_area", s.subject_area},
          {"current_topic", s.current_topic},
          {"mode", core::to_string(s.mode)},
          {"language", s.language},
          {"student_context", s.student_context},
          {"document_ids", s.document_ids},
          {"material_excerpts", s.material_excerpts},
          {"observed_language", s.observed_language ? json(*s.observed_language) : json(nullptr)},
          {"phase", core::to_string(s.phase)},
          {"answered_in_segment", s.answered_in_segment},
          {"answered_total", s.answered_total},
          {"hints_used", s.hints_used},
          {"transcript", std::move(transcript)},
          {"grades", std::move(grades)},
          {"created_at", format_utc(s.created_at)},
          {"updated_at", format_utc(s.updated_at)}};
}

core::ExamSession session_from_json(const json& doc) {
  try {
    core::ExamSession s;
    s.schema_version = doc.at("schema_version").get<int>();
    if (s.schema_version != core::kSchemaVersion) {
      throw CodecError("unsupported schema_version " + std::to_string(s.schema_version));
    }
    s.id = doc.at("id").get<std::string>();
    s.subject_area = doc.at("subject_area").get<std::string>();
    s.current_topic = doc.at("current_topic").get<std::string>();
    s.mode = parse_enum<core::ExamMode>(doc, "mode", core::parse_exam_mode);
    s.language = doc.at("language").get<std::string>();
    s.student_context = doc.at("student_context").get<core::StudentContext>();
    s.document_ids = doc.at("document_ids").get<std::vector<std::string>>();
    s.material_excerpts = doc.at("material_excerpts").get<std::vector<std::string>>();
    if (const auto& observed = doc.at("observed_language"); !observed.is_null()) {
      s.observed_language = observed.get<std::string>();
    }
    s.phase = parse_enum<core::Phase>(doc, "phase", core::parse_phase);
    s.answered_in_segment = doc.at("answered_in_segment").get<int>();
    s.answered_total = doc.at("answered_total").get<int>();
    s.hints_used = doc.at("hints_used").get<int>();
    for (const auto& e : doc.at("transcript")) {
      auto index = e.at("index").get<std::size_t>();
      if (index != s.transcript.size()) throw CodecError("transcript indices are not contiguous");
      s.transcript.push_back(core::make_entry(parse_enum<core::Role>(e, "role", core::parse_role),
                                              e.at("text").get<std::string>(), index,
                                              read_time(e, "timestamp")));
    }
    for (const auto& g : doc.at("grades")) {
      auto record = grade_from_json(g);
      if (record.percent < 0 || record.percent > 100 ||
          core::percent_to_grade(record.percent) != record.grade) {
        throw CodecError("grade " + record.grade.to_string() + " does not match " +
                         std::to_string(record.percent) + "%");
      }
      if (record.entry_index >= s.transcript.size()) {
        throw CodecError("grade refers to a missing transcript entry");
      }
      s.grades.push_back(std::move(record));
    }
    s.created_at = read_time(doc, "created_at");
    s.updated_at = read_time(doc, "updated_at");
    return s;
  } catch (const json::exception& e) {
    throw CodecError(std::string("malformed session document: ") + e.what());
  }
}

std::string message_kind(const core::ExamSession& session, const core::TranscriptEntry& entry) {
  switch (entry.role) {
    case core::Role::Student:
      return entry.raw_text == core::kRequestHintMessage ? "hint_request" : "answer";
    case core::Role::System:
      return "action";
    case core::Role::Hint:
      return "hint";
    case core::Role::Examiner:
      break;
  }
  bool graded = std::any_of(session.grades.begin(), session.grades.end(),
                            [&](const core::GradeRecord& g) { return g.entry_index == entry.index; });
  if (graded) return "grade";
  if (core::has_tag(entry.tags, core::TagName::SessionEnd)) return "end";
  return "question";
}

json tag_view(const core::SentinelTag& tag) {
  json view = {{"name", core::to_string(tag.name)}, {"args", tag.args}};
  if (auto grade = core::read_grade(tag)) {
    view["grade"] = grade->grade.to_string();
    view["percent"] = grade->percent;
  }
  return view;
}

json grade_view(const core::GradeRecord& g) { return grade_to_json(g); }

json entry_view(const core::ExamSession& session, const core::TranscriptEntry& entry) {
  json tags = json::array();
  for (const auto& tag : entry.tags) tags.push_back(tag_view(tag));
  json view = {{"index", entry.index},
               {"role", core::to_string(entry.role)},
               {"kind", message_kind(session, entry)},
               {"text", entry.display_text},
               {"tags", std::move(tags)},
               {"timestamp", format_utc(entry.timestamp)}};
  for (const auto& g : session.grades) {
    if (g.entry_index == entry.index) view["grade"] = grade_view(g);
  }
  return view;
}

json counters_view(const core::ExamSession& s, const core::EngineOptions& options) {
  return {{"answered_in_segment", s.answered_in_segment},
          {"answered_total", s.answered_total},
          {"hints_used", s.hints_used},
          {"grades", s.grades.size()},
          {"min_questions_for_grade", options.min_questions_for_grade},
          {"auto_grade_after", options.auto_grade_after}};
}

json session_view(const core::ExamSession& s, const core::EngineOptions& options) {
  json transcript = json::array();
  for (const auto& e : s.transcript) transcript.push_back(entry_view(s, e));
  json grades = json::array();
  for (const auto& g : s.grades) grades.push_back(grade_view(g));
  return {{"id", s.id},
          {"subject_area", s.subject_area},
          {"topic", s.current_topic},
          {"mode", core::to_string(s.mode)},
          {"language", s.language},
          {"phase", core::to_string(s.phase)},
          {"counters", counters_view(s, options)},
          {"document_ids", s.document_ids},
          {"transcript", std::move(transcript)},
          {"grades", std::move(grades)},
          {"created_at", format_utc(s.created_at)},
          {"updated_at", format_utc(s.updated_at)}};
}

json document_to_json(const ingest::Document& doc) {
  return {{"id", doc.id},
          {"title", doc.title},
          {"format", ingest::to_string(doc.format)},
          {"body", doc.body}};
}

ingest::Document document_from_json(const json& doc, int chunk_budget) {
  try {
    ingest::Document d;
    d.id = doc.at("id").get<std::string>();
    d.title = doc.at("title").get<std::string>();
    auto format = ingest::parse_document_format(doc.at("format").get<std::string>());
    if (!format) throw CodecError("bad document format");
    d.format = *format;
    d.body = doc.at("body").get<std::string>();
    return ingest::chunk_document(std::move(d), chunk_budget);
  } catch (const json::exception& e) {
    throw CodecError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace examsim::service
