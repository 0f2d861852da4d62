#include "profitrec/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace profitrec {
namespace {

std::string describe(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  for (std::size_t i = 0; i < diagnostics.size(); ++i) {
    const auto& d = diagnostics[i];
    if (i > 0) out << "; ";
    out << "line " << d.line << ", field " << d.field << ": " << d.reason;
  }
  return out.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits one CSV line, honouring double-quoted fields with "" escapes.
// Unquoted text is trimmed; quoted text is kept byte for byte.
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  const auto flush = [&] {
    fields.push_back(was_quoted ? field : std::string(trim(field)));
    field.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      if (!was_quoted) field.clear();
      quoted = was_quoted = true;
    } else if (ch == ',') {
      flush();
    } else if (!was_quoted || (ch != ' ' && ch != '\t')) {
      field += ch;
    }
  }
  if (quoted) return std::nullopt;
  flush();
  return fields;
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& id) {
  if (id.find_first_of(",\"\n\r") == std::string::npos &&
      trim(id).size() == id.size()) {
    return id;
  }
  std::string out = "\"";
  for (char ch : id) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class Collector {
 public:
  explicit Collector(double max_rating) : max_rating_(max_rating) {}

  void parse_failure(std::size_t line, std::string field, std::string reason) {
    diagnostics_.push_back({line, std::move(field), std::move(reason)});
    parse_failed_ = true;
  }

  void add(std::size_t line, std::string id, double rating, double profit) {
    bool ok = true;
    if (id.empty()) {
      diagnostics_.push_back({line, "item_id", "empty item id"});
      ok = false;
    } else if (!seen_.insert(id).second) {
      diagnostics_.push_back({line, "item_id", "duplicate item id '" + id + "'"});
      ok = false;
    }
    if (rating < 0.0 || rating > max_rating_) {
      diagnostics_.push_back({line, "rating",
                              format_real(rating) + " outside [0, " +
                                  format_real(max_rating_) + "]"});
      ok = false;
    }
    if (!(profit > 0.0)) {
      diagnostics_.push_back(
          {line, "profit", format_real(profit) + " is not positive"});
      ok = false;
    }
    if (ok) records_.push_back({std::move(id), rating, profit});
  }

  std::vector<CatalogRecord> finish(std::size_t rows) {
    if (!diagnostics_.empty()) {
      throw IngestError(parse_failed_ ? ErrorCode::kParseError
                                      : ErrorCode::kValidationError,
                        std::move(diagnostics_));
    }
    if (rows == 0) {
      throw IngestError(ErrorCode::kEmptyInput,
                        {{0, "-", "input contains no records"}});
    }
    return std::move(records_);
  }

 private:
  double max_rating_;
  std::set<std::string> seen_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<CatalogRecord> records_;
  bool parse_failed_ = false;
};

std::vector<CatalogRecord> parse_csv(std::string_view content,
                                     double max_rating) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  Collector collector(max_rating);
  std::size_t line_no = 0;
  std::size_t rows = 0;
  bool header_seen = false;
  while (!content.empty()) {
    const auto end = content.find('\n');
    std::string_view line = content.substr(0, end);
    content = end == std::string_view::npos ? std::string_view{}
                                            : content.substr(end + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(trim(line));
    if (!header_seen) {
      header_seen = true;
      if (!fields || fields->size() != 3 || (*fields)[0] != "item_id" ||
          (*fields)[1] != "rating" || (*fields)[2] != "profit") {
        collector.parse_failure(line_no, "header",
                                "expected 'item_id,rating,profit'");
        return collector.finish(0);
      }
      continue;
    }
    ++rows;
    if (!fields) {
      collector.parse_failure(line_no, "item_id", "unterminated quote");
      continue;
    }
    if (fields->size() != 3) {
      collector.parse_failure(line_no, "-",
                              "expected 3 fields, found " +
                                  std::to_string(fields->size()));
      continue;
    }
    const auto rating = parse_real((*fields)[1]);
    const auto profit = parse_real((*fields)[2]);
    if (!rating) {
      collector.parse_failure(line_no, "rating",
                              "'" + (*fields)[1] + "' is not a number");
    }
    if (!profit) {
      collector.parse_failure(line_no, "profit",
                              "'" + (*fields)[2] + "' is not a number");
    }
    if (rating && profit) {
      collector.add(line_no, (*fields)[0], *rating, *profit);
    }
  }
  return collector.finish(rows);
}

std::vector<CatalogRecord> parse_json(std::string_view content,
                                      double max_rating) {
  Collector collector(max_rating);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    collector.parse_failure(0, "-", e.what());
    return collector.finish(0);
  }
  if (!doc.is_array()) {
    collector.parse_failure(0, "-", "top-level value must be an array");
    return collector.finish(0);
  }
  std::size_t index = 0;
  for (const auto& item : doc) {
    ++index;
    if (!item.is_object()) {
      collector.parse_failure(index, "-", "record is not an object");
      continue;
    }
    const auto id = item.find("item_id");
    const auto rating = item.find("rating");
    const auto profit = item.find("profit");
    bool ok = true;
    if (id == item.end() || !id->is_string()) {
      collector.parse_failure(index, "item_id", "missing or not a string");
      ok = false;
    }
    if (rating == item.end() || !rating->is_number()) {
      collector.parse_failure(index, "rating", "missing or not a number");
      ok = false;
    }
    if (profit == item.end() || !profit->is_number()) {
      collector.parse_failure(index, "profit", "missing or not a number");
      ok = false;
    }
    if (ok) {
      collector.add(index, id->get<std::string>(), rating->get<double>(),
                    profit->get<double>());
    }
  }
  return collector.finish(doc.size());
}

}  // namespace

IngestError::IngestError(ErrorCode code, std::vector<Diagnostic> diagnostics)
    : Error(code, describe(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::optional<CatalogFormat> parse_format(std::string_view name) {
  if (name == "csv") return CatalogFormat::kCsv;
  if (name == "json") return CatalogFormat::kJson;
  return std::nullopt;
}

std::vector<CatalogRecord> parse_catalog(std::string_view content,
                                         CatalogFormat format,
                                         double max_rating) {
  return format == CatalogFormat::kCsv ? parse_csv(content, max_rating)
                                       : parse_json(content, max_rating);
}

std::vector<CatalogRecord> ingest(const std::filesystem::path& path,
                                  CatalogFormat format, double max_rating) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestError(ErrorCode::kParseError,
                      {{0, "-", "cannot open " + path.string()}});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), format, max_rating);
}

std::string emit(const std::vector<CatalogRecord>& records,
                 CatalogFormat format) {
  if (format == CatalogFormat::kJson) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      doc.push_back(
          {{"item_id", r.item_id}, {"rating", r.rating}, {"profit", r.profit}});
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "item_id,rating,profit\n";
  for (const auto& r : records) {
    out += quote_if_needed(r.item_id) + "," + format_real(r.rating) + "," +
           format_real(r.profit) + "\n";
  }
  return out;
}

}  // namespace profitrec
