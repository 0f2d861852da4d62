#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profitrec/error.hpp"

namespace profitrec {

struct CatalogRecord {
  std::string item_id;
  double rating;  // customer's true rating c_i
  double profit;  // p_i

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

enum class CatalogFormat { kCsv, kJson };

std::optional<CatalogFormat> parse_format(std::string_view name);

// One problem found while reading a catalog. `line` is the 1-based physical
// line for CSV and the 1-based array position for JSON.
struct Diagnostic {
  std::size_t line;
  std::string field;
  std::string reason;
};

class IngestError : public Error {
 public:
  IngestError(ErrorCode code, std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates a catalog. Every malformed or invalid row is
/// collected before throwing: kParseError if any row could not be read,
/// otherwise kValidationError (rating outside [0, m], profit <= 0, duplicate
/// item_id). No records at all is kEmptyInput.
std::vector<CatalogRecord> parse_catalog(std::string_view content,
                                         CatalogFormat format,
                                         double max_rating);

std::vector<CatalogRecord> ingest(const std::filesystem::path& path,
                                  CatalogFormat format, double max_rating);

/// Serializes records so that parse_catalog reproduces them exactly.
std::string emit(const std::vector<CatalogRecord>& records,
                 CatalogFormat format);

}  // namespace profitrec
