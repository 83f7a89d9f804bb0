#include "mf/codec.hpp"

#include <algorithm>
#include <cctype>

#include "mf/csv_codec.hpp"
#include "mf/json_codec.hpp"
#include "mf/xml_codec.hpp"

namespace mf {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Encoding encoding) {
  switch (encoding) {
    case Encoding::kCsv: return "csv";
    case Encoding::kXml: return "xml";
    case Encoding::kJson: return "json";
  }
  return "csv";
}

std::optional<Encoding> parse_encoding(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return Encoding::kCsv;
  if (n == "xml") return Encoding::kXml;
  if (n == "json") return Encoding::kJson;
  return std::nullopt;
}

std::optional<Encoding> encoding_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash)) return std::nullopt;
  return parse_encoding(path.substr(dot + 1));
}

std::optional<Encoding> sniff_encoding(std::string_view content) {
  if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);
  for (const char c : content) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '@') return Encoding::kCsv;
    if (c == '<') return Encoding::kXml;
    if (c == '{' || c == '[') return Encoding::kJson;
    return std::nullopt;
  }
  return std::nullopt;
}

ParseResult parse_document(std::string_view doc, Encoding encoding) {
  switch (encoding) {
    case Encoding::kCsv: return parse_csv(doc);
    case Encoding::kXml: return parse_xml(doc);
    case Encoding::kJson: return parse_json(doc);
  }
  return parse_csv(doc);
}

std::string write_document(const FeatureCollection& collection, Encoding encoding) {
  switch (encoding) {
    case Encoding::kCsv: return write_csv(collection);
    case Encoding::kXml: return write_xml(collection);
    case Encoding::kJson: return write_json(collection);
  }
  return write_csv(collection);
}

}  // namespace mf
