#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mf/model.hpp"

namespace mf {

enum class Encoding { kCsv, kXml, kJson };

std::string_view to_string(Encoding encoding);  // "csv", "xml", "json"
std::optional<Encoding> parse_encoding(std::string_view name);

// By file extension (.csv/.xml/.json, case-insensitive).
std::optional<Encoding> encoding_from_path(std::string_view path);
// By first significant character: '@' CSV, '<' XML, '{' or '[' JSON.
std::optional<Encoding> sniff_encoding(std::string_view content);

ParseResult parse_document(std::string_view doc, Encoding encoding);
std::string write_document(const FeatureCollection& collection, Encoding encoding);

}  // namespace mf
