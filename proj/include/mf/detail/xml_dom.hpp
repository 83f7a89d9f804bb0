#pragma once

// Minimal non-validating XML reader: elements, attributes, character data,
// CDATA, comments, processing instructions and the predefined/numeric
// entities. No DTD processing.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mf::detail {

struct XmlElement {
  std::string name;       // as written, e.g. "gml:posList"
  std::string local;      // "posList"
  std::string namespace_uri;
  std::vector<std::pair<std::string, std::string>> attributes;  // qualified name -> value
  std::vector<XmlElement> children;
  std::string text;       // concatenated character data of this element
  std::size_t line = 0;

  bool is(std::string_view ns, std::string_view local_name) const {
    return namespace_uri == ns && local == local_name;
  }
  // Matches the attribute's local name, ignoring any prefix.
  const std::string* attribute(std::string_view local_name) const;
  const XmlElement* child(std::string_view ns, std::string_view local_name) const;
};

struct XmlDocument {
  XmlElement root;
  // Recoverable irregularities, e.g. bare tokens inside a start tag.
  std::vector<std::string> warnings;
};

// `fallback_namespaces` resolves prefixes the document uses without
// declaring them. Throws Error(kMalformedXml).
XmlDocument parse_xml_document(std::string_view text,
                               const std::map<std::string, std::string>& fallback_namespaces = {});

std::string xml_escape(std::string_view text);

}  // namespace mf::detail
