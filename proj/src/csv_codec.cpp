#include "mf/csv_codec.hpp"

#include <cctype>
#include <map>

#include "mf/error.hpp"
#include "mf/numeric_text.hpp"
#include "segments.hpp"

namespace mf {
namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_blank(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

// Logical lines: CR stripped, blank lines dropped, indented lines folded
// into their predecessor.
std::vector<Line> logical_lines(std::string_view doc) {
  if (doc.starts_with("\xEF\xBB\xBF")) doc.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= doc.size()) {
    auto pos = doc.find('\n', start);
    if (pos == std::string_view::npos) pos = doc.size();
    std::string_view raw = doc.substr(start, pos - start);
    start = pos + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (trim(raw).empty()) continue;
    if ((raw.front() == ' ' || raw.front() == '\t') && !lines.empty()) {
      lines.back().text += trim(raw);
      continue;
    }
    lines.push_back({number, std::string(trim(raw))});
  }
  return lines;
}

std::string at_line(std::size_t number) { return "line " + std::to_string(number); }

[[noreturn]] void rethrow_at(const Error& e, const std::string& where) {
  throw Error(e.code(), where + ": " + e.what());
}

Position parse_corner(std::string_view text, std::size_t dims) {
  std::vector<double> coords;
  for (auto token : split_blank(text)) {
    const auto v = parse_double(token);
    if (!v) throw Error(ErrorCode::kMalformedHeader, "bad coordinate '" + std::string(token) + "' in bounds");
    coords.push_back(*v);
  }
  if (coords.size() != dims) {
    throw Error(ErrorCode::kMalformedHeader, "bounds corner '" + std::string(text) + "' is not " +
                                                 std::to_string(dims) + "D");
  }
  return Position(coords);
}

std::string position_list(const Position& a, const Position& b) {
  std::string s;
  for (const Position* p : {&a, &b}) {
    for (std::size_t i = 0; i < p->dims(); ++i) {
      if (!s.empty()) s += ' ';
      s += format_decimal((*p)[i]);
    }
  }
  return s;
}

}  // namespace

CsvHeader parse_csv_header(std::string_view stboundedby_line, std::string_view columns_line) {
  CsvHeader header;
  const auto bf = split(stboundedby_line, ',');
  if (bf.empty() || bf[0] != "@stboundedby") {
    throw Error(ErrorCode::kMalformedHeader, "first header line must start with @stboundedby");
  }
  if (bf.size() < 8) {
    throw Error(ErrorCode::kMalformedHeader, "@stboundedby needs crs, dimension, two corners, begin, end and time unit");
  }
  for (std::size_t i = 8; i < bf.size(); ++i) {
    if (!bf[i].empty()) throw Error(ErrorCode::kMalformedHeader, "unexpected @stboundedby field '" + std::string(bf[i]) + "'");
  }
  if (!bf[1].empty()) header.crs = std::string(bf[1]);
  if (bf[2] == "2D" || bf[2] == "2d") {
    header.dims = 2;
  } else if (bf[2] == "3D" || bf[2] == "3d") {
    header.dims = 3;
  } else {
    throw Error(ErrorCode::kMalformedHeader, "dimension must be 2D or 3D, got '" + std::string(bf[2]) + "'");
  }
  header.bounds.lower = parse_corner(bf[3], header.dims);
  header.bounds.upper = parse_corner(bf[4], header.dims);
  const auto begin = try_parse_iso8601(bf[5]);
  const auto end = try_parse_iso8601(bf[6]);
  if (!begin || !end) throw Error(ErrorCode::kMalformedHeader, "bounds period must be two ISO-8601 timestamps");
  header.bounds.period = {*begin, *end};
  const auto unit = unit_millis(bf[7]);
  if (!unit) throw Error(ErrorCode::kMalformedHeader, "unknown time unit '" + std::string(bf[7]) + "'");
  header.bounds.time_unit = std::string(bf[7]);
  header.unit_ms = *unit;

  const auto cf = split(columns_line, ',');
  if (cf.empty() || cf[0] != "@columns") {
    throw Error(ErrorCode::kMalformedHeader, "second header line must start with @columns");
  }
  if (cf.size() < 3 || cf[1] != "mfidref" || cf[2] != "trajectory") {
    throw Error(ErrorCode::kMalformedHeader, "@columns must begin with mfidref,trajectory");
  }
  if ((cf.size() - 3) % 2 != 0) {
    throw Error(ErrorCode::kMalformedHeader, "@columns attributes must come as name,type pairs");
  }
  for (std::size_t i = 3; i < cf.size(); i += 2) {
    const auto type = value_type_from_xsd(cf[i + 1]);
    if (!type) {
      throw Error(ErrorCode::kUnknownColumnType,
                  "unknown type '" + std::string(cf[i + 1]) + "' for column '" + std::string(cf[i]) + "'");
    }
    if (cf[i].empty()) throw Error(ErrorCode::kMalformedHeader, "attribute column without a name");
    header.columns.push_back({std::string(cf[i]), *type});
  }
  return header;
}

ParseResult parse_csv(std::string_view doc) {
  const auto lines = logical_lines(doc);
  if (lines.size() < 2) throw Error(ErrorCode::kMalformedHeader, "missing @stboundedby/@columns header lines");

  CsvHeader header;
  try {
    header = parse_csv_header(lines[0].text, lines[1].text);
  } catch (const Error& e) {
    rethrow_at(e, at_line(lines[0].number));
  }

  std::vector<detail::AttrDef> attrs;
  for (const auto& c : header.columns) attrs.push_back({c.name, c.type, std::nullopt});

  ParseResult result;
  result.collection.bounds = header.bounds;
  std::vector<std::string> order;
  std::map<std::string, std::vector<detail::Segment>> by_feature;

  const std::size_t expected_fields = 4 + header.columns.size();
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string where = at_line(line.number);
    if (line.text.front() == '@') {
      result.diagnostics.push_back({Severity::kWarning, "IGNORED_HEADER", where + ": header line after data header ignored"});
      continue;
    }
    try {
      const auto fields = split(line.text, ',');
      if (fields.size() != expected_fields) {
        throw Error(ErrorCode::kMalformedRecord, "expected " + std::to_string(expected_fields) +
                                                     " fields, found " + std::to_string(fields.size()));
      }
      if (fields[0].empty()) throw Error(ErrorCode::kMalformedRecord, "empty mfidref");

      detail::Segment seg;
      seg.origin = where;
      seg.start = parse_time_token(fields[1], header.bounds.period.begin, header.unit_ms);
      seg.end = parse_time_token(fields[2], header.bounds.period.begin, header.unit_ms);

      const auto tokens = split_blank(fields[3]);
      if (tokens.size() % header.dims != 0) {
        throw Error(ErrorCode::kBadCoordinateArity,
                    std::to_string(tokens.size()) + " coordinates do not form " + std::to_string(header.dims) + "D points");
      }
      if (tokens.size() < 2 * header.dims) {
        throw Error(ErrorCode::kBadCoordinateArity, "a segment needs at least two points");
      }
      std::vector<double> coords;
      for (auto token : tokens) {
        const auto v = parse_double(token);
        if (!v) throw Error(ErrorCode::kMalformedRecord, "bad coordinate '" + std::string(token) + "'");
        coords.push_back(*v);
      }
      for (std::size_t i = 0; i < coords.size(); i += header.dims) {
        seg.points.emplace_back(std::span<const double>(coords.data() + i, header.dims));
      }
      for (std::size_t j = 0; j < header.columns.size(); ++j) {
        seg.attributes.push_back(parse_value(fields[4 + j], header.columns[j].type));
      }

      std::string id(fields[0]);
      auto [it, inserted] = by_feature.try_emplace(id);
      if (inserted) order.push_back(id);
      it->second.push_back(std::move(seg));
    } catch (const Error& e) {
      rethrow_at(e, where);
    }
  }

  for (const auto& id : order) {
    MovingFeature f = detail::assemble_feature(id, std::move(by_feature[id]), attrs);
    f.crs = header.crs;
    result.collection.features.push_back(std::move(f));
  }
  return result;
}

std::string write_csv(const FeatureCollection& collection) {
  const auto schema = detail::shared_schema(collection);
  const auto frame = detail::output_frame(collection);

  std::string out = "@stboundedby,";
  out += frame.crs.value_or("");
  out += ',';
  out += frame.dims == 3 ? "3D" : "2D";
  const auto corner = [](const Position& p) {
    std::string s;
    for (std::size_t i = 0; i < p.dims(); ++i) {
      if (i > 0) s += ' ';
      s += format_decimal(p[i]);
    }
    return s;
  };
  out += ',' + corner(frame.bounds.lower) + ',' + corner(frame.bounds.upper);
  out += ',' + format_iso8601(frame.bounds.period.begin) + ',' + format_iso8601(frame.bounds.period.end);
  out += ',' + frame.bounds.time_unit + '\n';

  out += "@columns,mfidref,trajectory";
  for (const auto& def : schema) {
    out += ',' + def.name + ',' + std::string(xsd_name(def.type));
  }
  out += '\n';

  for (const auto& f : collection.features) {
    if (f.id.find_first_of(",\r\n") != std::string::npos) {
      throw Error(ErrorCode::kValueNotRepresentable, "feature id '" + f.id + "' contains a separator");
    }
    for (const auto& row : detail::segment_rows(f, schema)) {
      out += f.id;
      out += ',' + detail::offset_text(frame, row.start);
      out += ',' + detail::offset_text(frame, row.end);
      out += ',' + position_list(row.from, row.to);
      for (std::size_t j = 0; j < row.attributes.size(); ++j) {
        std::string text = format_value(row.attributes[j]);
        if (text.find_first_of(",\r\n") != std::string::npos) {
          throw Error(ErrorCode::kValueNotRepresentable,
                      "feature '" + f.id + "': value of '" + schema[j].name + "' contains a separator");
        }
        if (text != trim(text)) {
          throw Error(ErrorCode::kValueNotRepresentable,
                      "feature '" + f.id + "': value of '" + schema[j].name + "' has surrounding blanks");
        }
        out += ',' + text;
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace mf
