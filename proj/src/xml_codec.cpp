#include "mf/xml_codec.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>

#include "mf/detail/xml_dom.hpp"
#include "mf/error.hpp"
#include "mf/numeric_text.hpp"
#include "segments.hpp"

namespace mf {
namespace {

using detail::XmlElement;

const std::string kMf(kMfNamespace);
const std::string kGml(kGmlNamespace);

std::vector<double> numbers(std::string_view text, bool allow_commas, ErrorCode code, const std::string& what) {
  std::vector<double> out;
  std::size_t i = 0;
  const auto separator = [&](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || (allow_commas && c == ',');
  };
  while (i < text.size()) {
    while (i < text.size() && separator(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !separator(text[i])) ++i;
    if (i == start) break;
    const auto token = text.substr(start, i - start);
    const auto v = parse_double(token);
    if (!v) throw Error(code, what + ": '" + std::string(token) + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

std::string location(const XmlElement& el) { return "line " + std::to_string(el.line); }

struct Context {
  XmlParseOptions options;
  ParseResult* result = nullptr;

  void unknown(const XmlElement& el) const {
    const std::string message = location(el) + ": unknown element <" + el.name + ">";
    if (options.strict) throw Error(ErrorCode::kUnknownElement, message);
    result->diagnostics.push_back({Severity::kWarning, "UNKNOWN_ELEMENT", message});
  }
};

struct Frame {
  STBounds bounds;
  std::int64_t unit_ms = 1000;
  std::optional<std::string> crs;
  std::size_t dims = 2;
};

Frame read_bounds(const XmlElement& el, const Context& ctx) {
  Frame frame;
  const std::string* offset = el.attribute("offset");
  frame.bounds.time_unit = offset ? std::string(trim(*offset)) : "sec";
  const auto unit = unit_millis(frame.bounds.time_unit);
  if (!unit) throw Error(ErrorCode::kMalformedXml, location(el) + ": unknown time unit '" + frame.bounds.time_unit + "'");
  frame.unit_ms = *unit;

  const XmlElement* env = el.child(kGml, "EnvelopeWithTimePeriod");
  if (env == nullptr) env = el.child(kGml, "Envelope");
  if (env == nullptr) throw Error(ErrorCode::kMissingSTBoundedBy, location(el) + ": mf:STBoundedBy without an envelope");
  for (const auto& c : el.children) {
    if (&c != env) ctx.unknown(c);
  }
  if (const std::string* srs = env->attribute("srsName")) frame.crs = *srs;

  std::optional<Position> lower, upper;
  std::optional<TimeInstant> begin, end;
  for (const auto& c : env->children) {
    if (c.is(kGml, "lowerCorner") || c.is(kGml, "upperCorner")) {
      const auto coords = numbers(c.text, true, ErrorCode::kMalformedXml, location(c));
      if (coords.size() != 2 && coords.size() != 3) {
        throw Error(ErrorCode::kMalformedXml, location(c) + ": corner must have 2 or 3 coordinates");
      }
      (c.local == "lowerCorner" ? lower : upper) = Position(coords);
    } else if (c.is(kGml, "beginPosition") || c.is(kGml, "endPosition")) {
      const auto t = try_parse_iso8601(c.text);
      if (!t) throw Error(ErrorCode::kMalformedXml, location(c) + ": bad timestamp '" + std::string(trim(c.text)) + "'");
      (c.local == "beginPosition" ? begin : end) = *t;
    } else {
      ctx.unknown(c);
    }
  }
  if (!lower || !upper || !begin || !end) {
    throw Error(ErrorCode::kMissingSTBoundedBy, location(*env) + ": envelope needs both corners and both period ends");
  }
  if (lower->dims() != upper->dims()) {
    throw Error(ErrorCode::kMalformedXml, location(*env) + ": corners differ in dimension");
  }
  frame.bounds.lower = *lower;
  frame.bounds.upper = *upper;
  frame.bounds.period = {*begin, *end};
  frame.dims = lower->dims();
  if (const std::string* d = env->attribute("srsDimension")) {
    const auto v = parse_int(*d);
    if (!v || static_cast<std::size_t>(*v) != frame.dims) {
      throw Error(ErrorCode::kMalformedXml, location(*env) + ": srsDimension disagrees with the corners");
    }
  }
  return frame;
}

bool valid_xml_text(std::string_view s) {
  return std::none_of(s.begin(), s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x20 && c != '\t' && c != '\n' && c != '\r';
  });
}

std::string coords_text(std::span<const Position> points) {
  std::string s;
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dims(); ++i) {
      if (!s.empty()) s += ' ';
      s += format_decimal(p[i]);
    }
  }
  return s;
}

}  // namespace

ParseResult parse_xml(std::string_view doc, XmlParseOptions options) {
  const std::map<std::string, std::string> fallback{{"mf", kMf}, {"gml", kGml}};
  detail::XmlDocument dom = detail::parse_xml_document(doc, fallback);

  ParseResult result;
  Context ctx{options, &result};
  for (auto& w : dom.warnings) result.diagnostics.push_back({Severity::kWarning, "XML_IRREGULAR", std::move(w)});

  const XmlElement& root = dom.root;
  if (!root.is(kMf, "MovingFeatures")) {
    throw Error(ErrorCode::kMalformedXml, "root element must be mf:MovingFeatures in namespace " + kMf);
  }

  const XmlElement* bounds_el = root.child(kMf, "STBoundedBy");
  if (bounds_el == nullptr) throw Error(ErrorCode::kMissingSTBoundedBy, "document has no mf:STBoundedBy");
  const Frame frame = read_bounds(*bounds_el, ctx);
  result.collection.bounds = frame.bounds;

  std::vector<MovingFeature> members;
  std::map<std::string, std::size_t> member_index;
  std::vector<detail::AttrDef> attrs;
  std::vector<const XmlElement*> foliations;

  for (const auto& el : root.children) {
    if (&el == bounds_el) continue;
    if (el.is(kMf, "Member")) {
      for (const auto& m : el.children) {
        if (!m.is(kMf, "MovingFeature")) {
          ctx.unknown(m);
          continue;
        }
        MovingFeature f;
        const std::string* id = m.attribute("id");
        if (id == nullptr || trim(*id).empty()) {
          throw Error(ErrorCode::kMalformedXml, location(m) + ": mf:MovingFeature without gml:id");
        }
        f.id = std::string(trim(*id));
        f.crs = frame.crs;
        f.geometry.interpolation = InterpolationMode::kLinear;
        for (const auto& c : m.children) {
          if (c.is(kGml, "name")) f.static_properties["name"] = std::string(trim(c.text));
          else if (c.is(kGml, "description")) f.static_properties["description"] = std::string(trim(c.text));
          else ctx.unknown(c);
        }
        member_index.try_emplace(f.id, members.size());
        members.push_back(std::move(f));
      }
    } else if (el.is(kMf, "Header")) {
      for (const auto& h : el.children) {
        if (!h.is(kMf, "VaryingAttrDefs")) {
          ctx.unknown(h);
          continue;
        }
        for (const auto& def : h.children) {
          if (!def.is(kMf, "attrDef")) {
            ctx.unknown(def);
            continue;
          }
          const std::string* name = def.attribute("name");
          const std::string* type = def.attribute("type");
          if (name == nullptr || type == nullptr) {
            throw Error(ErrorCode::kMalformedXml, location(def) + ": mf:attrDef needs name and type");
          }
          const auto vt = value_type_from_xsd(*type);
          if (!vt) {
            throw Error(ErrorCode::kAttrTypeUnsupported,
                        location(def) + ": unsupported attribute type '" + *type + "'");
          }
          detail::AttrDef a{*name, *vt, std::nullopt};
          for (const auto& c : def.children) {
            if (c.is(kMf, "AttrAnnotation")) a.annotation = std::string(trim(c.text));
            else ctx.unknown(c);
          }
          attrs.push_back(std::move(a));
        }
      }
    } else if (el.is(kMf, "Foliation")) {
      foliations.push_back(&el);
    } else {
      ctx.unknown(el);
    }
  }

  std::vector<std::vector<detail::Segment>> segments(members.size());
  std::set<std::string> trajectory_ids;
  for (const XmlElement* foliation : foliations) {
    for (const auto& lt : foliation->children) {
      if (!lt.is(kMf, "LinearTrajectory")) {
        ctx.unknown(lt);
        continue;
      }
      const std::string where = location(lt);
      if (const std::string* gid = lt.attribute("id"); gid && !trajectory_ids.insert(*gid).second) {
        result.diagnostics.push_back(
            {Severity::kWarning, "DUPLICATE_GML_ID", where + ": duplicate gml:id '" + *gid + "'"});
      }
      const std::string* ref = lt.attribute("mfIdRef");
      const auto member = ref ? member_index.find(std::string(trim(*ref))) : member_index.end();
      if (member == member_index.end()) {
        throw Error(ErrorCode::kUnknownMfIdRef,
                    where + ": mfIdRef '" + (ref ? *ref : std::string()) + "' names no mf:Member");
      }
      const std::string* start = lt.attribute("start");
      const std::string* end = lt.attribute("end");
      if (start == nullptr || end == nullptr) {
        throw Error(ErrorCode::kMalformedXml, where + ": mf:LinearTrajectory needs start and end");
      }

      detail::Segment seg;
      seg.origin = where;
      try {
        seg.start = parse_time_token(*start, frame.bounds.period.begin, frame.unit_ms);
        seg.end = parse_time_token(*end, frame.bounds.period.begin, frame.unit_ms);
      } catch (const Error& e) {
        throw Error(e.code(), where + ": " + e.what());
      }

      const XmlElement* pos_list = nullptr;
      std::vector<const XmlElement*> values;
      for (const auto& c : lt.children) {
        if (c.is(kGml, "posList")) pos_list = &c;
        else if (c.is(kMf, "Attr")) values.push_back(&c);
        else ctx.unknown(c);
      }
      if (pos_list == nullptr) throw Error(ErrorCode::kBadPosList, where + ": trajectory has no gml:posList");
      std::size_t dims = frame.dims;
      if (const std::string* d = pos_list->attribute("srsDimension")) {
        const auto v = parse_int(*d);
        if (!v || (*v != 2 && *v != 3)) throw Error(ErrorCode::kBadPosList, where + ": bad srsDimension");
        dims = static_cast<std::size_t>(*v);
      }
      const auto coords = numbers(pos_list->text, false, ErrorCode::kBadPosList, location(*pos_list));
      if (coords.size() % dims != 0 || coords.size() < 2 * dims) {
        throw Error(ErrorCode::kBadPosList, where + ": " + std::to_string(coords.size()) +
                                                " coordinates do not form two or more " +
                                                std::to_string(dims) + "D points");
      }
      for (std::size_t i = 0; i < coords.size(); i += dims) {
        seg.points.emplace_back(std::span<const double>(coords.data() + i, dims));
      }
      if (values.size() != attrs.size()) {
        throw Error(ErrorCode::kAttrCountMismatch, where + ": " + std::to_string(values.size()) +
                                                       " mf:Attr values for " + std::to_string(attrs.size()) +
                                                       " attribute definitions");
      }
      for (std::size_t j = 0; j < attrs.size(); ++j) {
        try {
          seg.attributes.push_back(parse_value(values[j]->text, attrs[j].type));
        } catch (const Error& e) {
          throw Error(e.code(), location(*values[j]) + ": " + e.what());
        }
      }
      segments[member->second].push_back(std::move(seg));
    }
  }

  for (std::size_t i = 0; i < members.size(); ++i) {
    MovingFeature assembled = detail::assemble_feature(members[i].id, std::move(segments[i]), attrs);
    assembled.static_properties = std::move(members[i].static_properties);
    assembled.crs = members[i].crs;
    result.collection.features.push_back(std::move(assembled));
  }
  return result;
}

std::string write_xml(const FeatureCollection& collection) {
  const auto schema = detail::shared_schema(collection);
  const auto frame = detail::output_frame(collection);

  std::set<std::string> used_ids;
  for (const auto& f : collection.features) used_ids.insert(f.id);
  int counter = 0;
  const auto next_id = [&] {
    char buf[32];
    do {
      std::snprintf(buf, sizeof(buf), "LT%04d", ++counter);
    } while (used_ids.count(buf) != 0);
    return std::string(buf);
  };
  const auto checked = [](const std::string& text, const std::string& what) {
    if (!valid_xml_text(text)) {
      throw Error(ErrorCode::kAttrTypeUnsupported, what + " contains characters XML cannot carry");
    }
    return detail::xml_escape(text);
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<mf:MovingFeatures xmlns:mf=\"" + kMf + "\" xmlns:gml=\"" + kGml + "\">\n";
  out += "  <mf:STBoundedBy offset=\"" + detail::xml_escape(frame.bounds.time_unit) + "\">\n";
  out += "    <gml:EnvelopeWithTimePeriod";
  if (frame.crs) out += " srsName=\"" + checked(*frame.crs, "CRS") + "\"";
  out += ">\n";
  out += "      <gml:lowerCorner>" + coords_text(std::span(&frame.bounds.lower, 1)) + "</gml:lowerCorner>\n";
  out += "      <gml:upperCorner>" + coords_text(std::span(&frame.bounds.upper, 1)) + "</gml:upperCorner>\n";
  out += "      <gml:beginPosition>" + format_iso8601(frame.bounds.period.begin) + "</gml:beginPosition>\n";
  out += "      <gml:endPosition>" + format_iso8601(frame.bounds.period.end) + "</gml:endPosition>\n";
  out += "    </gml:EnvelopeWithTimePeriod>\n";
  out += "  </mf:STBoundedBy>\n";

  for (const auto& f : collection.features) {
    out += "  <mf:Member>\n";
    out += "    <mf:MovingFeature gml:id=\"" + checked(f.id, "feature id") + "\">\n";
    for (const char* key : {"name", "description"}) {
      if (auto it = f.static_properties.find(key); it != f.static_properties.end()) {
        out += std::string("      <gml:") + key + ">" + checked(it->second, key) + "</gml:" + key + ">\n";
      }
    }
    out += "    </mf:MovingFeature>\n";
    out += "  </mf:Member>\n";
  }

  out += "  <mf:Header>\n    <mf:VaryingAttrDefs>\n";
  for (const auto& def : schema) {
    out += "      <mf:attrDef name=\"" + checked(def.name, "attribute name") + "\" type=\"" +
           std::string(xsd_name(def.type)) + "\"";
    if (def.annotation) {
      out += ">\n        <mf:AttrAnnotation>" + checked(*def.annotation, "annotation") +
             "</mf:AttrAnnotation>\n      </mf:attrDef>\n";
    } else {
      out += "/>\n";
    }
  }
  out += "    </mf:VaryingAttrDefs>\n  </mf:Header>\n";

  out += "  <mf:Foliation>\n";
  for (const auto& f : collection.features) {
    for (const auto& row : detail::segment_rows(f, schema)) {
      out += "    <mf:LinearTrajectory gml:id=\"" + next_id() + "\" mfIdRef=\"" + detail::xml_escape(f.id) +
             "\" start=\"" + detail::offset_text(frame, row.start) + "\" end=\"" +
             detail::offset_text(frame, row.end) + "\">\n";
      const Position ends[] = {row.from, row.to};
      out += "      <gml:posList>" + coords_text(ends) + "</gml:posList>\n";
      for (std::size_t j = 0; j < row.attributes.size(); ++j) {
        out += "      <mf:Attr>" + checked(format_value(row.attributes[j]), "value of '" + schema[j].name + "'") +
               "</mf:Attr>\n";
      }
      out += "    </mf:LinearTrajectory>\n";
    }
  }
  out += "  </mf:Foliation>\n";
  out += "</mf:MovingFeatures>\n";
  return out;
}

}  // namespace mf
