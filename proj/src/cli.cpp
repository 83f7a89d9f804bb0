#include "mf/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mf/access.hpp"
#include "mf/codec.hpp"
#include "mf/error.hpp"
#include "mf/numeric_text.hpp"
#include "mf/transcode.hpp"
#include "mf/validate.hpp"

namespace mf {
namespace {

// Thrown inside a subcommand to leave with an exit code after the message
// has been written.
struct Exit {
  int code;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::string read_input(const std::string& path, Io& io) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << io.in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    io.err << "ERROR IO cannot read '" << path << "'\n";
    throw Exit{kExitUsage};
  }
  buffer << file.rdbuf();
  return buffer.str();
}

ParseResult load(const std::string& path, const std::string& format, Io& io) {
  const std::string text = read_input(path, io);
  std::optional<Encoding> encoding;
  if (format != "auto") {
    encoding = parse_encoding(format);
  } else {
    if (path != "-") encoding = encoding_from_path(path);
    if (!encoding) encoding = sniff_encoding(text);
  }
  if (!encoding) {
    io.err << "ERROR UNKNOWN_FORMAT cannot tell the encoding of '" << path << "'; use --format\n";
    throw Exit{kExitUsage};
  }
  try {
    return parse_document(text, *encoding);
  } catch (const Error& e) {
    io.err << "ERROR " << to_string(e.code()) << ' ' << e.what() << '\n';
    throw Exit{kExitUsage};
  }
}

std::string join_coords(const Position& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dims(); ++i) {
    if (i > 0) s += ' ';
    s += format_significant(p[i]);
  }
  return s;
}

std::string text_value(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_significant(*d);
  return format_value(v);
}

nlohmann::json json_value(const Value& v) {
  struct Visitor {
    nlohmann::json operator()(std::int64_t i) const { return i; }
    nlohmann::json operator()(double d) const { return d; }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(bool b) const { return b; }
  };
  return std::visit(Visitor{}, v);
}

nlohmann::json json_coords(const Position& p) {
  auto arr = nlohmann::json::array();
  for (const double v : p.coords()) arr.push_back(v);
  return arr;
}

TimeInstant resolve_time(const std::string& text, const FeatureCollection& c, Io& io) {
  if (const auto t = try_parse_iso8601(text)) return *t;
  if (is_numeric_offset(text)) {
    std::optional<STBounds> frame = c.bounds;
    if (!frame) {
      try {
        frame = computed_bounds(c);
      } catch (const Error&) {
      }
    }
    if (frame) {
      const auto unit = unit_millis(frame->time_unit).value_or(1000);
      return parse_offset(text, frame->period.begin, unit);
    }
  }
  io.err << "ERROR BAD_TIME cannot read time '" << text << "'\n";
  throw Exit{kExitUsage};
}

const MovingFeature& find_feature(const FeatureCollection& c, const std::string& id, Io& io) {
  const MovingFeature* f = c.find(id);
  if (f == nullptr) {
    io.err << "ERROR UNKNOWN_FEATURE no feature '" << id << "'\n";
    throw Exit{kExitFailure};
  }
  return *f;
}

int cmd_validate(const std::string& input, const std::string& format, Io& io) {
  auto parsed = load(input, format, io);
  std::vector<Diagnostic> all = parsed.diagnostics;
  const auto more = validate_collection(parsed.collection);
  all.insert(all.end(), more.begin(), more.end());
  std::vector<Diagnostic> unique;
  for (auto& d : all) {
    if (std::find(unique.begin(), unique.end(), d) == unique.end()) unique.push_back(std::move(d));
  }
  for (const auto& d : unique) io.err << format_diagnostic(d) << '\n';
  return has_errors(unique) ? kExitFailure : kExitOk;
}

struct ConvertArgs {
  std::string input;
  std::string input_format = "auto";
  std::string target;
  std::string output = "-";
  std::string from;
  std::string to;
  bool strict = false;
  bool simplify = false;
};

int cmd_convert(const ConvertArgs& a, Io& io) {
  auto parsed = load(a.input, a.input_format, io);
  FeatureCollection c = std::move(parsed.collection);
  const auto target = parse_encoding(a.target);
  if (!target) {
    io.err << "ERROR UNKNOWN_FORMAT unknown target format '" << a.target << "'\n";
    return kExitUsage;
  }

  if (!a.from.empty() || !a.to.empty()) {
    std::optional<STBounds> extent;
    try {
      extent = computed_bounds(c);
    } catch (const Error&) {
    }
    const TimeInstant t1 = a.from.empty() ? (extent ? extent->period.begin : TimeInstant{})
                                          : resolve_time(a.from, c, io);
    const TimeInstant t2 = a.to.empty() ? (extent ? extent->period.end : TimeInstant{})
                                        : resolve_time(a.to, c, io);
    std::vector<MovingFeature> clipped;
    for (const auto& f : c.features) {
      try {
        clipped.push_back(sub_trajectory(f, t1, t2));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEmptyIntersection) {
          io.err << "ERROR " << to_string(e.code()) << ' ' << e.what() << '\n';
          return kExitUsage;
        }
        io.err << "INFO CLIPPED_AWAY " << e.what() << '\n';
      }
    }
    c.features = std::move(clipped);
  }

  const auto result = transcode(c, *target, {a.strict, a.simplify});
  for (const auto& d : result.report.losses) io.err << format_diagnostic(d) << '\n';
  if (!result.document) return kExitFailure;

  if (a.output == "-") {
    io.out << *result.document;
  } else {
    std::ofstream file(a.output, std::ios::binary);
    file << *result.document;
    if (!file) {
      io.err << "ERROR IO cannot write '" << a.output << "'\n";
      return kExitUsage;
    }
  }
  return kExitOk;
}

struct QueryArgs {
  std::string input;
  std::string format = "auto";
  std::string feature;
  std::string at;
  std::string what;
  std::string position;
  double tolerance = 0.0;
  std::string output = "text";
};

template <typename T>
bool report_non_value(const SampleResult<T>& r, nlohmann::json& j, std::string& text) {
  if (r.has_value()) return false;
  text = std::string(to_string(r.kind()));
  j["kind"] = text;
  return true;
}

int cmd_query(const QueryArgs& a, Io& io) {
  if (a.output != "text" && a.output != "json") {
    io.err << "ERROR USAGE --output must be text or json\n";
    return kExitUsage;
  }
  const auto parsed = load(a.input, a.format, io);
  const FeatureCollection& c = parsed.collection;
  const MovingFeature& f = find_feature(c, a.feature, io);

  nlohmann::json j;
  j["feature"] = f.id;
  j["what"] = a.what;
  std::string text;

  try {
    if (a.what == "time") {
      std::vector<double> coords;
      std::istringstream ss(a.position);
      for (std::string tok; ss >> tok;) {
        const auto v = parse_double(tok);
        if (!v) {
          io.err << "ERROR USAGE bad --position coordinate '" << tok << "'\n";
          return kExitUsage;
        }
        coords.push_back(*v);
      }
      if (coords.size() < 2 || coords.size() > 3) {
        io.err << "ERROR USAGE --what time needs --position \"x y\" or \"x y z\"\n";
        return kExitUsage;
      }
      if (a.tolerance < 0.0) {
        io.err << "ERROR USAGE --tolerance must not be negative\n";
        return kExitUsage;
      }
      const auto times = time_at_position(f, Position(coords), a.tolerance);
      j["kind"] = "VALUE";
      j["times"] = nlohmann::json::array();
      for (const auto t : times) {
        j["times"].push_back(format_iso8601(t));
        text += (text.empty() ? "" : " ") + format_iso8601(t);
      }
      if (times.empty()) text = "NONE";
    } else {
      if (a.at.empty()) {
        io.err << "ERROR USAGE --at is required for --what " << a.what << '\n';
        return kExitUsage;
      }
      const TimeInstant t = resolve_time(a.at, c, io);
      j["at"] = format_iso8601(t);
      if (a.what == "position") {
        const auto r = location_at(f, t);
        if (!report_non_value(r, j, text)) {
          text = join_coords(*r);
          j["kind"] = "VALUE";
          j["value"] = json_coords(*r);
        }
      } else if (a.what == "velocity" || a.what == "speed") {
        const auto r = velocity_at(f, t);
        if (!report_non_value(r, j, text)) {
          j["kind"] = "VALUE";
          if (a.what == "speed") {
            text = format_significant(r->speed);
            j["value"] = r->speed;
          } else {
            text = join_coords(r->components);
            j["value"] = json_coords(r->components);
          }
        }
      } else if (a.what == "acceleration") {
        const auto r = acceleration_at(f, t);
        if (!report_non_value(r, j, text)) {
          text = join_coords(*r);
          j["kind"] = "VALUE";
          j["value"] = json_coords(*r);
        }
      } else if (a.what == "distance") {
        const auto r = time_to_distance(f).distance_at(t);
        if (!report_non_value(r, j, text)) {
          text = format_significant(*r);
          j["kind"] = "VALUE";
          j["value"] = *r;
        }
      } else {
        const TemporalProperty* p = f.find_property(a.what);
        if (p == nullptr) {
          io.err << "ERROR USAGE feature '" << f.id << "' has no property '" << a.what << "'\n";
          return kExitUsage;
        }
        const auto r = value_at(*p, t);
        if (!report_non_value(r, j, text)) {
          text = text_value(*r);
          j["kind"] = "VALUE";
          j["value"] = json_value(*r);
        }
      }
    }
  } catch (const Error& e) {
    io.err << "ERROR " << to_string(e.code()) << ' ' << e.what() << '\n';
    return kExitUsage;
  }

  if (a.output == "json") {
    io.out << j.dump() << '\n';
  } else {
    io.out << text << '\n';
  }
  return kExitOk;
}

std::string fixed7(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7f", v);
  return buf;
}

int cmd_info(const std::string& input, const std::string& format, Io& io) {
  const auto parsed = load(input, format, io);
  const auto& c = parsed.collection;
  io.out << "id\tsamples\ttracks\tduration_s\tlength\tproperties\n";
  for (const auto& f : c.features) {
    io.out << f.id << '\t' << f.geometry.sample_count() << '\t' << f.geometry.tracks.size() << '\t';
    io.out << (f.geometry.empty() ? "-" : format_significant(f.geometry.extent().duration_ms() / 1000.0)) << '\t';
    io.out << (f.geometry.interpolation == InterpolationMode::kLinear ? fixed7(time_to_distance(f).total()) : "-")
           << '\t';
    std::string names;
    for (const auto& p : f.temporal_properties) names += (names.empty() ? "" : ",") + p.name;
    io.out << (names.empty() ? "-" : names) << '\n';
  }
  try {
    const auto b = computed_bounds(c);
    io.out << "bounds\t" << join_coords(b.lower) << '\t' << join_coords(b.upper) << '\t'
           << format_iso8601(b.period.begin) << '\t' << format_iso8601(b.period.end) << '\n';
  } catch (const Error&) {
  }
  return kExitOk;
}

int cmd_export_wkt(const std::string& input, const std::string& format, Io& io) {
  const auto parsed = load(input, format, io);
  int status = kExitOk;
  for (const auto& f : parsed.collection.features) {
    if (f.geometry.interpolation != InterpolationMode::kLinear) {
      io.err << "ERROR " << to_string(ErrorCode::kUnsupportedInterpolation) << " feature '" << f.id
             << "' has " << to_string(f.geometry.interpolation) << " geometry; WKT export needs Linear\n";
      status = kExitFailure;
      continue;
    }
    for (const auto& track : f.geometry.tracks) {
      if (track.samples.empty()) continue;
      const bool z = track.samples.front().position.dims() == 3;
      std::string line = f.id + '\t' + (track.samples.size() == 1 ? "POINT" : "LINESTRING") + (z ? " Z (" : " (");
      for (std::size_t i = 0; i < track.samples.size(); ++i) {
        if (i > 0) line += ", ";
        const auto& p = track.samples[i].position;
        for (std::size_t k = 0; k < p.dims(); ++k) {
          if (k > 0) line += ' ';
          line += format_shortest(p[k]);
        }
      }
      io.out << line << ")\n";
    }
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Moving features: validate, convert, query and export trajectories", "mftool"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  const auto formats = CLI::IsMember({"auto", "csv", "xml", "json"}, CLI::ignore_case);

  std::string input;
  std::string format = "auto";

  auto* validate = app.add_subcommand("validate", "Check a document; diagnostics go to stderr");
  validate->add_option("input", input, "Input file, - for stdin")->required();
  validate->add_option("--format", format, "Input encoding")->transform(formats);

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Transcode a document to another encoding");
  convert->add_option("input", conv.input, "Input file, - for stdin")->required();
  convert->add_option("--format", conv.target, "Target encoding")
      ->required()
      ->transform(CLI::IsMember({"csv", "xml", "json"}, CLI::ignore_case));
  convert->add_option("--input-format", conv.input_format, "Input encoding")->transform(formats);
  convert->add_option("--output,-o", conv.output, "Output file, - for stdout");
  convert->add_flag("--strict", conv.strict, "Refuse on any WARNING-level loss");
  convert->add_flag("--simplify", conv.simplify, "Drop exactly collinear vertices");
  convert->add_option("--from", conv.from, "Clip start (ISO-8601 or offset)");
  convert->add_option("--to", conv.to, "Clip end (ISO-8601 or offset)");

  QueryArgs query_args;
  auto* query = app.add_subcommand("query", "Evaluate one feature at an instant");
  query->add_option("input", query_args.input, "Input file, - for stdin")->required();
  query->add_option("--format", query_args.format, "Input encoding")->transform(formats);
  query->add_option("--feature", query_args.feature, "Feature id")->required();
  query->add_option("--at", query_args.at, "Instant (ISO-8601 or offset in the declared time unit)");
  query->add_option("--what", query_args.what,
                    "position, velocity, speed, acceleration, distance, time or a property name")
      ->required();
  query->add_option("--position", query_args.position, "Target \"x y\" for --what time");
  query->add_option("--tolerance", query_args.tolerance, "Distance tolerance for --what time");
  query->add_option("--output", query_args.output, "text or json");

  auto* info = app.add_subcommand("info", "Summarize the features of a document");
  info->add_option("input", input, "Input file, - for stdin")->required();
  info->add_option("--format", format, "Input encoding")->transform(formats);

  auto* wkt = app.add_subcommand("export-wkt", "Print each track as a WKT LINESTRING");
  wkt->add_option("input", input, "Input file, - for stdin")->required();
  wkt->add_option("--format", format, "Input encoding")->transform(formats);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(input, format, io);
    if (*convert) return cmd_convert(conv, io);
    if (*query) return cmd_query(query_args, io);
    if (*info) return cmd_info(input, format, io);
    if (*wkt) return cmd_export_wkt(input, format, io);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "ERROR " << to_string(e.code()) << ' ' << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mf
