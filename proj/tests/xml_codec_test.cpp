#include <gtest/gtest.h>

#include <algorithm>

#include "examples.hpp"
#include "mf/error.hpp"

namespace mf {
namespace {

using testing::at_s;

std::string doc_with(std::string_view foliation, std::string_view header = "",
                     std::string_view bounds = "") {
  std::string d =
      "<mf:MovingFeatures xmlns:mf=\"http://schemas.opengis.net/mf-core/1.0\" "
      "xmlns:gml=\"http://www.opengis.net/gml/3.2\">\n";
  if (bounds.empty()) {
    d += "<mf:STBoundedBy offset=\"sec\"><gml:EnvelopeWithTimePeriod>"
         "<gml:lowerCorner>0 0</gml:lowerCorner><gml:upperCorner>9 9</gml:upperCorner>"
         "<gml:beginPosition>2011-07-14T22:00:00Z</gml:beginPosition>"
         "<gml:endPosition>2011-07-14T22:01:00Z</gml:endPosition>"
         "</gml:EnvelopeWithTimePeriod></mf:STBoundedBy>\n";
  } else {
    d += bounds;
  }
  d += "<mf:Member><mf:MovingFeature gml:id=\"A\"/></mf:Member>\n";
  if (header.empty()) {
    d += "<mf:Header><mf:VaryingAttrDefs><mf:attrDef name=\"gear\" type=\"xsd:integer\"/>"
         "</mf:VaryingAttrDefs></mf:Header>\n";
  } else {
    d += header;
  }
  d += "<mf:Foliation>";
  d += foliation;
  d += "</mf:Foliation></mf:MovingFeatures>\n";
  return d;
}

ErrorCode parse_error(const std::string& doc, XmlParseOptions options = {}) {
  try {
    parse_xml(doc, options);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << doc;
  return ErrorCode::kInvalidArgument;
}

std::size_t count_code(const std::vector<Diagnostic>& diags, std::string_view code) {
  return static_cast<std::size_t>(
      std::count_if(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.code == code; }));
}

constexpr std::string_view kSegment =
    "<mf:LinearTrajectory gml:id=\"L1\" mfIdRef=\"A\" start=\"0\" end=\"5\">"
    "<gml:posList>1 1 2 2</gml:posList><mf:Attr>1</mf:Attr></mf:LinearTrajectory>";

TEST(XmlParse, ExampleDocument) {
  const auto parsed = testing::example_xml();
  const auto& c = parsed.collection;
  ASSERT_EQ(c.features.size(), 1u);
  const auto& a = c.features[0];
  EXPECT_EQ(a.id, "A");
  EXPECT_EQ(a.crs, "urn:x-ogc:def:crs:EPSG:6.6:4326");
  EXPECT_EQ(a.static_properties.at("name"), "NissanA");
  EXPECT_EQ(a.static_properties.at("description"), "Nissan Sentra ...");
  ASSERT_EQ(a.geometry.tracks.size(), 1u);
  const auto& s = a.geometry.tracks[0].samples;
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[2].time, at_s(10));
  EXPECT_EQ(s[2].position, (Position{10.4, 11.2}));
  EXPECT_EQ(s[4].position, (Position{10.6, 12.2}));

  const auto* gear = a.find_property("gear");
  ASSERT_NE(gear, nullptr);
  EXPECT_EQ(gear->interpolation, InterpolationMode::kStepwise);
  EXPECT_EQ(gear->annotation, "The gear number used...");
  const std::int64_t want[] = {1, 2, 2, 3, 3};
  ASSERT_EQ(gear->samples.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(gear->samples[i].value, Value{want[i]});

  ASSERT_TRUE(c.bounds);
  EXPECT_EQ(c.bounds->upper, (Position{10.6, 12.2}));
  EXPECT_EQ(c.bounds->period.end, at_s(20));
}

TEST(XmlParse, ExampleIrregularitiesAreReported) {
  const auto d = testing::example_xml().diagnostics;
  EXPECT_EQ(count_code(d, "XML_IRREGULAR"), 2u);
  EXPECT_EQ(count_code(d, "DUPLICATE_GML_ID"), 2u);
  for (const auto& diag : d) EXPECT_EQ(diag.severity, Severity::kWarning) << format_diagnostic(diag);
}

TEST(XmlParse, AgreesWithCsvExample) {
  const auto xml = testing::example_xml().collection;
  const auto csv = testing::example_csv().collection;
  EXPECT_TRUE(sample_equal(xml.features[0], *csv.find("A")));
}

TEST(XmlParse, StructuralErrors) {
  EXPECT_EQ(parse_error(doc_with(
                "<mf:LinearTrajectory mfIdRef=\"Q\" start=\"0\" end=\"5\">"
                "<gml:posList>1 1 2 2</gml:posList><mf:Attr>1</mf:Attr></mf:LinearTrajectory>")),
            ErrorCode::kUnknownMfIdRef);
  EXPECT_EQ(parse_error(doc_with(
                "<mf:LinearTrajectory mfIdRef=\"A\" start=\"0\" end=\"5\">"
                "<gml:posList>1 1 2</gml:posList><mf:Attr>1</mf:Attr></mf:LinearTrajectory>")),
            ErrorCode::kBadPosList);
  EXPECT_EQ(parse_error(doc_with(
                "<mf:LinearTrajectory mfIdRef=\"A\" start=\"0\" end=\"5\">"
                "<gml:posList>1 1</gml:posList><mf:Attr>1</mf:Attr></mf:LinearTrajectory>")),
            ErrorCode::kBadPosList);
  EXPECT_EQ(parse_error(doc_with(
                "<mf:LinearTrajectory mfIdRef=\"A\" start=\"0\" end=\"5\">"
                "<gml:posList>1 1 2 2</gml:posList></mf:LinearTrajectory>")),
            ErrorCode::kAttrCountMismatch);
  EXPECT_EQ(parse_error(doc_with(kSegment, "",
                                 "<mf:STBoundedBy><gml:lowerCorner>0 0</gml:lowerCorner></mf:STBoundedBy>")),
            ErrorCode::kMissingSTBoundedBy);
  EXPECT_EQ(parse_error(doc_with(kSegment, "<mf:Header><mf:VaryingAttrDefs>"
                                           "<mf:attrDef name=\"gear\" type=\"xsd:dateTime\"/>"
                                           "</mf:VaryingAttrDefs></mf:Header>")),
            ErrorCode::kAttrTypeUnsupported);
  EXPECT_EQ(parse_error("<mf:MovingFeatures><mf:STBoundedBy>"), ErrorCode::kMalformedXml);
  EXPECT_EQ(parse_error("<root/>"), ErrorCode::kMalformedXml);
}

TEST(XmlParse, SegmentRulesMatchCsv) {
  EXPECT_EQ(parse_error(doc_with(
                "<mf:LinearTrajectory mfIdRef=\"A\" start=\"5\" end=\"5\">"
                "<gml:posList>1 1 2 2</gml:posList><mf:Attr>1</mf:Attr></mf:LinearTrajectory>")),
            ErrorCode::kNonChronologicalSegment);
  EXPECT_EQ(parse_error(doc_with(std::string(kSegment) +
                                 "<mf:LinearTrajectory mfIdRef=\"A\" start=\"5\" end=\"9\">"
                                 "<gml:posList>2 3 4 4</gml:posList><mf:Attr>1</mf:Attr>"
                                 "</mf:LinearTrajectory>")),
            ErrorCode::kDiscontinuousJunction);
}

TEST(XmlParse, UnknownElementsWarnOrFail) {
  const std::string doc = doc_with(std::string(kSegment) + "<mf:Extra/>");
  const auto lenient = parse_xml(doc);
  EXPECT_EQ(count_code(lenient.diagnostics, "UNKNOWN_ELEMENT"), 1u);
  EXPECT_EQ(lenient.collection.features[0].geometry.sample_count(), 2u);
  EXPECT_EQ(parse_error(doc, XmlParseOptions{true}), ErrorCode::kUnknownElement);
}

TEST(XmlWrite, ProducesExampleLayout) {
  const auto c = testing::example_csv().collection;
  const std::string doc = write_xml(c);
  EXPECT_NE(doc.find("<mf:MovingFeatures xmlns:mf=\"http://schemas.opengis.net/mf-core/1.0\" "
                     "xmlns:gml=\"http://www.opengis.net/gml/3.2\">"),
            std::string::npos);
  EXPECT_NE(doc.find("<mf:LinearTrajectory gml:id=\"LT0001\" mfIdRef=\"A\" start=\"0\" end=\"5\">\n"
                     "      <gml:posList>10.0 10.0 10.2 10.6</gml:posList>\n"
                     "      <mf:Attr>1</mf:Attr>"),
            std::string::npos)
      << doc;
  EXPECT_NE(doc.find("<mf:attrDef name=\"gear\" type=\"xsd:integer\"/>"), std::string::npos);
  EXPECT_NE(doc.find("gml:id=\"LT0005\" mfIdRef=\"B\" start=\"0\" end=\"20\""), std::string::npos);

  const auto back = parse_xml(doc);
  EXPECT_TRUE(back.diagnostics.empty()) << format_diagnostic(back.diagnostics.front());
  EXPECT_TRUE(sample_equal(back.collection, c));
}

TEST(XmlWrite, KeepsNameDescriptionAndAnnotation) {
  const auto c = testing::example_xml().collection;
  const auto back = parse_xml(write_xml(c)).collection;
  EXPECT_TRUE(sample_equal(back, c));
  EXPECT_EQ(back.features[0].static_properties, c.features[0].static_properties);
  EXPECT_EQ(back.features[0].find_property("gear")->annotation, "The gear number used...");
}

TEST(XmlWrite, EscapesMarkup) {
  auto c = testing::example_csv().collection;
  c.features[0].static_properties["name"] = "R&D <fleet>";
  const std::string doc = write_xml(c);
  EXPECT_NE(doc.find("R&amp;D &lt;fleet&gt;"), std::string::npos);
  EXPECT_EQ(parse_xml(doc).collection.features[0].static_properties.at("name"), "R&D <fleet>");
}

}  // namespace
}  // namespace mf
