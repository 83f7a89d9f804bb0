#include "mf/detail/xml_dom.hpp"

#include <cctype>
#include <set>
#include <tuple>

#include "mf/error.hpp"

namespace mf::detail {
namespace {

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == ':' || c == '-' || c == '.' || u >= 0x80;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
 public:
  Reader(std::string_view text, const std::map<std::string, std::string>& fallback)
      : text_(text), fallback_(fallback) {}

  XmlDocument read() {
    XmlDocument doc;
    warnings_ = &doc.warnings;
    if (text_.substr(pos_).starts_with("\xEF\xBB\xBF")) pos_ += 3;
    skip_misc();
    if (peek() != '<') fail("expected the root element");
    std::vector<std::map<std::string, std::string>> scopes;
    doc.root = element(scopes);
    skip_misc();
    if (pos_ != text_.size()) fail("content after the root element");
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kMalformedXml, "line " + std::to_string(line_) + ": " + what);
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts(std::string_view s) const { return text_.substr(pos_).starts_with(s); }
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  void skip_past(std::string_view terminator, const char* what) {
    const auto end = text_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    advance(end + terminator.size() - pos_);
  }

  // Whitespace, comments, processing instructions and DOCTYPE.
  void skip_misc() {
    while (true) {
      skip_space();
      if (starts("<?")) {
        skip_past("?>", "processing instruction");
      } else if (starts("<!--")) {
        skip_past("-->", "comment");
      } else if (starts("<!DOCTYPE")) {
        skip_past(">", "DOCTYPE");
      } else {
        return;
      }
    }
  }

  std::string name() {
    const std::size_t start = pos_;
    while (!done() && is_name_char(peek())) advance();
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string decode(std::string_view raw) const {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      const auto ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "amp") out += '&';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else if (ent.size() > 1 && ent[0] == '#') {
        const bool hex = ent[1] == 'x' || ent[1] == 'X';
        const std::string digits(ent.substr(hex ? 2 : 1));
        if (digits.empty()) fail("empty character reference");
        std::size_t used = 0;
        unsigned long cp = 0;
        try {
          cp = std::stoul(digits, &used, hex ? 16 : 10);
        } catch (const std::exception&) {
          fail("bad character reference");
        }
        if (used != digits.size() || cp > 0x10FFFF) fail("bad character reference");
        append_utf8(out, cp);
      } else {
        fail("unknown entity '&" + std::string(ent) + ";'");
      }
      i = semi;
    }
    return out;
  }

  std::pair<std::string, std::string> resolve(const std::string& qname,
                                              const std::vector<std::map<std::string, std::string>>& scopes,
                                              bool is_attribute) {
    const auto colon = qname.find(':');
    const std::string prefix = colon == std::string::npos ? "" : qname.substr(0, colon);
    const std::string local = colon == std::string::npos ? qname : qname.substr(colon + 1);
    if (prefix.empty() && is_attribute) return {"", local};
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      if (auto f = it->find(prefix); f != it->end()) return {f->second, local};
    }
    if (prefix.empty()) return {"", local};
    if (auto f = fallback_.find(prefix); f != fallback_.end()) {
      if (reported_prefixes_.insert(prefix).second) {
        warnings_->push_back("line " + std::to_string(line_) + ": namespace prefix '" + prefix +
                             "' is not declared; assuming " + f->second);
      }
      return {f->second, local};
    }
    fail("undeclared namespace prefix '" + prefix + "'");
  }

  XmlElement element(std::vector<std::map<std::string, std::string>>& scopes) {
    XmlElement el;
    el.line = line_;
    advance();  // '<'
    el.name = name();

    std::map<std::string, std::string> scope;
    bool self_closing = false;
    while (true) {
      skip_space();
      if (done()) fail("unterminated start tag <" + el.name + ">");
      if (starts("/>")) {
        advance(2);
        self_closing = true;
        break;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!is_name_char(peek())) {
        // Not an attribute. Skip the token and keep going.
        const std::size_t start = pos_;
        while (!done() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '>' && !starts("/>")) advance();
        warnings_->push_back("line " + std::to_string(line_) + ": ignored token '" +
                             std::string(text_.substr(start, pos_ - start)) + "' in <" + el.name + ">");
        continue;
      }
      std::string attr = name();
      skip_space();
      if (peek() != '=') {
        warnings_->push_back("line " + std::to_string(line_) + ": ignored token '" + attr + "' in <" +
                             el.name + ">");
        continue;
      }
      advance();
      skip_space();
      const char quote = peek();
      if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
      advance();
      const auto end = text_.find(quote, pos_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      std::string value = decode(text_.substr(pos_, end - pos_));
      advance(end + 1 - pos_);
      if (attr == "xmlns") scope[""] = value;
      else if (attr.starts_with("xmlns:")) scope[attr.substr(6)] = value;
      el.attributes.emplace_back(std::move(attr), std::move(value));
    }

    scopes.push_back(std::move(scope));
    std::tie(el.namespace_uri, el.local) = resolve(el.name, scopes, false);
    if (!self_closing) content(el, scopes);
    scopes.pop_back();
    return el;
  }

  void content(XmlElement& el, std::vector<std::map<std::string, std::string>>& scopes) {
    while (true) {
      if (done()) fail("element <" + el.name + "> is not closed");
      if (starts("</")) {
        advance(2);
        const std::string closing = name();
        skip_space();
        if (peek() != '>') fail("malformed end tag </" + closing + ">");
        advance();
        if (closing != el.name) fail("end tag </" + closing + "> does not match <" + el.name + ">");
        return;
      }
      if (starts("<!--")) {
        skip_past("-->", "comment");
      } else if (starts("<![CDATA[")) {
        advance(9);
        const auto end = text_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        el.text += text_.substr(pos_, end - pos_);
        advance(end + 3 - pos_);
      } else if (starts("<?")) {
        skip_past("?>", "processing instruction");
      } else if (peek() == '<') {
        el.children.push_back(element(scopes));
      } else {
        const auto end = text_.find('<', pos_);
        const auto stop = end == std::string_view::npos ? text_.size() : end;
        el.text += decode(text_.substr(pos_, stop - pos_));
        advance(stop - pos_);
      }
    }
  }

  std::string_view text_;
  const std::map<std::string, std::string>& fallback_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<std::string>* warnings_ = nullptr;
  std::set<std::string> reported_prefixes_;
};

}  // namespace

const std::string* XmlElement::attribute(std::string_view local_name) const {
  for (const auto& [qname, value] : attributes) {
    const auto colon = qname.find(':');
    const std::string_view local = colon == std::string::npos ? std::string_view(qname)
                                                              : std::string_view(qname).substr(colon + 1);
    if (local == local_name && !qname.starts_with("xmlns")) return &value;
  }
  return nullptr;
}

const XmlElement* XmlElement::child(std::string_view ns, std::string_view local_name) const {
  for (const auto& c : children) {
    if (c.is(ns, local_name)) return &c;
  }
  return nullptr;
}

XmlDocument parse_xml_document(std::string_view text,
                               const std::map<std::string, std::string>& fallback_namespaces) {
  return Reader(text, fallback_namespaces).read();
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace mf::detail
