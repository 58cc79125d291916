#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>

#include "corefeval/error.hpp"
#include "corefeval/formats.hpp"

namespace corefeval {
namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         c == ':' || c == '.';
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

struct Tag {
  std::string name;  // upper-cased
  bool closing = false;
  bool self_closing = false;
  std::map<std::string, std::string> attributes;  // upper-cased names
  std::size_t begin = 0;  // byte offset of '<'
  std::size_t end = 0;    // byte offset one past '>'
};

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {
    // code-point offset of every byte position
    code_points_.resize(text.size() + 1, 0);
    for (std::size_t i = 0; i < text.size(); ++i)
      code_points_[i + 1] =
          code_points_[i] + ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80);
  }

  std::int64_t code_point(std::size_t byte) const { return code_points_[byte]; }

  /// Next markup tag at or after `pos`; stray '<' characters are text.
  std::optional<Tag> next_tag(std::size_t& pos) {
    while (true) {
      pos = text_.find('<', pos);
      if (pos == std::string_view::npos) return std::nullopt;
      if (text_.compare(pos, 4, "<!--") == 0) {
        auto close = text_.find("-->", pos + 4);
        if (close == std::string_view::npos)
          malformed(pos, "unterminated comment");
        pos = close + 3;
        continue;
      }
      if (pos + 1 < text_.size() &&
          (text_[pos + 1] == '/' || text_[pos + 1] == '!' || text_[pos + 1] == '?' ||
           std::isalpha(static_cast<unsigned char>(text_[pos + 1]))))
        return read_tag(pos);
      ++pos;
    }
  }

  [[noreturn]] void malformed(std::size_t at, const std::string& what) const {
    throw Error(ErrorKind::MalformedTag,
                what + " at byte " + std::to_string(at));
  }

 private:
  Tag read_tag(std::size_t& pos) {
    Tag tag;
    tag.begin = pos;
    std::size_t i = pos + 1;
    if (text_[i] == '!' || text_[i] == '?') {
      // declarations and processing instructions are skipped whole
      auto close = text_.find('>', i);
      if (close == std::string_view::npos) malformed(pos, "unterminated declaration");
      tag.name = "!";
      tag.end = pos = close + 1;
      return tag;
    }
    if (text_[i] == '/') {
      tag.closing = true;
      ++i;
    }
    std::size_t name_start = i;
    while (i < text_.size() && is_name_char(text_[i])) ++i;
    if (i == name_start) malformed(pos, "tag without a name");
    tag.name = upper(text_.substr(name_start, i - name_start));

    while (true) {
      while (i < text_.size() && is_space(text_[i])) ++i;
      if (i >= text_.size()) malformed(pos, "unterminated <" + tag.name + "> tag");
      if (text_[i] == '>') {
        ++i;
        break;
      }
      if (text_[i] == '/' && i + 1 < text_.size() && text_[i + 1] == '>') {
        tag.self_closing = true;
        i += 2;
        break;
      }
      std::size_t attr_start = i;
      while (i < text_.size() && is_name_char(text_[i])) ++i;
      if (i == attr_start)
        malformed(i, "unexpected character in <" + tag.name + "> tag");
      std::string name = upper(text_.substr(attr_start, i - attr_start));
      std::string value;
      while (i < text_.size() && is_space(text_[i])) ++i;
      if (i < text_.size() && text_[i] == '=') {
        ++i;
        while (i < text_.size() && is_space(text_[i])) ++i;
        if (i >= text_.size()) malformed(pos, "attribute " + name + " has no value");
        if (text_[i] == '"' || text_[i] == '\'') {
          char quote = text_[i];
          auto close = text_.find(quote, i + 1);
          if (close == std::string_view::npos)
            malformed(i, "unterminated quoted value for " + name);
          value = std::string(text_.substr(i + 1, close - i - 1));
          i = close + 1;
        } else {
          std::size_t v = i;
          while (i < text_.size() && !is_space(text_[i]) && text_[i] != '>') ++i;
          value = std::string(text_.substr(v, i - v));
        }
      }
      if (!tag.attributes.emplace(name, std::move(value)).second)
        malformed(attr_start, "duplicate attribute " + name);
    }
    if (tag.closing && !tag.attributes.empty())
      malformed(pos, "closing tag with attributes");
    tag.end = pos = i;
    return tag;
  }

  std::string_view text_;
  std::vector<std::int64_t> code_points_;
};

std::string strip_markup(std::string_view text) {
  std::string out;
  bool in_tag = false;
  for (char c : text) {
    if (c == '<') in_tag = true;
    else if (c == '>' && in_tag) in_tag = false;
    else if (!in_tag) out.push_back(c);
  }
  return out;
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct OpenElement {
  std::size_t mention;
  std::size_t content_begin;
  std::size_t tag_begin;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PartitionDocument parse_muc_sgml(std::string_view bytes, std::string doc_id) {
  Scanner scanner(bytes);
  PartitionDocument doc;
  doc.source_format = SourceFormat::MucSgml;

  struct Pending {
    std::optional<std::string> id;
    std::optional<std::string> ref;
    std::size_t tag_begin = 0;
  };
  std::vector<Pending> pending;
  std::vector<OpenElement> stack;
  std::optional<std::size_t> docno_begin;
  std::optional<std::string> docno;

  std::size_t pos = 0;
  while (auto tag = scanner.next_tag(pos)) {
    if (tag->name == "DOCNO") {
      if (!tag->closing) docno_begin = tag->end;
      else if (docno_begin && !docno)
        docno = trim(strip_markup(bytes.substr(*docno_begin, tag->begin - *docno_begin)));
      continue;
    }
    if (tag->name != "COREF") continue;

    if (tag->closing) {
      if (stack.empty())
        throw Error(ErrorKind::NestingViolation,
                    "</COREF> without an open element at byte " +
                        std::to_string(tag->begin));
      auto open = stack.back();
      stack.pop_back();
      auto& mention = doc.mentions[open.mention];
      const auto content = bytes.substr(open.content_begin, tag->begin - open.content_begin);
      mention.surface = strip_markup(content);
      mention.span = Span{{}, scanner.code_point(open.content_begin),
                          scanner.code_point(tag->begin)};
      if (!pending[open.mention].id)
        mention.id = "@" + std::to_string(mention.span->start) + "-" +
                     std::to_string(mention.span->end);
      continue;
    }

    if (tag->self_closing)
      scanner.malformed(tag->begin, "empty <COREF/> element");
    Pending p;
    p.tag_begin = tag->begin;
    if (auto it = tag->attributes.find("ID"); it != tag->attributes.end()) {
      if (it->second.empty()) scanner.malformed(tag->begin, "empty ID attribute");
      p.id = it->second;
    }
    if (auto it = tag->attributes.find("REF"); it != tag->attributes.end()) {
      if (it->second.empty()) scanner.malformed(tag->begin, "empty REF attribute");
      p.ref = it->second;
    }
    // MIN, TYPE and any other attributes do not affect scoring.
    Mention m;
    if (p.id) m.id = *p.id;
    stack.push_back({doc.mentions.size(), tag->end, tag->begin});
    doc.mentions.push_back(std::move(m));
    pending.push_back(std::move(p));
  }
  if (!stack.empty())
    throw Error(ErrorKind::NestingViolation,
                "<COREF> opened at byte " + std::to_string(stack.back().tag_begin) +
                    " is never closed");

  doc.doc_id = docno && !docno->empty() ? *docno : std::move(doc_id);
  for (auto& m : doc.mentions)
    if (m.span) m.span->document = doc.doc_id;

  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < doc.mentions.size(); ++i)
    if (!by_id.emplace(doc.mentions[i].id, i).second)
      throw Error(ErrorKind::DuplicateId,
                  "ID \"" + doc.mentions[i].id + "\" used by more than one element");

  DisjointSets sets(doc.mentions.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!pending[i].ref) continue;
    auto target = by_id.find(*pending[i].ref);
    if (target == by_id.end())
      throw Error(ErrorKind::DanglingRef,
                  "REF=\"" + *pending[i].ref + "\" at byte " +
                      std::to_string(pending[i].tag_begin) +
                      " names no element");
    sets.unite(i, target->second);
  }

  // Components in order of their first mention; singletons stay implicit.
  std::map<std::size_t, std::vector<MentionId>> components;
  for (std::size_t i = 0; i < doc.mentions.size(); ++i)
    components[sets.find(i)].push_back(doc.mentions[i].id);
  for (auto& [root, members] : components)
    if (members.size() > 1) doc.classes.push_back(std::move(members));
  return doc;
}

}  // namespace corefeval
