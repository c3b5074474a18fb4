#include "popcast/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace popcast {
namespace {

const std::unordered_set<std::string>& abbreviations() {
  static const std::unordered_set<std::string> kAbbrev = {
      "mr",  "mrs", "ms",  "dr",   "prof", "sen",  "rep", "gov",  "gen",
      "lt",  "col", "sgt", "st",   "jr",   "sr",   "inc", "ltd",  "corp",
      "co",  "vs",  "etc", "e.g",  "i.e",  "u.s",  "u.k", "u.n",  "e.u",
      "no",  "vol", "fig", "jan",  "feb",  "mar",  "apr", "jun",  "jul",
      "aug", "sep", "sept", "oct", "nov",  "dec",  "mon", "tue",  "wed",
      "thu", "fri", "sat", "sun",  "a.m",  "p.m",  "approx"};
  return kAbbrev;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

std::string lower_ascii(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Word immediately preceding position `pos` (exclusive), without a trailing
// period but keeping internal ones, e.g. "U.S." before its final dot -> "u.s".
std::string word_before(const std::string& text, size_t pos) {
  size_t end = pos;
  size_t start = end;
  while (start > 0 && !is_space(static_cast<unsigned char>(text[start - 1]))) --start;
  std::string w = text.substr(start, end - start);
  while (!w.empty() && (is_closing(w.front()) || w.front() == '(' || w.front() == '[')) w.erase(w.begin());
  return lower_ascii(w);
}

// UTF-8 aware check for "starts a new sentence": ASCII uppercase, digit,
// opening quote (straight or curly), or opening bracket.
bool starts_sentence(const std::string& text, size_t pos) {
  const unsigned char c = static_cast<unsigned char>(text[pos]);
  if (std::isupper(c) || std::isdigit(c)) return true;
  if (c == '"' || c == '\'' || c == '(' || c == '[') {
    size_t next = pos + 1;
    if (next < text.size()) {
      const unsigned char d = static_cast<unsigned char>(text[next]);
      return std::isupper(d) || std::isdigit(d);
    }
    return false;
  }
  // curly opening quotes U+2018 / U+201C
  if (pos + 2 < text.size() && c == 0xE2 && static_cast<unsigned char>(text[pos + 1]) == 0x80) {
    const unsigned char third = static_cast<unsigned char>(text[pos + 2]);
    if (third == 0x98 || third == 0x9C) {
      size_t next = pos + 3;
      if (next < text.size()) {
        const unsigned char d = static_cast<unsigned char>(text[next]);
        return std::isupper(d) || std::isdigit(d);
      }
    }
  }
  return false;
}

bool is_boundary(const std::string& text, size_t dot) {
  const char term = text[dot];
  size_t after = dot + 1;
  // swallow repeated terminals ("..." / "?!") and closing quotes/brackets
  while (after < text.size() && (is_terminal(text[after]) || is_closing(text[after]))) ++after;
  // curly closing quotes U+2019 / U+201D
  while (after + 2 < text.size() && static_cast<unsigned char>(text[after]) == 0xE2 &&
         static_cast<unsigned char>(text[after + 1]) == 0x80) {
    const unsigned char third = static_cast<unsigned char>(text[after + 2]);
    if (third == 0x99 || third == 0x9D) {
      after += 3;
    } else {
      break;
    }
  }
  if (after >= text.size()) return false;  // end of text, not an internal boundary
  if (!is_space(static_cast<unsigned char>(text[after]))) return false;
  size_t next = after;
  while (next < text.size() && is_space(static_cast<unsigned char>(text[next]))) ++next;
  if (next >= text.size()) return false;
  if (!starts_sentence(text, next)) return false;

  if (term == '.') {
    const std::string w = word_before(text, dot);
    if (w.empty()) return false;
    if (abbreviations().count(w)) return false;
    // single initial: "J." in "J. Morgan"
    if (w.size() == 1 && std::isalpha(static_cast<unsigned char>(w[0]))) return false;
    // acronym with internal periods: "j.p", "u.s"
    if (w.find('.') != std::string::npos) return false;
  }
  return true;
}

// punctuation to strip from token edges: ASCII Unicode-P* (symbols $ + < = > ^ ` | ~ kept)
bool is_strip_ascii(unsigned char c) {
  static const std::string kPunct = "!\"#%&'()*,-./:;?@[\\]_{}";
  return kPunct.find(static_cast<char>(c)) != std::string::npos;
}

// multi-byte punctuation handled at token edges
const std::array<std::string, 15>& strip_utf8() {
  static const std::array<std::string, 15> kSeq = {
      "“", "”", "‘", "’", "‚", "„", "‹",
      "›", "«", "»", "—", "–", "…", "¡",
      "¿"};
  return kSeq;
}

void strip_edges(std::string& tok) {
  bool changed = true;
  while (changed && !tok.empty()) {
    changed = false;
    if (is_strip_ascii(static_cast<unsigned char>(tok.front()))) {
      tok.erase(tok.begin());
      changed = true;
      continue;
    }
    if (is_strip_ascii(static_cast<unsigned char>(tok.back()))) {
      tok.pop_back();
      changed = true;
      continue;
    }
    for (const auto& seq : strip_utf8()) {
      if (tok.size() >= seq.size() && tok.compare(0, seq.size(), seq) == 0) {
        tok.erase(0, seq.size());
        changed = true;
        break;
      }
      if (tok.size() >= seq.size() &&
          tok.compare(tok.size() - seq.size(), seq.size(), seq) == 0) {
        tok.erase(tok.size() - seq.size());
        changed = true;
        break;
      }
    }
  }
}

bool all_punct(const std::string& tok) {
  for (unsigned char c : tok) {
    if (std::isalnum(c)) return false;
    if (c >= 0x80) return false;  // keep non-ASCII content tokens
    if (!is_strip_ascii(c) && !std::ispunct(c)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!is_terminal(text[i])) continue;
    if (!is_boundary(text, i)) continue;
    size_t end = i + 1;
    while (end < text.size() && (is_terminal(text[end]) || is_closing(text[end]))) ++end;
    while (end + 2 < text.size() && static_cast<unsigned char>(text[end]) == 0xE2 &&
           static_cast<unsigned char>(text[end + 1]) == 0x80) {
      const unsigned char third = static_cast<unsigned char>(text[end + 2]);
      if (third == 0x99 || third == 0x9D) {
        end += 3;
      } else {
        break;
      }
    }
    std::string sent = text.substr(start, end - start);
    // trim
    size_t a = sent.find_first_not_of(" \t\r\n");
    size_t b = sent.find_last_not_of(" \t\r\n");
    if (a != std::string::npos) out.push_back(sent.substr(a, b - a + 1));
    start = end;
    i = end - 1;
  }
  if (start < text.size()) {
    std::string sent = text.substr(start);
    size_t a = sent.find_first_not_of(" \t\r\n");
    size_t b = sent.find_last_not_of(" \t\r\n");
    if (a != std::string::npos) out.push_back(sent.substr(a, b - a + 1));
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < n && !is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    std::string tok = text.substr(start, i - start);
    strip_edges(tok);
    if (tok.empty() || all_punct(tok)) continue;
    out.push_back(lower_ascii(std::move(tok)));
  }
  return out;
}

}  // namespace popcast
