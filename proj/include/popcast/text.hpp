#pragma once

#include <string>
#include <vector>

namespace popcast {

// Rule-based sentence splitter. A boundary is a terminal '.', '!' or '?'
// (optionally wrapped in closing quotes/brackets) followed by whitespace and
// an uppercase, digit, or opening-quote start. Periods after stop-list
// abbreviations (Mr., Dr., U.S., ...), single initials, and acronyms with
// internal periods do not end a sentence. Whitespace between sentences is
// dropped; concatenating the outputs recovers the input modulo whitespace.
std::vector<std::string> split_sentences(const std::string& text);

// Lowercased word tokens: split on whitespace, strip leading/trailing
// punctuation (Unicode P*; currency and math symbols like '$' are kept),
// drop tokens that become empty. ASCII-only case folding.
std::vector<std::string> tokenize(const std::string& text);

}  // namespace popcast
