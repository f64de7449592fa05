// Copyright 2026 The relim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text form of problems:
//
//   labels: M P O            (optional; fixes label ids)
//   white: M O^2 | P^3
//   black: M [PO]^2 | O^3
//
// Inside brackets, a single token that is not a known label name is read as
// one label per character, so [PO] means the group {P, O}.

#pragma once

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relim/problem.hpp"

namespace relim {

namespace detail {

struct Token {
  enum Kind { kLabel, kOpen, kClose, kBar, kCaret } kind;
  std::string text;
  int column;
};

inline bool is_separator(char ch) {
  return std::isspace(static_cast<unsigned char>(ch)) || ch == '[' || ch == ']' || ch == '|' ||
         ch == '^' || ch == ':';
}

inline std::vector<Token> tokenize(std::string_view body, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < body.size()) {
    const char ch = body[i];
    const int col = col0 + static_cast<int>(i);
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '[') {
      out.push_back({Token::kOpen, "[", col});
      ++i;
    } else if (ch == ']') {
      out.push_back({Token::kClose, "]", col});
      ++i;
    } else if (ch == '|') {
      out.push_back({Token::kBar, "|", col});
      ++i;
    } else if (ch == '^') {
      out.push_back({Token::kCaret, "^", col});
      ++i;
    } else if (ch == ':') {
      throw ParseError("unexpected ':'", line, col);
    } else {
      std::size_t j = i;
      while (j < body.size() && !is_separator(body[j])) ++j;
      out.push_back({Token::kLabel, std::string(body.substr(i, j - i)), col});
      i = j;
    }
  }
  return out;
}

struct SideLine {
  std::vector<Token> tokens;
  int line = 0;
  bool present = false;
};

class ProblemReader {
 public:
  ProblemReader(std::vector<std::string> fixed, bool closed)
      : names_(std::move(fixed)), closed_(closed) {}

  Constraint read_side(const SideLine& side) {
    std::vector<std::vector<Group>> confs(1);
    const auto& tk = side.tokens;
    std::size_t i = 0;
    auto fail = [&](const std::string& what, std::size_t at) -> ParseError {
      const int col = at < tk.size() ? tk[at].column : (tk.empty() ? 1 : tk.back().column + 1);
      return ParseError(what, side.line, col);
    };
    while (i < tk.size()) {
      const Token& t = tk[i];
      if (t.kind == Token::kBar) {
        if (confs.back().empty()) throw fail("empty configuration before '|'", i);
        confs.emplace_back();
        ++i;
        continue;
      }
      LabelSet members;
      if (t.kind == Token::kLabel) {
        members.insert(label_id(t, side.line));
        ++i;
      } else if (t.kind == Token::kOpen) {
        std::size_t j = i + 1;
        std::vector<const Token*> inner;
        while (j < tk.size() && tk[j].kind == Token::kLabel) inner.push_back(&tk[j++]);
        if (j >= tk.size() || tk[j].kind != Token::kClose) throw fail("expected ']'", j);
        if (inner.empty()) throw fail("empty group '[]'", j);
        if (inner.size() == 1 && !known(inner[0]->text) && inner[0]->text.size() > 1 &&
            all_alnum(inner[0]->text)) {
          for (std::size_t k = 0; k < inner[0]->text.size(); ++k) {
            Token single{Token::kLabel, std::string(1, inner[0]->text[k]),
                         inner[0]->column + static_cast<int>(k)};
            members.insert(label_id(single, side.line));
          }
        } else {
          for (const Token* in : inner) members.insert(label_id(*in, side.line));
        }
        i = j + 1;
      } else {
        throw fail("unexpected '" + t.text + "'", i);
      }
      int exp = 1;
      if (i < tk.size() && tk[i].kind == Token::kCaret) {
        if (i + 1 >= tk.size() || tk[i + 1].kind != Token::kLabel ||
            !all_digits(tk[i + 1].text)) {
          throw fail("expected integer exponent after '^'", i + 1);
        }
        exp = std::stoi(tk[i + 1].text);
        if (exp < 1) throw fail("exponent must be >= 1", i + 1);
        i += 2;
      }
      confs.back().push_back({members, exp});
    }
    if (confs.back().empty()) throw fail("expected a configuration", i);

    std::vector<Configuration> out;
    int degree = -1;
    for (auto& groups : confs) {
      Configuration c(std::move(groups));
      if (degree < 0) degree = c.degree();
      if (c.degree() != degree) {
        throw DegreeMismatch("line " + std::to_string(side.line) +
                             ": configurations have different degrees (" +
                             std::to_string(degree) + " and " + std::to_string(c.degree()) + ")");
      }
      out.push_back(std::move(c));
    }
    return Constraint(degree, std::move(out));
  }

  void learn_plain_labels(const SideLine& side) {
    int depth = 0;
    bool after_caret = false;
    for (const Token& t : side.tokens) {
      if (t.kind == Token::kOpen) ++depth;
      if (t.kind == Token::kClose) --depth;
      if (t.kind == Token::kLabel && depth == 0 && !after_caret) {
        if (!closed_ && !known(t.text) && valid_label_name(t.text) &&
            names_.size() < static_cast<std::size_t>(kMaxAlphabetCap)) {
          names_.push_back(t.text);
        }
      }
      after_caret = t.kind == Token::kCaret;
    }
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  static bool all_alnum(const std::string& s) {
    for (char ch : s) {
      if (!std::isalnum(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  }
  static bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  }

  bool known(const std::string& name) const {
    for (const auto& n : names_) {
      if (n == name) return true;
    }
    return false;
  }

  Label label_id(const Token& t, int line) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == t.text) return static_cast<Label>(i);
    }
    if (closed_) throw UnknownLabel("line " + std::to_string(line) + ", column " +
                                    std::to_string(t.column) + ": unknown label '" + t.text + "'");
    if (names_.size() >= static_cast<std::size_t>(kMaxAlphabetCap)) {
      throw AlphabetCapExceeded("more than " + std::to_string(kMaxAlphabetCap) + " labels");
    }
    names_.push_back(t.text);
    return static_cast<Label>(names_.size() - 1);
  }

  std::vector<std::string> names_;
  bool closed_;
};

}  // namespace detail

/// Parses the text form. Label ids follow the `labels:` line when present,
/// otherwise order of first appearance.
inline Problem parse_problem(std::string_view text) {
  detail::SideLine white;
  detail::SideLine black;
  std::vector<std::string> fixed;
  bool closed = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t first = 0;
    while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
    if (first == line.size() || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected 'labels:', 'white:' or 'black:'", line_no,
                       static_cast<int>(first) + 1);
    }
    std::string key(line.substr(first, colon - first));
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
    const std::string_view body = line.substr(colon + 1);
    const int col0 = static_cast<int>(colon) + 2;

    if (key == "labels") {
      if (closed) throw ParseError("duplicate 'labels:' line", line_no, 1);
      if (white.present || black.present) {
        throw ParseError("'labels:' must come first", line_no, 1);
      }
      for (const auto& t : detail::tokenize(body, line_no, col0)) {
        if (t.kind != detail::Token::kLabel) {
          throw ParseError("unexpected '" + t.text + "' in labels line", line_no, t.column);
        }
        for (const auto& f : fixed) {
          if (f == t.text) throw ParseError("duplicate label '" + t.text + "'", line_no, t.column);
        }
        fixed.push_back(t.text);
      }
      closed = true;
    } else if (key == "white" || key == "black") {
      detail::SideLine& side = key == "white" ? white : black;
      if (side.present) throw ParseError("duplicate '" + key + ":' line", line_no, 1);
      if (key == "black" && !white.present) {
        throw ParseError("'white:' must precede 'black:'", line_no, 1);
      }
      side.tokens = detail::tokenize(body, line_no, col0);
      side.line = line_no;
      side.present = true;
    } else {
      throw ParseError("unknown section '" + key + "'", line_no, static_cast<int>(first) + 1);
    }
    if (end == text.size()) break;
  }
  if (!white.present) throw ParseError("missing 'white:' line", line_no, 1);
  if (!black.present) throw ParseError("missing 'black:' line", line_no, 1);

  detail::ProblemReader reader(fixed, closed);
  reader.learn_plain_labels(white);
  reader.learn_plain_labels(black);
  Problem p;
  p.active = reader.read_side(white);
  p.passive = reader.read_side(black);
  p.alphabet = reader.names();
  validate(p);
  return p;
}

inline std::string format_group(const Problem& p, const Group& g) {
  std::string out;
  if (g.members.size() == 1) {
    out = p.alphabet[g.members.lowest()];
  } else {
    bool short_names = true;
    g.members.for_each([&](Label l) { short_names = short_names && p.alphabet[l].size() == 1; });
    out = "[";
    bool first = true;
    g.members.for_each([&](Label l) {
      if (!first && !short_names) out += ' ';
      out += p.alphabet[l];
      first = false;
    });
    out += "]";
  }
  if (g.exp > 1) out += "^" + std::to_string(g.exp);
  return out;
}

inline std::string format_configuration(const Problem& p, const Configuration& c) {
  std::string out;
  for (const Group& g : c.groups()) {
    if (!out.empty()) out += ' ';
    out += format_group(p, g);
  }
  return out;
}

inline std::string format_constraint(const Problem& p, const Constraint& c) {
  std::string out;
  for (const Configuration& conf : c.configurations()) {
    if (!out.empty()) out += " | ";
    out += format_configuration(p, conf);
  }
  return out;
}

inline std::string format_word(const Problem& p, const Word& w) {
  std::string out;
  for (Label l : w) {
    if (!out.empty()) out += ' ';
    out += p.alphabet[l];
  }
  return out;
}

/// Condensed text form; `parse_problem(format_problem(p))` reproduces `p`.
inline std::string format_problem(const Problem& p, bool with_labels = true) {
  std::ostringstream os;
  if (with_labels) {
    os << "labels:";
    for (const auto& n : p.alphabet) os << ' ' << n;
    os << '\n';
  }
  os << "white: " << format_constraint(p, p.active) << '\n';
  os << "black: " << format_constraint(p, p.passive) << '\n';
  return os.str();
}

}  // namespace relim
