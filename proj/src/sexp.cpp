#include "gitrees/sexp.hpp"

#include <cctype>
#include <charconv>

namespace gitrees::sexp {

std::optional<Natural> Sexp::as_natural() const {
  if (is_list || atom.empty()) return std::nullopt;
  Natural value = 0;
  auto [ptr, ec] = std::from_chars(atom.data(), atom.data() + atom.size(), value);
  if (ec != std::errc() || ptr != atom.data() + atom.size()) return std::nullopt;
  return value;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  Sexp read() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_);
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_);
    if (c == '(') {
      Sexp list;
      list.is_list = true;
      list.line = line_;
      ++pos_;
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", list.line);
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    Sexp atom;
    atom.line = line_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    atom.atom = std::string(text_.substr(start, pos_ - start));
    return atom;
  }

 private:
  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
           c == ';';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

std::vector<Sexp> read_all(std::string_view text) {
  Reader reader(text);
  std::vector<Sexp> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

Sexp read_one(std::string_view text) {
  Reader reader(text);
  Sexp s = reader.read();
  if (!reader.at_end()) throw ParseError("trailing input after datum", s.line);
  return s;
}

std::string to_string(const Sexp& s) {
  if (s.is_atom()) return s.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i > 0) out += ' ';
    out += to_string(s.items[i]);
  }
  return out + ")";
}

}  // namespace gitrees::sexp
