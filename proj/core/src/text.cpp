#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

#include "ghr/errors.hpp"
#include "ghr/quaternion.hpp"

namespace ghr {
namespace {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void append_term(std::string& out, double x, char unit) {
  out += std::signbit(x) ? '-' : '+';
  out += format_number(std::abs(x));
  out += unit;
}

void skip_spaces(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
}

}  // namespace

std::string to_string(const Quaternion& q) {
  std::string out = format_number(q.a);
  append_term(out, q.b, 'i');
  append_term(out, q.c, 'j');
  append_term(out, q.d, 'k');
  return out;
}

Quaternion parse_quaternion(std::string_view text) {
  std::array<double, 4> parts{};
  std::array<bool, 4> seen{};
  std::size_t pos = 0;
  bool first = true;

  auto fail = [&](const char* why) -> ParseError {
    return ParseError("cannot parse quaternion '" + std::string(text) + "': " + why);
  };

  skip_spaces(text, pos);
  if (pos == text.size()) {
    throw fail("empty text");
  }

  while (true) {
    skip_spaces(text, pos);
    if (pos == text.size()) {
      break;
    }

    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_spaces(text, pos);
    } else if (!first) {
      throw fail("expected '+' or '-' between terms");
    }
    first = false;

    double value = 1.0;
    bool has_number = false;
    if (pos < text.size()) {
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      // "i" alone must not be read as the start of "inf".
      const bool bare_unit = (*begin == 'i' && (end - begin < 3 || std::string_view(begin, 3) != "inf"));
      if (!bare_unit) {
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec == std::errc()) {
          has_number = true;
          pos += static_cast<std::size_t>(ptr - begin);
        } else if (ec == std::errc::result_out_of_range) {
          throw fail("number out of range");
        }
      }
    }
    skip_spaces(text, pos);

    std::size_t slot = 0;
    if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
      slot = static_cast<std::size_t>(text[pos] - 'i') + 1;
      ++pos;
    } else if (!has_number) {
      throw fail("expected a number or unit");
    }
    if (seen[slot]) {
      throw fail("repeated term");
    }
    seen[slot] = true;
    parts[slot] = sign * value;
  }

  return {parts[0], parts[1], parts[2], parts[3]};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) { return os << to_string(q); }

}  // namespace ghr
