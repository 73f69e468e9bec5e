#include "mbanach/parse.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "mbanach/errors.hpp"

namespace mbanach {
namespace {

// Parses a real number at the front of `s` (strtod semantics); returns the
// number of characters used, 0 if none.
std::size_t read_real(const std::string& s, std::size_t pos, double& out) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return static_cast<std::size_t>(end - begin);
}

std::string shortest(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s += ch;
  }
  if (s.empty()) throw InputError("empty complex literal");
  const auto fail = [&] { return InputError("malformed complex literal '" + text + "'"); };

  // Pure imaginary forms: "i", "-i", "2i".
  if (s.back() == 'i' || s.back() == 'j') {
    const std::string body = s.substr(0, s.size() - 1);
    // Find a sign separating real and imaginary parts (not an exponent sign).
    std::size_t split_at = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split_at = k;
        break;
      }
    }
    double re = 0.0;
    std::string imag = body;
    if (split_at != std::string::npos) {
      const std::string real = body.substr(0, split_at);
      if (read_real(real, 0, re) != real.size()) throw fail();
      imag = body.substr(split_at);
    }
    double im = 0.0;
    if (imag.empty() || imag == "+") {
      im = 1.0;
    } else if (imag == "-") {
      im = -1.0;
    } else if (read_real(imag, 0, im) != imag.size()) {
      throw fail();
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw fail();
    return {re, im};
  }
  double re = 0.0;
  if (read_real(s, 0, re) != s.size() || !std::isfinite(re)) throw fail();
  return {re, 0.0};
}

std::string format_complex(Complex c) {
  const double re = c.real() == 0.0 ? 0.0 : c.real();
  const double im = c.imag() == 0.0 ? 0.0 : c.imag();
  if (im == 0.0) return shortest(re);
  const std::string mag = std::abs(im) == 1.0 ? "" : shortest(std::abs(im));
  if (re == 0.0) return (im < 0 ? "-" : "") + mag + "i";
  return shortest(re) + (im < 0 ? "-" : "+") + mag + "i";
}

ScalarMatrix parse_scalar_matrix(const std::string& text) {
  const auto rows = split(text, ';');
  if (rows.empty()) throw InputError("empty matrix literal");
  int ncols = -1;
  std::vector<Complex> entries;
  for (const auto& row : rows) {
    const auto toks = split(row, ',');
    if (ncols < 0) ncols = static_cast<int>(toks.size());
    if (static_cast<int>(toks.size()) != ncols || ncols == 0) throw InputError("ragged matrix literal");
    for (const auto& t : toks) entries.push_back(parse_complex(t));
  }
  return ScalarMatrix(static_cast<int>(rows.size()), ncols, std::move(entries));
}

}  // namespace mbanach
