#include "sepsparse/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sepsparse::io {

std::vector<double> read_vector(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream field(line.substr(first));
    double value = 0.0;
    std::string rest;
    if (!(field >> value) || (field >> rest))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected one number, got '" + line + "'");
    out.push_back(value);
  }
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vector file '" + path + "'");
  return read_vector(in);
}

void write_vector(std::ostream& out, const std::vector<double>& v) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (double value : v) out << value << '\n';
  out.precision(precision);
}

std::string format_support(const Support& support) {
  std::string out;
  for (std::size_t i : support) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

Support parse_support(const std::string& text) {
  std::vector<std::size_t> indices;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    auto token = text.substr(pos, comma - pos);
    const auto b = token.find_first_not_of(" \t\r\n");
    const auto e = token.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) {
      token = token.substr(b, e - b + 1);
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::invalid_argument("bad support index '" + token + "'");
      indices.push_back(value);
    } else if (comma != text.size() || !indices.empty()) {
      throw std::invalid_argument("empty support field");
    }
    pos = comma + 1;
  }
  return Support(std::move(indices));
}

}  // namespace sepsparse::io
