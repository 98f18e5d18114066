#pragma once

// Plain-text formats: dense vectors are one decimal number per line, supports
// are comma-separated 1-based indices on a single line.

#include <iosfwd>
#include <string>
#include <vector>

#include "sepsparse/model.hpp"

namespace sepsparse::io {

std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const std::vector<double>& v);

std::string format_support(const Support& support);
Support parse_support(const std::string& text);

}  // namespace sepsparse::io
