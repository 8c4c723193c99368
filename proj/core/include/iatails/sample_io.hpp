#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace iatails {

// Shortest decimal representation that parses back bit-exactly.
std::string format_double(double v);

// One value per line, UTF-8, '\n' separators, round-trip precision.
void write_sample_file(const std::string& path,
                       const std::vector<double>& values);

// Throws io_error naming the line number on any unparseable line.
std::vector<double> read_sample_file(const std::string& path);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

}  // namespace iatails
