#pragma once

#include <complex>
#include <string>

#include "ubm/measure.hpp"

namespace ubm {

enum class Format { Json, Csv };

Format parse_format(const std::string& name);
std::string format_name(Format f);

/// Shortest round-trip text is not required; 17 significant digits always
/// reproduce the double exactly.
std::string format_double(double v);

/// Moment-sequence file: JSON {"order": N, "moments": [[re, im], ...]} or CSV
/// with header "n,re,im" and one row per moment. The format is detected from
/// the first non-blank character.
MomentSequence<std::complex<double>> parse_moment_sequence(const std::string& text);
MomentSequence<std::complex<double>> read_moment_sequence(const std::string& path);

std::string moment_sequence_csv(const MomentSequence<std::complex<double>>& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace ubm
