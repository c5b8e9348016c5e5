#pragma once

#include <string>

#include "wfield/classify.hpp"
#include "wfield/eig.hpp"
#include "wfield/productset.hpp"
#include "wfield/repro.hpp"
#include "wfield/witness.hpp"

namespace wfield {

/// Matrix wire format: {"n": <int>, "entries": [[re, im], ...]} row-major,
/// n^2 entries. Readers reject non-square lengths and non-finite numbers.
CMatrix matrix_from_json(const std::string& text);
CMatrix read_matrix_file(const std::string& path);
std::string matrix_to_json(const CMatrix& a);

std::string to_json(const SpectrumSet& s);
std::string to_json(const RangeApprox& r);
std::string to_json(const RadiiReport& r);
std::string to_json(const ProductVerdict& v);
std::string to_json(const ContainmentReport& r);
std::string to_json(const ClassificationReport& r);
std::string to_json(const WitnessCertificate& c);
std::string to_json(const FalsifyOutcome& o);
std::string to_json(const ReproResult& r);

/// Write through a temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace wfield
