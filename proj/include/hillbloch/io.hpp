#pragma once

// JSON (de)serialization and file plumbing for the double-precision types
// the CLI trades in.  Schemas:
//
//   potential      {"coeffs": [[re, im], ...]}            q_1..q_N in order
//                  {"coeffs": {"3": [re, im], ...}}       sparse form, parse only
//   norming        {"values": [[re, im], ...]}            s_1..s_M in order
//   bloch series   {"n": int, "t": [re, im],
//                   "eigenvalue": [re, im],
//                   "coeffs": [[re, im], ...]}            c_0..c_P
//   reports        [{"name", "detail", "residual", "tolerance",
//                    "passed", "metrics", "traces"}, ...]
//   inverse        {"coeffs": ..., "diagnostics":
//                    {"bounded": bool, "max_modulus": x}}
//
// Parsing is strict: wrong shapes, non-finite numbers, or inconsistent
// redundant fields (a bloch eigenvalue that disagrees with its (n, t)) are
// ParseErrors; a sparse potential key at index <= 0 is a DomainError.
// Writes go through a temp file + rename so readers never see a torn file.

#include "hillbloch/bloch.hpp"
#include "hillbloch/common.hpp"
#include "hillbloch/inverse.hpp"
#include "hillbloch/norming.hpp"
#include "hillbloch/potential.hpp"
#include "hillbloch/report.hpp"

#include <string>
#include <vector>

namespace hillbloch {

// Filesystem-level failure (missing file, unwritable directory, ...).
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

namespace io {

PotentialSpec<double> parse_potential(const std::string& text);
std::string serialize_potential(const PotentialSpec<double>& spec);

NormingSequence<double> parse_norming(const std::string& text);
std::string serialize_norming(const NormingSequence<double>& sequence);

BlochSeries<double> parse_bloch_series(const std::string& text);
std::string serialize_bloch_series(const BlochSeries<double>& series);

std::string serialize_reports(const std::vector<VerificationReport>& reports);
std::string serialize_inverse_result(const InverseResult<double>& result);

// {"error": {"kind": ..., "detail": ...}} -- the CLI's stderr envelope.
std::string serialize_error(const std::string& kind, const std::string& detail);

std::string read_text_file(const std::string& path);
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace io
}  // namespace hillbloch
