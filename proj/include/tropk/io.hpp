#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tropk/lift.hpp"

namespace tropk {

/// A matrix file: JSON with entries as exact "p/q" strings (integers may also
/// be plain JSON integers).
struct MatrixDocument {
  TropMatrix matrix;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const MatrixDocument&, const MatrixDocument&) = default;
};

/// Throws ParseError. Decimal strings such as "0.25" need `allow_decimal`;
/// JSON floating-point literals are always rejected.
MatrixDocument parse_matrix_document(std::string_view text, bool allow_decimal = false);
std::string serialize_matrix_document(const MatrixDocument& doc);

/// Self-contained certificate: matrix, rank bound, ramification N, lift
/// entries as rational functions in tau^(1/N), seed, trace, and a SHA-256
/// digest of the canonical content.
std::string serialize_certificate(const KapranovCertificate& cert);

/// The certificate as written; `verified` holds the claim in the file.
KapranovCertificate parse_certificate(std::string_view text);

struct CertificateCheck {
  bool verified = false;
  std::string reason;
};

/// Re-verifies from the document alone: digest, entrywise valuations and the
/// exact rank bound. Throws ParseError on malformed input.
CertificateCheck check_certificate(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tropk
