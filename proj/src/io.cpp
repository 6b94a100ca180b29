#include "tropk/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "tropk/rational.hpp"

namespace tropk {

using nlohmann::json;

namespace {

constexpr const char* kCertificateFormat = "tropk-certificate";

Rational entry_value(const json& v, bool allow_decimal) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_string()) return parse_rational(v.get<std::string>(), allow_decimal);
  throw ParseError("matrix entry must be an integer or a \"p/q\" string, got " + v.dump());
}

json matrix_json(const TropMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

TropMatrix matrix_from_json(const json& j, bool allow_decimal) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix needs an \"entries\" grid");
  const json& e = j.at("entries");
  if (!e.is_array() || e.empty() || !e[0].is_array() || e[0].empty()) {
    throw ParseError("entries must be a non-empty grid");
  }
  const std::size_t rows = e.size(), cols = e[0].size();
  if (j.contains("rows") && j.at("rows").get<std::size_t>() != rows) throw ParseError("row count mismatch");
  if (j.contains("cols") && j.at("cols").get<std::size_t>() != cols) throw ParseError("column count mismatch");
  TropMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!e[i].is_array() || e[i].size() != cols) throw ParseError("ragged entries grid");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = TropScalar(entry_value(e[i][c], allow_decimal));
  }
  return m;
}

json terms_json(const SerializedPoly& p, std::int64_t ram) {
  json out = json::array();
  for (const auto& [e, c] : p) {
    Rational x(e, ram);
    x.canonicalize();
    out.push_back({to_string(x), to_string(c)});
  }
  return out;
}

SerializedPoly terms_from_json(const json& j, std::int64_t ram) {
  if (!j.is_array()) throw ParseError("series terms must be an array");
  SerializedPoly out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw ParseError("series term must be [exponent, coefficient]");
    Rational e = parse_rational(t[0].get<std::string>()) * ram;
    if (e.get_den() != 1) throw ParseError("exponent not a multiple of 1/N");
    out.emplace_back(to_int64(e), parse_rational(t[1].get<std::string>()));
  }
  return out;
}

json lift_json(const LiftMatrix& f, std::int64_t ram) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.cols(); ++j) {
      auto s = serialize(f(i, j).with_ramification(ram));
      row.push_back({{"num", terms_json(s.numerator, ram)}, {"den", terms_json(s.denominator, ram)}});
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
  return os.str();
}

std::string digest(const TropMatrix& m, std::size_t r, std::int64_t ram, const LiftMatrix& f) {
  json core = {{"matrix", matrix_json(m)}, {"rank_bound", r}, {"ramification", ram}, {"lift", lift_json(f, ram)}};
  return sha256_hex(core.dump());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

struct ParsedCertificate {
  KapranovCertificate cert;
  std::int64_t ram = 1;
  std::string digest;
};

ParsedCertificate parse_certificate_full(std::string_view text) {
  json j = parse_json(text);
  try {
    if (j.value("format", "") != kCertificateFormat) throw ParseError("not a certificate document");
    ParsedCertificate p;
    auto& c = p.cert;
    c.matrix = matrix_from_json(j.at("matrix"), false);
    c.rank_bound = j.at("rank_bound").get<std::size_t>();
    p.ram = j.at("ramification").get<std::int64_t>();
    if (p.ram <= 0) throw ParseError("ramification must be positive");
    const json& rows = j.at("lift");
    if (!rows.is_array() || rows.size() != c.matrix.rows()) throw ParseError("lift row count mismatch");
    c.lift = LiftMatrix(c.matrix.rows(), c.matrix.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != c.matrix.cols()) throw ParseError("lift column count mismatch");
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        SerializedScalar s{terms_from_json(rows[i][k].at("num"), p.ram),
                           terms_from_json(rows[i][k].at("den"), p.ram)};
        c.lift(i, k) = deserialize(s, p.ram);
      }
    }
    c.verified = j.value("verified", false);
    c.seed = j.value("seed", std::uint64_t{0});
    c.method = j.value("method", "");
    c.retries_used = j.value("retries_used", std::size_t{0});
    for (const auto& t : j.value("trace", json::array()))
      c.trace.push_back({t.value("origin", ""), t.value("detail", "")});
    p.digest = j.value("digest", "");
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  } catch (const FieldError& e) {
    throw ParseError(std::string("malformed series: ") + e.what());
  }
}

}  // namespace

MatrixDocument parse_matrix_document(std::string_view text, bool allow_decimal) {
  json j = parse_json(text);
  try {
    MatrixDocument doc;
    doc.matrix = matrix_from_json(j, allow_decimal);
    if (j.contains("name")) doc.name = j.at("name").get<std::string>();
    if (j.contains("seed")) doc.seed = j.at("seed").get<std::uint64_t>();
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix document: ") + e.what());
  }
}

std::string serialize_matrix_document(const MatrixDocument& doc) {
  json j;
  if (doc.name) j["name"] = *doc.name;
  if (doc.seed) j["seed"] = *doc.seed;
  const json m = matrix_json(doc.matrix);
  std::string out = "{\n";
  for (const auto& [k, v] : j.items()) out += "  " + json(k).dump() + ": " + v.dump() + ",\n";
  out += "  \"rows\": " + m["rows"].dump() + ",\n  \"cols\": " + m["cols"].dump() + ",\n  \"entries\": [\n";
  const json& e = m["entries"];
  for (std::size_t i = 0; i < e.size(); ++i) out += "    " + e[i].dump() + (i + 1 < e.size() ? ",\n" : "\n");
  return out + "  ]\n}\n";
}

std::string serialize_certificate(const KapranovCertificate& cert) {
  const std::int64_t ram = std::lcm(cert.lift.ramification(), ramification_for(cert.matrix));
  json trace = json::array();
  for (const auto& t : cert.trace) trace.push_back({{"origin", t.origin}, {"detail", t.detail}});
  json j = {{"format", kCertificateFormat},
            {"matrix", matrix_json(cert.matrix)},
            {"rank_bound", cert.rank_bound},
            {"ramification", ram},
            {"lift", lift_json(cert.lift, ram)},
            {"verified", cert.verified},
            {"seed", cert.seed},
            {"method", cert.method},
            {"retries_used", cert.retries_used},
            {"trace", trace},
            {"digest", digest(cert.matrix, cert.rank_bound, ram, cert.lift)}};
  return j.dump(1) + "\n";
}

KapranovCertificate parse_certificate(std::string_view text) { return parse_certificate_full(text).cert; }

CertificateCheck check_certificate(std::string_view text) {
  ParsedCertificate p = parse_certificate_full(text);
  const auto& c = p.cert;
  if (p.digest != digest(c.matrix, c.rank_bound, p.ram, c.lift)) return {false, "digest mismatch"};
  try {
    auto v = verify_lift(c.lift, c.matrix, c.rank_bound);
    if (!v.verified) return {false, "valuations or rank bound do not hold"};
  } catch (const LiftError& e) {
    return {false, e.what()};
  }
  return {true, "ok"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace tropk
