#include <charconv>
#include <cmath>
#include <string>

#include "json.hpp"
#include "polyflow/poly_core.hpp"

namespace polyflow {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) raise(ErrorCode::NonFinite, "refusing to serialize a non-finite value");
}

}  // namespace

std::string format_double(double v) {
  require_finite(v);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    raise(ErrorCode::SchemaError, "malformed number: '" + text + "'");
  if (!std::isfinite(v)) raise(ErrorCode::NonFinite, "non-finite number: '" + text + "'");
  return v;
}

std::string to_json(const NormalizedPolynomial& q) {
  for (double v : q.p) require_finite(v);
  require_finite(q.psq);
  nlohmann::ordered_json j;
  j["degree"] = q.degree;
  j["p"] = q.p;
  j["psq"] = q.psq;
  return j.dump();
}

NormalizedPolynomial poly_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("degree") || !j.contains("p") || !j.contains("psq"))
    raise(ErrorCode::SchemaError, "expected an object with keys degree, p, psq");
  if (!j["degree"].is_number_integer()) raise(ErrorCode::SchemaError, "degree must be an integer");
  if (!j["p"].is_array()) raise(ErrorCode::SchemaError, "p must be an array of numbers");
  if (!j["psq"].is_number()) raise(ErrorCode::SchemaError, "psq must be a number");
  const int n = j["degree"].get<int>();
  std::vector<double> p;
  p.reserve(j["p"].size());
  for (const auto& v : j["p"]) {
    if (!v.is_number()) raise(ErrorCode::SchemaError, "p must contain only numbers");
    p.push_back(v.get<double>());
  }
  const double psq = j["psq"].get<double>();
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "degree must be >= 2");
  if (static_cast<int>(p.size()) != n - 1)
    raise(ErrorCode::SchemaError, "p must have degree-1 entries");
  for (double v : p)
    if (!std::isfinite(v)) raise(ErrorCode::NonFinite, "p contains a non-finite value");
  if (!std::isfinite(psq)) raise(ErrorCode::NonFinite, "psq is non-finite");
  return NormalizedPolynomial(n, std::move(p), psq);
}

std::string to_csv(const NormalizedPolynomial& q) {
  std::string line = std::to_string(q.degree);
  for (double v : q.p) {
    line += ',';
    line += format_double(v);
  }
  line += ',';
  line += format_double(q.psq);
  line += '\n';
  return line;
}

NormalizedPolynomial poly_from_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == '\n' || ch == '\r') break;
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  if (fields.size() < 3) raise(ErrorCode::SchemaError, "CSV line needs degree, p..., psq");
  int n = 0;
  {
    const std::string& t = fields[0];
    auto res = std::from_chars(t.data(), t.data() + t.size(), n);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
      raise(ErrorCode::SchemaError, "malformed degree field: '" + t + "'");
  }
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "degree must be >= 2");
  if (static_cast<int>(fields.size()) != n + 1)
    raise(ErrorCode::SchemaError, "CSV field count does not match the degree");
  std::vector<double> p;
  p.reserve(static_cast<size_t>(n) - 1);
  for (int k = 1; k <= n - 1; ++k) p.push_back(parse_double(fields[static_cast<size_t>(k)]));
  const double psq = parse_double(fields.back());
  return NormalizedPolynomial(n, std::move(p), psq);
}

}  // namespace polyflow
