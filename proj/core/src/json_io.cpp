#include "commexp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "commexp/errors.hpp"

namespace commexp {

namespace {

using nlohmann::json;

// %.17g guarantees the closest double on re-parse.
void append_double(std::string& out, double v) {
  // "-0" parses back as integer zero, so the sign of a zero cannot survive
  // a round trip anyway; emit the canonical form to keep emission idempotent.
  if (v == 0.0) {
    out += '0';
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_complex(std::string& out, const Complex& z) {
  out += '[';
  append_double(out, z.real());
  out += ',';
  append_double(out, z.imag());
  out += ']';
}

void append_matrix(std::string& out, const CMatrix& m) {
  out += '[';
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      append_complex(out, m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_bool(std::string& out, bool b) { out += b ? "true" : "false"; }

template <typename T>
void append_int_array(std::string& out, const std::vector<T>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
}

void append_spectrum(std::string& out, const Spectrum& s) {
  out += '[';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    append_complex(out, s[i]);
  }
  out += ']';
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("input is not valid JSON");
  return j;
}

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(std::string(what) + " entries must be [re, im] number pairs");
  }
  return Complex(number_at(j[0], what), number_at(j[1], what));
}

// Shared shape checks; limits apply only to external pair input.
CMatrix matrix_from(const json& j, const std::string& label, bool external) {
  if (!j.is_array()) throw ValidationError(label + " must be an array of rows");
  const std::size_t n = j.size();
  if (n == 0) throw ValidationError(label + ": matrix must have at least one row");
  if (n > 3) throw ValidationError(label + ": dimension must be <= 3");
  CMatrix m = CMatrix::zero(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array()) throw ValidationError(label + " rows must be arrays");
    if (row.size() != n) throw ValidationError(label + ": matrix must be square");
    for (std::size_t c = 0; c < n; ++c) {
      Complex z = complex_from(row[c], label.c_str());
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError(label + ": matrix entries must be finite");
      }
      if (external && (std::abs(z.real()) > 1e6 || std::abs(z.imag()) > 1e6)) {
        throw ValidationError(label + ": matrix entries must have magnitude <= 1e6");
      }
      m(static_cast<int>(i), static_cast<int>(c)) = z;
    }
  }
  return m;
}

Spectrum spectrum_from(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  Spectrum s;
  for (const json& e : j) s.push_back(complex_from(e, what));
  return s;
}

bool bool_at(const json& j, const char* what) {
  if (!j.is_boolean()) throw ValidationError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

long int_at(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<long>();
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

std::pair<CMatrix, CMatrix> parse_pair_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
    throw ValidationError("input must be a JSON object with \"A\" and \"B\"");
  }
  CMatrix a = matrix_from(j["A"], "A", true);
  CMatrix b = matrix_from(j["B"], "B", true);
  if (a.dim() != b.dim()) throw ValidationError("A and B must have equal dimensions");
  return {a, b};
}

std::string emit_report_json(const AnalysisReport& r) {
  std::string out;
  out.reserve(2048);
  out += "{\"dim\":";
  out += std::to_string(r.dim);
  out += ",\"tolerances\":{\"eps_entry\":";
  append_double(out, r.tolerances.eps_entry);
  out += ",\"eps_eig\":";
  append_double(out, r.tolerances.eps_eig);
  out += ",\"eps_rank\":";
  append_double(out, r.tolerances.eps_rank);
  out += "},\"commute\":";
  append_bool(out, r.commute);
  out += ",\"triple_equal\":";
  append_bool(out, r.triple_equal);
  out += ",\"property_l\":{\"present\":";
  append_bool(out, r.property_l.has_value());
  if (r.property_l) {
    out += ",\"lambda\":";
    append_spectrum(out, r.property_l->lambda);
    out += ",\"mu\":";
    append_spectrum(out, r.property_l->mu);
    out += ",\"perm\":";
    append_int_array(out, r.property_l->perm);
  }
  out += "},\"st\":";
  append_bool(out, r.st);
  out += ",\"indecomposable\":";
  append_bool(out, r.indecomposable);
  out += ",\"condition3\":";
  append_bool(out, r.condition3);
  out += ",\"exceptional\":{\"members\":";
  append_int_array(out, r.exceptional.members);
  out += ",\"candidates\":";
  append_int_array(out, r.exceptional.candidates);
  out += ",\"sweep_bound\":";
  out += std::to_string(r.exceptional.sweep_bound);
  out += ",\"complete\":";
  append_bool(out, r.exceptional.complete);
  out += "},\"star\":{\"present\":";
  append_bool(out, r.star.has_value());
  if (r.star) {
    out += ",\"sigma\":";
    append_complex(out, r.star->sigma);
    out += ",\"tau\":";
    append_complex(out, r.star->tau);
    out += ",\"delta\":";
    append_matrix(out, r.star->delta);
    out += ",\"theta\":";
    append_matrix(out, r.star->theta);
    out += ",\"f\":";
    append_matrix(out, r.star->f);
    out += ",\"g\":";
    append_matrix(out, r.star->g);
  }
  out += "},\"notes\":[";
  for (std::size_t i = 0; i < r.notes.size(); ++i) {
    if (i) out += ',';
    append_string(out, r.notes[i]);
  }
  out += "]}";
  return out;
}

AnalysisReport parse_report_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ValidationError("report must be a JSON object");

  AnalysisReport r;
  r.dim = static_cast<int>(int_at(field(j, "dim"), "dim"));

  const json& t = field(j, "tolerances");
  r.tolerances.eps_entry = number_at(field(t, "eps_entry"), "eps_entry");
  r.tolerances.eps_eig = number_at(field(t, "eps_eig"), "eps_eig");
  r.tolerances.eps_rank = number_at(field(t, "eps_rank"), "eps_rank");

  r.commute = bool_at(field(j, "commute"), "commute");
  r.triple_equal = bool_at(field(j, "triple_equal"), "triple_equal");

  const json& pl = field(j, "property_l");
  if (bool_at(field(pl, "present"), "present")) {
    EigenPairing p;
    p.lambda = spectrum_from(field(pl, "lambda"), "lambda");
    p.mu = spectrum_from(field(pl, "mu"), "mu");
    for (const json& e : field(pl, "perm")) {
      p.perm.push_back(static_cast<int>(int_at(e, "perm")));
    }
    r.property_l = std::move(p);
  }

  r.st = bool_at(field(j, "st"), "st");
  r.indecomposable = bool_at(field(j, "indecomposable"), "indecomposable");
  r.condition3 = bool_at(field(j, "condition3"), "condition3");

  const json& ex = field(j, "exceptional");
  for (const json& e : field(ex, "members")) r.exceptional.members.push_back(int_at(e, "members"));
  for (const json& e : field(ex, "candidates")) {
    r.exceptional.candidates.push_back(int_at(e, "candidates"));
  }
  r.exceptional.sweep_bound = int_at(field(ex, "sweep_bound"), "sweep_bound");
  r.exceptional.complete = bool_at(field(ex, "complete"), "complete");

  const json& st = field(j, "star");
  if (bool_at(field(st, "present"), "present")) {
    StarDecomp d;
    d.sigma = complex_from(field(st, "sigma"), "sigma");
    d.tau = complex_from(field(st, "tau"), "tau");
    d.delta = matrix_from(field(st, "delta"), "delta", false);
    d.theta = matrix_from(field(st, "theta"), "theta", false);
    d.f = matrix_from(field(st, "f"), "f", false);
    d.g = matrix_from(field(st, "g"), "g", false);
    r.star = std::move(d);
  }

  for (const json& e : field(j, "notes")) {
    if (!e.is_string()) throw ValidationError("notes must be strings");
    r.notes.push_back(e.get<std::string>());
  }
  return r;
}

std::string emit_sweep_json_lines(const std::vector<SweepRecord>& table) {
  std::string out;
  out.reserve(64 * table.size());
  for (const SweepRecord& rec : table) {
    out += "{\"t\":";
    out += std::to_string(rec.t);
    out += ",\"max_deviation\":";
    append_double(out, rec.deviation);
    out += ",\"pass\":";
    append_bool(out, rec.pass);
    out += "}\n";
  }
  return out;
}

std::string emit_catalog_names_json(const std::vector<NamedPair>& entries) {
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ',';
    append_string(out, entries[i].name);
  }
  out += "]";
  return out;
}

std::string emit_named_pair_json(const NamedPair& p) {
  std::string out = "{\"name\":";
  append_string(out, p.name);
  out += ",\"A\":";
  append_matrix(out, p.a);
  out += ",\"B\":";
  append_matrix(out, p.b);
  out += ",\"expected\":{";
  bool first = true;
  auto put_bool = [&](const char* key, const std::optional<bool>& v) {
    if (!v) return;
    if (!first) out += ',';
    first = false;
    out += '"';
    out += key;
    out += "\":";
    append_bool(out, *v);
  };
  put_bool("commute", p.expected.commute);
  put_bool("triple_equal", p.expected.triple_equal);
  put_bool("has_property_l", p.expected.has_property_l);
  put_bool("st", p.expected.st);
  put_bool("indecomposable", p.expected.indecomposable);
  put_bool("condition3", p.expected.condition3);
  if (p.expected.exceptional_members) {
    if (!first) out += ',';
    first = false;
    out += "\"exceptional_members\":";
    append_int_array(out, *p.expected.exceptional_members);
  }
  out += "}}";
  return out;
}

std::string emit_selftest_json(const SelftestSummary& s) {
  std::string out = "{\"pass\":";
  out += std::to_string(s.passed);
  out += ",\"fail\":";
  out += std::to_string(s.failed);
  out += ",\"details\":[";
  for (std::size_t i = 0; i < s.violations.size(); ++i) {
    if (i) out += ',';
    const CheckResult& c = s.violations[i];
    out += "{\"name\":";
    append_string(out, c.name);
    out += ",\"seed\":";
    out += std::to_string(c.seed);
    out += ",\"detail\":";
    append_string(out, c.detail);
    out += '}';
  }
  out += "]}";
  return out;
}

}  // namespace commexp
