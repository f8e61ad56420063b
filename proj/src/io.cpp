#include "qstab/io.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qstab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

long parse_long(const std::string& s, std::size_t line_no, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    parse_fail(line_no, std::string("expected integer ") + what + ", got '" + s + "'");
  }
  if (pos != s.size())
    parse_fail(line_no, std::string("expected integer ") + what + ", got '" + s + "'");
  return v;
}

double parse_double(const std::string& s, std::size_t line_no, const char* what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    parse_fail(line_no, std::string("expected number ") + what + ", got '" + s + "'");
  }
  if (pos != s.size())
    parse_fail(line_no, std::string("expected number ") + what + ", got '" + s + "'");
  return v;
}

std::string read_whole_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out.good()) throw IoError("cannot write " + path.string());
}

std::string correlator_csv(const CorrelatorMatrix& m) {
  std::string out = "t,tprime,c\n";
  for (int t = 1; t <= m.T; ++t) {
    for (int tp = 1; tp <= m.T; ++tp) {
      out += std::to_string(t);
      out += ',';
      out += std::to_string(tp);
      out += ',';
      out += format_real(m.at(t, tp));
      out += '\n';
    }
  }
  return out;
}

std::string chi_csv(const std::vector<ChiSummary>& rows) {
  std::string out = "algo,n,T,chi\n";
  for (const ChiSummary& r : rows) {
    out += r.algorithm;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.T);
    out += ',';
    out += format_real(r.chi);
    out += '\n';
  }
  return out;
}

std::vector<ChiSummary> parse_chi_csv(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ChiSummary> rows;
  bool saw_header = false;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != "algo,n,T,chi") parse_fail(line_no, "expected header 'algo,n,T,chi'");
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 4)
      parse_fail(line_no, "expected 4 comma-separated fields, got " +
                              std::to_string(fields.size()));
    ChiSummary r;
    r.algorithm = fields[0];
    if (r.algorithm.empty()) parse_fail(line_no, "empty algo field");
    r.n = static_cast<int>(parse_long(fields[1], line_no, "n"));
    r.T = static_cast<int>(parse_long(fields[2], line_no, "T"));
    r.chi = parse_double(fields[3], line_no, "chi");
    if (r.n < 1) parse_fail(line_no, "n must be positive");
    rows.push_back(std::move(r));
  }
  if (!saw_header) throw ParseError("line 1: missing header 'algo,n,T,chi'");
  return rows;
}

std::vector<ChiSummary> read_chi_csv(const std::filesystem::path& path) {
  try {
    return parse_chi_csv(read_whole_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string fidelity_csv(const std::vector<FidelityCsvRow>& rows) {
  std::string out = "algo,n,T,delta,mode,realizations,abs_mean_F,std_err\n";
  for (const FidelityCsvRow& r : rows) {
    out += r.algo;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.gate_count);
    out += ',';
    out += format_real(r.delta);
    out += ',';
    out += r.mode;
    out += ',';
    out += std::to_string(r.realizations);
    out += ',';
    out += format_real(r.abs_mean_f);
    out += ',';
    out += format_real(r.std_err);
    out += '\n';
  }
  return out;
}

std::string fit_csv(const ScalingFit& fit) {
  std::string out = "exponent,coefficient,residual_rms\n";
  for (std::size_t i = 0; i < fit.basis.size(); ++i) {
    out += std::to_string(fit.basis[i]);
    out += ',';
    out += format_real(fit.coefficients[i]);
    out += ',';
    out += format_real(fit.residual_rms);
    out += '\n';
  }
  return out;
}

std::string matrix_to_text(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  std::string out = std::to_string(m.rows());
  out += '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_real(m(i, j).real());
      out += ',';
      out += format_real(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_text_file(path, matrix_to_text(m));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  const std::string text = read_whole_file(path);
  std::istringstream ss(text);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&](std::string& out) {
    while (std::getline(ss, out)) {
      ++line_no;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty()) return true;
    }
    return false;
  };

  auto fail = [&](const std::string& what) -> void {
    throw ParseError(path.string() + ": line " + std::to_string(line_no) + ": " + what);
  };

  if (!next_line(line)) fail("missing dimension line");
  long n = 0;
  {
    std::size_t pos = 0;
    try {
      n = std::stol(line, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != line.size() || n < 1) fail("first line must be a positive dimension");
    if (n > 8192) fail("dimension too large");
  }
  const std::size_t dim = static_cast<std::size_t>(n);

  ComplexMatrix m(dim, dim);
  for (std::size_t row = 0; row < dim; ++row) {
    if (!next_line(line)) fail("expected " + std::to_string(dim) + " matrix rows");
    std::istringstream row_ss(line);
    std::string token;
    std::size_t col = 0;
    while (row_ss >> token) {
      if (col >= dim) fail("row has more than " + std::to_string(dim) + " entries");
      std::vector<std::string> parts = split(token, ',');
      if (parts.size() != 2) fail("entry '" + token + "' is not of the form re,im");
      const double re = parse_double(parts[0], line_no, "real part");
      const double im = parse_double(parts[1], line_no, "imaginary part");
      m(row, col) = cdouble(re, im);
      ++col;
    }
    if (col != dim)
      fail("row has " + std::to_string(col) + " entries, expected " + std::to_string(dim));
  }

  if (!m.all_finite()) throw std::invalid_argument(path.string() + ": matrix has non-finite entries");
  if (hermiticity_defect(m) > 1e-12)
    throw std::invalid_argument(path.string() + ": matrix is not Hermitian");
  return m;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["master_seed"] = m.master_seed;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  return j.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  write_text_file(dir / "manifest.json", manifest_json(m));
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace qstab
