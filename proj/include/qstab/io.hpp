#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qstab/correlate.hpp"
#include "qstab/matrix.hpp"

namespace qstab {

/// Unreadable or unwritable path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input content; the message names the offending line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest representation preserving the exact double (17 significant
/// digits, "." decimal point). Every real written to CSV goes through this.
std::string format_real(double x);

void write_text_file(const std::filesystem::path& path, const std::string& content);

/// Header `t,tprime,c`; T^2 rows with t outer, both indices 1-based.
std::string correlator_csv(const CorrelatorMatrix& m);

/// Header `algo,n,T,chi`; one row per summary in input order.
std::string chi_csv(const std::vector<ChiSummary>& rows);

/// Inverse of chi_csv. Throws std::runtime_error naming the offending line
/// on any format violation.
std::vector<ChiSummary> parse_chi_csv(const std::string& text);
std::vector<ChiSummary> read_chi_csv(const std::filesystem::path& path);

struct FidelityCsvRow {
  std::string algo;
  int n = 0;
  int gate_count = 0;
  double delta = 0.0;
  std::string mode;
  int realizations = 0;
  double abs_mean_f = 0.0;
  double std_err = 0.0;
};

/// Header `algo,n,T,delta,mode,realizations,abs_mean_F,std_err`.
std::string fidelity_csv(const std::vector<FidelityCsvRow>& rows);

/// Header `exponent,coefficient,residual_rms`; one row per basis term, the
/// shared residual repeated so each row is self-contained.
std::string fit_csv(const ScalingFit& fit);

/// Plain-text Hermitian matrix: first line N, then N rows of N entries
/// `re,im` separated by whitespace.
std::string matrix_to_text(const ComplexMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

/// Throws std::runtime_error with the line number for malformed input, and
/// std::invalid_argument if the parsed matrix is non-finite or not Hermitian
/// within 1e-12.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Reproducibility record written next to every output file set.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;  // sorted keys, stable JSON
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::string timestamp;  // UTC, informational only
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& dir, const RunManifest& m);

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp();

}  // namespace qstab
