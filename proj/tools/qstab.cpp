// Command-line driver: circuit inspection, invariant verification,
// correlator/chi scans, fidelity sweeps and scaling fits, with CSV and
// gnuplot-script output. Exit codes: 0 success, 1 verification failure,
// 2 usage error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qstab/circuit.hpp"
#include "qstab/correlate.hpp"
#include "qstab/io.hpp"
#include "qstab/perturb.hpp"
#include "qstab/version.hpp"

namespace fs = std::filesystem;

namespace {

using namespace qstab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

// Cost guards: full-operator work caps at n = 12 (N = 4096); exact-trace
// fidelity caps at n = 9 unless forced.
constexpr int kMaxOperatorQubits = 12;
constexpr int kMaxExactTraceQubits = 9;
constexpr int kStochasticAutoQubits = 10;
constexpr int kDefaultTraceStates = 200;

struct GlobalOpts {
  std::uint64_t seed = 1;
  fs::path out_dir = ".";
  int threads = 1;
};

Circuit build_algo(const std::string& algo, int n) {
  return algo == "iqft" ? build_iqft(n) : build_qft(n);
}

// For titles and progress lines; CSV output keeps full precision.
std::string format_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

long parse_long_strict(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  return v;
}

double parse_double_strict(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw std::invalid_argument("invalid " + what + " '" + s + "'");
  return v;
}

// "k" or inclusive "a..b".
std::vector<int> parse_qubit_range(const std::string& s) {
  std::vector<int> out;
  const std::size_t dots = s.find("..");
  if (dots == std::string::npos) {
    out.push_back(static_cast<int>(parse_long_strict(s, "qubit count")));
  } else {
    const int a = static_cast<int>(parse_long_strict(s.substr(0, dots), "qubit range start"));
    const int b = static_cast<int>(parse_long_strict(s.substr(dots + 2), "qubit range end"));
    if (a > b) throw std::invalid_argument("qubit range start exceeds end in '" + s + "'");
    for (int n = a; n <= b; ++n) out.push_back(n);
  }
  for (int n : out) {
    if (n < 2) throw std::invalid_argument("qubit count must be at least 2");
    if (n > kMaxOperatorQubits)
      throw std::invalid_argument("qubit count " + std::to_string(n) +
                                  " exceeds the cost guard (max " +
                                  std::to_string(kMaxOperatorQubits) + ")");
  }
  return out;
}

// "x" or inclusive "a:b:step".
std::vector<double> parse_delta_range(const std::string& s) {
  std::vector<double> out;
  const std::size_t c1 = s.find(':');
  if (c1 == std::string::npos) {
    out.push_back(parse_double_strict(s, "delta"));
  } else {
    const std::size_t c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw std::invalid_argument("delta range must be a:b:step, got '" + s + "'");
    const double a = parse_double_strict(s.substr(0, c1), "delta range start");
    const double b = parse_double_strict(s.substr(c1 + 1, c2 - c1 - 1), "delta range end");
    const double step = parse_double_strict(s.substr(c2 + 1), "delta range step");
    if (step <= 0.0) throw std::invalid_argument("delta range step must be positive");
    if (a > b) throw std::invalid_argument("delta range start exceeds end in '" + s + "'");
    for (int i = 0;; ++i) {
      const double x = a + i * step;
      if (x > b + step * 1e-9) break;
      out.push_back(x);
    }
  }
  for (double d : out)
    if (!(d >= 0.0)) throw std::invalid_argument("delta must be non-negative");
  return out;
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
}

RunManifest make_manifest(const std::string& command, std::uint64_t seed,
                          std::map<std::string, std::string> params) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(params);
  m.master_seed = seed;
  m.tool_version = kVersion;
  m.timestamp = utc_timestamp();
  return m;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

// ---------------------------------------------------------------- gates --

int run_gates(const std::string& algo, int n) {
  Circuit c = build_algo(algo, n);
  std::cout << circuit_to_text(c);
  std::cerr << c.label << " n=" << n << ": " << c.gate_count() << " gates\n";
  return kExitOk;
}

// --------------------------------------------------------------- verify --

int run_verify(int n_max, bool corrupt_r) {
  int checks = 0;
  int failures = 0;
  auto report = [&](int n, const char* name, double defect, double tol) {
    ++checks;
    if (defect <= tol) {
      std::cout << "[ok]   n=" << n << " " << name << " (defect " << defect << ")\n";
    } else {
      std::cout << "[FAIL] n=" << n << " " << name << " (defect " << defect << " exceeds "
                << tol << ")\n";
      ++failures;
    }
  };

  ComplexMatrix local_r = gate_local_matrix(Gate::r(0, 1));
  if (corrupt_r) {
    // Test hook: a unitary, traceless impostor whose off-diagonal block
    // moves the control qubit, so it no longer commutes with the phases.
    local_r = ComplexMatrix(4, 4);
    local_r(0, 1) = -1.0;
    local_r(1, 0) = 1.0;
    local_r(2, 2) = 1.0;
    local_r(3, 3) = -1.0;
  }

  for (int n = 2; n <= n_max; ++n) {
    const Circuit qft = build_qft(n);
    const Circuit iqft = build_iqft(n);
    const ComplexMatrix uq = circuit_unitary(qft);
    const ComplexMatrix ui = circuit_unitary(iqft);

    report(n, "dft-oracle", max_abs_diff(uq, dft_matrix(n)), 1e-10);
    report(n, "iqft-equals-qft", max_abs_diff(ui, uq), 1e-10);
    report(n, "circuit-unitarity",
           std::max(unitarity_defect(uq), unitarity_defect(ui)), 1e-10);

    double local_unit = unitarity_defect(local_r);
    for (GateKind kind : {GateKind::A, GateKind::B, GateKind::T, GateKind::G}) {
      const Gate g = (kind == GateKind::A) ? Gate::a(0) : Gate{kind, 0, 1};
      local_unit = std::max(local_unit, unitarity_defect(gate_local_matrix(g)));
    }
    report(n, "gate-unitarity", local_unit, 1e-14);

    const double traceless = std::max(std::abs(trace(gate_local_matrix(Gate::a(0)))),
                                      std::abs(trace(local_r)));
    report(n, "tracelessness", traceless, 1e-14);

    // [R_jk, B_jl] = 0 and [R_jk, R_jl] = 0 for every triple sharing the
    // control qubit j (l = k included for the diagonal case).
    double comm = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const ComplexMatrix rjk = embed_two_qubit(local_r, j, k, n);
        for (int l = j + 1; l < n; ++l) {
          const ComplexMatrix bjl = embed_gate(Gate::b(j, l), n);
          comm = std::max(comm, max_abs_diff(matmul(rjk, bjl), matmul(bjl, rjk)));
          if (l != k) {
            const ComplexMatrix rjl = embed_two_qubit(local_r, j, l, n);
            comm = std::max(comm, max_abs_diff(matmul(rjk, rjl), matmul(rjl, rjk)));
          }
        }
      }
    }
    if (n >= 2) report(n, "commutators", comm, 1e-12);

    // Each replacement block G..G R..R must reproduce the phase block B..B.
    double block = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
      ComplexMatrix b_prod = ComplexMatrix::identity(qft.dim());
      for (int k = n - 1; k > j; --k)
        b_prod = matmul(embed_gate(Gate::b(j, k), n), b_prod);
      ComplexMatrix gr_prod = ComplexMatrix::identity(qft.dim());
      for (int k = n - 1; k > j; --k)
        gr_prod = matmul(embed_gate(Gate::g(j, k), n), gr_prod);
      for (int k = n - 1; k > j; --k)
        gr_prod = matmul(embed_two_qubit(local_r, j, k, n), gr_prod);
      block = std::max(block, max_abs_diff(gr_prod, b_prod));
    }
    report(n, "block-identity", block, 1e-12);
  }

  if (failures == 0) {
    std::cout << "verify: all " << checks << " checks passed (n = 2.." << n_max << ")\n";
    return kExitOk;
  }
  std::cout << "verify: " << failures << " of " << checks << " checks FAILED\n";
  return kExitVerifyFail;
}

// ----------------------------------------------------------- correlator --

std::string correlator_plot_script(const std::string& stem, const CorrelatorMatrix& m) {
  std::string s;
  s += "# gnuplot script: log-scale heatmap of the correlator matrix\n";
  s += "set datafile separator ','\n";
  s += "set terminal pngcairo size 860,760\n";
  s += "set output '" + stem + ".png'\n";
  s += "set view map\n";
  s += "set xlabel \"t'\"\n";
  s += "set ylabel \"t\"\n";
  s += "set xrange [1:" + std::to_string(m.T) + "]\n";
  s += "set yrange [1:" + std::to_string(m.T) + "]\n";
  s += "set cblabel \"log C(t,t')\"\n";
  s += "set cbrange [-14:0]\n";
  s += "set title '" + m.algorithm + " n=" + std::to_string(m.n) + " (T=" +
       std::to_string(m.T) + ")'\n";
  s += "plot '" + stem +
       ".csv' skip 1 using 2:1:(log($3 > exp(-15) ? $3 : exp(-15))) with image notitle\n";
  return s;
}

int run_correlator(const GlobalOpts& g, const std::string& algo, int n) {
  const Circuit c = build_algo(algo, n);
  const CorrelatorMatrix m = correlator_gue(c, g.threads);
  ensure_out_dir(g.out_dir);
  const std::string stem = "correlator_" + algo + "_n" + std::to_string(n);
  write_text_file(g.out_dir / (stem + ".csv"), correlator_csv(m));
  write_text_file(g.out_dir / (stem + ".gp"), correlator_plot_script(stem, m));
  write_manifest(g.out_dir, make_manifest("correlator", g.seed,
                                          {{"algo", algo}, {"n", std::to_string(n)}}));
  std::cout << "wrote " << (g.out_dir / (stem + ".csv")).string() << " (" << m.T << "x" << m.T
            << ") and " << (g.out_dir / (stem + ".gp")).string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ chi --

int run_chi(const GlobalOpts& g, const std::string& algo, const std::string& range) {
  const std::vector<int> ns = parse_qubit_range(range);
  std::vector<ChiSummary> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    const Circuit c = build_algo(algo, n);
    rows.push_back(chi_sum(correlator_gue(c, g.threads)));
    const ChiSummary& r = rows.back();
    std::cout << r.algorithm << " n=" << r.n << " T=" << r.T << " chi=" << format_real(r.chi)
              << "\n";
  }
  ensure_out_dir(g.out_dir);
  const std::string name = "chi_" + algo + ".csv";
  write_text_file(g.out_dir / name, chi_csv(rows));
  write_manifest(g.out_dir,
                 make_manifest("chi", g.seed, {{"algo", algo}, {"n", range}}));
  std::cout << "wrote " << (g.out_dir / name).string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- fidelity --

struct TraceChoice {
  bool explicit_exact = false;
  bool stochastic = false;
  int states = kDefaultTraceStates;
};

TraceChoice parse_trace(const std::string& s) {
  TraceChoice t;
  if (s == "auto") return t;
  if (s == "exact") {
    t.explicit_exact = true;
    return t;
  }
  if (s == "stochastic") {
    t.stochastic = true;
    return t;
  }
  if (s.rfind("stochastic:", 0) == 0) {
    t.stochastic = true;
    t.states = static_cast<int>(parse_long_strict(s.substr(11), "trace state count"));
    if (t.states < 1) throw std::invalid_argument("trace state count must be positive");
    return t;
  }
  throw std::invalid_argument("trace must be auto, exact or stochastic[:M], got '" + s + "'");
}

PerturbationMode parse_mode(const std::string& s, bool normalize) {
  if (s == "static") return PerturbationMode::static_gue(normalize);
  if (s == "noise") return PerturbationMode::noise(normalize);
  if (s.rfind("fixed:", 0) == 0) {
    const fs::path path = s.substr(6);
    return PerturbationMode::fixed(read_matrix_file(path));
  }
  throw std::invalid_argument("mode must be static, noise or fixed:<file>, got '" + s + "'");
}

std::string fidelity_plot_script(const std::string& stem, const std::string& algo,
                                 const PerturbationMode& mode, const std::vector<int>& ns,
                                 const std::vector<double>& deltas,
                                 const std::map<int, ChiSummary>& chis) {
  const bool delta_sweep = deltas.size() > 1;
  std::string s;
  s += "# gnuplot script: fidelity against the exp(-chi delta^2) model\n";
  s += "set datafile separator ','\n";
  s += "set terminal pngcairo size 860,640\n";
  s += "set output '" + stem + ".png'\n";
  s += "set ylabel '|<F>|'\n";
  s += "set yrange [0:1.05]\n";
  s += "set key left bottom\n";
  if (delta_sweep) {
    const int n = ns.front();
    const ChiSummary& c = chis.at(n);
    s += "set xlabel 'delta'\n";
    s += "set title '" + algo + " n=" + std::to_string(n) + "'\n";
    if (ns.size() > 1) s += "# several n in the CSV; plotting n=" + std::to_string(n) + "\n";
    s += "chi = " + format_real(c.chi) + "\n";
    s += "plot '" + stem + ".csv' skip 1 using (($2==" + std::to_string(n) +
         ")?$4:NaN):7:8 with yerrorbars title 'measured', exp(-chi*x**2) title "
         "'exp(-chi delta^2)'";
    if (mode.variant == PerturbVariant::Noise)
      s += ", exp(-x**2*" + std::to_string(c.T) + "/2.0) title 'noise baseline'";
    s += "\n";
  } else {
    const double delta = deltas.front();
    s += "set xlabel 'qubits n'\n";
    s += "set title '" + algo + " delta=" + format_short(delta) + "'\n";
    s += "$model << EOD\n";
    for (int n : ns) {
      const ChiSummary& c = chis.at(n);
      s += std::to_string(n) + " " + format_real(fidelity_model(c.chi, delta));
      if (mode.variant == PerturbVariant::Noise)
        s += " " + format_real(noise_baseline(c.T, delta));
      s += "\n";
    }
    s += "EOD\n";
    s += "plot '" + stem +
         ".csv' skip 1 using 2:7:8 with yerrorbars title 'measured', $model using 1:2 with "
         "linespoints title 'exp(-chi delta^2)'";
    if (mode.variant == PerturbVariant::Noise)
      s += ", $model using 1:3 with linespoints title 'noise baseline'";
    s += "\n";
  }
  return s;
}

struct FidelityArgs {
  std::string algo;
  std::string n_range;
  std::string delta_range;
  std::string mode = "static";
  std::string trace = "auto";
  int realizations = 50;
  bool normalize = false;
  bool force_exact = false;
};

int run_fidelity(const GlobalOpts& g, const FidelityArgs& args) {
  const std::vector<int> ns = parse_qubit_range(args.n_range);
  const std::vector<double> deltas = parse_delta_range(args.delta_range);
  if (args.realizations < 1) throw std::invalid_argument("realizations must be positive");
  const TraceChoice trace = parse_trace(args.trace);
  const PerturbationMode mode = parse_mode(args.mode, args.normalize);

  std::vector<FidelityCsvRow> rows;
  std::map<int, ChiSummary> chis;
  for (int n : ns) {
    const Circuit c = build_algo(args.algo, n);

    bool stochastic = trace.stochastic;
    if (!trace.stochastic && !trace.explicit_exact && n >= kStochasticAutoQubits)
      stochastic = true;  // auto policy mirrors the reference methodology
    if (!stochastic && n > kMaxExactTraceQubits && !args.force_exact)
      throw std::invalid_argument(
          "exact trace at n=" + std::to_string(n) + " exceeds the cost guard (max " +
          std::to_string(kMaxExactTraceQubits) +
          "); use --trace stochastic:M or --force-exact");

    chis.emplace(n, chi_sum(correlator_gue(c, g.threads)));

    for (double delta : deltas) {
      FidelityRunConfig cfg;
      cfg.delta = delta;
      cfg.realizations = args.realizations;
      cfg.trace = {stochastic, trace.states};
      cfg.seed = g.seed;
      const FidelityEnsemble e = fidelity_ensemble(c, mode, cfg, g.threads);
      rows.push_back({args.algo, n, c.gate_count(), delta, mode.name(), args.realizations,
                      e.abs_mean, e.std_error});
      std::cout << args.algo << " n=" << n << " delta=" << format_short(delta)
                << " |<F>|=" << format_short(e.abs_mean) << " +- " << format_short(e.std_error)
                << (stochastic ? " (stochastic trace)" : "") << "\n";
    }
  }

  ensure_out_dir(g.out_dir);
  const std::string stem = "fidelity_" + args.algo;
  write_text_file(g.out_dir / (stem + ".csv"), fidelity_csv(rows));
  write_text_file(g.out_dir / (stem + ".gp"),
                  fidelity_plot_script(stem, args.algo, mode, ns, deltas, chis));
  write_manifest(g.out_dir,
                 make_manifest("fidelity", g.seed,
                               {{"algo", args.algo},
                                {"n", args.n_range},
                                {"delta", args.delta_range},
                                {"mode", args.mode},
                                {"realizations", std::to_string(args.realizations)},
                                {"trace", args.trace},
                                {"normalize", args.normalize ? "true" : "false"}}));
  std::cout << "wrote " << (g.out_dir / (stem + ".csv")).string() << " and "
            << (g.out_dir / (stem + ".gp")).string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ fit --

std::vector<int> parse_basis(const std::string& s) {
  std::vector<int> basis;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, ','))
    basis.push_back(static_cast<int>(parse_long_strict(part, "basis exponent")));
  if (basis.empty()) throw std::invalid_argument("basis must list at least one exponent");
  return basis;
}

int run_fit(const GlobalOpts& g, const std::string& csv_path, const std::string& basis_str) {
  const std::vector<int> basis = parse_basis(basis_str);
  const std::vector<ChiSummary> data = read_chi_csv(csv_path);
  if (data.empty()) throw ParseError(csv_path + ": no data rows");
  for (const ChiSummary& r : data)
    if (r.algorithm != data.front().algorithm)
      throw std::invalid_argument("chi CSV mixes algorithms; fit one at a time");

  std::vector<std::pair<int, double>> points;
  points.reserve(data.size());
  for (const ChiSummary& r : data) points.emplace_back(r.n, r.chi);
  const ScalingFit fit = fit_scaling(points, basis);

  std::string model = "chi(n) ~ ";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double coeff = fit.coefficients[i];
    if (i) model += coeff < 0 ? " - " : " + ";
    model += format_short(i && coeff < 0 ? -coeff : coeff) + " n^" + std::to_string(basis[i]);
  }
  std::cout << data.front().algorithm << " fit over " << data.size() << " points\n";
  for (std::size_t i = 0; i < basis.size(); ++i)
    std::cout << "  n^" << basis[i] << "  " << format_real(fit.coefficients[i]) << "\n";
  std::cout << "  residual rms  " << format_real(fit.residual_rms) << "\n";
  std::cout << model << "\n";

  ensure_out_dir(g.out_dir);
  const std::string name = "fit_" + data.front().algorithm + ".csv";
  write_text_file(g.out_dir / name, fit_csv(fit));
  write_manifest(g.out_dir, make_manifest("fit", g.seed,
                                          {{"input", csv_path}, {"basis", basis_str}}));
  std::cout << "wrote " << (g.out_dir / name).string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability analysis of Fourier-transform circuits under unitary perturbations"};
  app.set_version_flag("--version", qstab::kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for all random streams")
      ->capture_default_str();
  app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads; affects speed only, never results")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* gates = app.add_subcommand("gates", "print the execution-order gate list");
  std::string gates_algo;
  int gates_n = 0;
  gates->add_option("algo", gates_algo, "qft or iqft")
      ->required()
      ->check(CLI::IsMember({"qft", "iqft"}));
  gates->add_option("-n,--qubits", gates_n, "register size (2..32)")
      ->required()
      ->check(CLI::Range(2, 32));

  auto* verify = app.add_subcommand("verify", "run the oracle and gate-algebra invariant suite");
  int verify_n_max = 6;
  bool corrupt_r = false;
  verify->add_option("-n,--n-max", verify_n_max, "largest register checked (2..8)")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();
  verify->add_flag("--corrupt-r", corrupt_r)->group("");  // hidden negative-control hook

  auto* correlator =
      app.add_subcommand("correlator", "write the averaged correlator matrix and heatmap script");
  std::string corr_algo;
  int corr_n = 0;
  correlator->add_option("algo", corr_algo, "qft or iqft")
      ->required()
      ->check(CLI::IsMember({"qft", "iqft"}));
  correlator->add_option("-n,--qubits", corr_n, "register size (2..12)")
      ->required()
      ->check(CLI::Range(2, kMaxOperatorQubits));

  auto* chi = app.add_subcommand("chi", "correlation sums over a qubit range");
  std::string chi_algo;
  std::string chi_range;
  chi->add_option("algo", chi_algo, "qft or iqft")
      ->required()
      ->check(CLI::IsMember({"qft", "iqft"}));
  chi->add_option("-n,--qubits", chi_range, "qubit count k or inclusive range a..b")->required();

  auto* fidelity = app.add_subcommand("fidelity", "perturbed-fidelity ensemble sweeps");
  FidelityArgs fargs;
  fidelity->add_option("algo", fargs.algo, "qft or iqft")
      ->required()
      ->check(CLI::IsMember({"qft", "iqft"}));
  fidelity->add_option("-n,--qubits", fargs.n_range, "qubit count k or inclusive range a..b")
      ->required();
  fidelity->add_option("-d,--delta", fargs.delta_range,
                       "perturbation strength x or sweep a:b:step")
      ->required();
  fidelity->add_option("--mode", fargs.mode, "static, noise or fixed:<matrix file>")
      ->capture_default_str();
  fidelity->add_option("--realizations", fargs.realizations, "independent perturbation draws")
      ->capture_default_str();
  fidelity
      ->add_option("--trace", fargs.trace,
                   "auto, exact or stochastic[:M] (auto switches to stochastic M=" +
                       std::to_string(kDefaultTraceStates) + " at n >= " +
                       std::to_string(kStochasticAutoQubits) + ")")
      ->capture_default_str();
  fidelity->add_flag("--normalize-v", fargs.normalize,
                     "rescale each sampled perturbation to tr(V^2)/N = 1");
  fidelity->add_flag("--force-exact", fargs.force_exact,
                     "allow exact trace beyond the n <= 9 cost guard");

  auto* fit = app.add_subcommand("fit", "polynomial scaling fit of a chi CSV");
  std::string fit_csv_path;
  std::string fit_basis = "3,2,1";
  fit->add_option("csv", fit_csv_path, "chi CSV produced by the chi command")->required();
  fit->add_option("--basis", fit_basis, "comma-separated monomial exponents")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*gates) return guarded([&] { return run_gates(gates_algo, gates_n); });
  if (*verify) return guarded([&] { return run_verify(verify_n_max, corrupt_r); });
  if (*correlator) return guarded([&] { return run_correlator(g, corr_algo, corr_n); });
  if (*chi) return guarded([&] { return run_chi(g, chi_algo, chi_range); });
  if (*fidelity) return guarded([&] { return run_fidelity(g, fargs); });
  if (*fit) return guarded([&] { return run_fit(g, fit_csv_path, fit_basis); });
  return kExitUsage;
}
