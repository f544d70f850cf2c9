// qsturm: command-line front end. Every subcommand reads a model spec file,
// runs one pipeline stage and writes CSV or JSON to --out or stdout.

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qsturm/decompose.hpp"
#include "qsturm/error.hpp"
#include "qsturm/parallel.hpp"
#include "qsturm/serialize.hpp"
#include "qsturm/spectrum.hpp"
#include "qsturm/tracemap.hpp"
#include "qsturm/transfer.hpp"
#include "qsturm/words.hpp"

using namespace qsturm;

namespace {

struct Common {
  std::string spec_path;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 0;
};

// Collects one run's output: parameters for the header, then tables.
class Report {
 public:
  Report(std::string command, const Common& common) : command_(std::move(command)), common_(common) {}

  void param(const std::string& key, const std::string& value) { params_.emplace_back(key, value); }
  void param(const std::string& key, double value) { param(key, format_double(value)); }
  void param(const std::string& key, long long value) { param(key, std::to_string(value)); }
  void result(const std::string& key, const std::string& value) {
    results_.emplace_back(key, value);
    json_["result"][key] = value;
  }
  void result(const std::string& key, double value) {
    results_.emplace_back(key, format_double(value));
    json_["result"][key] = value;
  }

  void table(const std::string& name, std::vector<std::string> columns) {
    tables_.push_back({name, std::move(columns), {}});
  }
  // Cells are preformatted text; json mirrors them as numbers where they parse.
  void row(std::vector<std::string> cells) { tables_.back().rows.push_back(std::move(cells)); }

  void set_fingerprint(std::string fp) { fingerprint_ = std::move(fp); }
  json& extra() { return json_; }

  std::string render() const {
    if (common_.format == "json") return render_json();
    std::ostringstream os;
    os << "# qsturm " << command_ << "\n";
    os << "# fingerprint: " << fingerprint_ << "\n";
    for (const auto& [k, v] : params_) os << "# param " << k << "=" << v << "\n";
    for (const auto& [k, v] : results_) os << "# result " << k << "=" << v << "\n";
    for (const auto& t : tables_) {
      if (tables_.size() > 1) os << "# table " << t.name << "\n";
      os << join(t.columns) << "\n";
      for (const auto& r : t.rows) os << join(r) << "\n";
    }
    return os.str();
  }

 private:
  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
  };

  static std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    return s;
  }

  std::string render_json() const {
    json j = json_;
    j["command"] = command_;
    j["fingerprint"] = fingerprint_;
    j["parameters"] = json::object();
    for (const auto& [k, v] : params_) j["parameters"][k] = v;
    for (const auto& t : tables_) {
      json rows = json::array();
      for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < r.size(); ++i) obj[t.columns[i]] = cell_json(r[i]);
        rows.push_back(std::move(obj));
      }
      j["tables"][t.name] = std::move(rows);
    }
    return j.dump(2) + "\n";
  }

  static json cell_json(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
    return s;
  }

  std::string command_;
  const Common& common_;
  std::string fingerprint_;
  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::pair<std::string, std::string>> results_;
  std::vector<Table> tables_;
  json json_ = json::object();
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

void emit(const Report& report, const Common& common) {
  const std::string text = report.render();
  if (common.out_path.empty() || common.out_path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(common.out_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + common.out_path + "'");
  out << text;
}

unsigned effective_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("QSTURM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return resolve_threads(0);
}

Report start(const std::string& command, const Common& common, const ModelSpec& spec) {
  Report r(command, common);
  r.set_fingerprint(fingerprint(spec));
  r.param("spec", common.spec_path);
  return r;
}

// The energy window of a sweep: [min f - 2.5, max f + 2.5] unless given.
EnergyGrid sweep_grid(const ModelSpec& spec, std::size_t cells, double lo, double hi) {
  EnergyGrid g = default_grid(spec, cells);
  if (lo < hi) {
    g.lo = lo;
    g.hi = hi;
  }
  return g;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "range '" + text + "' is not of the form lo:hi");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Sturmian potentials: words, trace maps and spectra"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool spec_required = true) {
    auto* opt = sub->add_option("--spec", common.spec_path, "Model spec JSON file");
    if (spec_required) opt->required();
    sub->add_option("--out", common.out_path, "Output file (default stdout)");
    sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", common.threads, "Worker cap (falls back to QSTURM_THREADS)");
  };

  // generate
  std::size_t gen_length = 100, gen_shift = 0;
  int gen_levels = -1;
  auto* generate = app.add_subcommand("generate", "Prefix of the sequence, or its level words");
  add_common(generate);
  generate->add_option("--length", gen_length, "Number of symbols");
  generate->add_option("--shift", gen_shift, "Symbols to skip");
  generate->add_option("--levels", gen_levels, "Emit level words s_n, s'_n for n = -1..levels instead");

  // complexity
  std::size_t cx_length = 100000, cx_nmax = 200;
  auto* complexity_cmd = app.add_subcommand("complexity", "Factor complexity and classification");
  add_common(complexity_cmd);
  complexity_cmd->add_option("--length", cx_length, "Prefix length analyzed");
  complexity_cmd->add_option("--nmax", cx_nmax, "Largest factor length");

  // decompose
  std::size_t dec_length = 100000, dec_refine = 0, dec_shift = 0;
  std::string dec_word_file;
  auto* decompose_cmd = app.add_subcommand("decompose", "Prefix, substitution and Sturmian base of a word");
  add_common(decompose_cmd, false);
  decompose_cmd->add_option("--length", dec_length, "Prefix length analyzed");
  decompose_cmd->add_option("--shift", dec_shift, "Symbols to skip");
  decompose_cmd->add_option("--refine", dec_refine, "Continued-fraction terms for the rotation number (0: raw frequency)");
  decompose_cmd->add_option("--word-file", dec_word_file, "Analyze the text of this file instead of a spec");

  // tracemap
  double tm_energy = 0.0;
  int tm_levels = kDefaultLevels;
  auto* tracemap_cmd = app.add_subcommand("tracemap", "Trace-map orbit and its classification");
  add_common(tracemap_cmd);
  tracemap_cmd->add_option("--energy", tm_energy, "Energy")->required();
  tracemap_cmd->add_option("--levels", tm_levels, "Number of levels");

  // bands
  int bands_level = 1;
  double bands_tol = 1e-10;
  auto* bands_cmd = app.add_subcommand("bands", "Bands of a periodic approximant");
  add_common(bands_cmd);
  bands_cmd->add_option("--level", bands_level, "Approximant level n")->required();
  bands_cmd->add_option("--tol", bands_tol, "Band-edge tolerance");

  // spectrum
  std::size_t sp_grid = kDefaultGridCells;
  int sp_levels = kDefaultLevels;
  std::string sp_nrange = "3:10";
  double sp_lo = 0.0, sp_hi = 0.0, sp_tol = 1e-10;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Stable set sweep and band-measure report");
  add_common(spectrum_cmd);
  spectrum_cmd->add_option("--grid", sp_grid, "Energy cells");
  spectrum_cmd->add_option("--levels", sp_levels, "Trace-map levels per energy");
  spectrum_cmd->add_option("--nrange", sp_nrange, "Approximant levels lo:hi for the measure report");
  spectrum_cmd->add_option("--emin", sp_lo, "Window start (default min f - 2.5)");
  spectrum_cmd->add_option("--emax", sp_hi, "Window end (default max f + 2.5)");
  spectrum_cmd->add_option("--tol", sp_tol, "Band-edge tolerance");

  // lyapunov
  std::size_t ly_grid = 400, ly_length = 100000, ly_shift = 0;
  double ly_lo = 0.0, ly_hi = 0.0;
  auto* lyapunov_cmd = app.add_subcommand("lyapunov", "Lyapunov exponent over an energy grid");
  add_common(lyapunov_cmd);
  lyapunov_cmd->add_option("--grid", ly_grid, "Energy cells (exponent evaluated at cell centers)");
  lyapunov_cmd->add_option("--length", ly_length, "Number of sites L");
  lyapunov_cmd->add_option("--shift", ly_shift, "Symbols to skip");
  lyapunov_cmd->add_option("--emin", ly_lo, "Window start (default min f - 2.5)");
  lyapunov_cmd->add_option("--emax", ly_hi, "Window end (default max f + 2.5)");

  // gordon
  double go_energy = 0.0;
  int go_nmax = 8, go_nmin = 2;
  std::size_t go_shift = 0;
  auto* gordon_cmd = app.add_subcommand("gordon", "Squares at a common site and their block traces");
  add_common(gordon_cmd);
  gordon_cmd->add_option("--energy", go_energy, "Energy")->required();
  gordon_cmd->add_option("--nmax", go_nmax, "Highest level");
  gordon_cmd->add_option("--nmin", go_nmin, "Lowest level");
  gordon_cmd->add_option("--shift", go_shift, "Symbols to skip");

  // alpha
  double al_energy = 0.0;
  std::size_t al_lmax = 1 << 16, al_shift = 0;
  auto* alpha_cmd = app.add_subcommand("alpha", "Solution growth exponents and alpha");
  add_common(alpha_cmd);
  alpha_cmd->add_option("--energy", al_energy, "Energy")->required();
  alpha_cmd->add_option("--lmax", al_lmax, "Largest L");
  alpha_cmd->add_option("--shift", al_shift, "Symbols to skip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "error: InvalidArgument: " << msg << "\n";
    return 1;
  }

  try {
    const unsigned threads = effective_threads(common.threads);

    if (decompose_cmd->parsed() && !dec_word_file.empty()) {
      std::ifstream in(dec_word_file);
      if (!in) throw Error(ErrorKind::ParseError, "cannot open word file '" + dec_word_file + "'");
      std::string text;
      for (std::string line; std::getline(in, line);) {
        for (char c : line) {
          if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
        }
      }
      const Alphabet alphabet = Alphabet::of_text(text);
      const Word w = alphabet.parse(text);
      const Decomposition d = cassaigne_decompose(w);
      Report r("decompose", common);
      r.set_fingerprint("raw");
      r.param("word_file", dec_word_file);
      r.param("length", static_cast<long long>(w.size()));
      r.param("refine", static_cast<long long>(dec_refine));
      r.result("rotation_number", rotation_number(d, dec_refine));
      r.extra()["decomposition"] = to_json(d, alphabet, json::object());
      r.table("decomposition", {"key", "value"});
      r.row({"prefix", alphabet.render(d.prefix_w)});
      r.row({"image_a", alphabet.render(d.subst.image_a)});
      r.row({"image_b", alphabet.render(d.subst.image_b)});
      r.row({"bispecial_length", fmt(d.bispecial_length)});
      r.row({"analyzed_length", fmt(d.analyzed_length)});
      r.row({"theta_estimate", fmt(d.theta_estimate)});
      emit(r, common);
      return 0;
    }
    if (common.spec_path.empty()) throw Error(ErrorKind::InvalidArgument, "--spec is required");
    const ModelSpec spec = load_spec(common.spec_path);

    if (generate->parsed()) {
      Report r = start("generate", common, spec);
      if (gen_levels >= 1) {
        r.param("levels", static_cast<long long>(gen_levels));
        const LevelWords base = sturmian_levels(spec.cf, gen_levels);
        const LevelWords primed = level_words_prime(spec, gen_levels);
        r.table("levels", {"level", "length", "word", "word_prime"});
        for (int n = -1; n <= gen_levels; ++n) {
          r.row({fmt(n), fmt(primed.at(n).size()), Alphabet::binary().render(base.at(n)),
                 spec.alphabet.render(primed.at(n))});
        }
      } else {
        r.param("length", static_cast<long long>(gen_length));
        r.param("shift", static_cast<long long>(gen_shift));
        r.table("prefix", {"shift", "length", "word"});
        r.row({fmt(gen_shift), fmt(gen_length), spec.alphabet.render(qs_prefix(spec, gen_length, gen_shift))});
      }
      emit(r, common);
    } else if (complexity_cmd->parsed()) {
      Report r = start("complexity", common, spec);
      r.param("length", static_cast<long long>(cx_length));
      r.param("nmax", static_cast<long long>(cx_nmax));
      const Word u = qs_prefix(spec, cx_length);
      const auto p = complexity(u, cx_nmax);
      const QsClassification cls = detect_qs(u);
      r.result("kind", to_string(cls.kind));
      r.result("k", std::to_string(cls.k));
      r.result("n0", std::to_string(cls.n0));
      r.result("safe_window", std::to_string(complexity_safe_window(u.size())));
      r.table("complexity", {"n", "p", "p_minus_n"});
      for (std::size_t n = 1; n <= cx_nmax; ++n) {
        r.row({fmt(n), fmt(p[n]), std::to_string(static_cast<long long>(p[n]) - static_cast<long long>(n))});
      }
      emit(r, common);
    } else if (decompose_cmd->parsed()) {
      Report r = start("decompose", common, spec);
      r.param("length", static_cast<long long>(dec_length));
      r.param("shift", static_cast<long long>(dec_shift));
      r.param("refine", static_cast<long long>(dec_refine));
      const Word u = qs_prefix(spec, dec_length, dec_shift);
      const Decomposition d = cassaigne_decompose(u);
      r.result("rotation_number", rotation_number(d, dec_refine));
      r.extra()["decomposition"] =
          to_json(d, spec.alphabet, to_json(spec)["potential"]);
      r.table("decomposition", {"key", "value"});
      r.row({"prefix", spec.alphabet.render(d.prefix_w)});
      r.row({"image_a", spec.alphabet.render(d.subst.image_a)});
      r.row({"image_b", spec.alphabet.render(d.subst.image_b)});
      r.row({"bispecial_length", fmt(d.bispecial_length)});
      r.row({"analyzed_length", fmt(d.analyzed_length)});
      r.row({"theta_estimate", fmt(d.theta_estimate)});
      emit(r, common);
    } else if (tracemap_cmd->parsed()) {
      Report r = start("tracemap", common, spec);
      r.param("energy", tm_energy);
      r.param("levels", static_cast<long long>(tm_levels));
      const OrbitVerdict v = classify_orbit(spec, tm_energy, tm_levels);
      r.result("verdict", v.kind == OrbitKind::Bounded ? "bounded" : "escaped");
      r.result("escape_step", v.escape_step ? std::to_string(*v.escape_step) : "none");
      r.result("steps_checked", std::to_string(v.steps_checked));
      r.result("sup_norm", v.sup_norm);
      r.result("overflow", v.overflow ? "true" : "false");
      r.table("orbit", {"level", "x", "y", "z", "I", "in_escape"});
      const auto orbit = orbit_trace(spec, tm_energy, tm_levels);
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        const TraceTriple& t = orbit[i];
        r.row({fmt(i + 1), fmt(t.x), fmt(t.y), fmt(t.z), fmt(invariant(t)), fmt(in_escape(t))});
      }
      emit(r, common);
    } else if (bands_cmd->parsed()) {
      Report r = start("bands", common, spec);
      r.param("level", static_cast<long long>(bands_level));
      r.param("tol", bands_tol);
      const BandList b = periodic_bands(spec, bands_level, bands_tol);
      r.result("band_count", std::to_string(b.bands.size()));
      r.result("total_measure", b.total_measure());
      r.result("merged", b.merged ? "true" : "false");
      r.table("bands", {"E_lo", "E_hi"});
      for (const Band& band : b.bands) r.row({fmt(band.lo), fmt(band.hi)});
      emit(r, common);
    } else if (spectrum_cmd->parsed()) {
      Report r = start("spectrum", common, spec);
      const EnergyGrid grid = sweep_grid(spec, sp_grid, sp_lo, sp_hi);
      const auto [n_lo, n_hi] = parse_range(sp_nrange);
      r.param("grid", static_cast<long long>(grid.cells));
      r.param("emin", grid.lo);
      r.param("emax", grid.hi);
      r.param("levels", static_cast<long long>(sp_levels));
      r.param("nrange", std::to_string(n_lo) + ":" + std::to_string(n_hi));
      r.param("tol", sp_tol);
      const StableSet s = stable_set(spec, grid, sp_levels, threads);
      const auto rows = measure_report(spec, n_lo, n_hi, sp_tol, threads);
      r.result("stable_measure", s.bands.total_measure());
      r.result("empirical_orbit_bound", s.max_bounded_sup_norm());
      r.table("stable_bands", {"E_lo", "E_hi"});
      for (const Band& band : s.bands.bands) r.row({fmt(band.lo), fmt(band.hi)});
      r.table("measure", {"n", "band_count", "total_measure", "merged"});
      for (const MeasureRow& m : rows) r.row({fmt(m.level), fmt(m.band_count), fmt(m.total_measure), fmt(m.merged)});
      emit(r, common);
    } else if (lyapunov_cmd->parsed()) {
      Report r = start("lyapunov", common, spec);
      const EnergyGrid grid = sweep_grid(spec, ly_grid, ly_lo, ly_hi);
      r.param("grid", static_cast<long long>(grid.cells));
      r.param("emin", grid.lo);
      r.param("emax", grid.hi);
      r.param("length", static_cast<long long>(ly_length));
      r.param("shift", static_cast<long long>(ly_shift));
      const auto V = potential_values(spec, ly_length, ly_shift);
      std::vector<double> gamma(grid.cells);
      parallel_for(grid.cells, threads, [&](std::size_t i) { gamma[i] = lyapunov_along(V, grid.center(i)); });
      r.table("lyapunov", {"E", "gamma"});
      for (std::size_t i = 0; i < grid.cells; ++i) r.row({fmt(grid.center(i)), fmt(gamma[i])});
      emit(r, common);
    } else if (gordon_cmd->parsed()) {
      Report r = start("gordon", common, spec);
      r.param("energy", go_energy);
      r.param("nmin", static_cast<long long>(go_nmin));
      r.param("nmax", static_cast<long long>(go_nmax));
      r.param("shift", static_cast<long long>(go_shift));
      const SquareReport sq = find_squares(spec, go_shift, go_nmax, go_nmin);
      r.result("site", std::to_string(sq.site));
      r.table("squares", {"level", "site", "kind", "block_length", "trace", "residual", "norm_sq"});
      for (const Square& s : sq.squares) {
        const GordonReport g = gordon_residual(spec, go_energy, s, go_shift);
        r.row({fmt(s.level), fmt(s.site), s.kind == SquareKind::Single ? "single" : "composite",
               fmt(s.block_length), fmt(g.trace), fmt(g.residual), fmt(g.norm_sq)});
      }
      emit(r, common);
    } else if (alpha_cmd->parsed()) {
      Report r = start("alpha", common, spec);
      r.param("energy", al_energy);
      r.param("lmax", static_cast<long long>(al_lmax));
      r.param("shift", static_cast<long long>(al_shift));
      const GrowthExponents g = growth_exponents(spec, al_energy, al_shift, al_lmax);
      r.result("gamma1", g.gamma1);
      r.result("gamma2", g.gamma2);
      r.result("alpha", g.alpha);
      r.result("exponential", g.exponential ? "true" : "false");
      r.table("slopes", {"angle_index", "slope"});
      for (std::size_t j = 0; j < g.slopes.size(); ++j) r.row({fmt(j), fmt(g.slopes[j])});
      emit(r, common);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
