// Copyright 2026 The shapecode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// shapecode: construct, export, encode, decode, analyze, simulate, selftest.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "shapecode/codebook_json.hpp"
#include "shapecode/framing.hpp"
#include "shapecode/ga.hpp"
#include "shapecode/library.hpp"
#include "shapecode/mbdist.hpp"
#include "shapecode/montecarlo.hpp"
#include "shapecode/v2f.hpp"
#include "shapecode/v2v.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shapecode;

namespace {

json provenance(const std::string& command, json params, std::optional<std::uint64_t> seed = std::nullopt) {
  json p{{"tool", "shapecode"}, {"version", SHAPECODE_VERSION}, {"command", command}, {"params", std::move(params)}};
  if (seed) p["seed"] = *seed;
  return p;
}

std::vector<double> parse_targets(const std::string& text, double& step) {
  if (text.find(':') != std::string::npos) {
    const auto grid = RateGrid::parse(text);
    step = grid.step;
    return grid.targets;
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(RateGrid::parse(item).targets.front());
  step = 0.0;
  return out;
}

PrefixFreeCode load_shaping_code(const std::string& path, int m) {
  auto code = read_codebook(path);
  if (code.alphabet().size() != m) {
    throw std::invalid_argument("codebook " + path + " is over " + std::to_string(code.alphabet().size()) +
                                "-ASK but --m is " + std::to_string(m));
  }
  return code;
}

std::vector<std::uint8_t> read_all(const std::string& path) {
  std::vector<std::uint8_t> data;
  if (path == "-") {
    data.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return data;
}

void write_all(const std::string& path, const std::vector<std::uint8_t>& data) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void print_library_summary(const CodeLibrary& lib, const fs::path& dir) {
  std::size_t achieved = 0;
  std::set<double> rates;
  for (const auto& e : lib) {
    if (!e.code) continue;
    ++achieved;
    rates.insert(e.code->metrics.rate);
  }
  std::printf("wrote %zu targets (%zu achieved, %zu distinct realized rates) to %s\n", lib.size(), achieved,
              rates.size(), dir.string().c_str());
}

struct ConstructArgs {
  std::string kind;
  int m = 2;
  int v = 0, vmax = 0, u = 0, nmax = 16;
  std::string rates;
  double rate = 0.0, step = 0.005, delta = 0.0025, window = 0.0;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  json params{{"kind", a.kind}, {"m", a.m}};
  CodeLibrary lib;
  if (a.kind == "v2f") {
    if (a.rates.empty()) throw std::invalid_argument("v2f needs --rates");
    if ((a.v > 0) == (a.vmax > 0)) throw std::invalid_argument("v2f needs exactly one of --v or --vmax");
    const auto grid = RateGrid::parse(a.rates);
    params["rates"] = a.rates;
    if (a.v > 0) {
      params["v"] = a.v;
      for (double t : grid.targets) lib.push_back({t, build_v2f(a.m, a.v, t)});
    } else {
      params["vmax"] = a.vmax;
      params["window"] = a.window;
      lib = sweep_v2f(a.m, a.vmax, grid, a.window);
    }
  } else if (a.kind == "f2v") {
    if (a.u < 1) throw std::invalid_argument("f2v needs --u");
    params["u"] = a.u;
    std::vector<double> targets;
    if (!a.rates.empty()) {
      targets = RateGrid::parse(a.rates).targets;
      params["rates"] = a.rates;
    } else if (a.rate > 0.0) {
      targets = {a.rate};
      params["rate"] = a.rate;
    } else {
      throw std::invalid_argument("f2v needs --rate or --rates");
    }
    for (double t : targets) lib.push_back({t, build_f2v(a.m, a.u, t)});
  } else if (a.kind == "v2v") {
    params["nmax"] = a.nmax;
    params["step"] = a.step;
    params["delta"] = a.delta;
    auto built = build_v2v({a.m, a.nmax, a.step, a.delta});
    params["solver"] = {{"solves", built.stats.solves},
                        {"within_ten_iterations", built.stats.within_ten},
                        {"nonmonotone", built.stats.nonmonotone},
                        {"max_iterations", built.stats.max_iterations}};
    lib = std::move(built.library);
  } else {
    throw std::invalid_argument("unknown kind '" + a.kind + "' (v2f, f2v, v2v)");
  }
  write_library(a.out, lib, provenance("construct", params));
  print_library_summary(lib, a.out);
  return 0;
}

int run_export(const std::vector<std::string>& libs, const std::string& targets_text, double window,
               const std::string& out) {
  double step = 0.0;
  const auto targets = parse_targets(targets_text, step);
  if (window <= 0.0) window = step > 0.0 ? step / 2 : 0.02;
  std::vector<LibraryRows> rows;
  for (const auto& dir : libs) rows.push_back({dir, read_library_index(dir)});
  const auto curated = select_curated(rows, targets, window);

  fs::create_directories(fs::path(out) / "codes");
  std::ofstream csv(fs::path(out) / "curated.csv");
  if (!csv) throw std::runtime_error("cannot write curated.csv");
  csv << "# " << provenance("export", {{"libraries", libs}, {"targets", targets_text}, {"window", window}}).dump()
      << '\n';
  csv << "target,achieved,realized_rate,gap_db,kind,m,cardinality,file\n";
  std::printf("%8s %10s %9s %5s %3s %6s\n", "target", "rate", "gap_dB", "kind", "M", "|C|");
  double worst = 0.0;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < curated.size(); ++i) {
    const auto& row = curated[i];
    if (!row.best) {
      ++missing;
      csv << row.target << ",0,,,,,,\n";
      std::printf("%8.4f %10s\n", row.target, "unachieved");
      continue;
    }
    const auto& b = *row.best;
    char name[64];
    std::snprintf(name, sizeof(name), "codes/%03zu_%s_m%d.json", i, b.kind.c_str(), b.m);
    fs::copy_file(row.library / b.file, fs::path(out) / name, fs::copy_options::overwrite_existing);
    csv << row.target << ",1," << b.realized_rate << ',' << b.gap_db << ',' << b.kind << ',' << b.m << ','
        << b.cardinality << ',' << name << '\n';
    std::printf("%8.4f %10.6f %9.4f %5s %3d %6zu\n", row.target, b.realized_rate, b.gap_db, b.kind.c_str(), b.m,
                b.cardinality);
    worst = std::max(worst, b.gap_db);
  }
  std::printf("max gap %.4f dB over %zu achieved targets, %zu unachieved\n", worst, curated.size() - missing, missing);
  return 0;
}

struct FrameArgs {
  std::string codebook;
  int m = 2, k = 0, n = 0;
};

int run_encode(const FrameArgs& a, bool pad_zeros, const std::string& in, const std::string& out) {
  const FrameConfig cfg(load_shaping_code(a.codebook, a.m), a.k, a.n);
  auto bits = unpack_bits(read_all(in));
  if (bits.size() % static_cast<std::size_t>(a.k) != 0) {
    if (!pad_zeros) {
      throw std::invalid_argument(std::to_string(bits.size()) + " input bits are not a multiple of k = " +
                                  std::to_string(a.k) + " (use --pad-zeros)");
    }
    bits.resize((bits.size() / a.k + 1) * a.k, 0);
  }
  std::vector<std::uint8_t> symbols;
  for (std::size_t off = 0; off < bits.size(); off += static_cast<std::size_t>(a.k)) {
    const auto frame = encode_frame(cfg, std::span<const Bit>(bits).subspan(off, static_cast<std::size_t>(a.k)));
    symbols.insert(symbols.end(), frame.begin(), frame.end());
  }
  write_all(out, symbols);
  return 0;
}

int run_decode(const FrameArgs& a, const std::string& in, const std::string& out) {
  const FrameConfig cfg(load_shaping_code(a.codebook, a.m), a.k, a.n);
  const auto symbols = read_all(in);
  if (symbols.size() % static_cast<std::size_t>(a.n) != 0) {
    throw std::invalid_argument(std::to_string(symbols.size()) + " symbols are not a multiple of n = " +
                                std::to_string(a.n));
  }
  std::vector<Bit> bits;
  for (std::size_t off = 0; off < symbols.size(); off += static_cast<std::size_t>(a.n)) {
    const auto frame = decode_frame(cfg, std::span<const Amplitude>(symbols).subspan(off, static_cast<std::size_t>(a.n)));
    bits.insert(bits.end(), frame.begin(), frame.end());
  }
  write_all(out, pack_bits(bits));
  return 0;
}

int run_analyze(const FrameArgs& a, const std::string& out) {
  const auto code = load_shaping_code(a.codebook, a.m);
  const auto ga = ga_analyze(code, a.k, a.n);
  const auto model = symbol_rate_model(code);
  if (!out.empty()) {
    std::ofstream csv(out);
    if (!csv) throw std::runtime_error("cannot write " + out);
    csv.precision(17);
    csv << "# " << provenance("analyze", {{"codebook", a.codebook}, {"m", a.m}, {"k", a.k}, {"n", a.n}}).dump() << '\n';
    csv << "t,xi,mu,sigma2,phi_swi,phi_end,Phi_swi,Phi_end\n";
    for (const auto& p : ga.trace) {
      csv << p.t << ',' << p.xi << ',' << p.mu << ',' << p.variance << ',' << p.phi_switch << ',' << p.phi_end << ','
          << p.cum_switch << ',' << p.cum_end << '\n';
    }
  }
  const json summary{{"k", a.k},
                     {"n", a.n},
                     {"R_frame", static_cast<double>(a.k) / a.n},
                     {"R_C1", model.mean},
                     {"S2", model.variance},
                     {"E_C1", ga.shaping_energy},
                     {"E_C2", ga.uniform_energy},
                     {"E_frame", ga.frame_energy},
                     {"gap_db", ga.gap_db}};
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_simulate(const FrameArgs& a, std::uint64_t frames, std::uint64_t seed, const std::string& out, bool with_ga) {
  const FrameConfig cfg(load_shaping_code(a.codebook, a.m), a.k, a.n);
  const auto mc = mc_energy(cfg, frames, seed);
  json summary{{"provenance", provenance("simulate",
                                         {{"codebook", a.codebook}, {"m", a.m}, {"k", a.k}, {"n", a.n},
                                          {"frames", frames}, {"rng", SplitMix64::kAlgorithm}},
                                         seed)},
               {"frames", mc.frames},
               {"total_symbols", mc.total_symbols},
               {"total_energy", mc.total_energy},
               {"mean_energy", mc.mean_energy},
               {"gap_db", mc.gap_db},
               {"switched_frames", mc.switched_frames}};
  if (with_ga) {
    const auto ga = ga_analyze(cfg.shaping(), a.k, a.n);
    summary["ga"] = {{"E_frame", ga.frame_energy}, {"gap_db", ga.gap_db}, {"delta_db", ga.gap_db - mc.gap_db}};
  }
  if (!out.empty()) {
    std::ofstream(out + ".json") << summary.dump(2) << '\n';
    std::ofstream hist(out + "_hist.csv");
    hist << "# " << summary["provenance"].dump() << '\n';
    hist << "symbol,switch_count,end_count\n";
    for (std::size_t t = 0; t < mc.switch_histogram.size(); ++t) {
      if (mc.switch_histogram[t] || mc.end_histogram[t]) {
        hist << t << ',' << mc.switch_histogram[t] << ',' << mc.end_histogram[t] << '\n';
      }
    }
  }
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int run_selftest() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };
  const auto table = canonical_table1c();
  const auto m = code_metrics(table);
  check(std::abs(m.rate - 142.0 / 393.0) < 1e-12, "example V2V code rate 142/393");
  const auto model = symbol_rate_model(table);
  check(std::abs(model.variance - 0.195) < 1e-3, "example V2V code rate variance 0.195");

  std::set<double> rates;
  for (double t : RateGrid::range(0.001, 0.001, 1.0).targets) {
    if (auto b = build_v2f(2, 3, t)) rates.insert(b->metrics.rate);
  }
  check(rates.size() == 5, "2-ASK V2F with v = 3 has 5 distinct rates");

  std::vector<RoundtripCell> cells{{table, 9, 24, "example k=9 n=24"}, {table, 360, 1000, "example k=360 n=1000"}};
  const auto report = roundtrip_matrix(cells, 50, 7);
  check(report.ok(), "framing round trip (" + std::to_string(report.frames_checked) + " frames)");

  const auto f2v = build_f2v(2, 2, 0.9);
  check(f2v.sum_depth == 9, "F2V u = 2 at rate 0.9 picks sum depth 9");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prefix-free code distribution matching for probabilistic amplitude shaping"};
  app.set_version_flag("--version", SHAPECODE_VERSION);
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a code library (v2f, f2v or v2v)");
  construct->add_option("kind", ca.kind, "v2f, f2v or v2v")->required();
  construct->add_option("--m", ca.m, "ASK alphabet size")->required();
  construct->add_option("--v", ca.v, "V2F codeword length (one code per target)");
  construct->add_option("--vmax", ca.vmax, "V2F sweep over lengths 1..vmax");
  construct->add_option("--u", ca.u, "F2V information word length");
  construct->add_option("--rate", ca.rate, "single target rate (F2V)");
  construct->add_option("--rates", ca.rates, "target rates, 'first:step:last' or a single value");
  construct->add_option("--nmax", ca.nmax, "V2V maximum codebook size")->capture_default_str();
  construct->add_option("--step", ca.step, "V2V rate grid step")->capture_default_str();
  construct->add_option("--delta", ca.delta, "V2V rate tolerance")->capture_default_str();
  construct->add_option("--window", ca.window, "V2F sweep acceptance window above each target");
  construct->add_option("--out", ca.out, "library directory")->required();

  std::vector<std::string> export_libs;
  std::string export_targets, export_out;
  double export_window = 0.0;
  auto* exp = app.add_subcommand("export", "Select the best code per target across libraries");
  exp->add_option("--lib", export_libs, "library directory (repeatable)")->required();
  exp->add_option("--targets", export_targets, "'first:step:last' or comma list")->required();
  exp->add_option("--window", export_window, "max |realized - target| (default: half the step, or 0.02)");
  exp->add_option("--out", export_out, "curated library directory")->required();

  FrameArgs fa;
  auto add_frame_options = [&](CLI::App* sub) {
    sub->add_option("--codebook", fa.codebook, "shaping code JSON")->required();
    sub->add_option("--m", fa.m, "ASK alphabet size")->required();
    sub->add_option("--k", fa.k, "information bits per frame")->required();
    sub->add_option("--n", fa.n, "symbols per frame")->required();
  };

  bool pad_zeros = false;
  std::string in_path = "-", out_path = "-";
  auto* enc = app.add_subcommand("encode", "Frame packed bits (MSB first) into one byte per symbol");
  add_frame_options(enc);
  enc->add_flag("--pad-zeros", pad_zeros, "zero-pad the input to a multiple of k bits");
  enc->add_option("--in", in_path, "input file, '-' for stdin")->capture_default_str();
  enc->add_option("--out", out_path, "output file, '-' for stdout")->capture_default_str();

  auto* dec = app.add_subcommand("decode", "Recover packed bits from frames of one byte per symbol");
  add_frame_options(dec);
  dec->add_option("--in", in_path, "input file, '-' for stdin")->capture_default_str();
  dec->add_option("--out", out_path, "output file, '-' for stdout")->capture_default_str();

  std::string trace_out;
  auto* ana = app.add_subcommand("analyze", "Gaussian approximation of framing");
  add_frame_options(ana);
  ana->add_option("--out", trace_out, "per-symbol trace CSV");

  std::uint64_t frames = 10000, seed = 1;
  std::string sim_out;
  bool with_ga = false;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo energy of framed encoding");
  add_frame_options(sim);
  sim->add_option("--frames", frames, "number of frames")->capture_default_str();
  sim->add_option("--seed", seed, "base seed; frame i uses seed + i")->capture_default_str();
  sim->add_option("--out", sim_out, "output prefix for <prefix>.json and <prefix>_hist.csv");
  sim->add_flag("--ga", with_ga, "also report the Gaussian approximation");

  auto* self = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*construct) return run_construct(ca);
    if (*exp) return run_export(export_libs, export_targets, export_window, export_out);
    if (*enc) return run_encode(fa, pad_zeros, in_path, out_path);
    if (*dec) return run_decode(fa, in_path, out_path);
    if (*ana) return run_analyze(fa, trace_out);
    if (*sim) return run_simulate(fa, frames, seed, sim_out, with_ga);
    if (*self) return run_selftest();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "shapecode: %s\n", e.what());
    return 1;
  }
  return 0;
}
