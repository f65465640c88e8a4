// Command-line front end for the zzsim library.

#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "zzsim/anchors.hpp"
#include "zzsim/csv.hpp"
#include "zzsim/device_io.hpp"
#include "zzsim/experiments.hpp"
#include "zzsim/perturbation.hpp"
#include "zzsim/recipes.hpp"
#include "zzsim/spectrum.hpp"

namespace {

using namespace zzsim;
using units::from_ghz;
using units::to_ghz;
using units::to_mhz;

struct Global {
  std::string device = "device_a";
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;
  std::string command_line;
};

// Writes to --csv, else to <out>/<default_name> when --out is set, else stdout.
void emit(const CsvWriter& w, const std::string& csv, const Global& g,
          const std::string& default_name) {
  if (!csv.empty()) {
    w.save(csv);
  } else if (!g.out.empty()) {
    w.save(std::filesystem::path(g.out) / default_name);
  } else {
    std::cout << w.str();
  }
}

CsvMetadata meta(const Global& g, const std::string& hash) {
  CsvMetadata m;
  m.command_line = g.command_line;
  m.device_hash = hash;
  m.seed = g.seed;
  return m;
}

ZetaMethod parse_method(const std::string& s) {
  if (s == "exact") return ZetaMethod::Exact;
  if (s == "pert" || s == "perturbative") return ZetaMethod::Perturbative;
  throw DomainError("method must be exact or pert");
}

std::array<int, 4> parse_dims(const std::string& s) {
  std::array<int, 4> d{};
  std::istringstream in(s);
  std::string tok;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!std::getline(in, tok, ',')) throw DomainError("dims need four comma-separated integers");
    d[k] = std::stoi(tok);
  }
  return d;
}

std::string dims_label(const std::array<int, 4>& d) {
  return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]) + "x" +
         std::to_string(d[3]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zzsim: ZZ crosstalk, zero-ZZ bias search, benchmarking and gate-fidelity simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  app.add_option("--device", g.device, "Device file or bundled name (device_a, device_b)");
  app.add_option("--seed", g.seed, "Random seed for stochastic commands");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  // zeta-sweep
  auto* sweep = app.add_subcommand("zeta-sweep", "ZZ rate across coupler frequency or flux");
  std::string sweep_method = "exact", sweep_csv;
  std::optional<double> from_ghz_opt, to_ghz_opt, flux_from, flux_to;
  int sweep_points = 200;
  sweep->add_option("--method", sweep_method, "exact | pert");
  sweep->add_option("--from-ghz", from_ghz_opt, "Lowest coupler frequency omega_minus/2pi");
  sweep->add_option("--to-ghz", to_ghz_opt, "Highest coupler frequency omega_minus/2pi");
  sweep->add_option("--flux-from", flux_from, "Sweep flux instead (flux quanta)");
  sweep->add_option("--flux-to", flux_to, "End of the flux sweep (flux quanta)");
  sweep->add_option("--points", sweep_points)->check(CLI::Range(2, 100000));
  sweep->add_option("--csv", sweep_csv);

  // find-zero-zeta
  auto* zeros = app.add_subcommand("find-zero-zeta", "Locate zero-ZZ coupler bias points");
  std::string zeros_method = "exact", zeros_csv;
  std::optional<double> zeros_from, zeros_to;
  int zeros_points = 200;
  zeros->add_option("--method", zeros_method, "exact | pert");
  zeros->add_option("--from-ghz", zeros_from, "Lowest omega_minus/2pi (default omega_1 - 2.5 GHz)");
  zeros->add_option("--to-ghz", zeros_to, "Highest omega_minus/2pi (default omega_1 - 0.3 GHz)");
  zeros->add_option("--points", zeros_points)->check(CLI::Range(2, 100000));
  zeros->add_option("--csv", zeros_csv);

  // rb
  auto* rb = app.add_subcommand("rb", "Simulated randomized benchmarking");
  double rb_zeta_mhz = 0.0, rb_gate_ns = 22.0;
  std::string rb_mode = "simultaneous", rb_protocol = "clifford", rb_csv;
  int rb_trials = 100;
  std::vector<int> rb_lengths = {2, 4, 8, 16, 32, 64, 128, 256, 512};
  rb->add_option("--zeta-mhz", rb_zeta_mhz, "Static ZZ rate zeta/2pi");
  rb->add_option("--mode", rb_mode, "simultaneous | individual_q1 | individual_q2");
  rb->add_option("--protocol", rb_protocol, "clifford | primary");
  rb->add_option("--trials", rb_trials)->check(CLI::PositiveNumber);
  rb->add_option("--lengths", rb_lengths)->delimiter(',');
  rb->add_option("--gate-ns", rb_gate_ns);
  rb->add_option("--csv", rb_csv);

  // iswap-fidelity
  auto* iswap = app.add_subcommand("iswap-fidelity", "sqrt(iSWAP) fidelity versus coupler temperature");
  double t_from = 0.0, t_to = 200.0, iswap_gate_ns = 95.0;
  int t_points = 41;
  std::optional<double> alpha_override, omega_override;
  std::string iswap_csv;
  iswap->add_option("--temp-mk-from", t_from);
  iswap->add_option("--temp-mk-to", t_to);
  iswap->add_option("--points", t_points)->check(CLI::Range(2, 100000));
  iswap->add_option("--gate-ns", iswap_gate_ns);
  iswap->add_option("--alpha", alpha_override, "Override the derivative-ratio exponent");
  iswap->add_option("--omega-minus-ghz", omega_override, "Override the coupler operating point");
  iswap->add_option("--csv", iswap_csv);

  // ptm
  auto* ptm = app.add_subcommand("ptm", "Pauli transfer matrix of the sqrt(iSWAP) channel");
  std::string ptm_channel = "ideal", ptm_csv;
  double ptm_gate_ns = 95.0;
  bool ptm_z = false;
  ptm->add_option("--channel", ptm_channel, "ideal | decohered");
  ptm->add_option("--gate-ns", ptm_gate_ns);
  ptm->add_flag("--z-correction", ptm_z, "Follow the gate with Z(pi/12) on Q2");
  ptm->add_option("--csv", ptm_csv);

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "Labeled eigenenergies at one coupler frequency");
  double spec_omega = 0.0;
  std::string spec_dims = "4,4,3,4", spec_csv;
  int spec_levels = 20;
  spec->add_option("--omega-minus-ghz", spec_omega)->required();
  spec->add_option("--dims", spec_dims, "Truncation q1,q2,bus,coupler");
  spec->add_option("--levels", spec_levels, "Number of lowest levels to list");
  spec->add_option("--csv", spec_csv);

  // convergence
  auto* conv = app.add_subcommand("convergence", "Exact zeta versus Fock truncation");
  double conv_omega = 0.0;
  std::vector<std::string> conv_dims = {"3,3,2,3", "4,4,3,4", "5,5,4,5", "6,6,4,6"};
  std::string conv_csv;
  conv->add_option("--omega-minus-ghz", conv_omega)->required();
  conv->add_option("--dims", conv_dims, "Truncations, each q1,q2,bus,coupler");
  conv->add_option("--csv", conv_csv);

  // recipe
  auto* recipe = app.add_subcommand("recipe", "Regenerate the data behind a figure and check anchors");
  std::string figure;
  RecipeOptions ropt;
  recipe->add_option("figure", figure, "fig2 | figS2 | figS3 | figS4")->required();
  recipe->add_option("--device-a", ropt.device_a);
  recipe->add_option("--device-b", ropt.device_b);
  recipe->add_option("--points", ropt.sweep_points)->check(CLI::Range(10, 100000));
  recipe->add_option("--trials", ropt.rb_trials)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      const DeviceFile dev = load_device(g.device);
      const DeviceParams& p = dev.params;
      CsvWriter w(meta(g, dev.hash), {"flux_or_detuning", "omega_minus_GHz", "zeta_MHz", "min_overlap"});
      const ZetaMethod method = parse_method(sweep_method);
      if (flux_from || flux_to) {
        if (!flux_from || !flux_to) throw DomainError("--flux-from and --flux-to go together");
        for (int i = 0; i < sweep_points; ++i) {
          const double phi = *flux_from + (*flux_to - *flux_from) * i / (sweep_points - 1);
          const double w_minus = omega_minus_of_flux(p, phi);
          double z = std::numeric_limits<double>::quiet_NaN(), overlap = 1.0;
          if (method == ZetaMethod::Exact) {
            const ZetaExact e = evaluate_zeta_exact(p, w_minus);
            overlap = e.min_overlap();
            if (e.reliable()) z = e.zeta;
          } else {
            try {
              z = zeta_perturbative(p, w_minus);
            } catch (const PoleError&) {
            }
          }
          w.row({phi, to_ghz(w_minus), to_mhz(z), overlap});
        }
      } else {
        const double lo = from_ghz_opt ? from_ghz(*from_ghz_opt) : p.omega_1 + from_ghz(-2.5);
        const double hi = to_ghz_opt ? from_ghz(*to_ghz_opt) : p.omega_1 + from_ghz(-0.3);
        for (const auto& r : zeta_sweep(p, method, lo, hi, sweep_points, HilbertSpace::device(),
                                        g.threads))
          w.row({to_ghz(r.omega_minus - p.omega_1), to_ghz(r.omega_minus), to_mhz(r.zeta),
                 r.min_overlap});
      }
      emit(w, sweep_csv, g, "zeta_sweep.csv");
    } else if (zeros->parsed()) {
      const DeviceFile dev = load_device(g.device);
      const DeviceParams& p = dev.params;
      ZeroZetaOptions opt;
      opt.grid_points = zeros_points;
      opt.threads = g.threads;
      const double lo = zeros_from ? from_ghz(*zeros_from)
                                   : p.omega_1 + from_ghz(anchors::kZeroZetaSearchLo_GHz);
      const double hi = zeros_to ? from_ghz(*zeros_to)
                                 : p.omega_1 + from_ghz(anchors::kZeroZetaSearchHi_GHz);
      const ZetaMethod method = parse_method(zeros_method);
      const ZeroZetaSearch s = find_zero_zeta(p, method, lo, hi, opt);
      for (const auto& wmsg : s.warnings) std::cerr << "warning: " << wmsg << "\n";
      CsvWriter w(meta(g, dev.hash), {"detuning_GHz", "omega_minus_GHz", "phi_Phi0",
                                      "dzeta_domega", "preferred", "method"});
      const ZeroZetaRoot* pref = s.roots.empty() ? nullptr : &preferred_operating_point(s);
      for (const auto& r : s.roots) {
        w.row(std::vector<std::string>{format_number(to_ghz(r.point.omega_minus - p.omega_1)),
                                       format_number(to_ghz(r.point.omega_minus)),
                                       format_number(r.point.phi), format_number(r.zeta_slope),
                                       &r == pref ? "1" : "0", to_string(r.method)});
      }
      if (s.roots.empty()) std::cerr << "no zero-ZZ point in the search window\n";
      emit(w, zeros_csv, g, "zero_zeta.csv");
    } else if (rb->parsed()) {
      const DeviceFile dev = load_device(g.device);
      RbConfig cfg;
      cfg.noise1 = noise_for(dev.params, 1, rb_gate_ns * 1e-9);
      cfg.noise2 = noise_for(dev.params, 2, rb_gate_ns * 1e-9);
      cfg.zeta = units::from_mhz(rb_zeta_mhz);
      cfg.lengths = rb_lengths;
      cfg.trials = rb_trials;
      cfg.seed = g.seed;
      cfg.threads = g.threads;
      if (rb_protocol == "primary") cfg.protocol = RbProtocol::PrimaryGates;
      else if (rb_protocol != "clifford") throw DomainError("protocol must be clifford or primary");
      RbMode mode;
      if (rb_mode == "simultaneous") mode = RbMode::Simultaneous;
      else if (rb_mode == "individual_q1") mode = RbMode::IndividualQ1;
      else if (rb_mode == "individual_q2") mode = RbMode::IndividualQ2;
      else throw DomainError("mode must be simultaneous, individual_q1 or individual_q2");
      const RbResult r = run_rb(mode, cfg);
      CsvMetadata m = meta(g, dev.hash);
      m.extra = {{"mode", rb_mode}, {"protocol", rb_protocol},
                 {"fidelity_q1", format_number(r.fidelity[0])},
                 {"fidelity_q2", format_number(r.fidelity[1])}};
      CsvWriter w(m, {"m", "mean_p0_q1", "mean_p0_q2", "sem"});
      for (const auto& pt : r.curve)
        w.row({static_cast<double>(pt.m), pt.mean_p0[0], pt.mean_p0[1],
               std::max(pt.sem[0], pt.sem[1])});
      emit(w, rb_csv, g, "rb.csv");
      std::fprintf(stderr, "F_q1 = %.5f  F_q2 = %.5f\n", r.fidelity[0], r.fidelity[1]);
    } else if (iswap->parsed()) {
      const DeviceFile dev = load_device(g.device);
      ThermalOperatingPoint op;
      if (omega_override) {
        op.omega_minus = from_ghz(*omega_override);
        op.alpha_exponent = iswap_derivative_ratio(dev.params, op.omega_minus);
      } else {
        op = thermal_operating_point(dev.params, 200, g.threads);
      }
      if (alpha_override) op.alpha_exponent = *alpha_override;
      std::vector<double> temps;
      for (int i = 0; i < t_points; ++i)
        temps.push_back(1e-3 * (t_from + (t_to - t_from) * i / (t_points - 1)));
      CsvMetadata m = meta(g, dev.hash);
      m.extra = {{"omega_minus_GHz", format_number(to_ghz(op.omega_minus))},
                 {"alpha_exponent", format_number(op.alpha_exponent)}};
      CsvWriter w(m, {"temperature_mK", "p", "fidelity", "thermal_loss"});
      for (const auto& r : thermal_sweep(dev.params, op, temps, iswap_gate_ns * 1e-9))
        w.row({1e3 * r.temperature, r.p, r.fidelity.fidelity, r.fidelity.thermal_loss});
      emit(w, iswap_csv, g, "iswap_fidelity.csv");
    } else if (ptm->parsed()) {
      Ptm r;
      std::string hash = "none";
      if (ptm_channel == "ideal") {
        r = ptm_of_unitary(sqrt_iswap(ptm_z));
      } else if (ptm_channel == "decohered") {
        const DeviceFile dev = load_device(g.device);
        hash = dev.hash;
        const NoiseParams n1 = noise_for(dev.params, 1, ptm_gate_ns * 1e-9);
        const NoiseParams n2 = noise_for(dev.params, 2, ptm_gate_ns * 1e-9);
        const Eigen::Matrix4cd u = sqrt_iswap(ptm_z);
        r = ptm_from_channel([&](const Eigen::Matrix4cd& x) -> Eigen::Matrix4cd {
          return linear::decoherence(linear::decoherence(u * x * u.adjoint(), 2, n2), 1, n1);
        });
        std::fprintf(stderr, "F_g = %.6f\n", gate_fidelity(r, ptm_of_unitary(u), 2));
      } else {
        throw DomainError("channel must be ideal or decohered");
      }
      std::vector<std::string> cols = {"row"};
      for (int j = 0; j < 16; ++j) cols.push_back(pauli_label(j));
      CsvWriter w(meta(g, hash), cols);
      for (int i = 0; i < 16; ++i) {
        std::vector<std::string> cells = {pauli_label(i)};
        for (int j = 0; j < 16; ++j) cells.push_back(format_number(r(i, j)));
        w.row(cells);
      }
      emit(w, ptm_csv, g, "ptm.csv");
    } else if (spec->parsed()) {
      const DeviceFile dev = load_device(g.device);
      const HilbertSpace space = HilbertSpace::device(parse_dims(spec_dims));
      const double w_minus = from_ghz(spec_omega);
      const auto labeled =
          label_states(diagonalize(build_hamiltonian(dev.params, space, w_minus)), space);
      std::vector<Eigen::Index> bare_of(static_cast<std::size_t>(space.total_dim()));
      for (Eigen::Index b = 0; b < space.total_dim(); ++b)
        bare_of[static_cast<std::size_t>(labeled.eigen_index[static_cast<std::size_t>(b)])] = b;
      CsvWriter w(meta(g, dev.hash), {"level", "energy_GHz", "label", "overlap", "excitations"});
      const double e0 = labeled.eigenvalues[0];
      for (Eigen::Index k = 0; k < std::min<Eigen::Index>(spec_levels, space.total_dim()); ++k) {
        const Eigen::Index b = bare_of[static_cast<std::size_t>(k)];
        w.row(std::vector<std::string>{std::to_string(k),
                                       format_number(to_ghz(labeled.eigenvalues[k] - e0)),
                                       space.ket(b),
                                       format_number(labeled.overlap[static_cast<std::size_t>(b)]),
                                       std::to_string(space.excitations(b))});
      }
      emit(w, spec_csv, g, "spectrum.csv");
    } else if (conv->parsed()) {
      const DeviceFile dev = load_device(g.device);
      std::vector<std::array<int, 4>> dims;
      for (const auto& d : conv_dims) dims.push_back(parse_dims(d));
      CsvWriter w(meta(g, dev.hash), {"dims", "total_dim", "zeta_MHz", "diff_to_largest_kHz"});
      for (const auto& row : convergence_check(dev.params, from_ghz(conv_omega), dims))
        w.row(std::vector<std::string>{
            dims_label(row.dims),
            std::to_string(HilbertSpace::device(row.dims).total_dim()),
            format_number(to_mhz(row.zeta)), format_number(1e3 * to_mhz(row.diff_to_largest))});
      emit(w, conv_csv, g, "convergence.csv");
    } else if (recipe->parsed()) {
      ropt.out_dir = g.out.empty() ? std::filesystem::path(".") : std::filesystem::path(g.out);
      ropt.seed = g.seed;
      ropt.threads = g.threads;
      ropt.command_line = g.command_line;
      const RecipeReport report = run_figure_recipe(parse_figure(figure), ropt);
      std::cout << report.summary();
      return report.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
