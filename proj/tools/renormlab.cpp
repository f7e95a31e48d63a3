#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "renormlab/douady.hpp"
#include "renormlab/errors.hpp"
#include "renormlab/nest.hpp"
#include "renormlab/parabolic.hpp"
#include "renormlab/render.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/sequence.hpp"
#include "renormlab/serialize.hpp"
#include "renormlab/shuffle.hpp"
#include "renormlab/solver.hpp"

namespace rl = renormlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInconclusive = 4;

// Reads `{"render": {"width": 0.1, ...}}` style documents into CLI11 config items.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    throw CLI::ConversionError("writing JSON configs is not supported");
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("bad JSON config: ") + e.what());
    }
    return items(j, "", {});
  }

 private:
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  std::vector<CLI::ConfigItem> items(const nlohmann::json& j, const std::string& name,
                                     const std::vector<std::string>& parents) const {
    std::vector<CLI::ConfigItem> out;
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        auto next = parents;
        if (!name.empty()) next.push_back(name);
        auto sub = items(*it, it.key(), next);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    if (name.empty()) throw CLI::ConversionError("top level of a JSON config must be an object");
    CLI::ConfigItem item;
    item.name = name;
    item.parents = parents;
    if (j.is_array()) {
      for (const auto& v : j) item.inputs.push_back(scalar(v));
    } else {
      item.inputs.push_back(scalar(j));
    }
    out.push_back(item);
    return out;
  }
};

struct ShuffleInput {
  std::string file;
  std::string perm;
  int sigma3 = 0;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--file", file, "File holding a shuffle in one-line cycle notation");
    auto* p = cmd->add_option("--perm", perm, "Shuffle in cycle notation, e.g. \"(1 3 2)\"");
    auto* s = cmd->add_option("--sigma3", sigma3, "Use the shuffle sigma3_n with this n")->check(CLI::PositiveNumber);
    f->excludes(p)->excludes(s);
    p->excludes(s);
  }

  rl::Shuffle load() const {
    if (sigma3 > 0) return rl::sigma3_n(sigma3);
    std::string text = perm;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw rl::IOError("cannot open " + file);
      std::string line;
      text.clear();
      while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        text += line + ' ';
      }
    }
    if (text.empty()) throw CLI::ValidationError("give one of --file, --perm or --sigma3");
    return rl::validate_shuffle(rl::parse_cycle_notation(text));
  }
};

std::ostream& output_stream(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw rl::IOError("cannot open " + path + " for writing");
  return file;
}

rl::Per3Verdict run_per3(const rl::Per3Config& cfg, const std::string& out_path) {
  const rl::Per3Report report = rl::run_per3(cfg);
  std::ofstream file;
  output_stream(out_path, file) << rl::to_json(report) << '\n';
  std::cerr << "per3: " << rl::to_string(report.verdict);
  if (!report.message.empty()) std::cerr << " (" << report.message << ")";
  std::cerr << '\n';
  return report.verdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"renormlab: renormalization, shuffles, parabolic implosion and rendering for z^2 + c"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand help for every subcommand");

  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  auto* cfg_opt = app.set_config("--config", "", "Read options from a TOML file, or a JSON file when named *.json");
  (void)cfg_opt;
  if (config_path.size() > 5 && config_path.substr(config_path.size() - 5) == ".json") {
    app.config_formatter(std::make_shared<JsonConfig>());
  }

  int exit_code = 0;

  // render
  rl::RenderConfig rcfg;
  std::string mode = "julia", render_out;
  double c_re = 0, c_im = 0, centre_re = 0, centre_im = 0;
  std::vector<int> pixels{801, 801};
  auto* render = app.add_subcommand("render", "Escape-time image of a filled Julia set or the Mandelbrot set (PGM)");
  render->add_option("--mode", mode, "julia or mandelbrot")->check(CLI::IsMember({"julia", "mandelbrot"}));
  render->add_option("--c", c_re, "Julia parameter, real part");
  render->add_option("--c-im", c_im, "Julia parameter, imaginary part");
  render->add_option("--center", centre_re, "Frame center, real part");
  render->add_option("--center-im", centre_im, "Frame center, imaginary part");
  render->add_option("--width", rcfg.width, "Real extent of the frame")->check(CLI::PositiveNumber);
  render->add_option("--pixels", pixels, "Image size W H")->expected(2);
  render->add_option("--max-iter", rcfg.max_iter, "Iteration cap");
  render->add_option("--escape-radius", rcfg.escape_radius, "Escape radius (raised to 2+|c| if smaller)");
  render->add_option("--threads", rcfg.threads, "Worker threads, 0 for all cores (capped by RENORMLAB_THREADS)");
  render->add_option("-o,--output", render_out, "Output PGM path")->required();
  render->callback([&] {
    rcfg.mode = mode == "julia" ? rl::RenderMode::Julia : rl::RenderMode::Mandelbrot;
    rcfg.julia_c = {c_re, c_im};
    rcfg.center = {centre_re, centre_im};
    rcfg.pixels_w = pixels.at(0);
    rcfg.pixels_h = pixels.at(1);
    const rl::Image img = rl::render(rcfg);
    rl::write_pgm(render_out, img);
    std::size_t interior = 0;
    for (auto v : img.pixels) interior += v == 0;
    std::cout << "wrote " << render_out << " (" << img.width << "x" << img.height << ", " << interior
              << " non-escaping pixels)\n";
  });

  // centers
  bool use_sigma3 = false;
  int n_max = 12;
  std::string centers_out;
  auto* centers = app.add_subcommand("centers", "Superattracting centers c_n of the sigma3_n family (CSV)");
  centers->add_flag("--sigma3", use_sigma3, "Solve the sigma3_n family (currently the only family)")->required();
  centers->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(1, 200));
  centers->add_option("-o,--output", centers_out, "CSV path (stdout by default)");
  centers->callback([&] {
    const auto rows = rl::centers_sigma3(n_max);
    std::ofstream file;
    rl::write_centers_csv(output_stream(centers_out, file), "sigma3", rows);
    for (const auto& r : rows) {
      if (r.error) throw rl::SolverFailure("n = " + std::to_string(r.n) + ": " + *r.error);
    }
  });

  // shuffle
  ShuffleInput sh_in;
  std::string inner_perm;
  double sh_c = 0;
  int sh_period = 0;
  auto* shuffle = app.add_subcommand("shuffle", "Validate and describe a shuffle permutation");
  sh_in.attach(shuffle);
  shuffle->add_option("--inner", inner_perm, "Also print the star product with this inner shuffle");
  auto* c_opt = shuffle->add_option("--c", sh_c, "Read the shuffle off the superattracting orbit at c");
  shuffle->add_option("--period", sh_period, "Period of the orbit at --c")->needs(c_opt);
  shuffle->callback([&] {
    rl::Shuffle s = sh_c != 0 ? rl::shuffle_of_center(sh_c, sh_period) : sh_in.load();
    if (!inner_perm.empty()) {
      s = rl::star_product(s, rl::validate_shuffle(rl::parse_cycle_notation(inner_perm)));
    }
    std::cout << "cycle: " << rl::to_cycle_notation(s) << '\n';
    std::cout << "period: " << s.period() << '\n';
    std::cout << "kneading: " << rl::to_string(rl::kneading_from_perm(s.perm)) << '\n';
    std::cout << "immediately_renormalizable: " << (s.immediately_renormalizable ? "true" : "false") << '\n';
    if (s.tuned_block) std::cout << "tuned_block: " << *s.tuned_block << '\n';
  });

  // essential-period
  ShuffleInput ep_in;
  auto* ep = app.add_subcommand("essential-period", "Essential period of a shuffle");
  ep_in.attach(ep);
  ep->callback([&] { std::cout << rl::essential_period(ep_in.load()) << '\n'; });

  // return-types
  ShuffleInput rt_in;
  bool rt_json = false;
  auto* rt = app.add_subcommand("return-types", "Principal nest and return-type sequence of a shuffle");
  rt_in.attach(rt);
  rt->add_flag("--json", rt_json, "Emit the nest and the sequence as JSON");
  rt->callback([&] {
    const auto sn = rl::nest_of_shuffle(rt_in.load());
    if (rt_json) {
      std::cout << rl::to_json(sn.nest, sn.sequence) << '\n';
    } else {
      std::cout << rl::to_text(sn.sequence);
    }
  });

  // truncate
  ShuffleInput tr_in;
  int tr_level = -1;
  auto* tr = app.add_subcommand("truncate", "Truncate a shuffle at a neglectable level");
  tr_in.attach(tr);
  tr->add_option("--level", tr_level, "Level; omitted: every neglectable level");
  tr->callback([&] {
    const auto sn = rl::nest_of_shuffle(tr_in.load());
    std::vector<int> levels;
    if (tr_level >= 0) {
      levels.push_back(tr_level);
    } else {
      levels = rl::neglectable_levels(rl::detect_cascades(sn.sequence));
    }
    for (int l : levels) std::cout << l << ' ' << rl::to_cycle_notation(rl::truncate(sn.sequence, l)) << '\n';
  });

  // renorm-orbit
  double ro_c = 0;
  int ro_k = 1;
  auto* ro = app.add_subcommand("renorm-orbit", "Diagnostics of R^1 f_c, ..., R^k f_c (JSON lines)");
  ro->add_option("--c", ro_c, "Real parameter")->required();
  ro->add_option("--k", ro_k, "Number of renormalizations")->check(CLI::Range(0, 32));
  ro->callback([&] {
    for (const auto& d : rl::renorm_orbit(ro_c, ro_k)) std::cout << rl::to_json_line(d) << '\n';
  });

  // phase
  double ph_re = 0, ph_im = 0;
  std::optional<double> ph_c0;
  int ph_q = 1;
  auto* phase = app.add_subcommand("phase", "Douady coordinates, transit phase and transit time near a parabolic point");
  phase->add_option("--c", ph_re, "Parameter, real part")->required();
  phase->add_option("--c-im", ph_im, "Parameter, imaginary part");
  phase->add_option("--q", ph_q, "Period of the parabolic cycle")->check(CLI::Range(1, 10));
  phase->add_option("--c0", ph_c0, "Real parabolic parameter; solved for when omitted");
  phase->callback([&] {
    const rl::cplx c{ph_re, ph_im};
    const rl::cplx c0 = ph_c0 ? rl::cplx(*ph_c0, 0) : rl::nearest_parabolic_parameter(c, ph_q);
    std::cout << rl::to_json(rl::douady_chart(c, ph_q, c0)) << '\n';
  });

  // fatou-check
  double fc_re = 0, fc_im = 0, fc_tol = 1e-8;
  int fc_q = 1, fc_grid = 20;
  std::string fc_csv;
  auto* fc = app.add_subcommand("fatou-check", "Functional-equation residuals of Phi_+- on a petal grid");
  fc->add_option("--c", fc_re, "Parabolic parameter, real part")->required();
  fc->add_option("--c-im", fc_im, "Parabolic parameter, imaginary part");
  fc->add_option("--q", fc_q, "Period")->check(CLI::Range(1, 10));
  fc->add_option("--grid", fc_grid, "Grid size n (n x n samples per petal)")->check(CLI::Range(2, 200));
  fc->add_option("--tolerance", fc_tol, "Residual bound; exit 1 when exceeded");
  fc->add_option("--csv", fc_csv, "Write the incoming grid as CSV");
  fc->callback([&] {
    const auto chart = rl::detect_parabolic({fc_re, fc_im}, fc_q);
    std::cout << rl::to_json(chart) << '\n';
    double worst = 0;
    for (auto side : {rl::PetalSide::Incoming, rl::PetalSide::Outgoing}) {
      const rl::FatouCoordinate phi(chart, side);
      const auto grid = rl::fatou_residual_grid(phi, fc_grid);
      double m = 0;
      for (const auto& s : grid) m = std::max(m, s.residual);
      std::cout << (side == rl::PetalSide::Incoming ? "incoming" : "outgoing") << " max_residual "
                << rl::decimal17(m) << '\n';
      worst = std::max(worst, m);
      if (side == rl::PetalSide::Incoming && !fc_csv.empty()) {
        std::ofstream file;
        rl::write_fatou_csv(output_stream(fc_csv, file), grid);
      }
    }
    if (!(worst <= fc_tol)) exit_code = kExitFail;
  });

  // per3-experiment
  rl::Per3Config pcfg;
  std::string per3_out;
  auto* per3 = app.add_subcommand("per3-experiment", "Renormalization orbit of a sigma3 tuning compared with z^2 - 1.75");
  per3->add_option("--tuning", pcfg.tuning, "n_1 n_2 ... selecting sigma3_{n_j}")->required()->delimiter(',');
  per3->add_option("--stages", pcfg.stages, "Number of stages")->check(CLI::NonNegativeNumber);
  per3->add_option("--delta", pcfg.delta, "Final midpoint tolerance around -1.75");
  per3->add_option("-o,--output", per3_out, "Report path (stdout by default)");
  per3->callback([&] {
    switch (run_per3(pcfg, per3_out)) {
      case rl::Per3Verdict::Pass:
      case rl::Per3Verdict::NoVerdict:
        exit_code = 0;
        break;
      case rl::Per3Verdict::Fail:
        exit_code = kExitFail;
        break;
      case rl::Per3Verdict::Inconclusive:
        exit_code = kExitInconclusive;
        break;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const rl::PreconditionViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return exit_code;
}
