// Command-line front end: telescope | recon | scan | measure | salikhov |
// beukers | report.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "irr/pipeline.hpp"

namespace {

irr::Json load_config(const std::string& path) {
  if (path.empty()) return irr::Json::object();
  std::ifstream in(path);
  if (!in) throw irr::Error(irr::ErrorKind::InvalidInput, "cannot open config " + path);
  try {
    return irr::Json::parse(in);
  } catch (const irr::Json::exception& e) {
    throw irr::Error(irr::ErrorKind::InvalidInput, std::string("config is not valid JSON: ") + e.what());
  }
}

void emit(const std::string& text, const std::string& out_dir, const std::string& name) {
  std::cout << text;
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream(std::filesystem::path(out_dir) / name) << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recurrences, exact approximations and irrationality measures for integral families"};
  app.require_subcommand(1);
  std::string config, out_dir, cache_dir;
  long nmax = -1, digits = -1;
  unsigned jobs = 1;
  for (const char* name : {"telescope", "recon", "scan", "measure", "salikhov", "beukers", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON config file");
    sub->add_option("--nmax", nmax, "largest n");
    sub->add_option("--digits", digits, "decimal digits for constants");
    sub->add_option("--out", out_dir, "directory for the result file");
    sub->add_option("--jobs", jobs, "worker threads");
    sub->add_option("--cache", cache_dir, "result cache directory");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string cmd = app.get_subcommands().front()->get_name();

  int code = 0;
  try {
    if (cmd == "report") {
      emit(irr::cmd_report(cache_dir), out_dir, "report.md");
      return 0;
    }
    irr::Json cfg = load_config(config);
    if (nmax >= 0) cfg["n_max"] = nmax;
    if (digits >= 0) cfg["digits"] = digits;
    bool hit = false;
    const std::string text = irr::run_cached(cmd, cfg, cache_dir, [&]() -> irr::Json {
      if (cmd == "telescope") {
        const auto k = irr::kernel_from_json(cfg.at("kernel"));
        return irr::to_json(irr::derive_recurrence(k, cfg.value("max_order", 6)));
      }
      if (cmd == "recon") {
        if (!cfg.contains("kernel")) throw irr::Error(irr::ErrorKind::InvalidInput, "recon needs a \"kernel\"");
        return irr::recon(irr::kernel_from_json(cfg.at("kernel")), irr::recon_options_from_json(cfg)).json;
      }
      if (cmd == "scan") return irr::cmd_scan(cfg, jobs);
      if (cmd == "measure") {
        int c = 0;
        irr::Json r = irr::cmd_measure(cfg, c);
        r["exit_code"] = c;
        return r;
      }
      if (cmd == "salikhov") return irr::cmd_salikhov(cfg, jobs);
      return irr::cmd_beukers(cfg, jobs);
    }, hit);
    if (hit) std::cerr << "cache hit: " << irr::cache_key(cmd, cfg) << "\n";
    emit(text, out_dir, cmd + ".json");
    const irr::Json result = irr::Json::parse(text);
    code = result.value("exit_code", 0);
  } catch (const irr::Error& e) {
    std::cerr << e.what() << "\n";
    std::cout << irr::Json{{"error", irr::error_json(e)}}.dump(2) << "\n";
    code = irr::exit_code(e.kind());
  } catch (const irr::Json::exception& e) {
    std::cerr << "InvalidInput: " << e.what() << "\n";
    code = 2;
  }
  return code;
}
