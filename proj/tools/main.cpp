#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "job.hpp"
#include "relhyp/error.hpp"

namespace {

using relhyp::Error;
using relhyp::ErrorKind;
using relhyp::cli::Job;
using relhyp::Json;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::cap_exceeded:
    case ErrorKind::insufficient_radius:
      return 3;
    case ErrorKind::unsupported:
    case ErrorKind::predicate_failure:
      return 4;
    default:
      return 2;
  }
}

const char* status_name(int code) {
  switch (code) {
    case 3:
      return "cap-exceeded";
    case 4:
      return "unsupported";
    default:
      return "invalid-input";
  }
}

void emit(const Job& job, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (auto p = job.write_output("report", text)) {
    std::cout << "report: " << *p << "\n";
  } else {
    std::cout << text;
  }
}

int run(const std::string& path, const std::string& out_dir) {
  Json spec;
  {
    std::ifstream in(path);
    if (!in) {
      std::cerr << path << ": cannot open\n";
      return 2;
    }
    try {
      spec = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      std::cerr << path << ": parse error at byte " << e.byte << "\n";
      return 2;
    }
  }
  std::optional<Job> job;
  try {
    job.emplace(spec, out_dir);
  } catch (const Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }
  Json report;
  report["header"] = relhyp::cli::provenance(*job);
  try {
    Json result = relhyp::cli::run_command(*job);
    const std::string summary = result.value("summary", std::string());
    result.erase("summary");
    report["status"] = "ok";
    report["result"] = result;
    emit(*job, report);
    std::cout << job->command() << ": " << summary << "\n";
    return 0;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    std::cerr << path << ": " << e.what() << "\n";
    report["status"] = status_name(code);
    report["error"] = e.what();
    try {
      emit(*job, report);
    } catch (const std::exception& w) {
      std::cerr << "report not written: " << w.what() << "\n";
    }
    return code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative hyperbolicity toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(relhyp::cli::kVersion));
  std::string path;
  std::string out_dir = ".";
  auto* cmd = app.add_subcommand("run", "Run a job spec");
  cmd->add_option("spec", path, "Job spec JSON file")->required();
  cmd->add_option("--out-dir", out_dir, "Directory for output files");
  CLI11_PARSE(app, argc, argv);
  return run(path, out_dir);
}
