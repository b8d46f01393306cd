#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace fpir::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Job {
  std::string name;
  std::vector<std::string> args;
};

struct Manifest {
  std::uint64_t seed = 0;
  fs::path output_dir;
  std::string format = "json";
  unsigned parallel = 1;
  std::vector<Job> jobs;
};

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot read manifest " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("manifest: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "manifest must be a JSON object");

  Manifest m;
  try {
    m.seed = doc.value("seed", std::uint64_t{0});
    m.format = doc.value("format", std::string("json"));
    m.parallel = std::max(1u, doc.value("parallel", 1u));
    const auto dir = doc.value("output_dir", std::string("batch_out"));
    m.output_dir = fs::path(dir).is_absolute() ? fs::path(dir) : fs::path(path).parent_path() / dir;
    std::set<std::string> seen;
    const json jobs = doc.value("jobs", json::array());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      Job job;
      job.name = jobs[i].value("name", "job" + std::to_string(i));
      job.args = jobs[i].at("args").get<std::vector<std::string>>();
      if (job.name.empty() || job.name.find_first_of("/\\") != std::string::npos) {
        fail(ErrorKind::ParseError, "bad job name '" + job.name + "'");
      }
      if (!seen.insert(job.name).second) fail(ErrorKind::ParseError, "duplicate job name '" + job.name + "'");
      m.jobs.push_back(std::move(job));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("manifest: ") + e.what());
  }
  if (m.format != "json" && m.format != "csv") fail(ErrorKind::ParseError, "format must be json or csv");
  return m;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

CommandResult run_job(const Job& job, const Manifest& m, const Limits& limits) {
  if (!job.args.empty() && job.args.front() == "batch") {
    CommandResult r;
    r.exit_code = kUsage;
    r.error = error_json(ErrorKind::InvalidArgument, "nested batch jobs are not allowed");
    return r;
  }
  std::vector<std::string> args;
  if (std::find(job.args.begin(), job.args.end(), "--seed") == job.args.end()) {
    args = {"--seed", std::to_string(m.seed)};
  }
  args.insert(args.end(), job.args.begin(), job.args.end());
  if (m.format == "csv") args.insert(args.begin(), "--csv");
  return dispatch(args, limits);
}

}  // namespace

CommandResult run_batch(const std::string& manifest_path, const Limits& limits) {
  const Manifest m = load_manifest(manifest_path);
  std::vector<CommandResult> results(m.jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < m.jobs.size();) results[i] = run_job(m.jobs[i], m, limits);
  };
  const unsigned threads = std::min<std::size_t>(m.parallel, std::max<std::size_t>(1, m.jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::error_code ec;
  fs::create_directories(m.output_dir, ec);
  if (ec) fail(ErrorKind::InvalidArgument, "cannot create " + m.output_dir.string());

  const std::string stamp = timestamp();
  json rows = json::array();
  std::string table = "job,exit_code,file\n";
  int worst = kOk;
  std::size_t failed = 0, bound_failures = 0;
  for (std::size_t i = 0; i < m.jobs.size(); ++i) {
    const auto& job = m.jobs[i];
    const auto& r = results[i];
    const fs::path file = m.output_dir / (job.name + ".json");
    json doc = {{"header", {{"timestamp", stamp}, {"job", job.name}, {"args", job.args}, {"exit_code", r.exit_code}}},
                {"result", r.error.is_null() ? r.json : json(nullptr)},
                {"error", r.error}};
    std::ofstream(file) << doc.dump(2) << '\n';
    if (m.format == "csv" && r.error.is_null()) std::ofstream(m.output_dir / (job.name + ".csv")) << r.csv;

    worst = std::max(worst, r.exit_code);
    failed += r.exit_code != kOk;
    bound_failures += r.exit_code == kBoundFailed;
    rows.push_back({{"job", job.name}, {"exit_code", r.exit_code}, {"file", file.filename().string()}});
    table += job.name + "," + std::to_string(r.exit_code) + "," + file.filename().string() + "\n";
  }

  json summary = {{"command", "batch"},
                  {"seed", m.seed},
                  {"jobs", m.jobs.size()},
                  {"failed", failed},
                  {"bound_violations", bound_failures},
                  {"exit_code", worst},
                  {"results", rows}};
  std::ofstream(m.output_dir / "summary.json") << json{{"header", {{"timestamp", stamp}}}, {"result", summary}}.dump(2)
                                               << '\n';
  std::ofstream(m.output_dir / "summary.csv") << table;

  CommandResult out;
  out.exit_code = worst;
  out.json = std::move(summary);
  out.csv = std::move(table);
  return out;
}

}  // namespace fpir::cli
