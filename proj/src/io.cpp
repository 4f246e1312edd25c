#include "cahnlab/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cahnlab/error.hpp"

namespace cahnlab {

using nlohmann::ordered_json;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string run_report_csv(const RunReport& r) {
  std::string out = "time,mass,interaction,potential,total,dual_rate,dissipation,dissipation_hminus1,overshoot\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out += format_real(r.times[i]) + ',' + format_real(r.mass[i]) + ',' + format_real(r.energy[i].interaction) + ',' +
           format_real(r.energy[i].potential_part) + ',' + format_real(r.energy[i].total) + ',' +
           format_real(r.dual_rate[i]) + ',' + format_real(r.dissipation[i]) + ',' +
           format_real(r.dissipation_hminus1[i]) + ',' + format_real(r.overshoot[i]) + '\n';
  }
  return out;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "eps,err_L2H1,err_CdualH1,energy_gap,runtime_seconds\n";
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    out += format_real(row.eps) + ',' + format_real(row.err_L2H1) + ',' + format_real(row.err_CdualH1) + ',' +
           format_real(row.energy_gap) + ',' + format_real(row.runtime_seconds) + '\n';
  }
  return out;
}

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  std::istringstream in(render_config(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

}  // namespace

std::string sweep_summary_json(const SweepReport& report, const RunConfig& cfg) {
  ordered_json j;
  j["valid"] = report.valid;
  j["message"] = report.message;
  j["fitted_rate"] = {{"err_L2H1", optional_number(report.rate_L2H1)},
                      {"err_CdualH1", optional_number(report.rate_CdualH1)},
                      {"energy_gap", optional_number(report.rate_energy_gap)}};
  j["continuum_fidelity"] = report.continuum_fidelity;
  j["steps"] = report.steps;
  j["records"] = report.records;
  j["local_initial_energy"] = report.local_initial_energy;
  j["h4_bound"] = report.h4_bound;
  j["h4_satisfied"] = report.h4_satisfied;
  j["poincare_estimate"] = report.poincare_estimate;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows)
    rows.push_back({{"eps", row.eps},
                    {"ok", row.ok},
                    {"failure", row.failure},
                    {"cells_across_support", row.cells_across_support},
                    {"initial_energy", row.initial_energy}});
  j["runs"] = rows;
  j["plan"] = config_json(cfg);
  return j.dump(2) + "\n";
}

std::string consistency_csv(const ConsistencyReport& report) {
  std::string out = "eps,field,err_L2,err_dual,energy_rel_err\n";
  for (const auto& r : report.rows)
    out += format_real(r.eps) + ',' + r.field + ',' + format_real(r.err_L2) + ',' + format_real(r.err_dual) + ',' +
           format_real(r.energy_rel_err) + '\n';
  return out;
}

std::string consistency_summary_json(const ConsistencyReport& report, const RunConfig& cfg) {
  ordered_json j;
  ordered_json rates = ordered_json::object();
  for (const auto& r : report.rates)
    rates[r.field] = {{"err_L2", optional_number(r.rate_L2)},
                      {"err_dual", optional_number(r.rate_dual)},
                      {"energy_rel_err", optional_number(r.rate_energy)}};
  j["fitted_rate"] = rates;
  j["plan"] = config_json(cfg);
  return j.dump(2) + "\n";
}

std::string poincare_csv(const std::vector<PoincareResult>& results) {
  std::string out = "n,sample,ratio\n";
  for (const auto& r : results)
    for (std::size_t i = 0; i < r.ratios.size(); ++i)
      out += std::to_string(r.n_per_axis) + ',' + std::to_string(i) + ',' + format_real(r.ratios[i]) + '\n';
  return out;
}

std::string poincare_summary_json(const std::vector<PoincareResult>& results, const RunConfig& cfg) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results)
    arr.push_back({{"n", r.n_per_axis}, {"eps", r.eps}, {"max_ratio", r.max_ratio}, {"mean_ratio", r.mean_ratio}});
  j["resolutions"] = arr;
  if (results.size() >= 2 && results.front().max_ratio > 0.0)
    j["relative_change"] = std::abs(results.back().max_ratio - results.front().max_ratio) / results.front().max_ratio;
  j["plan"] = config_json(cfg);
  return j.dump(2) + "\n";
}

std::string kernel_dump_csv(const ScaledKernel& K) {
  const TorusGrid& g = K.grid();
  std::vector<std::pair<double, double>> points;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (K.samples()[i] == 0.0) continue;
    const Vec3 z = g.minimal_offset(i);
    points.emplace_back(std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]), K.samples()[i]);
  }
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = "r,sample\n";
  for (const auto& [r, s] : points) out += format_real(r) + ',' + format_real(s) + '\n';
  return out;
}

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << "cahnlab_checkpoint=1\n"
      << "dim=" << cp.dim << "\n"
      << "n=" << cp.n << "\n"
      << "side_length=" << format_real(cp.side_length) << "\n"
      << "time=" << format_real(cp.time) << "\n"
      << "scheme=" << cp.scheme << "\n"
      << "eps=" << (cp.eps ? format_real(*cp.eps) : std::string("none")) << "\n"
      << "potential=" << cp.potential << "\n"
      << "a=" << format_real(cp.a) << "\n"
      << "A1=" << format_real(cp.A1) << "\n"
      << "A2=" << format_real(cp.A2) << "\n"
      << "theta0=" << format_real(cp.theta0) << "\n"
      << "theta=" << format_real(cp.theta) << "\n"
      << "count=" << cp.values.size() << "\n"
      << "end_header\n";
  for (double v : cp.values) put_le(out, v);
  if (!out) throw std::runtime_error("checkpoint write failed for " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read checkpoint " + path.string());
  Checkpoint cp;
  std::size_t count = 0;
  bool seen_magic = false;
  std::string line;
  auto real = [&](const std::string& v) {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw PreconditionError("checkpoint: malformed number '" + v + "'");
    return d;
  };
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("checkpoint: malformed header line '" + line + "'");
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "cahnlab_checkpoint") seen_magic = value == "1";
    else if (key == "dim") cp.dim = std::stoi(value);
    else if (key == "n") cp.n = std::stoi(value);
    else if (key == "side_length") cp.side_length = real(value);
    else if (key == "time") cp.time = real(value);
    else if (key == "scheme") cp.scheme = value;
    else if (key == "eps") cp.eps = value == "none" ? std::nullopt : std::optional<double>(real(value));
    else if (key == "potential") cp.potential = value;
    else if (key == "a") cp.a = real(value);
    else if (key == "A1") cp.A1 = real(value);
    else if (key == "A2") cp.A2 = real(value);
    else if (key == "theta0") cp.theta0 = real(value);
    else if (key == "theta") cp.theta = real(value);
    else if (key == "count") count = std::stoull(value);
    else throw PreconditionError("checkpoint: unknown header key '" + key + "'");
  }
  if (!seen_magic || line != "end_header") throw PreconditionError("checkpoint: missing or malformed header");
  std::vector<unsigned char> raw(count * 8);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw PreconditionError("checkpoint: truncated data");
  cp.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) cp.values[i] = get_le(raw.data() + 8 * i);
  return cp;
}

}  // namespace cahnlab
