#include "trustsim/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "trustsim/errors.hpp"

namespace trustsim {

using Json = nlohmann::ordered_json;

namespace {

constexpr int kIndent = 2;

std::string field(const std::optional<double>& x) { return x ? format_double(*x) : std::string{}; }

Json json_or_null(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::string csv_preamble(const Metadata& meta) {
  std::string out;
  for (const auto& [key, value] : meta) out += "# " + key + "=" + value + "\n";
  return out;
}

Json metadata_json(const Metadata& meta) {
  Json obj = Json::object();
  for (const auto& [key, value] : meta) obj[key] = value;
  return obj;
}

std::string dump(const Json& doc) { return doc.dump(kIndent) + "\n"; }

Json batch_json(const BatchResult& b) {
  return Json{{"n", b.params.n_users},
              {"l", b.params.comfort_level},
              {"beta", b.params.beta},
              {"gamma", b.params.gamma},
              {"repetitions", b.repetitions},
              {"runs_converged", b.converged_count},
              {"i2c_mean", json_or_null(b.i2c_mean)},
              {"i2c_stddev", json_or_null(b.i2c_stddev)},
              {"final_avg_trusts", b.final_avg_trusts}};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw IoError("malformed number '" + text + "' on line " + std::to_string(line_no));
  }
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string render_trajectory(const RunResult& result, const Metadata& meta, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    Json traj = Json::array();
    for (const auto& s : result.trajectory) {
      traj.push_back(Json{{"t", s.t}, {"attendance", s.attendance}, {"avg_trust", s.avg_trust}});
    }
    Json doc{{"metadata", metadata_json(meta)},
             {"converged", result.converged},
             {"t_star", result.t_star ? Json(*result.t_star) : Json(nullptr)},
             {"trajectory", std::move(traj)},
             {"final_trusts", result.final_trusts}};
    return dump(doc);
  }
  std::string out = csv_preamble(meta);
  out += "t,attendance,avg_trust\n";
  for (const auto& s : result.trajectory) {
    out += std::to_string(s.t) + "," + std::to_string(s.attendance) + "," +
           format_double(s.avg_trust) + "\n";
  }
  return out;
}

std::string render_batch(const BatchResult& batch, const Metadata& meta, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    return dump(Json{{"metadata", metadata_json(meta)}, {"batch", batch_json(batch)}});
  }
  std::string out = csv_preamble(meta);
  out += "n,l,beta,gamma,repetitions,runs_converged,i2c_mean,i2c_stddev\n";
  out += std::to_string(batch.params.n_users) + "," + std::to_string(batch.params.comfort_level) +
         "," + format_double(batch.params.beta) + "," + format_double(batch.params.gamma) + "," +
         std::to_string(batch.repetitions) + "," + std::to_string(batch.converged_count) + "," +
         field(batch.i2c_mean) + "," + field(batch.i2c_stddev) + "\n";
  return out;
}

std::string render_batch_distributions_csv(const BatchResult& batch, const Metadata& meta) {
  std::string out = csv_preamble(meta);
  out += "final_avg_trust\n";
  for (double v : batch.final_avg_trusts) out += format_double(v) + "\n";
  return out;
}

std::string render_n_sweep(std::span<const NSweepRow> rows, const Metadata& meta,
                           OutputFormat format) {
  if (format == OutputFormat::kJson) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"n", r.n_users},
                         {"l", r.comfort_level},
                         {"runs_converged", r.batch.converged_count},
                         {"i2c_mean", json_or_null(r.batch.i2c_mean)},
                         {"i2c_stddev", json_or_null(r.batch.i2c_stddev)}});
    }
    return dump(Json{{"metadata", metadata_json(meta)}, {"rows", std::move(arr)}});
  }
  std::string out = csv_preamble(meta);
  out += "n,l,runs_converged,i2c_mean,i2c_stddev\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_users) + "," + std::to_string(r.comfort_level) + "," +
           std::to_string(r.batch.converged_count) + "," + field(r.batch.i2c_mean) + "," +
           field(r.batch.i2c_stddev) + "\n";
  }
  return out;
}

std::string render_phi_sweep(std::span<const PhiSweepRow> rows, const Metadata& meta,
                             OutputFormat format) {
  if (format == OutputFormat::kJson) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"phi", r.phi},
                         {"gamma", r.gamma},
                         {"runs_converged", r.batch.converged_count},
                         {"i2c_mean_converged", json_or_null(r.batch.i2c_mean)},
                         {"final_avg_trusts", r.batch.final_avg_trusts}});
    }
    return dump(Json{{"metadata", metadata_json(meta)}, {"rows", std::move(arr)}});
  }
  std::string out = csv_preamble(meta);
  out += "phi,gamma,runs_converged,i2c_mean_converged\n";
  for (const auto& r : rows) {
    out += format_double(r.phi) + "," + format_double(r.gamma) + "," +
           std::to_string(r.batch.converged_count) + "," + field(r.batch.i2c_mean) + "\n";
  }
  return out;
}

std::string render_phi_distributions_csv(std::span<const PhiSweepRow> rows, const Metadata& meta) {
  std::string out = csv_preamble(meta);
  out += "phi,final_avg_trust\n";
  for (const auto& r : rows) {
    for (double v : r.batch.final_avg_trusts) out += format_double(r.phi) + "," + format_double(v) + "\n";
  }
  return out;
}

std::string render_fit(const FitResult& fit, const Metadata& meta, OutputFormat format) {
  const bool power = fit.kind == FitKind::kPowerLaw;
  if (format == OutputFormat::kJson) {
    Json coeffs = power ? Json{{"a", fit.coefficients[0]}, {"b", fit.coefficients[1]}}
                        : Json{{"c2", fit.coefficients[0]},
                               {"c1", fit.coefficients[1]},
                               {"c0", fit.coefficients[2]}};
    return dump(Json{{"metadata", metadata_json(meta)},
                     {"model", power ? "power" : "quadratic"},
                     {"coefficients", std::move(coeffs)},
                     {"r_squared", fit.r_squared}});
  }
  std::string out = csv_preamble(meta);
  out += power ? "model,a,b,r_squared\npower" : "model,c2,c1,c0,r_squared\nquadratic";
  for (double c : fit.coefficients) out += "," + format_double(c);
  out += "," + format_double(fit.r_squared) + "\n";
  return out;
}

XYData read_xy_csv(std::istream& in, const std::string& x_column, const std::string& y_column) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw IoError("CSV input has no header line");

  auto locate = [&](const std::string& name, std::size_t fallback) {
    if (name.empty()) {
      if (fallback >= header.size()) throw IoError("CSV input needs at least two columns");
      return fallback;
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw IoError("CSV input has no column '" + name + "'");
  };
  const std::size_t xi = locate(x_column, 0);
  const std::size_t yi = locate(y_column, 1);

  XYData data;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw IoError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                    " fields, header has " + std::to_string(header.size()));
    }
    if (cells[xi].empty() || cells[yi].empty()) {
      ++data.skipped_rows;
      continue;
    }
    data.points.push_back({parse_number(cells[xi], line_no), parse_number(cells[yi], line_no)});
  }
  return data;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::filesystem::path distributions_path(const std::filesystem::path& out) {
  auto p = out;
  p.replace_extension(".dist.csv");
  return p;
}

}  // namespace trustsim
