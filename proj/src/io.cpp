#include "graphmm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphmm/errors.hpp"

namespace graphmm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& token, const std::string& path, int line_no, int col) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    while (consumed < token.size() &&
           (token[consumed] == ' ' || token[consumed] == '\r')) ++consumed;
    if (consumed != token.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(line_no) + ": column " + std::to_string(col) +
                    ": cannot parse '" + token + "' as a number");
  }
}

long long parse_int(const std::string& token, const std::string& path, int line_no, int col) {
  try {
    std::size_t consumed = 0;
    const long long value = std::stoll(token, &consumed);
    while (consumed < token.size() &&
           (token[consumed] == ' ' || token[consumed] == '\r')) ++consumed;
    if (consumed != token.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw DataError(path + ":" + std::to_string(line_no) + ": column " + std::to_string(col) +
                    ": cannot parse '" + token + "' as an integer");
  }
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

Matrix read_data_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  const auto header = split_csv_line(strip_cr(line));
  if (header.empty() || header[0] != "v")
    throw DataError(path + ":1: header must start with 'v'");
  const int m = static_cast<int>(header.size()) - 1;
  if (m < 1) throw DataError(path + ":1: no sample columns");

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != m + 1)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(m + 1) + " fields, got " + std::to_string(fields.size()));
    const long long v = parse_int(fields[0], path, line_no, 1);
    if (v != static_cast<long long>(rows.size()))
      throw DataError(path + ":" + std::to_string(line_no) + ": vertex ids must run 0..N-1 in order");
    std::vector<double> row(m);
    for (int j = 0; j < m; ++j) row[j] = parse_double(fields[j + 1], path, line_no, j + 2);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path + ": no data rows");
  Matrix out(rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < m; ++j) out(static_cast<int>(i), j) = rows[i][j];
  return out;
}

void write_data_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write data file: " + path);
  out << "v";
  for (int j = 0; j < m.cols(); ++j) out << ",s" << j;
  out << '\n';
  char buf[32];
  for (int v = 0; v < m.rows(); ++v) {
    out << v;
    for (int j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(v, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_lfdr_csv(const LfdrResult& result, int cols, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write lfdr file: " + path);
  out << "vertex,row,col,lfdr\n";
  char buf[32];
  for (int v = 0; v < result.lfdr.size(); ++v) {
    const int r = cols > 0 ? v / cols : -1;
    const int c = cols > 0 ? v % cols : -1;
    std::snprintf(buf, sizeof buf, "%.8g", result.lfdr[v]);
    out << v << ',' << r << ',' << c << ',' << buf << '\n';
  }
}

Vector read_score_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open score file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 4)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected at least 4 columns");
    values.push_back(parse_double(fields[3], path, line_no, 4));
  }
  if (values.empty()) throw DataError(path + ": no score rows");
  return Eigen::Map<const Vector>(values.data(), static_cast<int>(values.size()));
}

void write_truth_csv(const SyntheticDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write truth file: " + path);
  out << "vertex,block,delta,null\n";
  for (int v = 0; v < dataset.truth_partition.size(); ++v) {
    const int b = dataset.truth_partition.labels[v];
    out << v << ',' << b << ',' << int(dataset.truth_delta[b]) << ','
        << int(dataset.truth_null[v]) << '\n';
  }
}

TruthTable read_truth_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open truth file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  TruthTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected 4 columns");
    table.block.push_back(static_cast<int>(parse_int(fields[1], path, line_no, 2)));
    table.delta_of_vertex.push_back(parse_int(fields[2], path, line_no, 3) != 0);
    table.truth_null.push_back(parse_int(fields[3], path, line_no, 4) != 0);
  }
  if (table.block.empty()) throw DataError(path + ": no truth rows");
  return table;
}

std::map<std::string, std::string> read_key_value(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value = line.substr(eq + 1);
    const auto vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);
    kv[key] = value;
  }
  return kv;
}

ScenarioConfig scenario_from_key_value(const std::map<std::string, std::string>& kv) {
  ScenarioConfig config;
  auto get = [&](const char* key, auto& slot) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    std::istringstream is(it->second);
    if (!(is >> slot)) throw DataError(std::string("scenario config: bad value for ") + key);
  };
  get("rows", config.rows);
  get("cols", config.cols);
  get("block_size_min", config.block_size_min);
  get("block_size_max", config.block_size_max);
  get("frac_shifted", config.frac_shifted);
  get("shift_mean", config.shift_mean);
  get("shift_sd", config.shift_sd);
  int symmetric = config.symmetric_shifts ? 1 : 0;
  get("symmetric_shifts", symmetric);
  config.symmetric_shifts = symmetric != 0;
  get("mu0", config.mu0);
  get("tau2", config.tau2);
  get("noise_var", config.noise_var);
  get("noise_decay", config.noise_decay);
  get("mx", config.mx);
  get("my", config.my);
  get("seed", config.seed);
  return config;
}

void write_hyperparams(const Hyperparams& hp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write hyperparameter file: " + path);
  char buf[32];
  auto scalar = [&](const char* key, double value) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out << key << '=' << buf << '\n';
  };
  scalar("mu0", hp.mu0);
  scalar("tau2", hp.tau2);
  scalar("delta0", hp.delta0);
  scalar("sigma2", hp.sigma2);
  scalar("df", hp.df);
  scalar("p0", hp.p0);
  out << "n=" << hp.A.rows() << '\n';
  auto block = [&](const char* key, const Matrix& m) {
    out << key << "=\n";
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
        out << (j ? "," : "") << buf;
      }
      out << '\n';
    }
  };
  block("A", hp.A);
  block("B", hp.B);
}

Hyperparams read_hyperparams(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open hyperparameter file: " + path);
  Hyperparams hp;
  int n = -1;
  std::string line;
  int line_no = 0;
  Matrix* pending = nullptr;
  int pending_row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (pending && pending_row < n) {
      const auto fields = split_csv_line(line);
      if (static_cast<int>(fields.size()) != n)
        throw DataError(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(n) +
                        " matrix entries");
      for (int j = 0; j < n; ++j)
        (*pending)(pending_row, j) = parse_double(fields[j], path, line_no, j + 1);
      if (++pending_row == n) pending = nullptr;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "mu0") hp.mu0 = parse_double(value, path, line_no, 1);
    else if (key == "tau2") hp.tau2 = parse_double(value, path, line_no, 1);
    else if (key == "delta0") hp.delta0 = parse_double(value, path, line_no, 1);
    else if (key == "sigma2") hp.sigma2 = parse_double(value, path, line_no, 1);
    else if (key == "df") hp.df = parse_double(value, path, line_no, 1);
    else if (key == "p0") hp.p0 = parse_double(value, path, line_no, 1);
    else if (key == "n") {
      n = static_cast<int>(parse_int(value, path, line_no, 1));
      if (n < 1) throw DataError(path + ": matrix size must be positive");
      hp.A.resize(n, n);
      hp.B.resize(n, n);
    } else if (key == "A" || key == "B") {
      if (n < 1) throw DataError(path + ": 'n=' must precede matrix blocks");
      pending = key == "A" ? &hp.A : &hp.B;
      pending_row = 0;
    } else {
      throw DataError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (n < 1 || pending) throw DataError(path + ": incomplete hyperparameter file");
  return hp;
}

}  // namespace graphmm
