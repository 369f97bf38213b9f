#include "chainwish/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace chainwish {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

Eigen::VectorXd vector_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw FormatError(std::string("missing array field \"") + key + "\"");
  const auto& a = j.at(key);
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw FormatError(std::string("non-numeric entry in \"") + key + "\"");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> band_fields(const json& j) {
  if (!j.is_object()) throw FormatError("band matrix must be a JSON object");
  Eigen::VectorXd d = vector_field(j, "diag"), o = vector_field(j, "off");
  if (j.contains("n") && j.at("n").get<int>() != d.size())
    throw FormatError("\"n\" disagrees with the length of \"diag\"");
  if (d.size() < 1 || o.size() != d.size() - 1) throw FormatError("band matrix needs n diag and n-1 off entries");
  return {d, o};
}

std::string list(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

double parse_number(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || !blank(field.substr(used)))
    throw FormatError("line " + std::to_string(line) + ": cannot parse \"" + field + "\" as a number");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw FormatError("cannot serialize a non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string band_to_json(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  return "{\"n\": " + std::to_string(diag.size()) + ", \"diag\": " + list(diag) + ", \"off\": " + list(off) + "}";
}

std::string to_json(const TridiagSym& y) { return band_to_json(y.diag(), y.off()); }
std::string to_json(const IncompleteSym& x) { return band_to_json(x.diag(), x.off()); }

TridiagSym tridiag_from_json(const std::string& text) {
  auto [d, o] = band_fields(parse(text));
  return {d, o};
}

IncompleteSym incomplete_from_json(const std::string& text) {
  auto [d, o] = band_fields(parse(text));
  return {d, o};
}

FamilyParams params_from_json(const std::string& text, const std::string& key) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("M") || !j.at("M").is_number_integer())
    throw FormatError("parameters need an integer \"M\"");
  if (!j.contains(key)) throw FormatError("parameters need a \"" + key + "\" band matrix");
  const int m = j.at("M").get<int>();
  auto [d, o] = band_fields(j.at(key));
  std::optional<Eigen::VectorXd> sigma;
  if (j.contains("sigma")) sigma = vector_field(j, "sigma");
  Eigen::VectorXd s;
  if (j.contains("s")) {
    s = vector_field(j, "s");
  } else if (sigma) {
    if (sigma->size() != d.size()) throw FormatError("\"sigma\" must have n entries");
    if (m < 1 || m > d.size()) throw FormatError("\"M\" must lie in 1..n");
    s = shape_from_sigma(*sigma, m).s();
  } else {
    throw FormatError("parameters need \"s\" or \"sigma\"");
  }
  if (s.size() != d.size()) throw FormatError("\"s\" must have n entries");
  if (m < 1 || m > d.size()) throw FormatError("\"M\" must lie in 1..n");
  return {ShapeParams(m, s), d, o, sigma};
}

std::string params_to_json(const FamilyParams& p, const std::string& key) {
  std::string out = "{\"M\": " + std::to_string(p.shape.pivot()) + ", \"s\": " + list(p.shape.s());
  if (p.sigma) out += ", \"sigma\": " + list(*p.sigma);
  return out + ", \"" + key + "\": " + band_to_json(p.diag, p.off) + "}";
}

HParams hparams_from_json(const std::string& text) {
  const json j = parse(text);
  HParams h{vector_field(j, "alpha"), vector_field(j, "beta")};
  if (h.alpha.size() < 1 || h.beta.size() != h.alpha.size() - 1)
    throw FormatError("H parameters need n-1 alpha and n-2 beta entries");
  return h;
}

std::string hparams_to_json(const HParams& h) {
  return "{\"alpha\": " + list(h.alpha) + ", \"beta\": " + list(h.beta) + "}";
}

DenseSym dense_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (blank(line)) continue;
    std::vector<double> row;
    for (const auto& f : split_csv(line)) row.push_back(parse_number(f, no));
    rows.push_back(std::move(row));
  }
  const auto n = rows.size();
  if (n == 0) throw FormatError("empty matrix file");
  DenseSym a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw FormatError("matrix file is not square");
    for (std::size_t k = 0; k < n; ++k) a(i, k) = rows[i][k];
  }
  if (!a.isApprox(a.transpose(), 1e-12)) throw FormatError("matrix file is not symmetric");
  return a;
}

void dense_to_csv(std::ostream& out, const DenseSym& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) out << (k ? "," : "") << format_double(a(i, k));
    out << '\n';
  }
}

void write_sample_header(std::ostream& out, const std::vector<std::string>& metadata, int n) {
  for (const auto& m : metadata) out << "# " << m << '\n';
  for (int i = 1; i <= n; ++i) out << (i > 1 ? "," : "") << "d" << i;
  for (int i = 1; i < n; ++i) out << ",o" << i;
  out << '\n';
}

void write_sample_row(std::ostream& out, const Eigen::VectorXd& coords) {
  for (Eigen::Index i = 0; i < coords.size(); ++i) out << (i ? "," : "") << format_double(coords[i]);
  out << '\n';
}

std::vector<Eigen::VectorXd> read_samples(std::istream& in) {
  std::vector<Eigen::VectorXd> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (blank(line) || line[0] == '#' || line[0] == 'd') continue;
    const auto fields = split_csv(line);
    Eigen::VectorXd v(static_cast<Eigen::Index>(fields.size()));
    for (std::size_t i = 0; i < fields.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_number(fields[i], no);
    out.push_back(std::move(v));
  }
  return out;
}

MissingDataset missing_from_csv(std::istream& in) {
  MissingDataset ds;
  std::string line;
  std::size_t no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++no;
    if (blank(line) || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (ds.n == 0) ds.n = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != ds.n)
      throw FormatError("line " + std::to_string(no) + " has " + std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(ds.n));
    if (ds.rows.empty() && !header_seen) {
      header_seen = true;
      bool numeric = true;
      for (const auto& f : fields) {
        if (blank(f)) continue;
        try {
          parse_number(f, no);
        } catch (const FormatError&) {
          numeric = false;
        }
      }
      if (!numeric) continue;  // column names
    }
    std::vector<std::optional<double>> row;
    for (const auto& f : fields) {
      if (blank(f))
        row.emplace_back(std::nullopt);
      else
        row.emplace_back(parse_number(f, no));
    }
    ds.rows.push_back(std::move(row));
  }
  if (ds.n == 0) throw FormatError("missing-data file has no rows");
  return ds;
}

}  // namespace chainwish
