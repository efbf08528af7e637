#include "nilquant/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nilquant {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.precision(17);
  return out;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

fs::path sidecar_path(const fs::path& p) { return fs::path(p.string() + ".json"); }

void write_node(std::ostream& out, const Vec& p) {
  for (int k = 0; k < p.size(); ++k) out << p(k) << ',';
}

}  // namespace

Json grid_to_json(const Grid& g) {
  Json j;
  j["half_width"] = std::vector<double>(g.half_width().data(), g.half_width().data() + g.dim());
  j["counts"] = g.counts();
  return j;
}

Grid grid_from_json(const Json& j) {
  auto L = j.at("half_width").get<std::vector<double>>();
  auto N = j.at("counts").get<std::vector<int>>();
  if (L.size() != N.size()) throw IoError("grid: half_width and counts differ in length");
  Vec hw(static_cast<Eigen::Index>(L.size()));
  for (std::size_t k = 0; k < L.size(); ++k) hw(static_cast<Eigen::Index>(k)) = L[k];
  return Grid(hw, N);
}

void write_matrix_csv(const fs::path& path, const CMatrix& K) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      if (j) out << ',';
      out << K(i, j).real() << ',' << K(i, j).imag();
    }
    out << '\n';
  }
  finish(out, path);
}

CMatrix read_matrix_csv(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() % 2)
      throw IoError(path.string() + ": odd number of values in row " + std::to_string(rows.size() + 1));
    std::vector<Complex> row;
    for (std::size_t k = 0; k < vals.size(); k += 2) row.emplace_back(vals[k], vals[k + 1]);
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError(path.string() + ": ragged row " + std::to_string(rows.size() + 1));
    rows.push_back(std::move(row));
  }
  CMatrix K(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < K.rows(); ++i)
    for (Eigen::Index j = 0; j < K.cols(); ++j) K(i, j) = rows[i][j];
  return K;
}

void write_operator_binary(const fs::path& path, const OperatorMatrix& op, const std::string& scheme,
                           const Json& extra) {
  const CMatrix& K = op.kernel();
  {
    auto out = open_out(path, std::ios::out | std::ios::binary);
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      for (Eigen::Index j = 0; j < K.cols(); ++j) {
        put_le(out, K(i, j).real());
        put_le(out, K(i, j).imag());
      }
    finish(out, path);
  }
  Json side;
  side["format"] = kMatrixFormat;
  side["rows"] = K.rows();
  side["cols"] = K.cols();
  side["order"] = "row-major";
  side["weight"] = op.weight();
  side["grid"] = grid_to_json(op.grid());
  side["scheme"] = scheme;
  side["paper_check_version"] = kPaperCheckVersion;
  for (auto it = extra.begin(); it != extra.end(); ++it) side[it.key()] = it.value();
  write_json(sidecar_path(path), side);
}

Json read_sidecar(const fs::path& path) {
  auto in = open_in(sidecar_path(path));
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw IoError(sidecar_path(path).string() + ": " + e.what());
  }
}

OperatorMatrix read_operator_binary(const fs::path& path) {
  const Json side = read_sidecar(path);
  if (side.value("format", "") != kMatrixFormat) throw IoError(path.string() + ": unsupported matrix format");
  const auto rows = side.at("rows").get<Eigen::Index>();
  const auto cols = side.at("cols").get<Eigen::Index>();
  Grid g = grid_from_json(side.at("grid"));
  if (static_cast<Eigen::Index>(g.size()) != rows || rows != cols)
    throw IoError(path.string() + ": shape does not match the grid");

  auto in = open_in(path, std::ios::in | std::ios::binary);
  std::vector<unsigned char> buf(static_cast<std::size_t>(rows * cols) * 16);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw IoError(path.string() + ": truncated matrix");
  CMatrix K(rows, cols);
  const unsigned char* p = buf.data();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j, p += 16) K(i, j) = {get_le(p), get_le(p + 8)};
  return OperatorMatrix(std::move(g), std::move(K));
}

void write_field_csv(const fs::path& path, const Field& f, const Grid& g) {
  auto out = open_out(path);
  for (int k = 0; k < g.dim(); ++k) out << 'x' << k + 1 << ',';
  out << "re,im\n";
  const CVector v = f.sample(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    write_node(out, g.node(i));
    out << v(static_cast<Eigen::Index>(i)).real() << ',' << v(static_cast<Eigen::Index>(i)).imag() << '\n';
  }
  finish(out, path);
}

void write_field_csv(const fs::path& path, const Field& f, const XiGrid& xi) {
  auto out = open_out(path);
  for (int k = 0; k < xi.dim(); ++k) out << 'z' << k + 1 << ',';
  for (int k = 0; k < xi.dim(); ++k) out << "zeta" << k + 1 << ',';
  out << "re,im\n";
  const CVector v = f.sample(xi);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const PhasePoint p = xi.node(i);
    write_node(out, p.z);
    write_node(out, p.zeta);
    out << v(static_cast<Eigen::Index>(i)).real() << ',' << v(static_cast<Eigen::Index>(i)).imag() << '\n';
  }
  finish(out, path);
}

Json report_to_json(const Report& r, std::uint64_t seed, double tol_scale) {
  Json j;
  j["seed"] = seed;
  j["tol_scale"] = tol_scale;
  j["passed"] = r.passed();
  std::size_t failed = 0;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    if (!c.passed) ++failed;
    Json e;
    e["name"] = c.name;
    // NaN is not representable in JSON; it is reported as null.
    e["residual"] = std::isfinite(c.residual) ? Json(c.residual) : Json(nullptr);
    e["tolerance"] = c.tolerance;
    e["passed"] = c.passed;
    e["seconds"] = c.seconds;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["total"] = r.checks.size();
  j["failed"] = failed;
  j["checks"] = std::move(checks);
  return j;
}

void write_json(const fs::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

}  // namespace nilquant
