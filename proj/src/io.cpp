#include "ltmor/io.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace ltmor::io {

namespace {

constexpr char kMagic[8] = {'L', 'T', 'M', 'O', 'R', 'M', 'A', 'T'};
constexpr std::uint32_t kVersion = 1;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("truncated matrix file '" + path.string() + "'");
  return value;
}

struct Header {
  std::uint32_t kind;
  std::uint64_t rows;
  std::uint64_t cols;
};

void write_header(std::ostream& out, std::uint32_t kind, Index rows, Index cols) {
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, kind);
  put(out, static_cast<std::uint64_t>(rows));
  put(out, static_cast<std::uint64_t>(cols));
}

bool has_magic(std::istream& in) {
  std::array<char, 8> buf{};
  in.read(buf.data(), buf.size());
  const bool ok = in && std::memcmp(buf.data(), kMagic, sizeof(kMagic)) == 0;
  if (!ok) {
    in.clear();
    in.seekg(0);
  }
  return ok;
}

Header read_header(std::istream& in, const std::filesystem::path& path) {
  const auto version = get<std::uint32_t>(in, path);
  if (version != kVersion) {
    throw std::runtime_error("unsupported matrix file version in '" + path.string() + "'");
  }
  Header h{};
  h.kind = get<std::uint32_t>(in, path);
  h.rows = get<std::uint64_t>(in, path);
  h.cols = get<std::uint64_t>(in, path);
  return h;
}

MatrixXd read_csv_matrix(std::istream& in, const std::filesystem::path& path) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      const auto* first = cell.data();
      const auto* last = cell.data() + cell.size();
      while (first < last && *first == ' ') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{}) {
        throw std::runtime_error("bad number '" + cell + "' in '" + path.string() + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged CSV matrix '" + path.string() + "'");
    }
    rows.push_back(std::move(row));
  }
  const Index r = static_cast<Index>(rows.size());
  const Index c = r > 0 ? static_cast<Index>(rows.front().size()) : 0;
  MatrixXd A(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return A;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

MatrixFormat matrix_format_from_string(const std::string& name) {
  if (name == "binary") return MatrixFormat::binary;
  if (name == "csv") return MatrixFormat::csv;
  throw std::invalid_argument("unknown matrix format '" + name + "' (expected binary or csv)");
}

void write_matrix(const std::filesystem::path& path, const Eigen::Ref<const MatrixXd>& A,
                  MatrixFormat format) {
  if (format == MatrixFormat::csv) {
    auto out = open_out(path);
    for (Index i = 0; i < A.rows(); ++i) {
      for (Index j = 0; j < A.cols(); ++j) {
        if (j > 0) out << ',';
        out << format_double(A(i, j));
      }
      out << '\n';
    }
    return;
  }
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_header(out, 0, A.rows(), A.cols());
  const MatrixXd dense = A;
  out.write(reinterpret_cast<const char*>(dense.data()),
            static_cast<std::streamsize>(sizeof(double) * dense.size()));
}

void write_matrix(const std::filesystem::path& path, const Eigen::Ref<const MatrixXc>& A) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  write_header(out, 1, A.rows(), A.cols());
  const MatrixXc dense = A;
  out.write(reinterpret_cast<const char*>(dense.data()),
            static_cast<std::streamsize>(sizeof(Complex) * dense.size()));
}

MatrixXd read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  if (!has_magic(in)) return read_csv_matrix(in, path);
  const Header h = read_header(in, path);
  if (h.kind != 0) throw std::runtime_error("'" + path.string() + "' holds a complex matrix");
  MatrixXd A(static_cast<Index>(h.rows), static_cast<Index>(h.cols));
  in.read(reinterpret_cast<char*>(A.data()), static_cast<std::streamsize>(sizeof(double) * A.size()));
  if (!in) throw std::runtime_error("truncated matrix file '" + path.string() + "'");
  return A;
}

MatrixXc read_complex_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !has_magic(in)) throw std::runtime_error("'" + path.string() + "' is not a matrix file");
  const Header h = read_header(in, path);
  if (h.kind != 1) throw std::runtime_error("'" + path.string() + "' holds a real matrix");
  MatrixXc A(static_cast<Index>(h.rows), static_cast<Index>(h.cols));
  in.read(reinterpret_cast<char*>(A.data()), static_cast<std::streamsize>(sizeof(Complex) * A.size()));
  if (!in) throw std::runtime_error("truncated matrix file '" + path.string() + "'");
  return A;
}

void write_singular_values(const std::filesystem::path& path, const Eigen::Ref<const VectorXd>& sigma) {
  auto out = open_out(path);
  out << "index,value\n";
  for (Index j = 0; j < sigma.size(); ++j) {
    out << (j + 1) << ',' << format_double(sigma(j)) << '\n';
  }
}

void write_rel_error(const std::filesystem::path& path, const ErrorReport& report) {
  auto out = open_out(path);
  out << "R,M,L2,H1\n";
  for (const auto& row : report.rows) {
    out << row.R << ',' << row.M << ',' << format_double(row.rel_error_L2) << ','
        << format_double(row.rel_error_H1) << '\n';
  }
}

void write_timings(const std::filesystem::path& path, const TimingReport& t) {
  auto out = open_out(path);
  out << "phase,seconds\n";
  out << "assemble_fem," << format_double(t.assemble_fem) << '\n';
  out << "laplace_hf_solves," << format_double(t.laplace_hf_solves) << '\n';
  out << "build_rb," << format_double(t.build_rb) << '\n';
  out << "solve_td_rb," << format_double(t.solve_td_rb) << '\n';
  out << "reconstruct_hf," << format_double(t.reconstruct_hf) << '\n';
  out << "hf_total," << format_double(t.hf_total) << '\n';
  out << "rb_total," << format_double(t.rb_total()) << '\n';
  out << "speed_up," << format_double(t.speed_up()) << '\n';
}

void write_field(const std::filesystem::path& path, const Mesh& mesh,
                 const Eigen::Ref<const VectorXd>& nodal, double time) {
  if (nodal.size() != mesh.num_vertices()) {
    throw std::invalid_argument("write_field: one value per vertex required");
  }
  auto out = open_out(path);
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& v : mesh.vertices) out << format_double(v.x()) << ' ' << format_double(v.y()) << '\n';
  out << "triangles " << mesh.num_triangles() << '\n';
  for (const auto& t : mesh.triangles) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "values " << nodal.size() << ' ' << format_double(time) << '\n';
  for (Index i = 0; i < nodal.size(); ++i) out << format_double(nodal(i)) << '\n';
}

}  // namespace ltmor::io
