#pragma once

#include "ltmor/mesh.hpp"
#include "ltmor/metrics.hpp"
#include "ltmor/types.hpp"

#include <filesystem>
#include <string>

namespace ltmor::io {

enum class MatrixFormat { binary, csv };

MatrixFormat matrix_format_from_string(const std::string& name);

/// Binary layout (little-endian): "LTMORMAT", u32 version = 1, u32 scalar
/// kind (0 = real, 1 = complex), u64 rows, u64 cols, column-major payload.
/// CSV layout: one row per line, values in shortest round-trip form.
void write_matrix(const std::filesystem::path& path, const Eigen::Ref<const MatrixXd>& A,
                  MatrixFormat format = MatrixFormat::binary);
void write_matrix(const std::filesystem::path& path, const Eigen::Ref<const MatrixXc>& A);

/// Format is detected from the file contents.
MatrixXd read_matrix(const std::filesystem::path& path);
MatrixXc read_complex_matrix(const std::filesystem::path& path);

/// `index,value` with a header row; index starts at 1.
void write_singular_values(const std::filesystem::path& path, const Eigen::Ref<const VectorXd>& sigma);
void write_rel_error(const std::filesystem::path& path, const ErrorReport& report);
void write_timings(const std::filesystem::path& path, const TimingReport& timings);

/// Plain-text field file:
///   vertices <n>      followed by n lines "x y"
///   triangles <m>     followed by m lines "i j k"
///   values <n> <t>    followed by n lines "value"
/// `nodal` must hold one value per vertex.
void write_field(const std::filesystem::path& path, const Mesh& mesh,
                 const Eigen::Ref<const VectorXd>& nodal, double time);

/// Shortest round-trip decimal representation used in every CSV.
std::string format_double(double x);

}  // namespace ltmor::io
