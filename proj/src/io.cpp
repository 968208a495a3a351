#include "nlqed/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace nlqed::io {

namespace {

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Config, "cannot write " + path.string());
  return out;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error(ErrorKind::InvalidArgument, "truncated alpha file");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

constexpr char kMagic[8] = {'N', 'L', 'Q', 'A', 'L', 'P', 'H', 'A'};

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::filesystem::path& path)
    : impl_(new Impl{open_output(path, std::ios::out | std::ios::binary)}) {}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& name : names) cell(name);
  end_row();
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(std::size_t value) { return cell(std::to_string(value)); }

CsvWriter& CsvWriter::cell(const std::string& value) {
  if (!first_) impl_->out << ',';
  impl_->out << value;
  first_ = false;
  return *this;
}

void CsvWriter::end_row() {
  impl_->out << '\n';
  first_ = true;
}

void write_alpha_csv(const std::filesystem::path& path, const CouplingTensor& alpha) {
  CsvWriter csv(path);
  csv.header({"x1", "x2", "x3", "re_alpha", "im_alpha"});
  if (alpha.chi_zero) return;
  const std::size_t n = alpha.size();
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      for (std::size_t x3 = 0; x3 < n; ++x3) {
        const Complex a = alpha(x1, x2, x3);
        csv.cell(alpha.grid.x(x1)).cell(alpha.grid.x(x2)).cell(alpha.grid.x(x3)).cell(a.real()).cell(a.imag());
        csv.end_row();
      }
    }
  }
}

void write_alpha_binary(const std::filesystem::path& path, const CouplingTensor& alpha) {
  auto out = open_output(path, std::ios::out | std::ios::binary);
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint32_t>(out, 0);
  const std::uint64_t n = alpha.chi_zero ? 0 : alpha.size();
  for (int d = 0; d < 3; ++d) put_le<std::uint64_t>(out, n);
  put_le<double>(out, alpha.omega23);
  put_le<double>(out, alpha.omega2);
  put_le<double>(out, alpha.omega3);
  put_le<double>(out, alpha.grid.spacing());
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      for (std::size_t x3 = 0; x3 < n; ++x3) {
        const Complex a = alpha(x1, x2, x3);
        put_le<double>(out, a.real());
        put_le<double>(out, a.imag());
      }
    }
  }
  if (!out) throw Error(ErrorKind::Config, "failed writing " + path.string());
}

CouplingTensor read_alpha_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorKind::InvalidArgument, path.string() + " is not an alpha file");
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != 1) throw Error(ErrorKind::InvalidArgument, "unsupported alpha file version");
  (void)get_le<std::uint32_t>(in);
  const auto n1 = get_le<std::uint64_t>(in);
  const auto n2 = get_le<std::uint64_t>(in);
  const auto n3 = get_le<std::uint64_t>(in);
  if (n1 != n2 || n2 != n3) throw Error(ErrorKind::InvalidArgument, "alpha file dims must agree");
  CouplingTensor alpha;
  alpha.omega23 = get_le<double>(in);
  alpha.omega2 = get_le<double>(in);
  alpha.omega3 = get_le<double>(in);
  const double h = get_le<double>(in);
  if (n1 == 0) {
    alpha.chi_zero = true;
    return alpha;
  }
  const auto n = static_cast<std::size_t>(n1);
  alpha.grid = SpatialGrid1D(h * static_cast<double>(n - 1), n - 1);
  alpha.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      for (std::size_t x3 = 0; x3 < n; ++x3) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        alpha.values(static_cast<Eigen::Index>(x1), static_cast<Eigen::Index>(x2 + n * x3)) = Complex{re, im};
      }
    }
  }
  return alpha;
}

void write_green_csv(const std::filesystem::path& path, const GreenField& green) {
  CsvWriter csv(path);
  csv.header({"i", "j", "x_i", "x_j", "re_g", "im_g"});
  for (std::size_t i = 0; i < green.size(); ++i) {
    for (std::size_t j = 0; j < green.size(); ++j) {
      const Complex g = green(i, j);
      csv.cell(i).cell(j).cell(green.grid.x(i)).cell(green.grid.x(j)).cell(g.real()).cell(g.imag());
      csv.end_row();
    }
  }
}

void write_biphoton_csv(const std::filesystem::path& path, const BiphotonAmplitude& amplitude) {
  CsvWriter csv(path);
  csv.header({"m2", "m3", "re_psi", "im_psi"});
  const auto& psi = amplitude.psi;
  for (Eigen::Index r = 0; r < psi.rows(); ++r) {
    for (Eigen::Index c = 0; c < psi.cols(); ++c) {
      csv.cell(static_cast<std::size_t>(r)).cell(static_cast<std::size_t>(c));
      csv.cell(psi(r, c).real()).cell(psi(r, c).imag());
      csv.end_row();
    }
  }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  auto out = open_output(path, std::ios::out | std::ios::binary);
  out << value.dump(2) << '\n';
}

}  // namespace nlqed::io
