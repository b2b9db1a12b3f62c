#include "ek/field_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "ek/errors.hpp"

namespace ek {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

void save_field(const SpectralField& f, const std::string& path, double time_stamp) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw Error(ErrorCategory::io, "cannot open " + path);
  std::vector<float> buf(2 * f.size());
  for (std::int64_t i = 0; i < f.size(); ++i) {
    buf[2 * i] = static_cast<float>(f[i].real());
    buf[2 * i + 1] = static_cast<float>(f[i].imag());
  }
  bin.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!bin) throw Error(ErrorCategory::io, "write failed: " + path);

  std::ofstream meta(path + ".meta");
  meta << "dim " << f.grid().dim() << "\n";
  meta << "points_per_axis";
  for (int n : f.grid().points()) meta << " " << n;
  meta << "\nbox_length";
  meta.precision(17);
  for (double b : f.grid().box()) meta << " " << b;
  meta << "\nrepresentation " << (f.rep() == Rep::physical ? "physical" : "fourier") << "\n";
  meta << "time " << time_stamp << "\n";
  if (!meta) throw Error(ErrorCategory::io, "write failed: " + path + ".meta");
}

namespace {
struct Meta {
  std::vector<int> n;
  std::vector<double> box;
  Rep rep = Rep::physical;
  double time = 0.0;
};

Meta read_meta(const std::string& path) {
  std::ifstream meta(path + ".meta");
  if (!meta) throw Error(ErrorCategory::io, "cannot open " + path + ".meta");
  Meta m;
  int dim = 0;
  std::string line;
  while (std::getline(meta, line)) {
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "dim") ss >> dim;
    else if (key == "points_per_axis") { int v; while (ss >> v) m.n.push_back(v); }
    else if (key == "box_length") { double v; while (ss >> v) m.box.push_back(v); }
    else if (key == "representation") {
      std::string r; ss >> r;
      m.rep = (r == "fourier") ? Rep::fourier : Rep::physical;
    } else if (key == "time") ss >> m.time;
  }
  if (dim <= 0 || static_cast<int>(m.n.size()) != dim || m.box.size() != m.n.size())
    throw Error(ErrorCategory::io, "malformed metadata: " + path + ".meta");
  return m;
}
}  // namespace

SpectralField load_field(const std::string& path) {
  const Meta m = read_meta(path);
  Grid g(m.n, m.box);
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw Error(ErrorCategory::io, "cannot open " + path);
  std::vector<float> buf(2 * g.size());
  bin.read(reinterpret_cast<char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (bin.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(float)))
    throw Error(ErrorCategory::io, "truncated snapshot: " + path);
  std::vector<cplx> data(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i)
    data[i] = cplx{static_cast<double>(buf[2 * i]), static_cast<double>(buf[2 * i + 1])};
  return SpectralField(std::move(g), m.rep, std::move(data));
}

double load_field_time(const std::string& path) { return read_meta(path).time; }

}  // namespace ek
