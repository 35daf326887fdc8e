#include "clcst/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "clcst/errors.hpp"

namespace clcst {

static_assert(std::endian::native == std::endian::little, "the file format assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'L', 'C', 'G'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw FormatError("unexpected end of file");
  return v;
}

struct Header {
  int n = 0;
  std::vector<std::uint32_t> axes;
  std::uint32_t blades = 0;
};

void write_binary(const std::string& path, const Header& h, const std::vector<double>& payload) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  os.write(kMagic, 4);
  put<std::uint16_t>(os, kFormatVersion);
  put<std::uint16_t>(os, static_cast<std::uint16_t>(h.n));
  put<std::uint16_t>(os, static_cast<std::uint16_t>(h.axes.size()));
  for (auto a : h.axes) put<std::uint32_t>(os, a);
  put<std::uint32_t>(os, h.blades);
  os.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size() * sizeof(double)));
  if (!os) throw FormatError("write failed for " + path);
}

Header read_binary(const std::string& path, std::vector<double>& payload) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw FormatError(path + " is not a CLCG file");
  const auto version = get<std::uint16_t>(is);
  if (version != kFormatVersion) throw FormatError("unsupported format version " + std::to_string(version));
  Header h;
  h.n = get<std::uint16_t>(is);
  const auto count = get<std::uint16_t>(is);
  std::size_t total = 1;
  for (int i = 0; i < count; ++i) {
    h.axes.push_back(get<std::uint32_t>(is));
    total *= h.axes.back();
  }
  h.blades = get<std::uint32_t>(is);
  total *= h.blades;
  payload.resize(total);
  is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(total * sizeof(double)));
  if (!is) throw FormatError(path + " is truncated");
  return h;
}

nlohmann::json read_sidecar(const std::string& path) {
  std::ifstream is(path + ".json");
  if (!is) throw FormatError("missing metadata sidecar " + path + ".json");
  return nlohmann::json::parse(is);
}

void write_sidecar(const std::string& path, const nlohmann::json& j) {
  std::ofstream os(path + ".json");
  if (!os) throw FormatError("cannot write " + path + ".json");
  os << j.dump(2) << "\n";
}

}  // namespace

nlohmann::json grid_spec_json(const GridSpec& g) {
  return {{"n", g.n},
          {"L", g.half_width},
          {"N", g.samples},
          {"signature", g.signature == Signature::negative ? "negative" : "positive"}};
}

GridSpec grid_spec_from_json(const nlohmann::json& j) {
  GridSpec g = GridSpec::make(j.at("n").get<int>(), j.at("L").get<double>(), j.at("N").get<int>());
  if (j.contains("signature")) {
    g.signature = j.at("signature") == "positive" ? Signature::positive : Signature::negative;
  }
  return g;
}

nlohmann::json lct_json(const LCTParams& M) { return {{"A", M.A}, {"B", M.B}, {"C", M.C}, {"D", M.D}}; }

LCTParams lct_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != 4) throw FormatError("M must have four entries");
    return LCTParams::make(v[0], v[1], v[2], v[3]);
  }
  return LCTParams::make(j.at("A"), j.at("B"), j.at("C"), j.at("D"));
}

void write_grid(const GridSignal& f, const std::string& path) {
  const GridSpec& g = f.spec();
  write_binary(path, {g.n, std::vector<std::uint32_t>(g.n, g.samples), static_cast<std::uint32_t>(f.blades())},
               f.raw());
  nlohmann::json meta = {{"kind", "grid"},
                         {"grid", grid_spec_json(g)},
                         {"domain", f.domain() == Domain::spatial ? "spatial" : "frequency"},
                         {"frequency_scale", f.scale()}};
  write_sidecar(path, meta);
}

GridSignal read_grid(const std::string& path) {
  std::vector<double> payload;
  const Header h = read_binary(path, payload);
  const auto meta = read_sidecar(path);
  if (meta.value("kind", "") != "grid") throw FormatError(path + " does not hold a grid signal");
  const GridSpec g = grid_spec_from_json(meta.at("grid"));
  if (h.n != g.n || h.axes != std::vector<std::uint32_t>(g.n, g.samples) || h.blades != g.algebra().blade_count()) {
    throw FormatError("binary header disagrees with the sidecar");
  }
  const Domain d = meta.value("domain", "spatial") == "frequency" ? Domain::frequency : Domain::spatial;
  GridSignal f(g, d, meta.value("frequency_scale", 1.0));
  f.raw() = std::move(payload);
  return f;
}

void write_volume(const CLCSTVolume& vol, const std::string& path) {
  const VolumeMeta& m = vol.meta();
  Header h{m.spec.n, {}, static_cast<std::uint32_t>(vol.blades())};
  if (m.b.all()) {
    h.axes.assign(m.spec.n, m.spec.samples);
  } else {
    h.axes.push_back(static_cast<std::uint32_t>(vol.b_count()));
  }
  h.axes.push_back(static_cast<std::uint32_t>(vol.u_count()));
  h.axes.push_back(static_cast<std::uint32_t>(vol.theta_count()));
  write_binary(path, h, vol.raw());
  nlohmann::json meta = {{"kind", "volume"},
                         {"grid", grid_spec_json(m.spec)},
                         {"b_indices", m.b.indices},
                         {"u_points", m.u.points},
                         {"u_weight", m.u.weight},
                         {"theta", m.theta.values},
                         {"theta_weight", m.theta.weight},
                         {"M", lct_json(m.M)},
                         {"window", m.window.to_json()},
                         {"path", to_string(m.path)}};
  write_sidecar(path, meta);
}

CLCSTVolume read_volume(const std::string& path) {
  std::vector<double> payload;
  const Header h = read_binary(path, payload);
  const auto j = read_sidecar(path);
  if (j.value("kind", "") != "volume") throw FormatError(path + " does not hold a volume");
  VolumeMeta m;
  m.spec = grid_spec_from_json(j.at("grid"));
  m.b.indices = j.at("b_indices").get<std::vector<std::size_t>>();
  m.u.points = j.at("u_points").get<std::vector<std::vector<double>>>();
  m.u.weight = j.at("u_weight").get<double>();
  m.theta.values = j.at("theta").get<std::vector<double>>();
  m.theta.weight = j.at("theta_weight").get<double>();
  m.M = lct_from_json(j.at("M"));
  m.window = Window::from_json(j.at("window"), m.spec.n);
  m.path = parse_path(j.at("path").get<std::string>());
  CLCSTVolume vol(std::move(m));
  if (h.n != vol.meta().spec.n || h.blades != vol.blades() || payload.size() != vol.raw().size()) {
    throw FormatError("binary header disagrees with the sidecar");
  }
  vol.raw() = std::move(payload);
  return vol;
}

void write_slice_csv(const CLCSTVolume& vol, std::size_t u_index, std::size_t theta_index, const std::string& path) {
  if (u_index >= vol.u_count() || theta_index >= vol.theta_count()) throw DomainError("slice index out of range");
  const GridSpec& g = vol.meta().spec;
  const auto x = g.spatial_coordinates();
  std::ofstream os(path);
  if (!os) throw FormatError("cannot open " + path);
  for (int a = 0; a < g.n; ++a) os << "b" << a + 1 << ",";
  os << "modulus\n";
  os.precision(17);
  for (std::size_t i = 0; i < vol.b_count(); ++i) {
    const std::size_t j = vol.meta().b.at(i);
    for (int a = 0; a < g.n; ++a) os << x[j * g.n + a] << ",";
    os << modulus(vol.at(i, u_index, theta_index)) << "\n";
  }
}

}  // namespace clcst
