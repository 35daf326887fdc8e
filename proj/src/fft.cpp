#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace clcst::detail {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int N, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_tuple(n, N, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<int> dims(n, N);
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= N;
  // Plans are created on scratch arrays and later executed with the new-array
  // interface, so they must not assume alignment.
  std::vector<cplx> scratch(total);
  auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft(n, dims.data(), p, p, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

// (-1)^{sum of indices} over a row-major cube. N is even, so each row along
// the last axis alternates starting from the parity of its other indices.
void alternate(std::vector<cplx>& data, int n, int N, bool negate_all) {
  std::vector<int> idx(std::max(n - 1, 0), 0);
  const std::size_t rows = data.size() / N;
  for (std::size_t r = 0; r < rows; ++r) {
    int s = 0;
    for (int v : idx) s += v;
    cplx* row = data.data() + r * N;
    for (int j = ((s & 1) != 0) == negate_all ? 1 : 0; j < N; j += 2) row[j] = -row[j];
    for (int a = n - 2; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

void dft(std::vector<cplx>& data, int n, int N, int sign) {
  fftw_plan plan = plan_for(n, N, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

void centered_dft(std::vector<cplx>& data, int n, int N, int sign) {
  // w_m x_j = 2 pi m j / N - pi j - pi m + pi N/2 per axis.
  const bool global = ((n * (N / 2)) & 1) != 0;
  alternate(data, n, N, false);
  dft(data, n, N, sign);
  alternate(data, n, N, global);
}

namespace {

// Flat index of -w_m for every m: per axis m -> (N - m) mod N.
std::vector<std::size_t> reflected_indices(int n, int N) {
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= N;
  std::vector<std::size_t> out(total);
  std::vector<int> idx(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t r = 0;
    for (int a = 0; a < n; ++a) r = r * N + static_cast<std::size_t>((N - idx[a]) % N);
    out[k] = r;
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace

void clifford_dft(const GridSignal& f, GridSignal& out, int sign) {
  const GridSpec& g = f.spec();
  const AlgebraContext& alg = f.algebra();
  const std::size_t p = alg.pseudoscalar_blade();
  const std::size_t np = f.points();
  for (double& v : out.raw()) v = 0.0;
  std::vector<std::size_t> live;
  for (std::size_t b = 0; b < alg.blade_count(); ++b) {
    auto fb = f.component(b);
    if (std::any_of(fb.begin(), fb.end(), [](double v) { return v != 0.0; })) live.push_back(b);
  }
  auto scatter = [&](std::size_t b, std::size_t k, cplx F) {
    out.value(k, b) += F.real();
    out.value(k, b ^ p) += alg.product_sign(b, p) * F.imag();
  };
  std::vector<cplx> buf(np);
  std::vector<std::size_t> mirror;
  // Two real blades share one complex transform; the centered DFT of real
  // data satisfies F(-w) = conj F(w), which separates them again.
  for (std::size_t i = 0; i < live.size(); i += 2) {
    const std::size_t b = live[i];
    auto fb = f.component(b);
    if (i + 1 == live.size()) {
      for (std::size_t k = 0; k < np; ++k) buf[k] = fb[k];
      centered_dft(buf, g.n, g.samples, sign);
      for (std::size_t k = 0; k < np; ++k) scatter(b, k, buf[k]);
      break;
    }
    const std::size_t c = live[i + 1];
    auto fc = f.component(c);
    for (std::size_t k = 0; k < np; ++k) buf[k] = {fb[k], fc[k]};
    centered_dft(buf, g.n, g.samples, sign);
    if (mirror.empty()) mirror = reflected_indices(g.n, g.samples);
    for (std::size_t k = 0; k < np; ++k) {
      const cplx z = buf[k], zr = std::conj(buf[mirror[k]]);
      scatter(b, k, 0.5 * (z + zr));
      scatter(c, k, cplx(0.0, -0.5) * (z - zr));
    }
  }
}

}  // namespace clcst::detail
