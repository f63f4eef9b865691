#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace gns::detail {
namespace {

using PlanKey = std::tuple<int, int, int>;  // dim, points, sign

// Plans are created once with FFTW_UNALIGNED so the new-array execute interface
// can be called concurrently on arbitrary buffers.
fftw_plan plan_for(const Grid& grid, int sign) {
  static std::mutex mutex;
  static std::map<PlanKey, fftw_plan> plans;
  const PlanKey key{grid.dim(), grid.points(), sign};
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = plans.find(key); it != plans.end()) return it->second;
  std::vector<int> dims(grid.dim(), grid.points());
  std::vector<std::complex<double>> scratch(grid.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft(grid.dim(), dims.data(), buf, buf, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(key, plan);
  return plan;
}

void execute(const Grid& grid, int sign, std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) {
  fftw_plan plan = plan_for(grid, sign);
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  auto* buf = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void fft_forward(const Grid& grid, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  execute(grid, FFTW_FORWARD, in, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
}

void fft_inverse(const Grid& grid, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  execute(grid, FFTW_BACKWARD, in, out);
}

}  // namespace gns::detail
