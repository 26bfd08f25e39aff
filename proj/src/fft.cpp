#include "disac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace disac::fft {
namespace {

using Key = std::tuple<int, int, int, int, int>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(int n, int count, int stride, int dist, int sign) {
    std::lock_guard lock(mu);
    const Key key{n, count, stride, dist, sign};
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    // Plan on scratch memory; execution uses the new-array interface.
    std::vector<fftw_complex> scratch(static_cast<size_t>(dist) * (count - 1) +
                                      static_cast<size_t>(stride) * (n - 1) + 1);
    int dims[] = {n};
    fftw_plan p = fftw_plan_many_dft(1, dims, count, scratch.data(), nullptr, stride, dist,
                                     scratch.data(), nullptr, stride, dist, sign,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw NumericError("fftw: failed to create plan");
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void transform(cd* data, int n, int count, int stride, int dist, Sign sign) {
  if (n <= 1 || count <= 0) return;
  fftw_plan p = cache().get(n, count, stride, dist, sign == Sign::Forward ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* io = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, io, io);
}

}  // namespace disac::fft
