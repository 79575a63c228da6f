#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace lansa::detail {

namespace {

// The planner is not thread-safe; execution with new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int m, Direction dir) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(m, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> a(static_cast<std::size_t>(m) * m * m), b(a.size());
    fftw_plan plan = fftw_plan_dft_3d(m, m, m, reinterpret_cast<fftw_complex*>(a.data()),
                                      reinterpret_cast<fftw_complex*>(b.data()),
                                      dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft3d(int m, const Complex* in, Complex* out, Direction dir) {
  fftw_plan plan = cache().get(m, dir);
  // Out-of-place complex transforms leave the input untouched.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace lansa::detail
