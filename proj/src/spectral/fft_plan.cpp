#include "fft_plan.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "fsl/common/error.hpp"

namespace fsl::detail {

namespace {

using Key = std::tuple<int, int, int, int, int, int>;  // kind, dim, points, howmany, stride, sign

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan blocks(int dim, int points, int howmany, int sign) {
    const Key key{0, dim, points, howmany, 0, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<int> n(dim, points);
    int block = 1;
    for (int d = 0; d < dim; ++d) block *= points;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(block) * howmany);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_many_dft(dim, n.data(), howmany, buf, nullptr, 1, block, buf, nullptr,
                                        1, block, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("FFTW failed to create a block plan");
    plans_.emplace(key, plan);
    return plan;
  }

  fftw_plan columns(int length, int stride, int sign) {
    const Key key{1, 1, length, stride, stride, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(length) * stride);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int n = length;
    fftw_plan plan = fftw_plan_many_dft(1, &n, stride, buf, nullptr, stride, 1, buf, nullptr, stride,
                                        1, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw Error("FFTW failed to create a column plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_blocks(std::complex<double>* data, int dim, int points, int howmany, int sign) {
  auto plan = cache().blocks(dim, points, howmany, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

void fft_columns(std::complex<double>* data, int length, int stride, int sign) {
  auto plan = cache().columns(length, stride, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace fsl::detail
