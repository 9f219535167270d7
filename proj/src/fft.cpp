#include "bdsg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace bdsg::fft {

namespace {

// fftw_execute_dft is thread-safe; plan creation is not and goes through a
// mutex. FFTW_UNALIGNED keeps the cached plans valid for any buffer.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::scoped_lock lock(mu_);
        const auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(std::span<std::complex<double>> data, int sign) {
    if (data.size() < 2) return; // length-1 transform is the identity
    fftw_plan plan = cache().get(static_cast<int>(data.size()), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace

void forward(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }
void backward(std::span<std::complex<double>> data) { execute(data, FFTW_BACKWARD); }

} // namespace bdsg::fft
