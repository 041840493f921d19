#include "sqgrelax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sqg::fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_mutex;
std::map<int, PlanPair> g_plans;
int g_threads = 1;
bool g_threads_initialized = false;

PlanPair& plans_for(int n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_plans.find(n);
    if (it != g_plans.end()) return it->second;

    if (g_threads > 1 && !g_threads_initialized) {
        fftw_init_threads();
        g_threads_initialized = true;
    }
    if (g_threads_initialized) fftw_plan_with_nthreads(g_threads);

    // Scratch buffers only shape the plan; FFTW_UNALIGNED lets the same
    // plan run on any caller-provided storage via fftw_execute_dft.
    fftw_complex* a = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    fftw_complex* b = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    if (!a || !b) throw std::bad_alloc();

    PlanPair pair;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pair.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, flags);
    pair.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, flags);
    fftw_free(a);
    fftw_free(b);
    if (!pair.fwd || !pair.bwd)
        throw std::runtime_error("fft: plan creation failed");
    return g_plans.emplace(n, pair).first->second;
}

fftw_complex* as_fftw(const std::complex<double>* p) {
    return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

void forward(int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_execute_dft(plans_for(n).fwd, as_fftw(in), as_fftw(out));
}

void backward(int n, const std::complex<double>* in, std::complex<double>* out) {
    fftw_execute_dft(plans_for(n).bwd, as_fftw(in), as_fftw(out));
}

void set_threads(int nthreads) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (nthreads < 1) nthreads = 1;
    if (nthreads == g_threads) return;
    for (auto& [n, pair] : g_plans) {
        fftw_destroy_plan(pair.fwd);
        fftw_destroy_plan(pair.bwd);
    }
    g_plans.clear();
    g_threads = nthreads;
}

}  // namespace sqg::fft
