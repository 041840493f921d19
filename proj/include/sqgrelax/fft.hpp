#pragma once

#include <complex>
#include <cstddef>

namespace sqg::fft {

// Unnormalized 2-D complex DFTs on an n-by-n array, row-major with the
// first coordinate fastest.  forward computes sum_j f_j exp(-i 2pi m.j/n),
// backward the conjugate sum.  Plans are cached per n and reused; plan
// creation is serialized, execution is thread-safe.  Plans are created
// with FFTW_ESTIMATE so results are reproducible run to run.
void forward(int n, const std::complex<double>* in, std::complex<double>* out);
void backward(int n, const std::complex<double>* in, std::complex<double>* out);

// Number of threads FFTW uses for subsequent plans (1 by default).
// Changing it invalidates the plan cache; call once at startup.
void set_threads(int nthreads);

}  // namespace sqg::fft
