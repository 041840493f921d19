#include "sqgrelax/field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sqgrelax/fft.hpp"

namespace sqg {
namespace {

// Checkerboard phase (-1)^(m1+m2) translating between the index-origin
// DFT and coefficients for the box centered at zero.  Parity of the
// storage index equals parity of the signed mode because n is even.
inline double phase(int s1, int s2) { return ((s1 + s2) & 1) ? -1.0 : 1.0; }

}  // namespace

Field::Field(const GridSpec& grid) : grid_(grid) {}

Field Field::from_physical(const GridSpec& grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw std::logic_error("Field: physical size does not match grid");
    Field f(grid);
    f.phys_ = std::move(values);
    f.has_phys_ = true;
    return f;
}

Field Field::from_spectral(const GridSpec& grid, std::vector<cplx> coeffs) {
    if (coeffs.size() != grid.size())
        throw std::logic_error("Field: spectral size does not match grid");
    Field f(grid);
    f.spec_ = std::move(coeffs);
    f.has_spec_ = true;
    return f;
}

Field Field::zero(const GridSpec& grid) {
    Field f(grid);
    f.spec_.assign(grid.size(), cplx(0.0, 0.0));
    f.phys_.assign(grid.size(), 0.0);
    f.has_spec_ = true;
    f.has_phys_ = true;
    return f;
}

const std::vector<double>& Field::physical() const {
    if (!has_phys_)
        throw std::logic_error("Field: physical representation is stale");
    return phys_;
}

const std::vector<cplx>& Field::spectral() const {
    if (!has_spec_)
        throw std::logic_error("Field: spectral representation is stale");
    return spec_;
}

std::vector<double>& Field::mutable_physical() {
    if (!has_phys_) phys_.assign(grid_.size(), 0.0);
    has_phys_ = true;
    has_spec_ = false;
    return phys_;
}

std::vector<cplx>& Field::mutable_spectral() {
    if (!has_spec_) spec_.assign(grid_.size(), cplx(0.0, 0.0));
    has_spec_ = true;
    has_phys_ = false;
    return spec_;
}

Field& Field::to_spectral() {
    if (has_spec_) return *this;
    if (!has_phys_) throw std::logic_error("Field: no representation to transform");

    const int n = grid_.n;
    const std::size_t sz = grid_.size();
    std::vector<cplx> in(sz);
    for (std::size_t i = 0; i < sz; ++i) in[i] = phys_[i];
    spec_.assign(sz, cplx());
    fft::forward(n, in.data(), spec_.data());

    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    for (int s2 = 0; s2 < n; ++s2)
        for (int s1 = 0; s1 < n; ++s1) {
            const std::size_t idx = grid_.flat(s1, s2);
            spec_[idx] *= phase(s1, s2) * inv_n2;
        }
    has_spec_ = true;
    return *this;
}

Field& Field::to_physical() {
    if (has_phys_) return *this;
    if (!has_spec_) throw std::logic_error("Field: no representation to transform");

    const int n = grid_.n;
    const std::size_t sz = grid_.size();
    std::vector<cplx> in(sz), out(sz);
    for (int s2 = 0; s2 < n; ++s2)
        for (int s1 = 0; s1 < n; ++s1) {
            const std::size_t idx = grid_.flat(s1, s2);
            in[idx] = spec_[idx] * phase(s1, s2);
        }
    fft::backward(n, in.data(), out.data());

    phys_.assign(sz, 0.0);
    double max_abs = 0.0, max_imag = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
        phys_[i] = out[i].real();
        max_abs = std::max(max_abs, std::abs(out[i].real()));
        max_imag = std::max(max_imag, std::abs(out[i].imag()));
    }
    imag_residual_ = max_abs > 0.0 ? max_imag / max_abs : max_imag;
    has_phys_ = true;
    return *this;
}

cplx Field::zero_mode() const {
    if (has_spec_) return spec_[0];
    // Mean of the physical samples equals c_0 directly.
    const std::vector<double>& p = physical();
    double sum = 0.0;
    for (double v : p) sum += v;
    return cplx(sum / static_cast<double>(p.size()), 0.0);
}

double Field::spectral_l2() const {
    if (has_spec_) {
        double s = 0.0;
        for (const cplx& c : spec_) s += std::norm(c);
        return std::sqrt(s);
    }
    // Same quantity from the physical side by Parseval.
    const std::vector<double>& p = physical();
    double s = 0.0;
    for (double v : p) s += v * v;
    return std::sqrt(s / static_cast<double>(p.size()));
}

}  // namespace sqg
