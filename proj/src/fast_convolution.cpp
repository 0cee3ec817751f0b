#include "fracdeg/error.hpp"
#include "fracdeg/fractional_operator.hpp"

#include <fftw3.h>

#include <complex>
#include <cstring>

namespace fracdeg {

namespace {

// Smallest n >= target of the form 2^a 3^b 5^c 7^d.
long smooth_size(long target) {
    for (long n = std::max(target, 1L);; ++n) {
        long m = n;
        for (long p : {2L, 3L, 5L, 7L})
            while (m % p == 0) m /= p;
        if (m == 1) return n;
    }
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<fftw_plan_s, PlanDestroy>;

} // namespace

struct FastNonlocalOperator::Impl {
    Grid grid;
    double total_mass = 0.0;
    long padded[2] = {1, 1};
    std::size_t real_size = 0, spectral_size = 0;
    RealBuffer real;
    ComplexBuffer spectrum;
    std::vector<std::complex<double>> kernel_hat;
    Plan forward, backward;

    Impl(const NonlocalWeights& w, const Grid& g) : grid(g), total_mass(w.total_mass()) {
        check_compatible(w, g);
        const long k = w.half_width;
        // Circular convolution of length >= n + K never wraps onto the window.
        padded[0] = smooth_size(std::max(g.cells[0] + k, 2 * k + 1));
        if (g.dim == 2) padded[1] = smooth_size(std::max(g.cells[1] + k, 2 * k + 1));
        const long last = g.dim == 2 ? padded[1] : padded[0];
        real_size = static_cast<std::size_t>(padded[0] * (g.dim == 2 ? padded[1] : 1));
        spectral_size = static_cast<std::size_t>((g.dim == 2 ? padded[0] : 1) * (last / 2 + 1));
        real.reset(fftw_alloc_real(real_size));
        spectrum.reset(fftw_alloc_complex(spectral_size));
        if (!real || !spectrum) throw Error("FFTW allocation failed");

        if (g.dim == 1) {
            forward.reset(fftw_plan_dft_r2c_1d(int(padded[0]), real.get(), spectrum.get(), FFTW_ESTIMATE));
            backward.reset(fftw_plan_dft_c2r_1d(int(padded[0]), spectrum.get(), real.get(), FFTW_ESTIMATE));
        } else {
            forward.reset(fftw_plan_dft_r2c_2d(int(padded[0]), int(padded[1]), real.get(),
                                               spectrum.get(), FFTW_ESTIMATE));
            backward.reset(fftw_plan_dft_c2r_2d(int(padded[0]), int(padded[1]), spectrum.get(),
                                                real.get(), FFTW_ESTIMATE));
        }
        if (!forward || !backward) throw Error("FFTW planning failed");

        std::fill_n(real.get(), real_size, 0.0);
        auto wrap = [](long b, long p) { return b < 0 ? b + p : b; };
        if (g.dim == 1) {
            for (long b = -k; b <= k; ++b) real[static_cast<std::size_t>(wrap(b, padded[0]))] = w.at(b);
        } else {
            for (long a = -k; a <= k; ++a)
                for (long b = -k; b <= k; ++b)
                    real[static_cast<std::size_t>(wrap(a, padded[0]) * padded[1] + wrap(b, padded[1]))] =
                        w.at(a, b);
        }
        fftw_execute(forward.get());
        // Fold the 1/N normalisation of the inverse transform into the kernel.
        const double inv = 1.0 / double(real_size);
        kernel_hat.resize(spectral_size);
        for (std::size_t i = 0; i < spectral_size; ++i)
            kernel_hat[i] = std::complex<double>(spectrum[i][0], spectrum[i][1]) * inv;
    }

    void apply(std::span<const double> v, std::span<double> out) {
        if (v.size() != grid.size() || out.size() != grid.size())
            throw InvalidArgument("field size does not match the operator grid");
        std::fill_n(real.get(), real_size, 0.0);
        if (grid.dim == 1) {
            std::copy(v.begin(), v.end(), real.get());
        } else {
            for (long i = 0; i < grid.cells[0]; ++i)
                std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(grid.offset(i)), grid.cells[1],
                            real.get() + i * padded[1]);
        }
        fftw_execute(forward.get());
        for (std::size_t i = 0; i < spectral_size; ++i) {
            const std::complex<double> z =
                std::complex<double>(spectrum[i][0], spectrum[i][1]) * kernel_hat[i];
            spectrum[i][0] = z.real();
            spectrum[i][1] = z.imag();
        }
        fftw_execute(backward.get());
        if (grid.dim == 1) {
            for (long i = 0; i < grid.cells[0]; ++i) {
                const auto s = static_cast<std::size_t>(i);
                out[s] = real[s] - total_mass * v[s];
            }
        } else {
            for (long i = 0; i < grid.cells[0]; ++i)
                for (long j = 0; j < grid.cells[1]; ++j) {
                    const auto s = grid.offset(i, j);
                    out[s] = real[static_cast<std::size_t>(i * padded[1] + j)] - total_mass * v[s];
                }
        }
    }
};

FastNonlocalOperator::FastNonlocalOperator(const NonlocalWeights& w, const Grid& grid)
    : impl_(std::make_unique<Impl>(w, grid)) {}
FastNonlocalOperator::~FastNonlocalOperator() = default;
FastNonlocalOperator::FastNonlocalOperator(FastNonlocalOperator&&) noexcept = default;
FastNonlocalOperator& FastNonlocalOperator::operator=(FastNonlocalOperator&&) noexcept = default;

void FastNonlocalOperator::apply(std::span<const double> v, std::span<double> out) const {
    impl_->apply(v, out);
}

const Grid& FastNonlocalOperator::grid() const { return impl_->grid; }

} // namespace fracdeg
