// SPDX-License-Identifier: Apache-2.0
//
// uavfd - link-level simulator for full-duplex multi-UAV links
// Copyright (C) 2026 The uavfd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavfd::phy
{

using cplx = std::complex<double>;

inline std::mutex &fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

// Unitary DFT of fixed size (both directions scaled by 1/sqrt(n)), so the
// transform preserves vector norm. Plans are created under a lock because
// the FFTW planner is not reentrant; execution is thread-safe.
class Fft
{
  public:
    explicit Fft(std::size_t n) : n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n)))
    {
        if (n == 0)
            throw std::invalid_argument("Fft: size must be > 0");
        std::vector<cplx> a(n), b(n);
        auto *in = reinterpret_cast<fftw_complex *>(a.data());
        auto *out = reinterpret_cast<fftw_complex *>(b.data());
        const int size = static_cast<int>(n);
        std::lock_guard lock(fftw_planner_mutex());
        fwd_ = fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_ = fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!fwd_ || !inv_)
            throw std::runtime_error("Fft: FFTW planning failed");
    }

    Fft(const Fft &) = delete;
    Fft &operator=(const Fft &) = delete;

    ~Fft()
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
    }

    std::size_t size() const { return n_; }

    void forward(std::span<const cplx> in, std::span<cplx> out) const { run(fwd_, in, out); }
    void inverse(std::span<const cplx> in, std::span<cplx> out) const { run(inv_, in, out); }

    std::vector<cplx> forward(std::span<const cplx> in) const
    {
        std::vector<cplx> out(n_);
        forward(in, out);
        return out;
    }

    std::vector<cplx> inverse(std::span<const cplx> in) const
    {
        std::vector<cplx> out(n_);
        inverse(in, out);
        return out;
    }

  private:
    void run(fftw_plan p, std::span<const cplx> in, std::span<cplx> out) const
    {
        if (in.size() != n_ || out.size() != n_)
            throw std::invalid_argument("Fft: buffer size mismatch");
        // FFTW never writes its input for out-of-place complex transforms.
        std::vector<cplx> tmp;
        const cplx *src = in.data();
        if (src == out.data())
        {
            tmp.assign(in.begin(), in.end());
            src = tmp.data();
        }
        fftw_execute_dft(p, reinterpret_cast<fftw_complex *>(const_cast<cplx *>(src)),
                         reinterpret_cast<fftw_complex *>(out.data()));
        for (auto &v : out)
            v *= scale_;
    }

    std::size_t n_;
    double scale_;
    fftw_plan fwd_ = nullptr;
    fftw_plan inv_ = nullptr;
};

} // namespace uavfd::phy
