// SPDX-License-Identifier: Apache-2.0
//
// risbeam - link-level simulator for RIS-aided mmWave/THz MIMO systems
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

#include "risbeam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risbeam {

SvdResult svd(const CMat &a)
{
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("svd: matrix must be non-empty");
    if (!a.allFinite())
        throw std::invalid_argument("svd: input contains NaN or Inf entries");

    Eigen::BDCSVD<CMat> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success)
        throw std::runtime_error("svd: decomposition did not converge");

    return SvdResult{dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

RVec singular_values(const CMat &a)
{
    if (a.rows() < 1 || a.cols() < 1)
        throw std::invalid_argument("singular_values: matrix must be non-empty");
    if (!a.allFinite())
        throw std::invalid_argument("singular_values: input contains NaN or Inf entries");

    // Gram matrix of the smaller side; eigenvalues are squared singular values
    const bool wide = a.cols() > a.rows();
    CMat gram = wide ? CMat(a * a.adjoint()) : CMat(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("singular_values: eigensolver did not converge");

    const RVec ev = es.eigenvalues(); // ascending
    RVec s(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        s(i) = std::sqrt(std::max(0.0, ev(ev.size() - 1 - i)));
    return s;
}

PowerAllocation waterfill(const RVec &sv, double noise_var, double total_power, int max_streams)
{
    if (sv.size() < 1)
        throw std::invalid_argument("waterfill: no singular values given");
    if (max_streams < 1 || max_streams > sv.size())
        throw std::invalid_argument("waterfill: max_streams out of range");
    if (noise_var <= 0.0)
        throw std::invalid_argument("waterfill: noise variance must be positive");
    if (total_power <= 0.0)
        throw std::invalid_argument("waterfill: total power must be positive");
    for (int l = 0; l < max_streams; ++l)
        if (!(sv(l) >= 0.0))
            throw std::invalid_argument("waterfill: singular values must be non-negative");

    const double s_max = sv.head(max_streams).maxCoeff();
    if (s_max <= 0.0)
        throw std::invalid_argument("waterfill: all singular values are zero, no usable eigenchannel");
    const double threshold = waterfill_zero_threshold_rel * s_max;

    // Inverse channel gains of the usable streams, i.e. noise / s^2
    struct Entry
    {
        double inv_gain;
        int index;
    };
    std::vector<Entry> usable;
    usable.reserve(static_cast<std::size_t>(max_streams));
    for (int l = 0; l < max_streams; ++l)
        if (sv(l) > threshold)
            usable.push_back({noise_var / (sv(l) * sv(l)), l});

    std::sort(usable.begin(), usable.end(),
              [](const Entry &a, const Entry &b) { return a.inv_gain < b.inv_gain; });

    // Largest active set whose common water level clears its weakest member
    std::size_t active = usable.size();
    double level = 0.0;
    while (active > 0)
    {
        double sum_inv = 0.0;
        for (std::size_t i = 0; i < active; ++i)
            sum_inv += usable[i].inv_gain;
        level = (total_power + sum_inv) / static_cast<double>(active);
        if (level > usable[active - 1].inv_gain)
            break;
        --active;
    }

    PowerAllocation out;
    out.levels.assign(static_cast<std::size_t>(max_streams), 0.0);
    out.water_level = level;
    for (std::size_t i = 0; i < active; ++i)
        out.levels[static_cast<std::size_t>(usable[i].index)] = level - usable[i].inv_gain;
    return out;
}

double log_det_rate(const CMat &w, const CMat &h, const CMat &f, double noise_var)
{
    if (w.rows() != h.rows())
        throw std::invalid_argument("log_det_rate: combiner rows must match channel rows");
    if (h.cols() != f.rows())
        throw std::invalid_argument("log_det_rate: channel cols must match precoder rows");
    if (w.cols() != f.cols())
        throw std::invalid_argument("log_det_rate: combiner and precoder stream counts differ");
    if (noise_var <= 0.0)
        throw std::invalid_argument("log_det_rate: noise variance must be positive");
    if (!w.allFinite() || !h.allFinite() || !f.allFinite())
        throw std::invalid_argument("log_det_rate: input contains NaN or Inf entries");

    const CMat a = w.adjoint() * w;              // post-combining noise shape
    const CMat g = w.adjoint() * (h * f);        // effective signal matrix

    Eigen::LLT<CMat> llt_a(a);
    if (llt_a.info() != Eigen::Success)
        throw std::invalid_argument("log_det_rate: combiner W is rank-deficient");

    Eigen::LLT<CMat> llt_b(a + g * g.adjoint() / noise_var);
    if (llt_b.info() != Eigen::Success)
        throw std::runtime_error("log_det_rate: factorization failed");

    // log2 det(I + A^-1 B / sigma^2) = log2 det(A + B / sigma^2) - log2 det(A)
    double r = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        r += std::log2(std::real(llt_b.matrixLLT()(i, i))) -
             std::log2(std::real(llt_a.matrixLLT()(i, i)));
    return std::max(0.0, 2.0 * r);
}

} // namespace risbeam
