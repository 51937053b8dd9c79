// Copyright 2026 The bosonwalk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bosonwalk/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(32, 1.0);
        for (int k = 1; k < 32; ++k) {
            t[k] = t[k - 1] * k;
        }
        return t;
    }();
    return table[static_cast<size_t>(n)];
}

uint64_t fnv1a(const uint16_t *data, size_t n) {
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= static_cast<uint64_t>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

size_t hash_counts(const std::vector<uint16_t> &counts) {
    return fnv1a(counts.data(), counts.size());
}

namespace {

// One substitution target of a single creation operator.
struct ImageEntry {
    ModeIndex mode;
    Complex coefficient;
};

using ImageList = std::vector<ImageEntry>;

// Expands prod_i (sum_j c_ij w_j^dag) over the listed walkers on top of the
// fixed `rest` occupation, accumulating monomial coefficients at the leaves.
void expand_walkers(
    std::vector<uint16_t> &counts,
    const std::vector<const ImageList *> &walker_images,
    size_t level,
    Complex coefficient,
    FockState::AmplitudeMap &result) {
    if (level == walker_images.size()) {
        auto it = result.find(OccupationView{&counts, hash_counts(counts)});
        if (it != result.end()) {
            it->second += coefficient;
        } else {
            result.emplace(Occupation(counts), coefficient);
        }
        return;
    }
    for (const ImageEntry &entry : *walker_images[level]) {
        if (entry.coefficient == Complex(0.0, 0.0)) {
            continue;
        }
        ++counts[static_cast<size_t>(entry.mode)];
        expand_walkers(counts, walker_images, level + 1, coefficient * entry.coefficient, result);
        --counts[static_cast<size_t>(entry.mode)];
    }
}

// Restores the normalized-basis amplitudes (monomial coefficient times
// sqrt(prod t_m!) over the touched modes) and prunes tiny terms.
FockState::AmplitudeMap finalize_expansion(FockState::AmplitudeMap raw, const std::vector<ModeIndex> &touched) {
    FockState::AmplitudeMap out;
    out.reserve(raw.size());
    for (auto &[occ, coeff] : raw) {
        double t_factor = 1.0;
        for (ModeIndex m : touched) {
            t_factor *= factorial(occ.count(m));
        }
        Complex amp = coeff * std::sqrt(t_factor);
        if (std::abs(amp) >= kAmplitudePruneThreshold) {
            out.emplace(occ, amp);
        }
    }
    return out;
}

}  // namespace

Occupation::Occupation(std::vector<uint16_t> counts) : counts_(std::move(counts)) {
    for (uint16_t c : counts_) {
        total_ += c;
    }
    hash_ = fnv1a(counts_.data(), counts_.size());
}

Occupation Occupation::empty(int mode_count) {
    return Occupation(std::vector<uint16_t>(static_cast<size_t>(mode_count), 0));
}

Occupation Occupation::from_modes(std::span<const ModeIndex> modes, int mode_count) {
    std::vector<uint16_t> counts(static_cast<size_t>(mode_count), 0);
    for (ModeIndex m : modes) {
        if (m < 0 || m >= mode_count) {
            throw LookupError("mode index " + std::to_string(m) + " is out of range for " + std::to_string(mode_count) + " modes");
        }
        ++counts[static_cast<size_t>(m)];
    }
    return Occupation(std::move(counts));
}

std::vector<ModeIndex> Occupation::mode_list() const {
    std::vector<ModeIndex> modes;
    modes.reserve(static_cast<size_t>(total_));
    for (size_t m = 0; m < counts_.size(); ++m) {
        for (int k = 0; k < counts_[m]; ++k) {
            modes.push_back(static_cast<ModeIndex>(m));
        }
    }
    return modes;
}

FockState FockState::vacuum(int mode_count) {
    AmplitudeMap amps;
    amps.emplace(Occupation::empty(mode_count), Complex(1.0, 0.0));
    return FockState(mode_count, std::move(amps));
}

FockState FockState::basis_state(std::span<const ModeIndex> modes, int mode_count) {
    AmplitudeMap amps;
    amps.emplace(Occupation::from_modes(modes, mode_count), Complex(1.0, 0.0));
    return FockState(mode_count, std::move(amps));
}

FockState FockState::from_terms(
    int mode_count, std::span<const std::pair<Occupation, Complex>> terms, bool normalize) {
    AmplitudeMap amps;
    int total = -1;
    for (const auto &[occ, amp] : terms) {
        if (occ.mode_count() != mode_count) {
            throw ValidationError("term mode count " + std::to_string(occ.mode_count()) + " does not match state mode count " + std::to_string(mode_count));
        }
        if (total == -1) {
            total = occ.total();
        } else if (occ.total() != total) {
            throw ValidationError(
                "mixed total occupations in one state: " + std::to_string(total) + " and " + std::to_string(occ.total()));
        }
        amps[occ] += amp;
    }
    FockState state(mode_count, std::move(amps));
    if (normalize) {
        double n = state.norm();
        if (n <= 0.0) {
            throw ValidationError("cannot normalize a zero state");
        }
        for (auto &[occ, amp] : state.amplitudes_) {
            amp /= n;
        }
    }
    return state;
}

int FockState::total_occupation() const {
    if (amplitudes_.empty()) {
        return 0;
    }
    return amplitudes_.begin()->first.total();
}

double FockState::norm() const {
    double sum = 0.0;
    for (const auto &[occ, amp] : amplitudes_) {
        sum += std::norm(amp);
    }
    return std::sqrt(sum);
}

Complex FockState::amplitude(const Occupation &key) const {
    auto it = amplitudes_.find(key);
    return it == amplitudes_.end() ? Complex(0.0, 0.0) : it->second;
}

std::vector<std::pair<Occupation, Complex>> FockState::sorted_terms() const {
    std::vector<std::pair<Occupation, Complex>> terms(amplitudes_.begin(), amplitudes_.end());
    std::sort(terms.begin(), terms.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return terms;
}

double unitarity_defect(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::MatrixXcd residual = u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return residual.cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, std::vector<ModeIndex> support)
    : matrix_(std::move(matrix)), support_(std::move(support)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw ValidationError("mode unitary matrix must be square");
    }
    if (static_cast<size_t>(matrix_.rows()) != support_.size()) {
        throw ValidationError(
            "mode unitary support size " + std::to_string(support_.size()) + " does not match matrix dimension " +
            std::to_string(matrix_.rows()));
    }
    for (size_t k = 0; k < support_.size(); ++k) {
        if (support_[k] < 0 || (k > 0 && support_[k - 1] >= support_[k])) {
            throw ValidationError("mode unitary support must be strictly ascending and non-negative");
        }
    }
    double defect = unitarity_defect(matrix_);
    if (defect > 1e-12) {
        throw ValidationError("matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
}

FockState apply_mode_unitary(const FockState &state, const ModeUnitary &u) {
    const auto &support = u.support();
    if (!support.empty() && support.back() >= state.mode_count()) {
        throw ValidationError("mode unitary support exceeds the state's mode count");
    }

    // Precompute the image list of each support column once.
    const int dim = static_cast<int>(support.size());
    std::vector<ImageList> column_images(static_cast<size_t>(dim));
    for (int col = 0; col < dim; ++col) {
        for (int row = 0; row < dim; ++row) {
            column_images[static_cast<size_t>(col)].push_back(ImageEntry{support[static_cast<size_t>(row)], u.matrix()(row, col)});
        }
    }

    FockState::AmplitudeMap raw;
    std::vector<const ImageList *> walker_images;
    for (const auto &[occ, amp] : state.amplitudes()) {
        walker_images.clear();
        double s_factor = 1.0;
        std::vector<uint16_t> counts = occ.counts();
        for (int col = 0; col < dim; ++col) {
            ModeIndex m = support[static_cast<size_t>(col)];
            int c = occ.count(m);
            if (c == 0) {
                continue;
            }
            s_factor *= factorial(c);
            counts[static_cast<size_t>(m)] = 0;
            for (int k = 0; k < c; ++k) {
                walker_images.push_back(&column_images[static_cast<size_t>(col)]);
            }
        }
        expand_walkers(counts, walker_images, 0, amp / std::sqrt(s_factor), raw);
    }

    return FockState(state.mode_count(), finalize_expansion(std::move(raw), support));
}

FockState apply_block_diagonal(
    const FockState &state, const Graph &g, std::span<const Eigen::MatrixXcd> blocks) {
    if (g.mode_count() != state.mode_count()) {
        throw ValidationError("graph mode count does not match the state");
    }
    if (static_cast<int>(blocks.size()) != g.vertex_count()) {
        throw ValidationError("expected one coin block per vertex");
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (blocks[static_cast<size_t>(v)].rows() != g.degree(v) || blocks[static_cast<size_t>(v)].cols() != g.degree(v)) {
            throw ValidationError(
                "coin block at vertex " + std::to_string(v) + " has dimension " +
                std::to_string(blocks[static_cast<size_t>(v)].rows()) + ", expected degree " + std::to_string(g.degree(v)));
        }
    }

    std::vector<ModeIndex> touched(static_cast<size_t>(g.mode_count()));
    for (ModeIndex m = 0; m < g.mode_count(); ++m) {
        touched[static_cast<size_t>(m)] = m;
    }

    // Image list of every mode under its bundle's block, computed once.
    std::vector<ImageList> mode_images(static_cast<size_t>(g.mode_count()));
    for (ModeIndex m = 0; m < g.mode_count(); ++m) {
        Mode mode = g.mode_at(m);
        ModeIndex begin = g.bundle_begin(mode.position);
        const Eigen::MatrixXcd &block = blocks[static_cast<size_t>(mode.position)];
        int col = m - begin;
        mode_images[static_cast<size_t>(m)].reserve(static_cast<size_t>(block.rows()));
        for (int row = 0; row < block.rows(); ++row) {
            mode_images[static_cast<size_t>(m)].push_back(ImageEntry{begin + row, block(row, col)});
        }
    }

    FockState::AmplitudeMap raw;
    raw.reserve(state.amplitudes().size() * 2);
    std::vector<const ImageList *> walker_images;
    for (const auto &[occ, amp] : state.amplitudes()) {
        walker_images.clear();
        double s_factor = 1.0;
        std::vector<uint16_t> counts = occ.counts();
        for (ModeIndex m : occ.mode_list()) {
            walker_images.push_back(&mode_images[static_cast<size_t>(m)]);
        }
        for (ModeIndex m = 0; m < state.mode_count(); ++m) {
            int c = occ.count(m);
            if (c > 0) {
                s_factor *= factorial(c);
                counts[static_cast<size_t>(m)] = 0;
            }
        }
        expand_walkers(counts, walker_images, 0, amp / std::sqrt(s_factor), raw);
    }

    return FockState(state.mode_count(), finalize_expansion(std::move(raw), touched));
}

FockState apply_mode_permutation(const FockState &state, std::span<const ModeIndex> perm) {
    const int m_count = state.mode_count();
    if (static_cast<int>(perm.size()) != m_count) {
        throw ValidationError("permutation size does not match the mode count");
    }
    std::vector<bool> seen(static_cast<size_t>(m_count), false);
    for (ModeIndex image : perm) {
        if (image < 0 || image >= m_count || seen[static_cast<size_t>(image)]) {
            throw ValidationError("mode map is not a bijection on 0.." + std::to_string(m_count - 1));
        }
        seen[static_cast<size_t>(image)] = true;
    }

    FockState::AmplitudeMap out;
    out.reserve(state.amplitudes().size());
    for (const auto &[occ, amp] : state.amplitudes()) {
        std::vector<uint16_t> counts(static_cast<size_t>(m_count), 0);
        for (ModeIndex m = 0; m < m_count; ++m) {
            counts[static_cast<size_t>(perm[static_cast<size_t>(m)])] = static_cast<uint16_t>(occ.count(m));
        }
        out.emplace(Occupation(std::move(counts)), amp);
    }
    return FockState(m_count, std::move(out));
}

FockState apply_diagonal_phase(
    const FockState &state, const std::function<double(const Occupation &)> &phase_fn) {
    FockState::AmplitudeMap out;
    out.reserve(state.amplitudes().size());
    for (const auto &[occ, amp] : state.amplitudes()) {
        double theta = phase_fn(occ);
        out.emplace(occ, amp * Complex(std::cos(theta), std::sin(theta)));
    }
    return FockState(state.mode_count(), std::move(out));
}

Complex inner_product(const FockState &a, const FockState &b) {
    if (a.mode_count() != b.mode_count()) {
        throw ValidationError(
            "mode count mismatch in inner product: " + std::to_string(a.mode_count()) + " vs " +
            std::to_string(b.mode_count()));
    }
    Complex sum(0.0, 0.0);
    const bool a_smaller = a.amplitudes().size() <= b.amplitudes().size();
    const FockState &small = a_smaller ? a : b;
    const FockState &large = a_smaller ? b : a;
    for (const auto &[occ, amp] : small.amplitudes()) {
        Complex other = large.amplitude(occ);
        sum += a_smaller ? std::conj(amp) * other : std::conj(other) * amp;
    }
    return sum;
}

Complex permanent(const Eigen::MatrixXcd &m) {
    if (m.rows() != m.cols()) {
        throw ValidationError("permanent needs a square matrix");
    }
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        return Complex(1.0, 0.0);
    }
    if (n > 24) {
        throw CapError("permanent of dimension " + std::to_string(n) + " exceeds the 2^n desk-scale budget");
    }

    std::vector<Complex> row_sum(static_cast<size_t>(n), Complex(0.0, 0.0));
    Complex total(0.0, 0.0);
    uint64_t prev_gray = 0;
    const uint64_t limit = 1ull << n;
    for (uint64_t k = 1; k < limit; ++k) {
        uint64_t gray = k ^ (k >> 1);
        uint64_t diff = gray ^ prev_gray;
        int j = std::countr_zero(diff);
        const double sign = (gray & diff) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) {
            row_sum[static_cast<size_t>(i)] += sign * m(i, j);
        }
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) {
            prod *= row_sum[static_cast<size_t>(i)];
        }
        total += (std::popcount(gray) & 1) ? -prod : prod;
        prev_gray = gray;
    }
    return (n & 1) ? -total : total;
}

Complex permanent_amplitude(const Eigen::MatrixXcd &u, const Occupation &input, const Occupation &output) {
    if (u.rows() != u.cols()) {
        throw ValidationError("permanent_amplitude needs a square matrix");
    }
    if (input.mode_count() != u.rows() || output.mode_count() != u.rows()) {
        throw ValidationError("occupation mode counts do not match the matrix dimension");
    }
    if (input.total() != output.total()) {
        throw ValidationError(
            "photon-number mismatch: input has " + std::to_string(input.total()) + ", output has " +
            std::to_string(output.total()));
    }
    const int n = input.total();
    if (n > kMaxPermanentPhotons) {
        throw CapError(
            "photon number " + std::to_string(n) + " exceeds the permanent cap of " +
            std::to_string(kMaxPermanentPhotons));
    }
    if (n == 0) {
        return Complex(1.0, 0.0);
    }

    std::vector<ModeIndex> in_modes = input.mode_list();
    std::vector<ModeIndex> out_modes = output.mode_list();
    Eigen::MatrixXcd sub(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            sub(a, b) = u(out_modes[static_cast<size_t>(a)], in_modes[static_cast<size_t>(b)]);
        }
    }

    double normalization = 1.0;
    for (ModeIndex m = 0; m < input.mode_count(); ++m) {
        normalization *= factorial(input.count(m)) * factorial(output.count(m));
    }

    return permanent(sub) / std::sqrt(normalization);
}

}  // namespace bosonwalk
