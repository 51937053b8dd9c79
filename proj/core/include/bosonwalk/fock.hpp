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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bosonwalk/graph.hpp"

namespace bosonwalk {

using Complex = std::complex<double>;

/// Amplitudes smaller than this are pruned after each operator application,
/// two decades below the tightest test tolerance.
inline constexpr double kAmplitudePruneThreshold = 1e-14;

/// Maximum photon number accepted by permanent_amplitude.
inline constexpr int kMaxPermanentPhotons = 10;

/// Number of bosons per mode, one entry per canonical mode index. This is the
/// canonical, collision-free key of the sparse Fock representation. Immutable;
/// the hash is precomputed.
class Occupation {
  public:
    explicit Occupation(std::vector<uint16_t> counts);

    static Occupation empty(int mode_count);

    /// Occupation with one boson added per listed mode (repeats allowed).
    static Occupation from_modes(std::span<const ModeIndex> modes, int mode_count);

    int mode_count() const {
        return static_cast<int>(counts_.size());
    }

    /// Total boson number.
    int total() const {
        return total_;
    }

    int count(ModeIndex m) const {
        return counts_[static_cast<size_t>(m)];
    }

    const std::vector<uint16_t> &counts() const {
        return counts_;
    }

    /// Occupied modes with multiplicity, ascending. Size equals total().
    std::vector<ModeIndex> mode_list() const;

    size_t hash() const {
        return hash_;
    }

    bool operator==(const Occupation &other) const {
        return hash_ == other.hash_ && counts_ == other.counts_;
    }

    bool operator<(const Occupation &other) const {
        return counts_ < other.counts_;
    }

  private:
    std::vector<uint16_t> counts_;
    int total_ = 0;
    size_t hash_ = 0;
};

/// Borrowed view of a counts vector with a precomputed hash; lets the
/// expansion engine probe amplitude maps without materializing a key.
struct OccupationView {
    const std::vector<uint16_t> *counts;
    size_t hash;
};

size_t hash_counts(const std::vector<uint16_t> &counts);

struct OccupationHash {
    using is_transparent = void;

    size_t operator()(const Occupation &occ) const {
        return occ.hash();
    }
    size_t operator()(const OccupationView &view) const {
        return view.hash;
    }
};

struct OccupationEq {
    using is_transparent = void;

    bool operator()(const Occupation &a, const Occupation &b) const {
        return a == b;
    }
    bool operator()(const OccupationView &a, const Occupation &b) const {
        return a.hash == b.hash() && *a.counts == b.counts();
    }
    bool operator()(const Occupation &a, const OccupationView &b) const {
        return b.hash == a.hash() && *b.counts == a.counts();
    }
};

/// Sparse n-boson state over M modes: a map from occupation vectors to
/// complex amplitudes. All keys of a state carry the same total occupation.
/// States are values; every operation returns a new state.
class FockState {
  public:
    using AmplitudeMap = std::unordered_map<Occupation, Complex, OccupationHash, OccupationEq>;

    static FockState vacuum(int mode_count);

    /// Normalized basis state with one boson created per listed mode
    /// (repeats allowed); the 1/sqrt(prod n_m!) bosonic factor is folded in
    /// so the state has unit norm.
    static FockState basis_state(std::span<const ModeIndex> modes, int mode_count);

    /// State from explicit terms. All keys must share one total occupation.
    /// Normalizes to unit norm unless `normalize` is false.
    static FockState from_terms(
        int mode_count, std::span<const std::pair<Occupation, Complex>> terms, bool normalize = true);

    int mode_count() const {
        return mode_count_;
    }

    /// Common total occupation of the keys (0 for the vacuum).
    int total_occupation() const;

    size_t term_count() const {
        return amplitudes_.size();
    }

    double norm() const;

    Complex amplitude(const Occupation &key) const;

    const AmplitudeMap &amplitudes() const {
        return amplitudes_;
    }

    /// Terms sorted by occupation key; deterministic across runs.
    std::vector<std::pair<Occupation, Complex>> sorted_terms() const;

  private:
    FockState(int mode_count, AmplitudeMap amplitudes)
        : mode_count_(mode_count), amplitudes_(std::move(amplitudes)) {}

    int mode_count_ = 0;
    AmplitudeMap amplitudes_;

    friend FockState apply_mode_unitary(const FockState &, const class ModeUnitary &);
    friend FockState apply_block_diagonal(
        const FockState &, const Graph &, std::span<const Eigen::MatrixXcd>);
    friend FockState apply_mode_permutation(const FockState &, std::span<const ModeIndex>);
    friend FockState apply_diagonal_phase(
        const FockState &, const std::function<double(const Occupation &)> &);
};

/// A unitary acting on a listed ascending subset of the canonical modes.
/// Column k of `matrix` is the image of the k-th support mode, i.e. the
/// single-particle action is e_{support[k]} -> sum_j matrix(j, k) e_{support[j]}.
class ModeUnitary {
  public:
    /// Validates unitarity (within 1e-12) and that the support is strictly
    /// ascending and matches the matrix dimension.
    ModeUnitary(Eigen::MatrixXcd matrix, std::vector<ModeIndex> support);

    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

    const std::vector<ModeIndex> &support() const {
        return support_;
    }

  private:
    Eigen::MatrixXcd matrix_;
    std::vector<ModeIndex> support_;
};

/// Max-norm distance of U U^dagger from the identity.
double unitarity_defect(const Eigen::MatrixXcd &u);

/// Lifts the mode unitary to the n-boson space by substituting every creation
/// operator on the support with its image and re-expanding, exactly. Bosons in
/// modes outside the support are untouched. Exact (no sampling); intended for
/// desk-scale photon numbers.
FockState apply_mode_unitary(const FockState &state, const ModeUnitary &u);

/// Same lift for a coin-style unitary that is block diagonal over the graph's
/// bundles: `blocks[x]` is the degree(x) x degree(x) transfer matrix on the
/// bundle of x (column = image of the k-th bundle mode). Avoids touching
/// unoccupied bundles.
FockState apply_block_diagonal(
    const FockState &state, const Graph &g, std::span<const Eigen::MatrixXcd> blocks);

/// Relabels modes: new_counts[perm[m]] = counts[m]. `perm` must be a
/// bijection on 0..M-1. Amplitudes are unchanged in magnitude and phase.
FockState apply_mode_permutation(const FockState &state, std::span<const ModeIndex> perm);

/// Multiplies every term by exp(i * phase_fn(key)). Norm is preserved
/// exactly; this covers CPHASE, position phases, and Kerr-style defects.
FockState apply_diagonal_phase(
    const FockState &state, const std::function<double(const Occupation &)> &phase_fn);

/// <a|b>. Mode counts must match.
Complex inner_product(const FockState &a, const FockState &b);

/// Permanent via Ryser's formula with Gray-code subset ordering, O(2^k k).
Complex permanent(const Eigen::MatrixXcd &m);

/// Transition amplitude <output| lift(u) |input> computed from a permanent of
/// the row/column-repeated submatrix of `u`, independent of the Fock
/// substitution path:
///
///   per(U[output|input]) / sqrt(prod_m input_m! * prod_m output_m!)
///
/// `u` is M x M with the same column-as-image convention as ModeUnitary.
/// Throws ValidationError on photon-number mismatch and CapError above
/// kMaxPermanentPhotons.
Complex permanent_amplitude(const Eigen::MatrixXcd &u, const Occupation &input, const Occupation &output);

}  // namespace bosonwalk
