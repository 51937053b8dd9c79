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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>

#include "bosonwalk/errors.hpp"
#include "bosonwalk/optics.hpp"

namespace bosonwalk {

namespace {

constexpr double kRewriteTolerance = 1e-10;

bool is_pi(double theta) {
    return std::abs(std::remainder(theta - std::numbers::pi, 2.0 * std::numbers::pi)) < 1e-9;
}

bool is_anti_diagonal(const Eigen::Matrix2cd &block) {
    return std::abs(block(0, 0)) < 1e-12 && std::abs(block(1, 1)) < 1e-12;
}

bool is_diagonal_element(const Element &element) {
    return !std::holds_alternative<Beamsplitter>(element);
}

std::vector<ModeIndex> union_support(std::span<const Element> a, std::span<const Element> b) {
    std::set<ModeIndex> modes;
    for (const Element &e : a) {
        for (ModeIndex m : element_support(e)) {
            modes.insert(m);
        }
    }
    for (const Element &e : b) {
        for (ModeIndex m : element_support(e)) {
            modes.insert(m);
        }
    }
    return std::vector<ModeIndex>(modes.begin(), modes.end());
}

Element remap_element(const Element &element, const std::vector<ModeIndex> &modes) {
    auto local = [&](ModeIndex m) {
        return static_cast<ModeIndex>(std::lower_bound(modes.begin(), modes.end(), m) - modes.begin());
    };
    if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
        return Beamsplitter{local(bs->a), local(bs->b), bs->block};
    }
    if (const auto *ph = std::get_if<PhaseShift>(&element)) {
        return PhaseShift{local(ph->mode), ph->theta};
    }
    const auto &cp = std::get<ControlledPhase>(element);
    return ControlledPhase{local(cp.a), local(cp.b), cp.theta};
}

std::vector<Occupation> enumerate_sector(int mode_count, int photons) {
    std::vector<Occupation> basis;
    std::vector<uint16_t> counts(static_cast<size_t>(mode_count), 0);
    // Lexicographic enumeration of all occupations with the given total.
    auto recurse = [&](auto &&self, int mode, int remaining) -> void {
        if (mode == mode_count - 1) {
            counts[static_cast<size_t>(mode)] = static_cast<uint16_t>(remaining);
            basis.emplace_back(counts);
            counts[static_cast<size_t>(mode)] = 0;
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            counts[static_cast<size_t>(mode)] = static_cast<uint16_t>(k);
            self(self, mode + 1, remaining - k);
        }
        counts[static_cast<size_t>(mode)] = 0;
    };
    recurse(recurse, 0, photons);
    return basis;
}

// Matrix of an element sequence on the photon-number sector over the listed
// global modes (re-indexed locally). Elements apply in list order.
Eigen::MatrixXcd sector_operator(
    std::span<const Element> sequence, const std::vector<ModeIndex> &modes, int photons) {
    const int m = static_cast<int>(modes.size());
    std::vector<Element> local;
    local.reserve(sequence.size());
    for (const Element &e : sequence) {
        local.push_back(remap_element(e, modes));
    }
    OpticalNetwork local_net(m, local);

    std::vector<Occupation> basis = enumerate_sector(m, photons);
    std::unordered_map<Occupation, int, OccupationHash> index;
    for (size_t k = 0; k < basis.size(); ++k) {
        index.emplace(basis[k], static_cast<int>(k));
    }
    const int dim = static_cast<int>(basis.size());
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        std::pair<Occupation, Complex> term{basis[static_cast<size_t>(col)], Complex(1.0, 0.0)};
        FockState out = apply_network(local_net, FockState::from_terms(m, {&term, 1}, false));
        for (const auto &[occ, amp] : out.amplitudes()) {
            op(index.at(occ), col) = amp;
        }
    }
    return op;
}

double sequence_gap(
    std::span<const Element> first_a,
    std::span<const Element> then_a,
    std::span<const Element> first_b,
    std::span<const Element> then_b,
    const std::vector<ModeIndex> &modes) {
    std::vector<Element> seq_a(first_a.begin(), first_a.end());
    seq_a.insert(seq_a.end(), then_a.begin(), then_a.end());
    std::vector<Element> seq_b(first_b.begin(), first_b.end());
    seq_b.insert(seq_b.end(), then_b.begin(), then_b.end());
    double gap = 0.0;
    for (int photons = 1; photons <= 2; ++photons) {
        Eigen::MatrixXcd a = sector_operator(seq_a, modes, photons);
        Eigen::MatrixXcd b = sector_operator(seq_b, modes, photons);
        gap = std::max(gap, (a - b).cwiseAbs().maxCoeff());
    }
    return gap;
}

struct RuleMatch {
    RewriteRule rule;
    std::vector<Element> lead;
    std::vector<Element> trail;
};

// The two figure rules plus the trivial disjoint/diagonal cases. `later`
// follows `earlier` in the circuit; a match proposes the reordering.
std::optional<RuleMatch> match_rule(std::span<const Element> later, std::span<const Element> earlier) {
    std::vector<ModeIndex> later_support = union_support(later, {});
    std::vector<ModeIndex> earlier_support = union_support(earlier, {});
    std::vector<ModeIndex> overlap;
    std::set_intersection(
        later_support.begin(), later_support.end(), earlier_support.begin(), earlier_support.end(),
        std::back_inserter(overlap));

    std::vector<Element> later_copy(later.begin(), later.end());
    std::vector<Element> earlier_copy(earlier.begin(), earlier.end());

    if (overlap.empty()) {
        return RuleMatch{RewriteRule::disjoint_support, later_copy, earlier_copy};
    }

    bool later_diagonal = std::all_of(later.begin(), later.end(), is_diagonal_element);
    bool earlier_diagonal = std::all_of(earlier.begin(), earlier.end(), is_diagonal_element);
    if (later_diagonal && earlier_diagonal) {
        return RuleMatch{RewriteRule::diagonal, later_copy, earlier_copy};
    }

    // The remaining rules move a group backwards across one beamsplitter.
    if (earlier.size() != 1) {
        return std::nullopt;
    }
    const auto *blocker = std::get_if<Beamsplitter>(&earlier[0]);
    if (blocker == nullptr) {
        return std::nullopt;
    }

    // Pi-phases on both beamsplitter modes pass through unchanged (a pi
    // phase pair acts as -identity on the mixed pair); the controlled lift
    // with one shared control works the same way.
    if (later.size() == 2) {
        const auto *p1 = std::get_if<PhaseShift>(&later[0]);
        const auto *p2 = std::get_if<PhaseShift>(&later[1]);
        if (p1 != nullptr && p2 != nullptr && is_pi(p1->theta) && is_pi(p2->theta)) {
            std::set<ModeIndex> targets{p1->mode, p2->mode};
            if (targets == std::set<ModeIndex>{blocker->a, blocker->b}) {
                return RuleMatch{RewriteRule::phase_pair, later_copy, earlier_copy};
            }
        }
        const auto *c1 = std::get_if<ControlledPhase>(&later[0]);
        const auto *c2 = std::get_if<ControlledPhase>(&later[1]);
        if (c1 != nullptr && c2 != nullptr && is_pi(c1->theta) && is_pi(c2->theta)) {
            std::vector<ModeIndex> m1{c1->a, c1->b};
            std::vector<ModeIndex> m2{c2->a, c2->b};
            std::vector<ModeIndex> shared;
            std::set_intersection(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(shared));
            if (shared.size() == 1) {
                ModeIndex control = shared[0];
                ModeIndex t1 = c1->a == control ? c1->b : c1->a;
                ModeIndex t2 = c2->a == control ? c2->b : c2->a;
                bool control_clear = control != blocker->a && control != blocker->b;
                if (control_clear && std::set<ModeIndex>{t1, t2} == std::set<ModeIndex>{blocker->a, blocker->b}) {
                    return RuleMatch{RewriteRule::phase_pair, later_copy, earlier_copy};
                }
            }
        }
    }

    if (later.size() != 1) {
        return std::nullopt;
    }

    // A swap-like (anti-diagonal) block relabels whatever crosses it on one
    // of its modes; conversely a swap-like `later` crosses any beamsplitter
    // on the same mode pair by conjugating the block.
    auto other_mode = [&](ModeIndex m) { return m == blocker->a ? blocker->b : blocker->a; };
    if (is_anti_diagonal(blocker->block)) {
        if (const auto *cp = std::get_if<ControlledPhase>(&later[0])) {
            bool a_in = cp->a == blocker->a || cp->a == blocker->b;
            bool b_in = cp->b == blocker->a || cp->b == blocker->b;
            if (a_in != b_in) {
                ControlledPhase moved = *cp;
                if (a_in) {
                    moved.a = other_mode(cp->a);
                } else {
                    moved.b = other_mode(cp->b);
                }
                if (moved.a > moved.b) {
                    std::swap(moved.a, moved.b);
                }
                return RuleMatch{RewriteRule::swap_retarget, {moved}, earlier_copy};
            }
        }
        if (const auto *ph = std::get_if<PhaseShift>(&later[0])) {
            if (ph->mode == blocker->a || ph->mode == blocker->b) {
                return RuleMatch{RewriteRule::swap_retarget, {PhaseShift{other_mode(ph->mode), ph->theta}}, earlier_copy};
            }
        }
    }
    if (const auto *moving_bs = std::get_if<Beamsplitter>(&later[0])) {
        if (is_anti_diagonal(moving_bs->block) && moving_bs->a == blocker->a && moving_bs->b == blocker->b) {
            // swap . B = (swap B swap^-1) . swap
            Eigen::Matrix2cd s = moving_bs->block;
            Eigen::Matrix2cd relabeled = s * blocker->block * s.inverse();
            return RuleMatch{
                RewriteRule::swap_retarget, later_copy, {Beamsplitter{blocker->a, blocker->b, relabeled}}};
        }
    }
    return std::nullopt;
}

}  // namespace

const char *rewrite_rule_name(RewriteRule rule) {
    switch (rule) {
        case RewriteRule::disjoint_support:
            return "disjoint-support";
        case RewriteRule::diagonal:
            return "diagonal";
        case RewriteRule::phase_pair:
            return "phase-pair";
        case RewriteRule::swap_retarget:
            return "swap-retarget";
    }
    return "unknown";
}

double ordering_gap(std::span<const Element> earlier, std::span<const Element> later) {
    std::vector<ModeIndex> modes = union_support(earlier, later);
    return sequence_gap(earlier, later, later, earlier, modes);
}

CommutationResult check_commutation(std::span<const Element> later, std::span<const Element> earlier) {
    std::vector<ModeIndex> modes = union_support(later, earlier);
    if (modes.size() > 4) {
        throw ValidationError(
            "commutation checks are limited to 4 modes total, got " + std::to_string(modes.size()));
    }

    CommutationResult result;
    std::optional<RuleMatch> match = match_rule(later, earlier);
    if (match.has_value()) {
        // op(earlier then later) must equal op(lead then trail); every accepted
        // rewrite is verified numerically before being reported.
        double gap = sequence_gap(earlier, later, match->lead, match->trail, modes);
        if (gap <= kRewriteTolerance) {
            result.commutes = true;
            result.rule = match->rule;
            result.lead = std::move(match->lead);
            result.trail = std::move(match->trail);
            result.deviation = gap;
            return result;
        }
    }
    result.commutes = false;
    result.deviation = ordering_gap(earlier, later);
    return result;
}

CommutationResult check_commutation(const Element &later, const Element &earlier) {
    return check_commutation(std::span<const Element>(&later, 1), std::span<const Element>(&earlier, 1));
}

HoistResult hoist_cphases(const OpticalNetwork &net) {
    std::vector<Element> list = net.elements();

    size_t prefix_end = 0;
    while (prefix_end < list.size() && std::holds_alternative<ControlledPhase>(list[prefix_end])) {
        ++prefix_end;
    }

    while (true) {
        // Earliest controlled phase not yet in the prefix.
        size_t begin = prefix_end;
        while (begin < list.size() && !std::holds_alternative<ControlledPhase>(list[begin])) {
            ++begin;
        }
        if (begin == list.size()) {
            break;
        }
        size_t end = begin + 1;

        while (begin > prefix_end) {
            std::span<const Element> unit(list.data() + begin, end - begin);
            const Element blocker = list[begin - 1];
            CommutationResult res = check_commutation(unit, std::span<const Element>(&blocker, 1));
            if (!res.commutes && unit.size() == 1 && end < list.size() &&
                std::holds_alternative<ControlledPhase>(list[end])) {
                // A lone controlled-pi blocked by a beamsplitter may cross as
                // a pair with its partner (same control, other splitter mode).
                size_t widened = end + 1;
                std::span<const Element> pair(list.data() + begin, widened - begin);
                CommutationResult pair_res = check_commutation(pair, std::span<const Element>(&blocker, 1));
                if (pair_res.commutes) {
                    end = widened;
                    res = std::move(pair_res);
                }
            }
            if (!res.commutes) {
                return HoistResult{
                    false,
                    OpticalNetwork(net.mode_count()),
                    net,
                    net.cphase_count(),
                    std::make_pair(list[begin], blocker),
                    res.deviation};
            }
            for (size_t k = 0; k < res.lead.size(); ++k) {
                list[begin - 1 + k] = res.lead[k];
            }
            list[begin - 1 + res.lead.size()] = res.trail[0];
            --begin;
            --end;
        }
        prefix_end = end;
    }

    OpticalNetwork prefix(net.mode_count());
    OpticalNetwork suffix(net.mode_count());
    for (size_t k = 0; k < list.size(); ++k) {
        if (k < prefix_end) {
            prefix.append(list[k]);
        } else {
            suffix.append(list[k]);
        }
    }
    int hoisted = prefix.cphase_count();
    return HoistResult{true, std::move(prefix), std::move(suffix), hoisted, std::nullopt, 0.0};
}

}  // namespace bosonwalk
