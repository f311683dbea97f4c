#include "qpnls/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "qpnls/parallel.hpp"
#include "qpnls/phase.hpp"

namespace qpnls {

QPFunction propagate(const QPFunction& g, double t) {
    if (t == 0) return g;
    QPFunction::CoeffMap out;
    for (const auto& [k, c] : g.coeffs()) out.emplace(k, c * std::polar(1.0, -reduced_phase(t, square(k))));
    return QPFunction(std::move(out));
}

std::optional<Int> exact_sqrt(Int s) {
    if (s < 0) return std::nullopt;
    using U = unsigned __int128;
    auto r = static_cast<U>(std::sqrt(static_cast<long double>(s)));
    const U target = static_cast<U>(s);
    while (r > 0 && r * r > target) --r;
    while ((r + 1) * (r + 1) <= target) ++r;
    if (r * r != target) return std::nullopt;
    return static_cast<Int>(r);
}

ResonancePairSet enumerate_pairs(const OmegaElement& p, const OmegaElement& q) {
    using namespace checked;
    ResonancePairSet result{p, q, {}};

    // X = 2 l1x - px, Y = 2 l1y - py turn the two coordinate equations into
    // X^2 + 2Y^2 = A and XY = B, hence X^4 - A X^2 + 2 B^2 = 0.
    const Int A = sub(sub(mul(2, q.kx), mul(p.kx, p.kx)), mul(2, mul(p.ky, p.ky)));
    const Int B = sub(q.ky, mul(p.kx, p.ky));

    const Int disc = sub(mul(A, A), mul(8, mul(B, B)));
    auto root = exact_sqrt(disc);
    if (!root) return result;
    if ((A + *root) % 2 != 0) return result;

    std::vector<std::pair<Int, Int>> candidates;
    auto add_square_root_branch = [&](Int s) {
        if (s < 0) return;
        auto x = exact_sqrt(s);
        if (!x) return;
        if (*x == 0) {
            // X = 0 forces B = 0 and leaves 2Y^2 = A.
            if (B != 0 || A < 0 || A % 2 != 0) return;
            if (auto y = exact_sqrt(A / 2)) {
                candidates.emplace_back(0, *y);
                candidates.emplace_back(0, -*y);
            }
            return;
        }
        for (Int X : {*x, -*x}) {
            if (B % X != 0) continue;
            candidates.emplace_back(X, B / X);  // Y = 0 here covers X^2 = A when B = 0
        }
    };
    add_square_root_branch(add(A, *root) / 2);
    if (*root != 0) add_square_root_branch(sub(A, *root) / 2);

    for (auto [X, Y] : candidates) {
        if ((X - p.kx) % 2 != 0 || (Y - p.ky) % 2 != 0) continue;
        OmegaElement l1{add(X, p.kx) / 2, add(Y, p.ky) / 2};
        OmegaElement l2 = p - l1;
        if (l1 + l2 != p || square(l1) + square(l2) != q) continue;
        result.pairs.emplace_back(l1, l2);
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    result.pairs.erase(std::unique(result.pairs.begin(), result.pairs.end()), result.pairs.end());
    return result;
}

double strichartz_l4_norm(const QPFunction& g, unsigned workers) {
    const std::vector<std::pair<OmegaElement, Complex>> terms(g.coeffs().begin(), g.coeffs().end());
    const std::size_t n = terms.size();
    if (n == 0) return 0.0;

    using Entry = std::pair<PairKey, Complex>;
    std::vector<std::vector<Entry>> partial(chunk_count(n, workers));
    for_each_chunk(n, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        auto& out = partial[chunk];
        out.reserve((end - begin) * n);
        for (std::size_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out.emplace_back(pair_key(terms[i].first, terms[j].first), terms[i].second * terms[j].second);
    });

    // Chunks are contiguous in i, so concatenation restores the serial (i, j)
    // order and the stable sort keeps it within each group.
    std::vector<Entry> entries;
    entries.reserve(n * n);
    for (auto& part : partial) entries.insert(entries.end(), part.begin(), part.end());
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.first < b.first; });

    long double total = 0;
    for (std::size_t i = 0; i < entries.size();) {
        Complex inner{};
        std::size_t j = i;
        for (; j < entries.size() && entries[j].first == entries[i].first; ++j) inner += entries[j].second;
        total += std::norm(inner);
        i = j;
    }
    return std::pow(static_cast<double>(total), 0.25);
}

double strichartz_ratio(const QPFunction& g, unsigned workers) {
    double l2 = l2_norm(g);
    if (g.empty() || l2 == 0) throw std::invalid_argument("strichartz_ratio is undefined for the zero function");
    return strichartz_l4_norm(g, workers) / l2;
}

double l4_norm_ergodic_crosscheck(const QPFunction& g, double time_half_width, double space_half_width,
                                  std::size_t steps, unsigned workers) {
    if (steps < 2) throw std::invalid_argument("l4_norm_ergodic_crosscheck needs at least 2 steps");
    if (!(time_half_width > 0) || !(space_half_width > 0))
        throw std::invalid_argument("l4_norm_ergodic_crosscheck needs positive window half-widths");

    struct Mode {
        Complex amplitude;
        OmegaElement k_squared;
        Complex start;  // exp(-i k L)
        Complex step;   // exp(i k dx)
    };
    const double dt = 2.0 * time_half_width / static_cast<double>(steps);
    const double dx = 2.0 * space_half_width / static_cast<double>(steps);
    std::vector<Mode> modes;
    for (const auto& [k, c] : g.coeffs()) {
        modes.push_back({c, square(k), std::polar(1.0, -reduced_phase(space_half_width, k)),
                         std::polar(1.0, reduced_phase(dx, k))});
    }

    const std::size_t nodes = steps + 1;
    std::vector<double> spatial_mean(nodes);
    for_each_chunk(nodes, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::vector<Complex> z(modes.size()), rot(modes.size());
        for (std::size_t it = begin; it < end; ++it) {
            const double t = -time_half_width + dt * static_cast<double>(it);
            for (std::size_t m = 0; m < modes.size(); ++m) {
                z[m] = modes[m].amplitude * std::polar(1.0, -reduced_phase(t, modes[m].k_squared)) * modes[m].start;
                rot[m] = modes[m].step;
            }
            long double acc = 0;
            for (std::size_t ix = 0; ix <= steps; ++ix) {
                Complex f{};
                for (std::size_t m = 0; m < z.size(); ++m) {
                    f += z[m];
                    z[m] *= rot[m];
                }
                double a2 = std::norm(f);
                double w = (ix == 0 || ix == steps) ? 0.5 : 1.0;
                acc += w * a2 * a2;
            }
            spatial_mean[it] = static_cast<double>(acc / static_cast<long double>(steps));
        }
    });

    long double acc = 0;
    for (std::size_t it = 0; it < nodes; ++it) {
        double w = (it == 0 || it == steps) ? 0.5 : 1.0;
        acc += w * spatial_mean[it];
    }
    return std::pow(static_cast<double>(acc / static_cast<long double>(steps)), 0.25);
}

ApqAuditResult apq_audit(long long box, unsigned workers) {
    if (box < 0) throw std::invalid_argument("apq_audit needs a non-negative box");
    std::vector<OmegaElement> points;
    for (long long x = -box; x <= box; ++x)
        for (long long y = -box; y <= box; ++y) points.emplace_back(x, y);

    struct Entry {
        PairKey key;
        FrequencyPair pair;
    };
    std::vector<Entry> entries;
    entries.reserve(points.size() * points.size());
    for (const auto& l1 : points)
        for (const auto& l2 : points) entries.push_back({pair_key(l1, l2), {l1, l2}});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.key, a.pair) < std::tie(b.key, b.pair); });

    std::vector<std::size_t> group_start;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (i == 0 || !(entries[i].key == entries[i - 1].key)) group_start.push_back(i);
    group_start.push_back(entries.size());
    const std::size_t groups = group_start.size() - 1;

    struct Tally {
        std::size_t max_cardinality = 0;
        std::size_t mismatches = 0;
        std::map<std::size_t, std::size_t> histogram;
    };
    std::vector<Tally> tallies(chunk_count(groups, workers));
    for_each_chunk(groups, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        Tally& tally = tallies[chunk];
        for (std::size_t gidx = begin; gidx < end; ++gidx) {
            const std::size_t lo = group_start[gidx], hi = group_start[gidx + 1];
            const PairKey& key = entries[lo].key;
            ResonancePairSet found = enumerate_pairs(key.p, key.q);
            bool same = found.pairs.size() == hi - lo;
            for (std::size_t i = 0; same && i < found.pairs.size(); ++i)
                same = found.pairs[i] == entries[lo + i].pair;
            if (!same) ++tally.mismatches;
            tally.max_cardinality = std::max(tally.max_cardinality, found.pairs.size());
            ++tally.histogram[found.pairs.size()];
        }
    });

    ApqAuditResult result;
    result.box = box;
    result.ordered_pairs = entries.size();
    result.keys = groups;
    for (const auto& t : tallies) {
        result.max_cardinality = std::max(result.max_cardinality, t.max_cardinality);
        result.mismatches += t.mismatches;
        for (auto [card, count] : t.histogram) result.cardinality_histogram[card] += count;
    }
    return result;
}

}  // namespace qpnls
