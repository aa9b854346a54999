#pragma once

// Monte-Carlo harness for random affine network coding with deletions.
//
// Inner nodes forward random affine combinations (coefficients summing to 1)
// of what they receive, so everything the sink sees stays inside the affine
// span of the source packets.

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affgeo/codes.hpp"
#include "affgeo/design.hpp"
#include "affgeo/error.hpp"
#include "affgeo/family.hpp"
#include "affgeo/flatspace.hpp"
#include "affgeo/parallel.hpp"

namespace affgeo {

/// Identifier written into every stats block.
inline constexpr const char* kRngId = "mt19937_64/splitmix64";

/// Seedable 64-bit generator; trial i of seed s uses its own substream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix64(seed ^ splitmix64(index)));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n) by rejection, independent of the standard library's distributions.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % n;
    }

    bool bernoulli(double p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::mt19937_64 engine_;
};

struct NetworkConfig {
    int layers = 1;
    int width = 4;
    int indegree = 2;
    double drop_prob = 0.0;
    int sink_indegree = 4;
    /// When set, the network is replaced by a lossless affine channel followed
    /// by removal of exactly this many independent directions at the sink.
    std::optional<int> forced_deletions;

    void validate() const {
        if (layers < 0) throw InvalidArgument("layers must be >= 0");
        if (width < 1) throw InvalidArgument("width must be >= 1");
        if (indegree < 1) throw InvalidArgument("indegree must be >= 1");
        if (sink_indegree < 1) throw InvalidArgument("sink indegree must be >= 1");
        if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw InvalidArgument("drop probability must lie in [0, 1]");
        if (forced_deletions && *forced_deletions < 0) throw InvalidArgument("forced deletions must be >= 0");
    }
};

/// s coefficients: the first s-1 uniform, the last 1 minus their sum.
inline std::vector<Elem> random_affine_coeffs(Rng& rng, const Field& f, int s) {
    if (s < 1) throw InvalidArgument("need at least one coefficient");
    std::vector<Elem> c(s);
    Elem sum = 0;
    for (int i = 0; i + 1 < s; ++i) {
        c[i] = static_cast<Elem>(rng.below(f.order()));
        sum = f.add(sum, c[i]);
    }
    c[s - 1] = f.sub(f.one(), sum);
    return c;
}

namespace detail {

inline Row affine_combination(const Field& f, const std::vector<const Row*>& in, const std::vector<Elem>& c) {
    Row out(in.front()->size(), 0);
    for (std::size_t i = 0; i < in.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(c[i], (*in[i])[j]));
    return out;
}

/// Up to `count` distinct indices of [0, n), uniformly chosen.
inline std::vector<std::size_t> sample_indices(Rng& rng, std::size_t n, std::size_t count) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    count = std::min(count, n);
    for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(count);
    return idx;
}

} // namespace detail

/// Sends the sources through `layers` layers of `width` nodes; returns what the sink receives.
inline std::vector<VectorFq> propagate(const NetworkConfig& cfg, const std::vector<VectorFq>& sources, Rng& rng) {
    cfg.validate();
    if (sources.empty()) throw InvalidArgument("no source vectors");
    const Field& f = sources.front().field();
    std::vector<std::optional<Row>> prev;
    for (const auto& s : sources) prev.emplace_back(s.coords());

    auto gather = [&](std::size_t edges) {
        std::vector<const Row*> in;
        for (auto j : detail::sample_indices(rng, prev.size(), edges)) {
            const bool dropped = rng.bernoulli(cfg.drop_prob);
            if (prev[j] && !dropped) in.push_back(&*prev[j]);
        }
        return in;
    };

    for (int layer = 0; layer < cfg.layers; ++layer) {
        std::vector<std::optional<Row>> cur(cfg.width);
        for (auto& node : cur) {
            const auto in = gather(cfg.indegree);
            if (in.empty()) continue; // nothing arrived, nothing sent
            node = detail::affine_combination(f, in, random_affine_coeffs(rng, f, static_cast<int>(in.size())));
        }
        prev = std::move(cur);
    }
    std::vector<VectorFq> out;
    for (const Row* r : gather(cfg.sink_indegree)) out.emplace_back(f, *r);
    return out;
}

struct TrialStats {
    std::uint64_t trials = 0, successes = 0, ambiguities = 0, erasures = 0;
    std::uint64_t received_rank_sum = 0;

    Rational mean_received_rank() const {
        if (trials == 0) return Rational(0);
        return Rational(static_cast<std::int64_t>(received_rank_sum), static_cast<std::int64_t>(trials));
    }
    TrialStats& operator+=(const TrialStats& o) {
        trials += o.trials;
        successes += o.successes;
        ambiguities += o.ambiguities;
        erasures += o.erasures;
        received_rank_sum += o.received_rank_sum;
        return *this;
    }
    friend bool operator==(const TrialStats&, const TrialStats&) = default;
};

namespace detail {

/// Lossless affine channel: random affine combinations of the sources until they span the block again.
inline std::vector<VectorFq> remix_full_rank(const std::vector<VectorFq>& sources, Rng& rng) {
    const Field& f = sources.front().field();
    std::vector<const Row*> in;
    for (const auto& s : sources) in.push_back(&s.coords());
    std::vector<VectorFq> out;
    int rank = 0;
    while (rank < static_cast<int>(sources.size())) {
        VectorFq v(f, affine_combination(f, in, random_affine_coeffs(rng, f, static_cast<int>(in.size()))));
        auto trial = out;
        trial.push_back(v);
        const int r = flat_rank(aff_closure(trial));
        if (r > rank) {
            out = std::move(trial);
            rank = r;
        }
    }
    return out;
}

} // namespace detail

/// Runs `trials` independent transmissions of uniformly chosen code blocks.
inline TrialStats run_trials(const AffineFamily& code, const NetworkConfig& cfg, std::uint64_t trials, std::uint64_t seed) {
    cfg.validate();
    if (code.empty()) throw InvalidArgument("code has no blocks");
    std::vector<TrialStats> partial(worker_count());
    parallel_chunks(trials, [&](std::size_t lo, std::size_t hi, unsigned w) {
        TrialStats& st = partial[w];
        for (std::size_t i = lo; i < hi; ++i) {
            Rng rng = Rng::substream(seed, i);
            ++st.trials;
            const std::size_t sent = rng.below(code.size());
            const AffineFlat& block = code.blocks()[sent];
            std::vector<VectorFq> sources{block.rep()};
            for (const auto& b : block.dir().basis()) sources.push_back(block.rep() + VectorFq(block.field(), b));

            std::vector<VectorFq> sink;
            if (cfg.forced_deletions) {
                sink = detail::remix_full_rank(sources, rng);
                const auto keep = static_cast<std::size_t>(std::max<int>(0, static_cast<int>(sink.size()) - *cfg.forced_deletions));
                std::vector<VectorFq> kept;
                for (auto j : detail::sample_indices(rng, sink.size(), keep)) kept.push_back(sink[j]);
                sink = std::move(kept);
            } else {
                sink = propagate(cfg, sources, rng);
            }
            if (sink.empty()) {
                ++st.erasures;
                continue;
            }
            const AffineFlat received = aff_closure(sink);
            if (!received.is_subset_of(block)) throw std::logic_error("received flat is not inside the sent block");
            st.received_rank_sum += flat_rank(received);
            const auto res = decode(code, received);
            switch (res.status) {
            case DecodeStatus::decoded:
                if (res.block() != sent) throw std::logic_error("decoder returned a block other than the one sent");
                ++st.successes;
                break;
            case DecodeStatus::ambiguous: ++st.ambiguities; break;
            case DecodeStatus::erasure: ++st.erasures; break;
            }
        }
    });
    TrialStats total;
    for (const auto& p : partial) total += p;
    return total;
}

inline std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Flat key=value block, one pair per line.
inline std::string render_stats(const TrialStats& s, std::uint64_t seed) {
    std::ostringstream os;
    os << "trials=" << s.trials << '\n'
       << "successes=" << s.successes << '\n'
       << "ambiguities=" << s.ambiguities << '\n'
       << "erasures=" << s.erasures << '\n'
       << "mean_received_rank=" << format_rational(s.mean_received_rank()) << '\n'
       << "seed=" << seed << '\n'
       << "rng=" << kRngId << '\n';
    return os.str();
}

} // namespace affgeo
