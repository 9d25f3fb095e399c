#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "word.hpp"

// Sampling of (a, b), composition along a word, leaves and cycles.

namespace wordfn {

/// Tables hold 32-bit images, so n is capped here.
inline constexpr std::uint64_t kMaxVertices = (std::uint64_t{1} << 31) - 1;

/// Endofunction of [n], stored 0-based.
class FunctionTable {
public:
    FunctionTable() = default;
    explicit FunctionTable(std::vector<std::uint32_t> images) : img_(std::move(images)) {
        const auto n = img_.size();
        for (auto v : img_)
            if (v >= n) throw InputError("function image out of range");
    }

    static FunctionTable identity(std::size_t n) {
        std::vector<std::uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        return FunctionTable(std::move(v));
    }

    /// Images given as values in 1..n.
    static FunctionTable from_one_based(const std::vector<std::uint64_t>& images) {
        std::vector<std::uint32_t> v;
        v.reserve(images.size());
        for (auto x : images) {
            if (x < 1 || x > images.size()) throw InputError("image " + std::to_string(x) + " outside [1, n]");
            v.push_back(static_cast<std::uint32_t>(x - 1));
        }
        return FunctionTable(std::move(v));
    }

    std::size_t size() const { return img_.size(); }
    std::uint32_t operator[](std::size_t x) const { return img_[x]; }
    std::uint64_t one_based(std::uint64_t x) const { return std::uint64_t{img_[x - 1]} + 1; }
    const std::vector<std::uint32_t>& images() const { return img_; }

    bool operator==(const FunctionTable&) const = default;

private:
    friend FunctionTable compose_word(const FunctionTable&, const FunctionTable&, const Word&);
    std::vector<std::uint32_t> img_;
};

// --- randomness ---------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Seed of the per-trial stream: SplitMix64 of the master seed, mixed with
/// the trial index and mixed again.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(splitmix64(master) ^ (trial * 0xd1342543de82ef95ull + 1));
}

using Engine = std::mt19937_64;

/// Uniform in [0, bound) by Lemire's multiply-shift with rejection; the
/// result depends only on the engine output, so streams are portable.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

inline void check_size(std::uint64_t n) {
    if (n == 0) throw InputError("n must be positive");
    if (n > kMaxVertices) throw ConfigError("n exceeds the 32-bit table ceiling " + std::to_string(kMaxVertices));
}

inline FunctionTable sample_function(std::uint64_t n, Engine& rng) {
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = static_cast<std::uint32_t>(uniform_below(rng, n));
    return FunctionTable(std::move(v));
}

/// a is drawn first, then b, from one engine.
inline std::pair<FunctionTable, FunctionTable> sample_pair(std::uint64_t n, Engine& rng) {
    check_size(n);
    FunctionTable a = sample_function(n, rng);
    FunctionTable b = sample_function(n, rng);
    return {std::move(a), std::move(b)};
}

inline std::pair<FunctionTable, FunctionTable> sample_pair(std::uint64_t n, std::uint64_t seed) {
    Engine rng(seed);
    return sample_pair(n, rng);
}

// --- composition, leaves, cycles ------------------------------------------------

/// phi_{w_k} o ... o phi_{w_1}: w_1 is applied first.
inline FunctionTable compose_word(const FunctionTable& a, const FunctionTable& b, const Word& w) {
    if (a.size() != b.size()) throw InputError("function tables differ in size");
    FunctionTable out = FunctionTable::identity(a.size());
    auto& r = out.img_;
    for (int p = 1; p <= w.length(); ++p) {
        const auto& phi = (w.at(p) == 'a' ? a : b).images();
        for (auto& x : r) x = phi[x];
    }
    return out;
}

/// f applied `times` times.
inline FunctionTable iterate(const FunctionTable& f, int times) {
    std::vector<std::uint32_t> r(f.size());
    std::iota(r.begin(), r.end(), 0u);
    for (int t = 0; t < times; ++t)
        for (auto& x : r) x = f[x];
    return FunctionTable(std::move(r));
}

/// Number of vertices with empty preimage.
inline std::uint64_t leaf_count(const FunctionTable& f) {
    std::vector<char> hit(f.size(), 0);
    for (auto y : f.images()) hit[y] = 1;
    return static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 0));
}

inline std::uint64_t image_size(const FunctionTable& f) { return f.size() - leaf_count(f); }

/// counts[j] = number of cycles of length j, 1 <= j <= L (counts[0] unused).
struct CycleCounts {
    std::uint64_t n = 0;
    int L = 0;
    std::vector<std::uint64_t> counts;

    std::uint64_t operator[](int j) const { return counts[static_cast<std::size_t>(j)]; }
    /// Every cycle is counted (L >= n).
    bool complete() const { return static_cast<std::uint64_t>(L) >= n; }
    bool operator==(const CycleCounts&) const = default;
};

/// Peels in-degree-zero vertices until only cyclic ones remain, then walks
/// each cycle once.
inline CycleCounts cycle_counts(const FunctionTable& f, int L) {
    const std::size_t n = f.size();
    if (L < 1 || static_cast<std::uint64_t>(L) > n) throw InputError("cycle cutoff must satisfy 1 <= L <= n");
    std::vector<std::uint32_t> indeg(n, 0);
    for (auto y : f.images()) ++indeg[y];
    std::vector<std::uint32_t> stack;
    for (std::size_t x = 0; x < n; ++x)
        if (indeg[x] == 0) stack.push_back(static_cast<std::uint32_t>(x));
    std::vector<char> gone(n, 0);
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        gone[x] = 1;
        if (--indeg[f[x]] == 0) stack.push_back(f[x]);
    }
    CycleCounts out{n, L, std::vector<std::uint64_t>(static_cast<std::size_t>(L) + 1, 0)};
    for (std::size_t x = 0; x < n; ++x) {
        if (gone[x]) continue;
        std::uint64_t len = 0;
        for (std::size_t y = x; !gone[y]; y = f[y]) {
            gone[y] = 1;
            ++len;
        }
        if (len <= static_cast<std::uint64_t>(L)) ++out.counts[len];
    }
    return out;
}

/// D(L, g; z) = sum_{j<=L} z_{j mod g} C^j.
template <class Real>
Real weighted_cycle_count(const CycleCounts& c, int g, const std::vector<Real>& z) {
    if (g < 1 || z.size() != static_cast<std::size_t>(g)) throw InputError("weight vector must have g entries");
    Real out(0);
    for (int j = 1; j <= c.L; ++j) out += z[static_cast<std::size_t>(j % g)] * Real(c[j]);
    return out;
}

/// Cycle counts of u^d from those of u:
///   y_i = sum_{c | d, gcd(i, c) = 1} (d/c) x_{d i / c}.
/// The input must be complete, or reach index d * Lout.
inline CycleCounts split_cycle_counts(const CycleCounts& x, int d, int Lout) {
    if (d < 1) throw InputError("exponent must be positive");
    if (Lout < 1) throw InputError("output cutoff must be positive");
    if (!x.complete() && static_cast<std::int64_t>(d) * Lout > x.L)
        throw InputError("input cycle counts too short for the requested cutoff");
    auto at = [&](std::int64_t j) -> std::uint64_t { return j <= x.L ? x[static_cast<int>(j)] : 0; };
    CycleCounts y{x.n, Lout, std::vector<std::uint64_t>(static_cast<std::size_t>(Lout) + 1, 0)};
    for (int i = 1; i <= Lout; ++i)
        for (int c = 1; c <= d; ++c)
            if (d % c == 0 && std::gcd(i, c) == 1)
                y.counts[static_cast<std::size_t>(i)] += static_cast<std::uint64_t>(d / c) * at(std::int64_t{d} * i / c);
    return y;
}

// --- experiments ---------------------------------------------------------------

struct ExperimentConfig {
    Word word;
    std::uint64_t n = 0;
    std::uint64_t trials = 0;
    int L = 0;  // cycle cutoff; 0 disables cycle statistics
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.word.length() == 0) throw InputError("experiment needs a word");
    check_size(cfg.n);
    if (cfg.trials == 0) throw InputError("trials must be positive");
    if (cfg.L < 0 || static_cast<std::uint64_t>(cfg.L) > cfg.n) throw InputError("cycle cutoff must be in [0, n]");
    if (cfg.threads == 0) throw InputError("threads must be positive");
}

struct TrialResult {
    std::uint64_t leaves = 0;
    CycleCounts cycles;  // empty when L = 0
};

/// One trial on its own stream; identical to trial `index` of run_experiment.
inline TrialResult simulate_trial(const ExperimentConfig& cfg, std::uint64_t index) {
    Engine rng(trial_seed(cfg.seed, index));
    auto [a, b] = sample_pair(cfg.n, rng);
    FunctionTable f = compose_word(a, b, cfg.word);
    TrialResult r;
    r.leaves = leaf_count(f);
    if (cfg.L > 0) r.cycles = cycle_counts(f, cfg.L);
    return r;
}

/// Exact integer sums; merging is associative and commutative, so the
/// summary does not depend on scheduling.
struct Accumulator {
    std::uint64_t trials = 0;
    unsigned __int128 sumL = 0;
    unsigned __int128 sumL2 = 0;
    std::vector<std::uint64_t> sumC, sumC2;

    explicit Accumulator(int L = 0) : sumC(static_cast<std::size_t>(L) + 1, 0), sumC2(static_cast<std::size_t>(L) + 1, 0) {}

    void add(const TrialResult& r) {
        ++trials;
        sumL += r.leaves;
        sumL2 += static_cast<unsigned __int128>(r.leaves) * r.leaves;
        for (std::size_t j = 1; j < sumC.size(); ++j) {
            sumC[j] += r.cycles.counts[j];
            sumC2[j] += r.cycles.counts[j] * r.cycles.counts[j];
        }
    }
    void merge(const Accumulator& o) {
        trials += o.trials;
        sumL += o.sumL;
        sumL2 += o.sumL2;
        for (std::size_t j = 1; j < sumC.size(); ++j) {
            sumC[j] += o.sumC[j];
            sumC2[j] += o.sumC2[j];
        }
    }
};

struct ExperimentSummary {
    Word word;
    std::uint64_t n = 0, trials = 0, seed = 0;
    int L = 0;
    double leafMean = 0;
    double leafVar = 0;         // unbiased sample variance
    double leafVarOverN = 0;
    double mShiftMean = 0;      // mean of (L^2 - eta_k^2 n^2) / n
    std::vector<double> cycleMeans;   // index 1..L
    std::vector<double> cycleStdErr;  // index 1..L
};

inline long double eta_long(int k) {
    long double e = 0;
    for (int i = 0; i < k; ++i) e = std::exp(e - 1.0L);
    return e;
}

inline ExperimentSummary summarize(const ExperimentConfig& cfg, const Accumulator& acc) {
    ExperimentSummary s;
    s.word = cfg.word;
    s.n = cfg.n;
    s.trials = acc.trials;
    s.seed = cfg.seed;
    s.L = cfg.L;
    const long double T = static_cast<long double>(acc.trials);
    const long double n = static_cast<long double>(cfg.n);
    s.leafMean = static_cast<double>(static_cast<long double>(acc.sumL) / T);
    if (acc.trials > 1) {
        // exact numerator: T * sum L^2 - (sum L)^2
        using i128 = __int128;
        i128 num = static_cast<i128>(acc.trials) * static_cast<i128>(acc.sumL2) -
                   static_cast<i128>(acc.sumL) * static_cast<i128>(acc.sumL);
        s.leafVar = static_cast<double>(static_cast<long double>(num) / (T * (T - 1)));
    }
    s.leafVarOverN = s.leafVar / static_cast<double>(cfg.n);
    const long double e = eta_long(cfg.word.length());
    s.mShiftMean = static_cast<double>((static_cast<long double>(acc.sumL2) / T - e * e * n * n) / n);
    s.cycleMeans.assign(acc.sumC.size(), 0.0);
    s.cycleStdErr.assign(acc.sumC.size(), 0.0);
    for (std::size_t j = 1; j < acc.sumC.size(); ++j) {
        long double m = acc.sumC[j] / T;
        s.cycleMeans[j] = static_cast<double>(m);
        if (acc.trials > 1) {
            long double var = (acc.sumC2[j] - T * m * m) / (T - 1);
            s.cycleStdErr[j] = static_cast<double>(std::sqrt(std::max(var, 0.0L) / T));
        }
    }
    return s;
}

/// Trials are handed out in blocks through an atomic counter; each worker
/// accumulates privately and the partial sums are merged at the end.
inline ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    constexpr std::uint64_t kBlock = 64;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, (cfg.trials + kBlock - 1) / kBlock));
    std::atomic<std::uint64_t> next{0};
    std::vector<Accumulator> parts(workers, Accumulator(cfg.L));
    auto work = [&](unsigned id) {
        for (;;) {
            std::uint64_t begin = next.fetch_add(kBlock);
            if (begin >= cfg.trials) return;
            std::uint64_t end = std::min(cfg.trials, begin + kBlock);
            for (std::uint64_t t = begin; t < end; ++t) parts[id].add(simulate_trial(cfg, t));
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
        for (auto& t : pool) t.join();
    }
    Accumulator total(cfg.L);
    for (auto& p : parts) total.merge(p);
    return summarize(cfg, total);
}

/// Flat "key = value" file; '#' starts a comment.  Keys: word, n, trials,
/// L (or cycles), seed, threads.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineNo = 0;
    auto number = [&](const std::string& key, const std::string& v) {
        std::size_t used = 0;
        unsigned long long x = 0;
        try {
            x = std::stoull(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size() || v.empty() || v[0] == '-')
            throw InputError("line " + std::to_string(lineNo) + ": '" + key + "' expects a non-negative integer, got '" + v + "'");
        return static_cast<std::uint64_t>(x);
    };
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            s.erase(s.find_last_not_of(ws) + 1);
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw InputError("line " + std::to_string(lineNo) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "word") cfg.word = Word::parse(value);
        else if (key == "n") cfg.n = number(key, value);
        else if (key == "trials") cfg.trials = number(key, value);
        else if (key == "L" || key == "cycles") cfg.L = static_cast<int>(number(key, value));
        else if (key == "seed") cfg.seed = number(key, value);
        else if (key == "threads") cfg.threads = static_cast<unsigned>(number(key, value));
        else throw InputError("line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
    }
    return cfg;
}

} // namespace wordfn
