// wordfn: constants, simulations and oracles for random functions composed
// along a binary word.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wordfn/wordfn.hpp"

using namespace wordfn;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kComputation = 2, kSelftest = 3 };

struct Globals {
    std::string format = "text";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<unsigned> precision;

    unsigned digits() const { return precision ? *precision : default_digits(); }
};

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

std::string dec(const HighFloat& x, unsigned digits) { return to_decimal(x, static_cast<int>(digits)); }

// --- constants -------------------------------------------------------------------

int cmd_constants(const Globals& g, const std::string& wordText, bool exact) {
    const Word w = Word::parse(wordText);
    const unsigned digits = g.digits();
    const auto b = leading_constants(w, digits);
    std::optional<SymbolicConstants> sym;
    if (exact) sym = symbolic_constants(w);

    if (g.format == "json") {
        ordered_json j;
        j["word"] = w.str();
        j["precision"] = digits;
        j["c"] = dec(b.c, digits);
        j["c_tilde"] = dec(b.cTilde, digits);
        j["c_approx1"] = dec(b.cApprox1, digits);
        j["c_approx2"] = dec(b.cApprox2, digits);
        j["c_int"] = dec(b.cInt, digits);
        j["c_cyc"] = dec(b.cCyc, digits);
        if (sym) j["exact"] = {{"c", to_string(sym->c)}, {"c_tilde", to_string(sym->cTilde)}};
        emit(j);
    } else if (g.format == "csv") {
        std::cout << "word,precision,c,c_tilde,c_approx1,c_approx2,c_int,c_cyc";
        if (sym) std::cout << ",c_exact,c_tilde_exact";
        std::cout << '\n'
                  << w.str() << ',' << digits << ',' << dec(b.c, digits) << ',' << dec(b.cTilde, digits) << ','
                  << dec(b.cApprox1, digits) << ',' << dec(b.cApprox2, digits) << ',' << dec(b.cInt, digits) << ','
                  << dec(b.cCyc, digits);
        if (sym) std::cout << ",\"" << to_string(sym->c) << "\",\"" << to_string(sym->cTilde) << '"';
        std::cout << '\n';
    } else {
        std::cout << "word       " << w.str() << "\n"
                  << "c          " << dec(b.c, digits) << "\n"
                  << "c~         " << dec(b.cTilde, digits) << "\n"
                  << "c_approx1  " << dec(b.cApprox1, digits) << "\n"
                  << "c_approx2  " << dec(b.cApprox2, digits) << "\n"
                  << "c_int      " << dec(b.cInt, digits) << "\n"
                  << "c_cyc      " << dec(b.cCyc, digits) << "\n";
        if (sym) std::cout << "c  exact   " << to_string(sym->c) << "\n" << "c~ exact   " << to_string(sym->cTilde) << "\n";
    }
    return kOk;
}

// --- table -------------------------------------------------------------------------

int cmd_table(const Globals& g, int maxLen) {
    if (maxLen < 1 || maxLen > kSymbolicMaxLength) throw InputError("--max-len must be in [1, 12]");
    const unsigned digits = g.digits();
    struct Row {
        Word w;
        ConstantBundle<HighFloat> b;
        SymbolicConstants s;
    };
    std::vector<Row> rows;
    for (int k = 1; k <= maxLen; ++k)
        for (auto& w : canonical_words(k)) rows.push_back({w, leading_constants(w, digits), symbolic_constants(w)});

    if (g.format == "json") {
        ordered_json arr = ordered_json::array();
        for (auto& r : rows)
            arr.push_back({{"word", r.w.str()},
                           {"c", fixed_decimal(r.b.c, 6)},
                           {"c_tilde", fixed_decimal(r.b.cTilde, 6)},
                           {"c_exact", to_string(r.s.c)},
                           {"c_tilde_exact", to_string(r.s.cTilde)}});
        emit({{"max_len", maxLen}, {"rows", arr}});
    } else if (g.format == "csv") {
        std::cout << "word,c,c_tilde,c_exact,c_tilde_exact\n";
        for (auto& r : rows)
            std::cout << r.w.str() << ',' << fixed_decimal(r.b.c, 6) << ',' << fixed_decimal(r.b.cTilde, 6) << ",\""
                      << to_string(r.s.c) << "\",\"" << to_string(r.s.cTilde) << "\"\n";
    } else {
        std::cout << "c(w)\n";
        for (auto& r : rows) std::cout << "  " << r.w.str() << "  " << fixed_decimal(r.b.c, 6) << "  " << to_string(r.s.c) << "\n";
        std::cout << "c~(w)\n";
        for (auto& r : rows)
            std::cout << "  " << r.w.str() << "  " << fixed_decimal(r.b.cTilde, 6) << "  " << to_string(r.s.cTilde) << "\n";
    }
    return kOk;
}

// --- sweep -------------------------------------------------------------------------

struct SweepRow {
    Word w;
    HighFloat c, cTilde;
};

// Smallest gap between sorted neighbours; +inf with fewer than two values.
HighFloat min_gap(std::vector<HighFloat> v) {
    std::sort(v.begin(), v.end());
    HighFloat best = -1;
    for (std::size_t q = 1; q < v.size(); ++q) {
        HighFloat d = v[q] - v[q - 1];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

std::size_t distinct_count(std::vector<HighFloat> v, const HighFloat& tol) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.empty() ? 0 : 1;
    for (std::size_t q = 1; q < v.size(); ++q)
        if (v[q] - v[q - 1] > tol) ++n;
    return n;
}

int cmd_sweep(const Globals& g, int maxLen, const std::string& outPath) {
    if (maxLen < 1 || maxLen > 20) throw InputError("--max-len must be in [1, 20]");
    const unsigned digits = g.digits();
    PrecisionScope scope(digits);
    const auto eta = eta_sequence<HighFloat>(maxLen);
    std::vector<Word> words;
    for (int k = 1; k <= maxLen; ++k)
        for (auto& w : canonical_words(k)) words.push_back(w);
    for (int k = 1; k <= maxLen; ++k) cached_moments<HighFloat>(k);  // fill the cache before fan-out

    std::vector<SweepRow> rows(words.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(g.threads, static_cast<unsigned>(words.size())));
    auto work = [&](unsigned id) {
        for (std::size_t q = id; q < words.size(); q += workers) {
            auto b = leading_constants(words[q], eta);
            rows[q] = {words[q], b.c, b.cTilde};
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& t : pool) t.join();

    if (!outPath.empty()) {
        std::ofstream out(outPath);
        if (!out) throw ConfigError("cannot open " + outPath + " for writing");
        out << "word,length,c,c_tilde\n";
        for (auto& r : rows) out << r.w.str() << ',' << r.w.length() << ',' << dec(r.c, digits) << ',' << dec(r.cTilde, digits) << '\n';
    }

    const HighFloat tol = pow(HighFloat(10), -static_cast<int>(digits) + 10);
    ordered_json lengths = ordered_json::array();
    std::vector<HighFloat> allC, allT;
    bool argmaxOk = true;
    for (int k = 1; k <= maxLen; ++k) {
        std::vector<HighFloat> cs, ts;
        Word top;
        HighFloat topC = -1;
        for (auto& r : rows) {
            if (r.w.length() != k) continue;
            cs.push_back(r.c);
            ts.push_back(r.cTilde);
            if (r.c > topC) {
                topC = r.c;
                top = r.w;
            }
        }
        allC.insert(allC.end(), cs.begin(), cs.end());
        allT.insert(allT.end(), ts.begin(), ts.end());
        const bool isPower = top == Word::parse(std::string(static_cast<std::size_t>(k), 'a'));
        argmaxOk = argmaxOk && isPower;
        lengths.push_back({{"length", k},
                           {"words", cs.size()},
                           {"distinct_c", distinct_count(cs, tol)},
                           {"distinct_c_tilde", distinct_count(ts, tol)},
                           {"argmax_c", top.str()}});
    }
    const HighFloat gapC = min_gap(allC), gapT = min_gap(allT);
    ordered_json j{{"max_len", maxLen},
                   {"precision", digits},
                   {"words", rows.size()},
                   {"lengths", lengths},
                   {"distinct_c", distinct_count(allC, tol)},
                   {"distinct_c_tilde", distinct_count(allT, tol)},
                   {"min_gap_c", to_decimal(gapC, 6)},
                   {"min_gap_c_tilde", to_decimal(gapT, 6)},
                   {"argmax_is_power", argmaxOk}};
    if (g.format == "json") {
        emit(j);
    } else {
        std::cout << "length,words,distinct_c,distinct_c_tilde,argmax_c\n";
        for (auto& l : lengths)
            std::cout << l["length"] << ',' << l["words"] << ',' << l["distinct_c"] << ',' << l["distinct_c_tilde"] << ','
                      << l["argmax_c"].get<std::string>() << '\n';
        std::cout << "distinct c overall: " << j["distinct_c"] << " of " << rows.size() << "\n"
                  << "distinct c~ overall: " << j["distinct_c_tilde"] << " of " << rows.size() << "\n"
                  << "min gap c: " << j["min_gap_c"].get<std::string>() << "\n"
                  << "min gap c~: " << j["min_gap_c_tilde"].get<std::string>() << "\n";
    }
    return kOk;
}

// --- simulate ----------------------------------------------------------------------

ordered_json summary_json(const ExperimentSummary& s) {
    ordered_json cyc = ordered_json::array();
    for (std::size_t j = 1; j < s.cycleMeans.size(); ++j) cyc.push_back(s.cycleMeans[j]);
    return {{"word", s.word.str()},
            {"n", s.n},
            {"trials", s.trials},
            {"seed", s.seed},
            {"leaf_mean", s.leafMean},
            {"leaf_var_over_n", s.leafVarOverN},
            {"m_shift_mean", s.mShiftMean},
            {"cycle_means", cyc}};
}

int cmd_simulate(const Globals& g, ExperimentConfig cfg) {
    cfg.threads = g.threads;
    const auto s = run_experiment(cfg);
    if (g.format == "csv") {
        std::cout << "word,n,trials,seed,leaf_mean,leaf_var_over_n,m_shift_mean";
        for (int j = 1; j <= s.L; ++j) std::cout << ",cycle_mean_" << j;
        std::cout << '\n' << s.word.str() << ',' << s.n << ',' << s.trials << ',' << s.seed << ',';
        std::cout.precision(17);
        std::cout << s.leafMean << ',' << s.leafVarOverN << ',' << s.mShiftMean;
        for (int j = 1; j <= s.L; ++j) std::cout << ',' << s.cycleMeans[static_cast<std::size_t>(j)];
        std::cout << '\n';
    } else {
        emit(summary_json(s));  // json is also the default for simulate
    }
    return kOk;
}

// --- estimators --------------------------------------------------------------------

int cmd_estimate_length(const Globals& g, const std::string& wordText, std::uint64_t n, std::uint64_t seed, int kMax) {
    const Word w = Word::parse(wordText);
    ExperimentConfig cfg{w, n, 1, 0, seed, 1};
    validate(cfg);
    const auto r = simulate_trial(cfg, 0);
    const auto eta = eta_sequence<double>(std::max(kMax, w.length()));
    const int guess = guess_length(n, r.leaves, kMax, eta);
    const double ratio = static_cast<double>(r.leaves) / static_cast<double>(n);
    if (g.format == "json") {
        emit({{"word", w.str()}, {"n", n}, {"seed", seed}, {"leaves", r.leaves}, {"leaf_ratio", ratio},
              {"guess", guess}, {"true_length", w.length()}, {"eta_guess", eta[guess]}, {"correct", guess == w.length()}});
    } else {
        std::cout << "leaves " << r.leaves << " of " << n << " (ratio " << ratio << ")\n"
                  << "guess  k = " << guess << " (eta_" << guess << " = " << eta[guess] << ")\n"
                  << "truth  k = " << w.length() << "\n";
    }
    return kOk;
}

int cmd_estimate_exponent(const Globals& g, const std::string& wordText, std::uint64_t n, int L, std::uint64_t trials,
                          std::uint64_t seed, int dMax) {
    const Word w = Word::parse(wordText);
    ExperimentConfig cfg{w, n, trials, L, seed, g.threads};
    validate(cfg);
    if (L < 2) throw InputError("--L must be at least 2");
    const int truth = exponent_and_root(w).exponent;
    std::vector<int> guesses(trials);
    std::vector<double> D(trials);
    std::vector<std::optional<std::int64_t>> diag(trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(g.threads, static_cast<unsigned>(trials)));
    auto work = [&](unsigned id) {
        for (std::uint64_t t = id; t < trials; t += workers) {
            auto r = simulate_trial(cfg, t);
            auto eg = guess_exponent(r.cycles, L, dMax);
            guesses[t] = eg.d;
            diag[t] = eg.diagnosticD;
            D[t] = weighted_cycle_count<double>(r.cycles, 1, {1.0});
        }
    };
    std::vector<std::thread> pool;
    for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
    work(0);
    for (auto& t : pool) t.join();

    std::map<int, std::uint64_t> hist;
    std::uint64_t correct = 0, diagCorrect = 0;
    double sum = 0, sum2 = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++hist[guesses[t]];
        correct += guesses[t] == truth;
        diagCorrect += diag[t] && *diag[t] == truth;
        sum += D[t];
        sum2 += D[t] * D[t];
    }
    const double T = static_cast<double>(trials);
    const double mean = sum / T;
    const double se = trials > 1 ? std::sqrt(std::max(0.0, (sum2 - T * mean * mean) / (T - 1)) / T) : 0.0;
    const double limit = finite_limit_mean<double>(truth, L, 1, {1.0});
    ordered_json h = ordered_json::object();
    for (auto& [d, c] : hist) h[std::to_string(d)] = c;
    if (g.format == "json") {
        emit({{"word", w.str()}, {"n", n}, {"L", L}, {"trials", trials}, {"seed", seed}, {"d_max", dMax},
              {"true_exponent", truth}, {"guesses", h}, {"correct", correct},
              {"diagnostic_correct", diagCorrect}, {"mean_D", mean}, {"se_D", se}, {"finite_limit_mean_D", limit}});
    } else {
        std::cout << "true exponent " << truth << "\n"
                  << "primary guess correct " << correct << " / " << trials << "\n"
                  << "diagnostic guess correct " << diagCorrect << " / " << trials << "\n"
                  << "mean D(L,1;(1)) " << mean << " +- " << se << " (finite-L limit " << limit << ")\n";
        for (auto& [d, c] : hist) std::cout << "  d = " << d << ": " << c << "\n";
    }
    return kOk;
}

// --- reconstruct -------------------------------------------------------------------

int cmd_reconstruct(const Globals& g, const std::string& wordText, bool tilde) {
    const Word w = Word::parse(wordText);
    const auto sym = symbolic_constants(w);
    const SymbolicExpr& e = tilde ? sym.cTilde : sym.c;
    const auto r = reconstruct(e, w.length(), tilde ? ReconstructMode::SkipUnclassified : ReconstructMode::Strict);
    std::vector<std::string> cands;
    for (auto& c : r.candidates) cands.push_back(c.str());
    std::vector<int> J(r.offsets.begin(), r.offsets.end());
    std::vector<std::string> skipped;
    for (auto& m : r.unclassified) skipped.push_back(to_string(m));
    if (g.format == "json") {
        emit({{"word", w.str()}, {"constant", tilde ? "c_tilde" : "c"}, {"expression", to_string(e)},
              {"eta_k_coefficient", to_string(r.coefficient)}, {"offsets", J}, {"candidates", cands},
              {"unclassified", skipped}});
    } else {
        std::cout << (tilde ? "c~" : "c") << " = " << to_string(e) << "\n"
                  << "coefficient of eta_" << w.length() << ": " << to_string(r.coefficient) << "\n"
                  << "candidates:";
        for (auto& c : cands) std::cout << ' ' << c;
        std::cout << '\n';
        if (!skipped.empty()) std::cout << "skipped " << skipped.size() << " unclassified terms\n";
    }
    return kOk;
}

// --- oracles ----------------------------------------------------------------------

int cmd_oracle_enum(const Globals& g, const std::string& wordText, std::uint64_t n) {
    const Word w = Word::parse(wordText);
    const auto dist = enumerate_exact(n, w, g.threads);
    if (g.format == "json") {
        ordered_json rows = ordered_json::array();
        for (auto& [v, p] : dist) rows.push_back({{"value", v}, {"probability", rational_fraction(p)}});
        emit({{"word", w.str()}, {"n", n}, {"distribution", rows}});
    } else {
        std::cout << "value,probability,numerator,denominator\n";
        for (auto& [v, p] : dist)
            std::cout << v << ',' << rational_fraction(p) << ',' << boost::multiprecision::numerator(p) << ','
                      << boost::multiprecision::denominator(p) << '\n';
    }
    return kOk;
}

int cmd_oracle_tv(const Globals& g, const std::string& w1, const std::string& w2, std::uint64_t n) {
    const Word a = Word::parse(w1), b = Word::parse(w2);
    const Rational tv = tv_distance(enumerate_exact(n, a, g.threads), enumerate_exact(n, b, g.threads));
    std::ostringstream approx;
    approx.precision(12);
    approx << from_rational<double>(tv);
    if (g.format == "json") {
        emit({{"word", a.str()}, {"word2", b.str()}, {"n", n}, {"tv", rational_fraction(tv)}, {"tv_decimal", approx.str()}});
    } else {
        std::cout << "d_TV(L_" << n << "(" << a.str() << "), L_" << n << "(" << b.str() << ")) = " << rational_string(tv)
                  << " ~ " << approx.str() << "\n";
    }
    return kOk;
}

// --- selftest ---------------------------------------------------------------------

int cmd_selftest(const Globals& g) {
    int failed = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
        failed += !ok;
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            check(name, body());
        } catch (const std::exception& e) {
            std::cout << "FAIL " << name << " (" << e.what() << ")\n";
            ++failed;
        }
    };

    guarded("overlap set matches the naive scan for all words of length <= 10", [] {
        for (int k = 1; k <= 10; ++k)
            for (auto& w : all_words(k))
                if (!(overlap_set(w) == brute_overlap_check(w))) return false;
        return true;
    });
    guarded("first overlap row determines the word up to swapping (length <= 10)", [] {
        for (int k = 2; k <= 10; ++k)
            for (auto& w : all_words(k))
                if (canonical(word_from_first_row(overlap_set(w), k)) != canonical(w)) return false;
        return true;
    });
    guarded("jet moments agree with closed forms (k <= 9, 30 digits)", [] {
        PrecisionScope scope(30);
        auto eta = eta_sequence<HighFloat>(9);
        for (int k = 1; k <= 9; ++k) {
            auto J = MomentTable<HighFloat>::from_jets(k);
            auto C = MomentTable<HighFloat>::from_closed_forms(eta, k);
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j)
                    if (abs(J.second(i, j) - C.second(i, j)) > HighFloat("1e-25")) return false;
        }
        return true;
    });
    guarded("bundle identity c~ - c = 2 eta_k (c_cyc - c_approx1) for length <= 7", [&] {
        PrecisionScope scope(g.digits());
        auto eta = eta_sequence<HighFloat>(7);
        const HighFloat tol = pow(HighFloat(10), -static_cast<int>(g.digits()) + 10);
        for (int k = 1; k <= 7; ++k)
            for (auto& w : canonical_words(k)) {
                auto b = leading_constants(w, eta);
                if (abs(b.cTilde - b.c - 2 * eta[k] * (b.cCyc - b.cApprox1)) > tol) return false;
            }
        return true;
    });
    guarded("symbolic and numeric constants agree (length <= 6)", [] {
        PrecisionScope scope(40);
        auto eta = eta_sequence<HighFloat>(6);
        for (int k = 1; k <= 6; ++k)
            for (auto& w : canonical_words(k)) {
                auto b = leading_constants(w, eta);
                auto s = symbolic_constants(w);
                if (abs(eval_symbolic(s.c, eta) - b.c) > HighFloat("1e-30")) return false;
                if (abs(eval_symbolic(s.cTilde, eta) - b.cTilde) > HighFloat("1e-30")) return false;
            }
        return true;
    });
    guarded("reconstruction round-trips for all words of length <= 7", [] {
        for (int k = 1; k <= 7; ++k)
            for (auto& w : canonical_words(k))
                if (!reconstruct_word(symbolic_constants(w).c, k).count(w)) return false;
        return true;
    });
    guarded("rho reproduces 1, 3/2, 5/3, 2, 9/5, 5/2, 13/7, 5/2, 7/3, 27/10", [] {
        const std::vector<Rational> want{1, Rational(3, 2), Rational(5, 3), 2, Rational(9, 5), Rational(5, 2),
                                         Rational(13, 7), Rational(5, 2), Rational(7, 3), Rational(27, 10)};
        for (int d = 1; d <= 10; ++d)
            if (rho(d, 1, {Rational(1)}) != want[static_cast<std::size_t>(d - 1)]) return false;
        return true;
    });
    guarded("splitting identity holds on 50 samples (n = 2000, d = 2, 3)", [] {
        for (int d : {2, 3})
            for (std::uint64_t s = 0; s < 50; ++s) {
                auto [a, b] = sample_pair(2000, s);
                auto fu = compose_word(a, b, Word::parse("ab"));
                auto fw = compose_word(a, b, power(Word::parse("ab"), d));
                if (!(split_cycle_counts(cycle_counts(fu, 2000), d, 2000) == cycle_counts(fw, 2000))) return false;
            }
        return true;
    });
    guarded("enumeration at n = 2 for w = a gives (1/2, 1/2)", [] {
        auto dist = enumerate_exact(2, Word::parse("a"));
        return dist.size() == 2 && dist[0] == Rational(1, 2) && dist[1] == Rational(1, 2);
    });
    guarded("experiment summary independent of thread count", [] {
        ExperimentConfig c1{Word::parse("ab"), 500, 300, 20, 11, 1};
        ExperimentConfig c4 = c1;
        c4.threads = 4;
        auto s1 = run_experiment(c1), s4 = run_experiment(c4);
        return s1.leafMean == s4.leafMean && s1.leafVar == s4.leafVar && s1.mShiftMean == s4.mShiftMean &&
               s1.cycleMeans == s4.cycleMeans;
    });
    std::cout << (failed ? std::to_string(failed) + " check(s) failed\n" : std::string("all checks passed\n"));
    return failed ? kSelftest : kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wordfn: word constants, simulation and oracles for random functions composed along a word"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string word, word2, outPath, configPath;
    std::uint64_t n = 0, trials = 0, seed = 0;
    int maxLen = 3, L = 0, kMax = 9, dMax = 2;
    unsigned precision = 0;
    bool exact = false, tilde = false;

    auto addPrecision = [&](CLI::App* sub) {
        sub->add_option("--precision", precision, "Significant digits (default $WORDFN_PRECISION or 60)")
            ->check(CLI::Range(15u, 10000u));
    };

    auto* constants = app.add_subcommand("constants", "The six word constants");
    constants->add_option("--word", word, "Binary word over {a,b}")->required();
    constants->add_flag("--exact", exact, "Also print the symbolic closed forms");
    addPrecision(constants);

    auto* table = app.add_subcommand("table", "c and c~ for all non-isomorphic words up to a length");
    table->add_option("--max-len", maxLen, "Largest word length")->required();
    addPrecision(table);

    auto* sweep = app.add_subcommand("sweep", "c and c~ for every word up to a length, with distinctness report");
    sweep->add_option("--max-len", maxLen, "Largest word length")->required();
    sweep->add_option("--out", outPath, "CSV file for (word, length, c, c_tilde)");
    addPrecision(sweep);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiment");
    simulate->add_option("--config", configPath, "key = value file (word, n, trials, L, seed)");
    simulate->add_option("--word", word, "Binary word");
    simulate->add_option("--n", n, "Number of vertices");
    simulate->add_option("--trials", trials, "Number of samples");
    simulate->add_option("--seed", seed, "Master seed");
    simulate->add_option("--cycles", L, "Count cycles up to this length");

    auto* estLen = app.add_subcommand("estimate-length", "Guess |w| from one sample");
    estLen->add_option("--word", word, "Binary word")->required();
    estLen->add_option("--n", n, "Number of vertices")->required();
    estLen->add_option("--seed", seed, "Seed")->required();
    estLen->add_option("--kmax", kMax, "Largest candidate length")->check(CLI::Range(1, 60));

    auto* estExp = app.add_subcommand("estimate-exponent", "Guess the exponent of w from cycle counts");
    estExp->add_option("--word", word, "Binary word")->required();
    estExp->add_option("--n", n, "Number of vertices")->required();
    estExp->add_option("--L", L, "Cycle length cutoff")->required();
    estExp->add_option("--trials", trials, "Independent samples")->required();
    estExp->add_option("--seed", seed, "Master seed")->required();
    estExp->add_option("--dmax", dMax, "Largest candidate exponent")->check(CLI::Range(1, 12));

    auto* recon = app.add_subcommand("reconstruct", "Symbolic constant, eta_k coefficient, recovered word class");
    recon->add_option("--word", word, "Binary word")->required();
    recon->add_flag("--tilde", tilde, "Use c~ instead of c");

    auto* oenum = app.add_subcommand("oracle-enum", "Exact law of L_n by enumerating all pairs");
    oenum->add_option("--word", word, "Binary word")->required();
    oenum->add_option("--n", n, "Number of vertices (<= 5)")->required();

    auto* otv = app.add_subcommand("oracle-tv", "Exact TV distance between two leaf-count laws");
    otv->add_option("--word", word, "First word")->required();
    otv->add_option("--word2", word2, "Second word")->required();
    otv->add_option("--n", n, "Number of vertices (<= 5)")->required();

    auto* self = app.add_subcommand("selftest", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (precision != 0) g.precision = precision;

    try {
        if (*constants) return cmd_constants(g, word, exact);
        if (*table) return cmd_table(g, maxLen);
        if (*sweep) return cmd_sweep(g, maxLen, outPath);
        if (*simulate) {
            ExperimentConfig cfg;
            if (!configPath.empty()) {
                std::ifstream in(configPath);
                if (!in) throw InputError("cannot read config file " + configPath);
                cfg = parse_experiment_config(in);
            }
            if (simulate->count("--word")) cfg.word = Word::parse(word);
            if (simulate->count("--n")) cfg.n = n;
            if (simulate->count("--trials")) cfg.trials = trials;
            if (simulate->count("--seed")) cfg.seed = seed;
            if (simulate->count("--cycles")) cfg.L = L;
            if (cfg.word.length() == 0 || cfg.n == 0 || cfg.trials == 0)
                throw InputError("simulate needs --word, --n and --trials (or a config file providing them)");
            if (g.format == "text") g.format = "json";
            return cmd_simulate(g, cfg);
        }
        if (*estLen) return cmd_estimate_length(g, word, n, seed, kMax);
        if (*estExp) return cmd_estimate_exponent(g, word, n, L, trials, seed, dMax);
        if (*recon) return cmd_reconstruct(g, word, tilde);
        if (*oenum) return cmd_oracle_enum(g, word, n);
        if (*otv) return cmd_oracle_tv(g, word, word2, n);
        if (*self) return cmd_selftest(g);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kComputation;
    }
    return kUsage;
}
