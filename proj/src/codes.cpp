#include "pidel/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pidel {

Integer binomial(long n, long w) {
    if (n < 0) {
        throw std::domain_error("binomial requires n >= 0, got n = " + std::to_string(n));
    }
    if (w < 0 || w > n) return 0;
    w = std::min(w, n - w);
    Integer result = 1;
    for (long i = 1; i <= w; ++i) {
        result *= n - w + i;
        result /= i;  // exact: result is C(n-w+i, i) after each step
    }
    return result;
}

std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational from \"" + s + "\"");
    }
}

int CodeSpec::level_of(int w) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (std::binary_search(levels[i].begin(), levels[i].end(), w)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::vector<int> CodeSpec::all_weights() const {
    std::vector<int> all;
    for (const auto& level : levels) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end());
    return all;
}

void CodeSpec::validate() const {
    if (N < 2) {
        throw std::invalid_argument("block length N must be at least 2, got " +
                                    std::to_string(N));
    }
    if (t < 1 || t >= N) {
        throw std::invalid_argument("deletion count t must satisfy 1 <= t < N, got t = " +
                                    std::to_string(t));
    }
    if (levels.size() < 2) {
        throw std::invalid_argument("a code spec needs at least 2 levels");
    }
    std::set<int> seen;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].empty()) {
            throw std::invalid_argument("level " + std::to_string(i) + " is empty");
        }
        if (!std::is_sorted(levels[i].begin(), levels[i].end())) {
            throw std::invalid_argument("level " + std::to_string(i) + " is not sorted");
        }
        for (int w : levels[i]) {
            if (w < 0 || w > N) {
                throw std::invalid_argument("weight " + std::to_string(w) + " outside [0, N]");
            }
            if (!seen.insert(w).second) {
                throw std::invalid_argument("weight " + std::to_string(w) +
                                            " appears in more than one level");
            }
        }
    }
    for (int w : seen) {
        auto it = f_sq.find(w);
        if (it == f_sq.end()) {
            throw std::invalid_argument("missing f_sq entry for weight " + std::to_string(w));
        }
        if (it->second <= 0) {
            throw std::invalid_argument("f_sq(" + std::to_string(w) + ") must be positive");
        }
    }
    for (const auto& [w, value] : f_sq) {
        if (seen.count(w) == 0) {
            throw std::invalid_argument("f_sq entry for weight " + std::to_string(w) +
                                        " has no level");
        }
    }
}

void GnuParams::validate() const {
    if (g < 2) throw std::invalid_argument("gnu family requires g >= 2, got g = " + std::to_string(g));
    if (n < 2) throw std::invalid_argument("gnu family requires n >= 2, got n = " + std::to_string(n));
    if (u < 1) {
        throw std::invalid_argument("gnu family requires u >= 1, got u = " + rational_str(u));
    }
    if (denominator(Rational(g) * n * u) != 1) {
        throw std::invalid_argument("g*n*u must be an integer, got " +
                                    rational_str(Rational(g) * n * u));
    }
}

int GnuParams::block_length() const {
    validate();
    return static_cast<int>(numerator(Rational(g) * n * u));
}

namespace {

// D2-style sum for one level at deletion count tt and shift k.
Rational level_sum(const CodeSpec& spec, const std::vector<int>& level, int tt, int k) {
    Rational sum = 0;
    for (int w : level) {
        sum += spec.f_sq.at(w) * Rational(binomial(spec.N - tt, w - k));
    }
    return sum;
}

bool gap_ok(const std::vector<int>& sorted_weights, int tt) {
    for (std::size_t i = 1; i < sorted_weights.size(); ++i) {
        if (sorted_weights[i] - sorted_weights[i - 1] <= tt) return false;
    }
    return true;
}

bool d2_ok_for(const CodeSpec& spec, int tt) {
    for (int k = 0; k <= tt; ++k) {
        const Rational first = level_sum(spec, spec.levels[0], tt, k);
        if (first == 0) return false;
        for (int i = 1; i < spec.level_count(); ++i) {
            if (level_sum(spec, spec.levels[i], tt, k) != first) return false;
        }
    }
    return true;
}

}  // namespace

ConditionReport check_conditions(const CodeSpec& spec) {
    spec.validate();
    ConditionReport report;

    report.d1_ok = true;
    for (int i = 0; i < spec.level_count(); ++i) {
        Rational sum = 0;
        for (int w : spec.levels[i]) {
            sum += spec.f_sq.at(w) * Rational(binomial(spec.N, w));
        }
        report.d1_sums.push_back(sum);
        if (sum != 1 && report.d1_ok) {
            report.d1_ok = false;
            report.witness = "D1: level " + std::to_string(i) + " sums to " + rational_str(sum) +
                             ", expected 1/1";
        }
    }

    report.d2_ok = true;
    for (int k = 0; k <= spec.t; ++k) {
        std::vector<Rational> sums;
        for (int i = 0; i < spec.level_count(); ++i) {
            sums.push_back(level_sum(spec, spec.levels[i], spec.t, k));
        }
        bool equal = true;
        for (const Rational& s : sums) {
            if (s != sums[0]) equal = false;
        }
        if ((!equal || sums[0] == 0) && report.d2_ok) {
            report.d2_ok = false;
            if (report.witness.empty()) {
                std::ostringstream msg;
                msg << "D2: k = " << k << " level sums are";
                if (!equal) {
                    msg << " unequal (";
                    for (std::size_t i = 0; i < sums.size(); ++i) {
                        msg << (i ? ", " : "") << rational_str(sums[i]);
                    }
                    msg << ")";
                } else {
                    msg << " zero";
                }
                report.witness = msg.str();
            }
        }
        report.d2_sums.push_back(std::move(sums));
    }

    const std::vector<int> weights = spec.all_weights();
    report.d3_ok = true;
    for (std::size_t i = 1; i < weights.size(); ++i) {
        if (weights[i] - weights[i - 1] <= spec.t) {
            report.d3_ok = false;
            if (report.witness.empty()) {
                report.witness = "D3: weights " + std::to_string(weights[i - 1]) + " and " +
                                 std::to_string(weights[i]) + " differ by at most t = " +
                                 std::to_string(spec.t);
            }
            break;
        }
    }

    report.max_correctable_t = 0;
    if (report.d1_ok) {
        for (int tt = 1; tt < spec.N; ++tt) {
            if (gap_ok(weights, tt) && d2_ok_for(spec, tt)) {
                report.max_correctable_t = tt;
            }
        }
    }
    return report;
}

CodeSpec gnu_code(const GnuParams& params, int t) {
    if (t < 1) {
        throw std::invalid_argument("deletion count t must be at least 1, got " +
                                    std::to_string(t));
    }
    params.validate();
    if (params.g < t + 1) {
        throw std::invalid_argument("g >= t+1 violated: g = " + std::to_string(params.g) +
                                    ", t = " + std::to_string(t));
    }
    if (params.n < t + 1) {
        throw std::invalid_argument("n >= t+1 violated: n = " + std::to_string(params.n) +
                                    ", t = " + std::to_string(t));
    }
    const int N = params.block_length();

    CodeSpec spec;
    spec.N = N;
    spec.t = t;
    spec.levels.assign(2, {});
    const Rational denom_base = Integer(1) << (params.n - 1);  // 2^(n-1)
    for (int l = 0; l <= params.n; ++l) {
        const int w = params.g * l;
        spec.levels[l % 2].push_back(w);
        spec.f_sq[w] = Rational(binomial(params.n, l)) / (denom_base * Rational(binomial(N, w)));
    }
    spec.validate();
    return spec;
}

CodeSpec symmetric_single_deletion_code(int N, const std::vector<std::vector<int>>& levels) {
    if (N < 2) {
        throw std::invalid_argument("block length N must be at least 2");
    }
    if (levels.size() < 2) {
        throw std::invalid_argument("need at least 2 levels");
    }
    CodeSpec spec;
    spec.N = N;
    spec.t = 1;
    for (const auto& level : levels) {
        std::vector<int> sorted(level.begin(), level.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        if (sorted.empty()) {
            throw std::invalid_argument("levels must be nonempty");
        }
        for (int w : sorted) {
            if (w < 0 || w > N) {
                throw std::invalid_argument("weight " + std::to_string(w) + " outside [0, N]");
            }
            if (!std::binary_search(sorted.begin(), sorted.end(), N - w)) {
                throw std::invalid_argument("level is not reflection-closed: contains " +
                                            std::to_string(w) + " but not " +
                                            std::to_string(N - w));
            }
        }
        spec.levels.push_back(std::move(sorted));
    }
    std::vector<int> all;
    for (const auto& level : spec.levels) all.insert(all.end(), level.begin(), level.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i] - all[i - 1] <= 1) {
            throw std::invalid_argument("gap condition violated: weights " +
                                        std::to_string(all[i - 1]) + " and " +
                                        std::to_string(all[i]) + " differ by at most 1");
        }
    }
    for (const auto& level : spec.levels) {
        Integer total = 0;
        for (int w : level) total += binomial(N, w);
        for (int w : level) spec.f_sq[w] = Rational(1) / Rational(total);
    }
    spec.validate();
    return spec;
}

bool lemma_comb_check(int n) {
    if (n < 1) {
        throw std::invalid_argument("lemma check requires n >= 1");
    }
    for (int t = 0; t <= n - 1; ++t) {
        Integer sum = 0;
        for (int l = 0; l <= n; ++l) {
            Integer l_pow = 1;  // l^t with 0^0 = 1
            for (int i = 0; i < t; ++i) l_pow *= l;
            const Integer term = binomial(n, l) * l_pow;
            sum += (l % 2 == 0) ? term : -term;
        }
        if (sum != 0) return false;
    }
    return true;
}

namespace {

// Partitions of items {0..m-1} into exactly L unordered nonempty blocks,
// emitted via restricted growth strings.
void enumerate_partitions(int m, int L, std::vector<int>& labels, int used,
                          const std::function<void(const std::vector<int>&)>& emit) {
    const int pos = static_cast<int>(labels.size());
    if (pos == m) {
        if (used == L) emit(labels);
        return;
    }
    const int remaining = m - pos;
    if (used + remaining < L) return;  // cannot reach L blocks
    const int max_label = std::min(used, L - 1);
    for (int label = 0; label <= max_label; ++label) {
        labels.push_back(label);
        enumerate_partitions(m, L, labels, std::max(used, label + 1), emit);
        labels.pop_back();
    }
}

}  // namespace

std::vector<CodeSpec> search_symmetric(int N, int L) {
    if (N > 24) {
        throw std::invalid_argument("symmetric search is bounded at N <= 24, got N = " +
                                    std::to_string(N));
    }
    if (N < 2 || L < 2) {
        throw std::invalid_argument("symmetric search needs N >= 2 and L >= 2");
    }
    // Reflection orbits {w, N-w}.
    std::vector<std::vector<int>> orbits;
    for (int w = 0; 2 * w <= N; ++w) {
        if (w == N - w) {
            orbits.push_back({w});
        } else {
            orbits.push_back({w, N - w});
        }
    }
    const int m = static_cast<int>(orbits.size());

    std::vector<CodeSpec> found;
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        std::vector<int> chosen;
        std::vector<int> union_weights;
        for (int i = 0; i < m; ++i) {
            if (mask & (std::size_t(1) << i)) {
                chosen.push_back(i);
                union_weights.insert(union_weights.end(), orbits[i].begin(), orbits[i].end());
            }
        }
        if (static_cast<int>(chosen.size()) < L) continue;
        std::sort(union_weights.begin(), union_weights.end());
        if (!gap_ok(union_weights, 1)) continue;

        std::vector<int> labels;
        enumerate_partitions(
            static_cast<int>(chosen.size()), L, labels, 0, [&](const std::vector<int>& lab) {
                std::vector<std::vector<int>> blocks(L);
                for (std::size_t i = 0; i < lab.size(); ++i) {
                    const auto& orbit = orbits[static_cast<std::size_t>(chosen[i])];
                    blocks[static_cast<std::size_t>(lab[i])].insert(
                        blocks[static_cast<std::size_t>(lab[i])].end(), orbit.begin(),
                        orbit.end());
                }
                for (auto& block : blocks) std::sort(block.begin(), block.end());
                std::sort(blocks.begin(), blocks.end(),
                          [](const auto& a, const auto& b) { return a.front() < b.front(); });
                found.push_back(symmetric_single_deletion_code(N, blocks));
            });
    }
    std::sort(found.begin(), found.end(),
              [](const CodeSpec& a, const CodeSpec& b) { return a.levels < b.levels; });
    return found;
}

}  // namespace pidel
