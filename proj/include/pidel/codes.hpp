#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pidel {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient with the out-of-range-is-zero convention:
/// C(n, w) = 0 for w < 0 or w > n. Requires n >= 0.
Integer binomial(long n, long w);

/// Always "p/q", including "1/1"; q > 0.
std::string rational_str(const Rational& r);

/// Accepts "p/q" or a plain integer string.
Rational rational_from_string(const std::string& s);

/// A permutation-invariant deletion-code specification: block length N,
/// deletion count t, L >= 2 disjoint weight classes and the squared
/// amplitude |f(w)|^2 for every weight in their union.
struct CodeSpec {
    int N = 0;
    int t = 0;
    std::vector<std::vector<int>> levels;  // each sorted ascending
    std::map<int, Rational> f_sq;

    int level_count() const { return static_cast<int>(levels.size()); }

    /// Index of the level containing weight w, or -1.
    int level_of(int w) const;

    /// Sorted union of all level weights.
    std::vector<int> all_weights() const;

    /// Throws std::invalid_argument on any structural violation.
    void validate() const;
};

/// Parameters of the multiple-deletion family: weight sets at multiples of
/// g, n+1 classes, block length N = g*n*u.
struct GnuParams {
    int g = 0;
    int n = 0;
    Rational u = 1;

    void validate() const;
    int block_length() const;  // N = g*n*u
};

struct ConditionReport {
    bool d1_ok = false;
    bool d2_ok = false;
    bool d3_ok = false;
    std::vector<Rational> d1_sums;               // per level
    std::vector<std::vector<Rational>> d2_sums;  // [k][level], k = 0..t
    std::string witness;                         // empty when all three hold
    int max_correctable_t = 0;                   // largest t' <= N-1 passing, 0 if none

    bool all_ok() const { return d1_ok && d2_ok && d3_ok; }
};

/// Evaluates the normalization, deletion-balance and weight-gap conditions
/// in exact rational arithmetic. Failures are report content, not errors.
ConditionReport check_conditions(const CodeSpec& spec);

/// The (g,n,u) family: weight classes {gl : l even} and {gl : l odd} with
/// |f(gl)|^2 = C(n,l) / (2^(n-1) C(N, gl)). Corrects t deletions whenever
/// g >= t+1 and n >= t+1.
CodeSpec gnu_code(const GnuParams& params, int t);

/// Single-deletion family from reflection-closed weight sets: each level
/// must be closed under w -> N-w and all pairwise distinct weights must
/// differ by more than 1; |f(w)|^2 = 1 / sum_{w' in level(w)} C(N, w').
CodeSpec symmetric_single_deletion_code(int N, const std::vector<std::vector<int>>& levels);

/// True iff sum_l C(n,l) l^t (-1)^l = 0 for every t in 0..n-1, evaluated
/// in exact integer arithmetic.
bool lemma_comb_check(int n);

/// Enumerates every way to split reflection-closed weight sets of {0..N}
/// into L disjoint nonempty levels whose union has all pairwise gaps > 1,
/// emitting each as a single-deletion CodeSpec. Levels are ordered by
/// smallest weight; the list is sorted lexicographically.
std::vector<CodeSpec> search_symmetric(int N, int L);

}  // namespace pidel
