#pragma once

#include "ergokit/cf.hpp"
#include "ergokit/common.hpp"
#include "ergokit/subshift_gen.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ergokit {

// ---------------------------------------------------------------------------
// Rotation codings
// ---------------------------------------------------------------------------

// Coding of the rotation x -> x + alpha against the partition cut at the
// given points. A single cut beta uses the indicator convention: letter '1'
// iff {n alpha + theta} lies in [0, beta), letter '0' otherwise. Two or more
// cuts label the intervals [0,b1), [b1,b2), ..., [b_{p-1},1) by '0'..'p-1'.
//
// All inputs are taken as exact rationals (a double denotes the binary
// rational it is; deep convergents stand in for quadratic irrationals).
// Orbit positions are integers modulo the common denominator, so membership
// in the left-closed intervals is decided exactly at every index, including
// structural hits such as theta = 0 at n = 0 or a cut equal to alpha.
class RotationGen : public SubshiftGen {
  public:
    RotationGen(double alpha, std::vector<double> cuts, double theta);
    RotationGen(BigRat alpha, std::vector<BigRat> cuts, BigRat theta);

    std::string alphabet() const override;
    bool two_sided() const override { return true; }
    char at(long long i) const override;
    std::string window(long long start, long long len) const override;
    std::string describe() const override;

    // CF-depth heuristic: expansion reached depth 25 with all partial
    // quotients <= 1e8. Operations that assume an irrational angle should
    // consult this flag.
    bool irrational_flag() const { return irrational_; }
    double alpha_value() const { return alpha_d_; }
    size_t num_letters() const { return cuts_.size() + 1; }

  private:
    void init();
    char letter_of(const BigInt& r) const;
    BigInt orbit_numerator(long long i) const;

    bool irrational_ = false;
    double alpha_d_ = 0, theta_d_ = 0;
    BigRat alpha_x_, theta_x_;
    std::vector<BigRat> cuts_x_;
    BigInt den_, step_, start_;     // common denominator, alpha and theta scaled
    std::vector<BigInt> cuts_;      // cut points scaled by den_
};

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

struct SubstitutionRule {
    std::string name;      // optional tag used by describe()
    std::string alphabet;  // letters in canonical order
    std::vector<std::string> images;

    const std::string& image(char a) const;
    std::string apply(const std::string& w) const;
    void validate() const;  // nonempty images over the declared alphabet
};

// Built-in rules: "fib" (a->ab, b->a), "tm" (a->ab, b->ba),
// "pd" (a->ab, b->aa), "rs" (a->ab, b->ac, c->db, d->dc).
SubstitutionRule substitution_named(const std::string& name);

struct Primitivity {
    bool primitive = false;
    int power = 0;  // smallest k with S^k(a) containing every letter, if any
};

// Boolean incidence-matrix powers up to m^2.
Primitivity primitivity_check(const SubstitutionRule& rule);

// Prefix of the one-sided fixed point of S starting from seed. Searches for
// a power r <= 8 with S^r(seed) a proper extension of seed and iterates it.
std::string substitution_iterate(const SubstitutionRule& rule, char seed, size_t target_len);

// Plain k-fold image S^k(seed), no fixed-point requirement.
std::string substitution_power(const SubstitutionRule& rule, char seed, int k);

class SubstitutionGen : public SubshiftGen {
  public:
    SubstitutionGen(SubstitutionRule rule, char seed);

    std::string alphabet() const override { return rule_.alphabet; }
    bool two_sided() const override { return false; }
    char at(long long i) const override;
    std::string describe() const override;

    const SubstitutionRule& rule() const { return rule_; }

  private:
    void extend_to(size_t len) const;
    SubstitutionRule rule_;
    char seed_;
    int power_ = 0;
    mutable std::string buf_;
};

// Letter stream of S(omega) for a base point omega; the image subshift is the
// shift-closure of such streams, and factor scans are shift-invariant.
class ImageGen : public SubshiftGen {
  public:
    ImageGen(SubstitutionRule rule, std::shared_ptr<const SubshiftGen> base);

    std::string alphabet() const override { return rule_.alphabet; }
    bool two_sided() const override { return false; }
    char at(long long i) const override;
    std::string describe() const override;

  private:
    void extend_to(size_t len) const;
    SubstitutionRule rule_;
    std::shared_ptr<const SubshiftGen> base_;
    mutable std::string buf_;
    mutable long long base_pos_ = 0;
};

// ---------------------------------------------------------------------------
// Derived codings (return-word recoding)
// ---------------------------------------------------------------------------

struct DerivedCoding {
    std::vector<std::string> alphabet;  // return words, in order of first use
    std::string derived;                // letters '0','1',.. indexing alphabet
    long long anchor = 0;               // position of the first occurrence of w
};

// Recode the window [0, horizon) of gen by the return words of w. Requires at
// least three occurrences of w in the window. Concatenating the return words
// named by `derived` reproduces the window from `anchor` on (decoding check).
DerivedCoding derived_coding(const SubshiftGen& gen, const std::string& w, long long horizon);

class DerivedGen : public SubshiftGen {
  public:
    DerivedGen(std::shared_ptr<const SubshiftGen> base, std::string w,
               long long initial_horizon = 4096);

    std::string alphabet() const override;
    bool two_sided() const override { return false; }
    char at(long long i) const override;
    std::string describe() const override;

    const DerivedCoding& coding() const { return cur_; }

  private:
    void extend_to(size_t len) const;
    std::shared_ptr<const SubshiftGen> base_;
    std::string w_;
    mutable long long horizon_;
    mutable DerivedCoding cur_;
};

// ---------------------------------------------------------------------------
// Episturmian characteristic words
// ---------------------------------------------------------------------------

struct GrowthProgram {
    int letters = 0;                // alphabet size m; runs cycle '1'..'m'
    std::vector<long long> runs;   // run lengths: 1^{r1} 2^{r2} ... 1^{r_{m+1}} ...
};

struct IndexSequence {
    std::vector<int> prefix;            // 1-based letters
    std::vector<int> tail;              // periodic continuation (may be empty)
    std::optional<GrowthProgram> growth;  // run-length program; replaces tail

    int alphabet_size() const;
    int symbol_at(long long t) const;  // t = 1, 2, ...; throws when exhausted
    void validate() const;
};

// Prefix of the characteristic word directed by idx, over letters '1'..'m'.
// Computed by the closure recurrence and cross-checked (up to an internal
// cap) against both the step-by-step palindromic closures and the composed
// letter-to-word images; any disagreement throws logic_error.
std::string ar_characteristic(const IndexSequence& idx, size_t target_len);

class ARGen : public SubshiftGen {
  public:
    explicit ARGen(IndexSequence idx);

    std::string alphabet() const override;
    bool two_sided() const override { return false; }
    char at(long long i) const override;
    std::string describe() const override;

  private:
    IndexSequence idx_;
    mutable std::string buf_;
};

// ---------------------------------------------------------------------------
// Interval exchange transformations
// ---------------------------------------------------------------------------

struct IETSpec {
    std::vector<double> lambda;  // interval lengths, positive, summing to 1
    std::vector<int> tau;        // permutation images: tau[i-1] = tau(i), 1-based

    void validate() const;
    size_t m() const { return lambda.size(); }
};

// tau({1..k}) != {1..k} for every k < m.
bool iet_irreducible(const std::vector<int>& tau);

// Coding of the orbit of x: letter '1'+i-1 when the orbit point lies in the
// i-th interval. Positions n >= 0 use the forward map; negative positions
// use its inverse, the exchange of the permuted lengths under tau^{-1}.
// Lengths and x are taken as the exact binary rationals their doubles
// denote, with the last length adjusted so the total is exactly one (the
// adjustment stays below the validator's 1e-9 slack); orbit positions are
// integers over the common denominator and interval membership is exact,
// left-closed.
std::string iet_coding(const IETSpec& spec, double x, long long i, long long j);

// Finite certificate toward the infinite-distinct-orbits condition: tracks
// the forward orbits of the interior discontinuities for N steps and reports
// false iff a tracked point lands exactly on an interior discontinuity or on
// another tracked point. False is conclusive for the given binary lengths;
// true is heuristic.
bool keane_check(const IETSpec& spec, long long N);

class IETGen : public SubshiftGen {
  public:
    IETGen(IETSpec spec, double x);

    std::string alphabet() const override;
    bool two_sided() const override { return true; }
    char at(long long i) const override;
    std::string window(long long start, long long len) const override;
    std::string describe() const override;

  private:
    IETSpec spec_;
    double x_;
};

// ---------------------------------------------------------------------------
// Periodic words and JSON specs
// ---------------------------------------------------------------------------

class PeriodicGen : public SubshiftGen {
  public:
    explicit PeriodicGen(std::string word);

    std::string alphabet() const override;
    bool two_sided() const override { return true; }
    char at(long long i) const override;
    std::string describe() const override;

  private:
    std::string word_;
    std::string alpha_;
};

// Build a generator from a JSON spec:
//   {"family":"rotation","alpha":<num|"golden"|"silver"|"cf:d1,d2,..">,
//    "cuts":[..],"theta":0}   (numeric alpha must look irrational)
//   {"family":"substitution","rule":"fib"} or {"images":{"a":"ab","b":"a"},
//    "seed":"a"}
//   {"family":"arnoux_rauzy","prefix":[1,2],"tail":[1,2]} with optional
//    "growth":{"letters":m,"runs":[..]}
//   {"family":"iet","lambda":[..],"tau":[..],"x":0.0}
//   {"family":"derived","base":{..},"word":"aba"}
//   {"family":"image","rule":"fib","base":{..}}
//   {"family":"periodic","word":"ab"}
std::unique_ptr<SubshiftGen> generator_from_json(const std::string& json_text);

}  // namespace ergokit
