#pragma once

#include "ergokit/subshift_gen.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ergokit {

using Word = std::string;

// Overlapping occurrence count of w in x; 0 for empty w.
long long count_occurrences(std::string_view w, std::string_view x);

// Maximal number of pairwise disjoint occurrences (greedy left-to-right,
// which is optimal for a single pattern). Empty w is rejected.
long long count_disjoint(std::string_view w, std::string_view x);

struct FactorTable {
    long long n = 0;                  // factor length
    long long positions = 0;          // scanned start positions (window - n + 1)
    std::vector<std::pair<Word, long long>> entries;  // lex sorted, with counts

    long long complexity() const { return static_cast<long long>(entries.size()); }
    bool contains(std::string_view w) const;
    long long count_of(std::string_view w) const;  // 0 if absent
};

FactorTable factor_table(std::string_view text, long long n);
FactorTable factor_table(const SubshiftGen& gen, long long n, long long horizon);

struct RauzyGraph {
    long long n = 0;
    std::vector<Word> vertices;                    // length-n factors, lex order
    std::vector<std::pair<int, int>> arcs;         // (tail, head) vertex indices
    std::vector<Word> arc_labels;                  // the length-(n+1) factors
    std::vector<int> out_degree, in_degree;
    std::vector<int> right_special, left_special, bispecial;  // vertex indices
};

// Vertices from f_n, one arc per entry of f_n1 (u -> arc u[0..n-1] to u[1..n]).
RauzyGraph rauzy_graph(const FactorTable& f_n, const FactorTable& f_n1);

struct ReturnWordObs {
    Word word;
    long long count = 0;
};

// Gaps between consecutive occurrences of w, collected as words, lex sorted
// with observation counts. Requires at least two occurrences.
std::vector<ReturnWordObs> return_words(std::string_view text, std::string_view w);
std::vector<ReturnWordObs> return_words(const SubshiftGen& gen, std::string_view w,
                                        long long horizon);

// Shortest palindrome having w as a prefix.
Word palindromic_closure(std::string_view w);

struct PowerWitness {
    Word word;
    long long power = 0;
};

// Largest k <= cap such that some word of length <= max_word_len occurs as a
// k-th power in the text, with a witness. power == cap means the cap was hit.
PowerWitness max_power_index(std::string_view text, long long max_word_len, long long cap);
PowerWitness max_power_index(const SubshiftGen& gen, long long max_word_len,
                             long long horizon, long long cap);

// Start positions (0-based) of all occurrences of w in x.
std::vector<long long> occurrence_positions(std::string_view w, std::string_view x);

}  // namespace ergokit
