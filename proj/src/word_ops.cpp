#include "ergokit/word_ops.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ergokit {

long long count_occurrences(std::string_view w, std::string_view x) {
    if (w.empty() || w.size() > x.size()) return 0;
    long long c = 0;
    size_t pos = x.find(w);
    while (pos != std::string_view::npos) {
        ++c;
        pos = x.find(w, pos + 1);
    }
    return c;
}

long long count_disjoint(std::string_view w, std::string_view x) {
    if (w.empty()) throw std::invalid_argument("count_disjoint: empty pattern");
    long long c = 0;
    size_t pos = x.find(w);
    while (pos != std::string_view::npos) {
        ++c;
        pos = x.find(w, pos + w.size());
    }
    return c;
}

std::vector<long long> occurrence_positions(std::string_view w, std::string_view x) {
    std::vector<long long> out;
    if (w.empty() || w.size() > x.size()) return out;
    size_t pos = x.find(w);
    while (pos != std::string_view::npos) {
        out.push_back(static_cast<long long>(pos));
        pos = x.find(w, pos + 1);
    }
    return out;
}

bool FactorTable::contains(std::string_view w) const { return count_of(w) > 0; }

long long FactorTable::count_of(std::string_view w) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), w,
                               [](const auto& e, std::string_view v) { return e.first < v; });
    if (it == entries.end() || std::string_view(it->first) != w) return 0;
    return it->second;
}

namespace {

struct ViewHash {
    size_t operator()(std::string_view v) const noexcept {
        return std::hash<std::string_view>{}(v);
    }
};

}  // namespace

FactorTable factor_table(std::string_view text, long long n) {
    if (n <= 0) throw std::invalid_argument("factor_table: n must be positive");
    if (static_cast<long long>(text.size()) < n)
        throw std::invalid_argument("factor_table: window shorter than n");
    FactorTable t;
    t.n = n;
    t.positions = static_cast<long long>(text.size()) - n + 1;
    std::unordered_map<std::string_view, long long, ViewHash> counts;
    counts.reserve(static_cast<size_t>(std::min<long long>(t.positions, 1 << 20)));
    for (long long i = 0; i < t.positions; ++i)
        ++counts[text.substr(static_cast<size_t>(i), static_cast<size_t>(n))];
    t.entries.reserve(counts.size());
    for (const auto& [v, c] : counts) t.entries.emplace_back(Word(v), c);
    std::sort(t.entries.begin(), t.entries.end());
    return t;
}

FactorTable factor_table(const SubshiftGen& gen, long long n, long long horizon) {
    if (horizon < n) throw std::invalid_argument("factor_table: horizon < n");
    return factor_table(gen.window(0, horizon), n);
}

RauzyGraph rauzy_graph(const FactorTable& f_n, const FactorTable& f_n1) {
    if (f_n1.n != f_n.n + 1)
        throw std::invalid_argument("rauzy_graph: factor lengths must differ by one");
    RauzyGraph g;
    g.n = f_n.n;
    g.vertices.reserve(f_n.entries.size());
    for (const auto& [w, c] : f_n.entries) g.vertices.push_back(w);

    auto vertex_index = [&](std::string_view w) {
        auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), w);
        if (it == g.vertices.end() || std::string_view(*it) != w)
            throw std::invalid_argument("rauzy_graph: arc endpoint missing from vertex table");
        return static_cast<int>(it - g.vertices.begin());
    };

    g.out_degree.assign(g.vertices.size(), 0);
    g.in_degree.assign(g.vertices.size(), 0);
    for (const auto& [u, c] : f_n1.entries) {
        std::string_view v(u);
        int tail = vertex_index(v.substr(0, static_cast<size_t>(g.n)));
        int head = vertex_index(v.substr(1));
        g.arcs.emplace_back(tail, head);
        g.arc_labels.push_back(u);
        ++g.out_degree[static_cast<size_t>(tail)];
        ++g.in_degree[static_cast<size_t>(head)];
    }
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        bool r = g.out_degree[i] >= 2, l = g.in_degree[i] >= 2;
        if (r) g.right_special.push_back(static_cast<int>(i));
        if (l) g.left_special.push_back(static_cast<int>(i));
        if (r && l) g.bispecial.push_back(static_cast<int>(i));
    }
    return g;
}

std::vector<ReturnWordObs> return_words(std::string_view text, std::string_view w) {
    if (w.empty()) throw std::invalid_argument("return_words: empty word");
    auto pos = occurrence_positions(w, text);
    if (pos.size() < 2) throw std::invalid_argument("return_words: word not recurrent in window");
    std::unordered_map<std::string_view, long long, ViewHash> counts;
    for (size_t j = 0; j + 1 < pos.size(); ++j) {
        auto s = static_cast<size_t>(pos[j]);
        counts[text.substr(s, static_cast<size_t>(pos[j + 1] - pos[j]))]++;
    }
    std::vector<ReturnWordObs> out;
    out.reserve(counts.size());
    for (const auto& [v, c] : counts) out.push_back({Word(v), c});
    std::sort(out.begin(), out.end(),
              [](const ReturnWordObs& a, const ReturnWordObs& b) { return a.word < b.word; });
    return out;
}

std::vector<ReturnWordObs> return_words(const SubshiftGen& gen, std::string_view w,
                                        long long horizon) {
    return return_words(gen.window(0, horizon), w);
}

Word palindromic_closure(std::string_view w) {
    if (w.empty()) return Word();
    // Longest palindromic suffix of w = longest string that is both a prefix
    // of reverse(w) and a suffix of w; found by the KMP failure function of
    // reverse(w) + sentinel + w.
    Word s;
    s.reserve(2 * w.size() + 1);
    s.append(w.rbegin(), w.rend());
    s.push_back('\x01');
    s.append(w);
    std::vector<int> fail(s.size(), 0);
    for (size_t i = 1; i < s.size(); ++i) {
        int k = fail[i - 1];
        while (k > 0 && s[static_cast<size_t>(k)] != s[i]) k = fail[static_cast<size_t>(k) - 1];
        if (s[static_cast<size_t>(k)] == s[i]) ++k;
        fail[i] = k;
    }
    size_t lps = static_cast<size_t>(fail.back());  // length of longest palindromic suffix
    Word out(w);
    for (size_t i = w.size() - lps; i-- > 0;) out.push_back(w[i]);
    return out;
}

PowerWitness max_power_index(std::string_view text, long long max_word_len, long long cap) {
    if (cap < 2) throw std::invalid_argument("max_power_index: cap must be >= 2");
    if (max_word_len < 1) throw std::invalid_argument("max_power_index: max_word_len must be >= 1");
    PowerWitness best;
    best.power = 1;
    long long m = static_cast<long long>(text.size());
    for (long long p = 1; p <= max_word_len && p <= m; ++p) {
        long long run = 0;  // consecutive i with text[i] == text[i+p]
        for (long long i = 0; i + p < m; ++i) {
            run = (text[static_cast<size_t>(i)] == text[static_cast<size_t>(i + p)]) ? run + 1 : 0;
            long long power = run / p + 1;
            if (power > best.power) {
                best.power = std::min(power, cap);
                best.word = Word(text.substr(static_cast<size_t>(i - run + 1), static_cast<size_t>(p)));
                if (best.power >= cap) return best;
            }
        }
    }
    if (best.power == 1) {  // no repetition at all: witness a single letter
        best.word = text.empty() ? Word() : Word(1, text[0]);
    }
    return best;
}

PowerWitness max_power_index(const SubshiftGen& gen, long long max_word_len,
                             long long horizon, long long cap) {
    return max_power_index(gen.window(0, horizon), max_word_len, cap);
}

}  // namespace ergokit
