#include "consec/permutation.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace consec {

namespace {

void check_length(std::size_t n) {
    if (n == 0) throw InvalidInputError("permutation must have at least one entry");
    if (n > static_cast<std::size_t>(Permutation::kMaxLen))
        throw CapacityError("permutation longer than capacity (" +
                            std::to_string(Permutation::kMaxLen) + " entries)");
}

}  // namespace

Permutation unchecked_from_ranks(const std::uint8_t* ranks, int n) {
    Permutation p;
    p.size_ = static_cast<std::uint8_t>(n);
    std::memcpy(p.entries_.data(), ranks, static_cast<std::size_t>(n));
    return p;
}

Permutation Permutation::reduce(std::span<const int> word) {
    check_length(word.size());
    const int n = static_cast<int>(word.size());
    std::array<std::uint8_t, kMaxLen> ranks{};
    for (int i = 0; i < n; ++i) {
        int r = 1;
        for (int j = 0; j < n; ++j) {
            if (word[static_cast<std::size_t>(j)] < word[static_cast<std::size_t>(i)]) ++r;
            if (j != i && word[static_cast<std::size_t>(j)] == word[static_cast<std::size_t>(i)])
                throw InvalidInputError("duplicate entries in permutation word");
        }
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r);
    }
    return unchecked_from_ranks(ranks.data(), n);
}

Permutation Permutation::reduce(std::initializer_list<int> word) {
    return reduce(std::span<const int>(word.begin(), word.size()));
}

Permutation Permutation::identity(int n) {
    check_length(n <= 0 ? 0 : static_cast<std::size_t>(n));
    std::array<std::uint8_t, kMaxLen> ranks{};
    for (int i = 0; i < n; ++i) ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
    return unchecked_from_ranks(ranks.data(), n);
}

bool Permutation::operator<(const Permutation& other) const {
    if (size_ != other.size_) return size_ < other.size_;
    return std::lexicographical_compare(entries_.begin(), entries_.begin() + size_,
                                        other.entries_.begin(), other.entries_.begin() + size_);
}

std::size_t Permutation::hash() const {
    // FNV-1a over the used bytes plus the length.
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint8_t b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    mix(size_);
    for (int i = 0; i < size_; ++i) mix(entries_[static_cast<std::size_t>(i)]);
    return h;
}

Permutation window_reduce(const Permutation& host, int lo, int hi) {
    const int n = host.size();
    if (lo < 1 || hi > n || lo > hi) throw InvalidInputError("window out of range");
    const int k = hi - lo + 1;
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    for (int i = 0; i < k; ++i) {
        int r = 1;
        for (int j = 0; j < k; ++j)
            if (host[lo - 1 + j] < host[lo - 1 + i]) ++r;
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r);
    }
    return unchecked_from_ranks(ranks.data(), k);
}

namespace detail {

std::vector<Permutation> window_reductions_counting(const Permutation& host, int k) {
    const int n = host.size();
    if (k < 1 || k > n) throw InvalidInputError("window length out of range");
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(n - k + 1));
    for (int s = 1; s + k - 1 <= n; ++s) out.push_back(window_reduce(host, s, s + k - 1));
    return out;
}

}  // namespace detail

std::vector<Permutation> window_reductions(const Permutation& host, int k) {
    const int n = host.size();
    if (k < 1 || k > n) throw InvalidInputError("window length out of range");
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(n - k + 1));

    // ranks[i] = rank of host[s+i] within the current window, maintained as
    // the window slides one step right.
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    for (int i = 0; i < k; ++i) {
        int r = 1;
        for (int j = 0; j < k; ++j)
            if (host[j] < host[i]) ++r;
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(r);
    }
    out.push_back(unchecked_from_ranks(ranks.data(), k));

    for (int s = 1; s + k - 1 < n; ++s) {
        const std::uint8_t leaving = ranks[0];
        const int entering = host[s + k - 1];
        int rank_new = 1;
        for (int i = 1; i < k; ++i) {
            std::uint8_t r = ranks[static_cast<std::size_t>(i)];
            if (r > leaving) --r;
            if (host[s + i - 1] < entering)
                ++rank_new;
            else
                ++r;
            ranks[static_cast<std::size_t>(i - 1)] = r;
        }
        ranks[static_cast<std::size_t>(k - 1)] = static_cast<std::uint8_t>(rank_new);
        out.push_back(unchecked_from_ranks(ranks.data(), k));
    }
    return out;
}

OccurrenceList occurrences(const Permutation& pattern, const Permutation& host) {
    OccurrenceList result{pattern, host, {}};
    const int k = pattern.size();
    const int n = host.size();
    if (k > n) return result;
    // Direct order-isomorphism check per window, exiting at the first
    // mismatched comparison.
    for (int s = 1; s + k - 1 <= n; ++s) {
        bool match = true;
        for (int j = 1; j < k && match; ++j)
            for (int i = 0; i < j; ++i) {
                if ((host[s - 1 + i] < host[s - 1 + j]) != (pattern[i] < pattern[j])) {
                    match = false;
                    break;
                }
            }
        if (match) result.windows.push_back(Window{s, s + k - 1});
    }
    return result;
}

bool contains(const Permutation& pattern, const Permutation& host) {
    const int k = pattern.size();
    const int n = host.size();
    if (k > n) return false;
    for (int s = 1; s + k - 1 <= n; ++s) {
        bool match = true;
        for (int j = 1; j < k && match; ++j)
            for (int i = 0; i < j; ++i) {
                if ((host[s - 1 + i] < host[s - 1 + j]) != (pattern[i] < pattern[j])) {
                    match = false;
                    break;
                }
            }
        if (match) return true;
    }
    return false;
}

Permutation prefix(const Permutation& tau, int k) {
    if (k < 1 || k > tau.size()) throw InvalidInputError("prefix length out of range");
    return window_reduce(tau, 1, k);
}

Permutation suffix(const Permutation& tau, int k) {
    if (k < 1 || k > tau.size()) throw InvalidInputError("suffix length out of range");
    return window_reduce(tau, tau.size() - k + 1, tau.size());
}

bool is_bifix(const Permutation& tau, int k) {
    const int n = tau.size();
    if (k < 1 || k > n) throw InvalidInputError("bifix length out of range");
    // prefix and suffix windows are order-isomorphic iff all pairwise
    // comparisons agree.
    const int off = n - k;
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i)
            if ((tau[i] < tau[j]) != (tau[off + i] < tau[off + j])) return false;
    return true;
}

std::vector<int> bifixes(const Permutation& tau) {
    std::vector<int> out;
    for (int k = 1; k < tau.size(); ++k)
        if (is_bifix(tau, k)) out.push_back(k);
    return out;
}

int exterior_length(const Permutation& tau) {
    if (tau.size() < 2) throw UndefinedError("exterior undefined for a single entry");
    for (int k = tau.size() - 1; k >= 1; --k)
        if (is_bifix(tau, k)) return k;
    return 1;  // unreachable: k = 1 is always a bifix
}

Permutation exterior(const Permutation& tau) {
    return prefix(tau, exterior_length(tau));
}

Permutation interior(const Permutation& tau) {
    if (tau.size() < 3) throw UndefinedError("interior undefined for length < 3");
    return window_reduce(tau, 2, tau.size() - 1);
}

bool is_monotone(const Permutation& tau) {
    const int n = tau.size();
    if (n <= 2) return true;
    bool inc = true, dec = true;
    for (int i = 0; i + 1 < n; ++i) {
        if (tau[i] > tau[i + 1]) inc = false;
        if (tau[i] < tau[i + 1]) dec = false;
    }
    return inc || dec;
}

Permutation reversal(const Permutation& tau) {
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    const int n = tau.size();
    for (int i = 0; i < n; ++i)
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(tau[n - 1 - i]);
    return unchecked_from_ranks(ranks.data(), n);
}

Permutation complement(const Permutation& tau) {
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    const int n = tau.size();
    for (int i = 0; i < n; ++i)
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n + 1 - tau[i]);
    return unchecked_from_ranks(ranks.data(), n);
}

Permutation direct_sum(const Permutation& a, const Permutation& b) {
    check_length(static_cast<std::size_t>(a.size()) + static_cast<std::size_t>(b.size()));
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    const int m = a.size(), n = b.size();
    for (int i = 0; i < m; ++i) ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a[i]);
    for (int i = 0; i < n; ++i)
        ranks[static_cast<std::size_t>(m + i)] = static_cast<std::uint8_t>(b[i] + m);
    return unchecked_from_ranks(ranks.data(), m + n);
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
    check_length(static_cast<std::size_t>(a.size()) + static_cast<std::size_t>(b.size()));
    std::array<std::uint8_t, Permutation::kMaxLen> ranks{};
    const int m = a.size(), n = b.size();
    for (int i = 0; i < m; ++i)
        ranks[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(a[i] + n);
    for (int i = 0; i < n; ++i)
        ranks[static_cast<std::size_t>(m + i)] = static_cast<std::uint8_t>(b[i]);
    return unchecked_from_ranks(ranks.data(), m + n);
}

bool is_non_overlapping(const Permutation& tau) {
    if (tau.size() < 2) throw UndefinedError("non-overlapping undefined for length < 2");
    return exterior_length(tau) == 1;
}

Permutation drop_first(const Permutation& tau) {
    if (tau.size() < 2) throw InvalidInputError("cannot drop from a single entry");
    return window_reduce(tau, 2, tau.size());
}

Permutation drop_last(const Permutation& tau) {
    if (tau.size() < 2) throw InvalidInputError("cannot drop from a single entry");
    return window_reduce(tau, 1, tau.size() - 1);
}

Permutation parse_permutation(const std::string& text) {
    if (text.empty()) throw InvalidInputError("empty permutation text");
    std::vector<int> word;
    if (text.find(',') != std::string::npos) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                int v = std::stoi(item, &pos);
                if (pos != item.size() || v < 1) throw InvalidInputError("bad entry: " + item);
                word.push_back(v);
            } catch (const std::logic_error&) {
                throw InvalidInputError("bad entry in permutation text: '" + item + "'");
            }
        }
    } else {
        // Compact digit form, valid for n <= 9.
        for (char c : text) {
            if (c < '1' || c > '9')
                throw InvalidInputError(
                    "compact form allows digits 1-9 only; use commas for n >= 10");
            word.push_back(c - '0');
        }
    }
    return Permutation::reduce(word);
}

std::string to_string(const Permutation& p, bool compact) {
    std::string out;
    if (compact && p.size() <= 9) {
        for (int i = 0; i < p.size(); ++i) out += static_cast<char>('0' + p[i]);
        return out;
    }
    for (int i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(p[i]);
    }
    return out;
}

}  // namespace consec
