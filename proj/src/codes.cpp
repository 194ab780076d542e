#include "sparsetrace/codes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace sparsetrace {

std::optional<BorderWitness> find_border(const std::vector<std::string>& words) {
    if (words.empty()) return std::nullopt;
    const size_t n = words[0].size();
    for (const auto& w : words)
        if (w.size() != n) throw std::invalid_argument("words must share one length");

    // all proper prefixes, hashed by length
    std::vector<std::unordered_set<std::string>> prefixes(n);
    for (const auto& v : words)
        for (size_t len = 1; len < n; ++len) prefixes[len].insert(v.substr(0, len));

    for (size_t wi = 0; wi < words.size(); ++wi) {
        const auto& w = words[wi];
        for (size_t len = 1; len < n; ++len) {
            std::string suffix = w.substr(n - len);
            if (prefixes[len].count(suffix)) {
                // recover a concrete offending pair for the witness
                for (size_t vi = 0; vi < words.size(); ++vi)
                    if (words[vi].compare(0, len, suffix) == 0)
                        return BorderWitness{vi, wi, (std::int64_t)len};
            }
        }
    }
    return std::nullopt;
}

UnborderedCode build_code(std::int64_t m, std::int64_t max_k) {
    if (m < 1) throw std::invalid_argument("code size must be >= 1");
    for (std::int64_t k = 1; k <= max_k; ++k) {
        if (k > 26) break;
        UnborderedCode code;
        code.k = k;
        std::vector<std::unordered_set<std::string>> accepted_prefixes((size_t)(3 * k));
        std::vector<std::unordered_set<std::string>> accepted_suffixes((size_t)(3 * k));
        auto conflicts = [&](const std::string& cand) {
            const size_t n = cand.size();
            for (size_t len = 1; len < n; ++len) {
                std::string pre = cand.substr(0, len);
                std::string suf = cand.substr(n - len);
                if (pre == suf) return true;                       // self-border
                if (accepted_prefixes[len].count(suf)) return true;  // prefix(v) = suffix(cand)
                if (accepted_suffixes[len].count(pre)) return true;  // prefix(cand) = suffix(w)
            }
            return false;
        };
        for (std::uint64_t bits = 0; bits < (1ull << k); ++bits) {
            std::string w;
            for (std::int64_t i = k - 1; i >= 0; --i) w += ((bits >> i) & 1) ? '1' : '0';
            std::string cand = std::string((size_t)k, '0') + w + std::string((size_t)k, '1');
            if (conflicts(cand)) continue;
            code.words.push_back(cand);
            for (size_t len = 1; len < cand.size(); ++len) {
                accepted_prefixes[len].insert(cand.substr(0, len));
                accepted_suffixes[len].insert(cand.substr(cand.size() - len));
            }
            if ((std::int64_t)code.words.size() >= m) break;
        }
        if ((std::int64_t)code.words.size() >= m) {
            if (!is_unbordered(code.words))
                throw std::logic_error("greedy filter produced a bordered set");
            return code;
        }
    }
    throw std::length_error("no unbordered code of the requested size within the k budget");
}

EmbeddedConfig embed_cells(const std::vector<PayloadCell>& cells, const UnborderedCode& code,
                           bool modified) {
    // payloads index codewords directly: deterministic and decode-invertible
    for (const auto& c : cells)
        if (c.payload < 0 || c.payload >= (std::int64_t)code.words.size())
            throw std::invalid_argument("payload outside the codeword range");
    const std::int64_t n = code.word_length();

    // spacing: distinct occurrences may not sit within the local box unless
    // they are sanctioned axis neighbors (south-north exactly n bits apart
    // with a small z step, west-east along y at equal height)
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i + 1; j < cells.size(); ++j) {
            const Vec3 a = cells[i].pos, b = cells[j].pos;
            if (a == b) throw std::invalid_argument("duplicate cell position");
            std::int64_t dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
            // sanctioned: the next occurrence exactly n bits along the word
            // axis (with its slope z-step), sideways neighbors including
            // jagged-wall steps, and their diagonal compositions; whatever
            // else falls in the box would break unique word alignment
            bool ns_neighbor = std::llabs(dx) == n && std::llabs(dy) <= 1 && std::llabs(dz) <= 3;
            bool we_neighbor = dx == 0 && std::llabs(dy) == 1 && std::llabs(dz) <= 1;
            if (ns_neighbor || we_neighbor) continue;
            if (std::llabs(dx) <= n && std::llabs(dy) <= 1 && std::llabs(dz) <= 1)
                throw std::invalid_argument("cells violate the occurrence spacing rule");
        }

    EmbeddedConfig out;
    out.n = n;
    for (const auto& c : cells) {
        const std::string& w = code.words[(size_t)c.payload];
        for (std::int64_t t = 0; t < n; ++t)
            if (w[(size_t)t] == '1') out.bits.set(Vec3{c.pos.x + t, c.pos.y, c.pos.z}, true);
        if (modified) out.bits.set(Vec3{c.pos.x, c.pos.y, c.pos.z - 1}, true);
    }
    return out;
}

std::vector<PayloadCell> decode_cells(const EmbeddedConfig& cfg, const UnborderedCode& code) {
    const std::int64_t n = cfg.n;
    std::map<std::string, std::int64_t> word_to_payload;
    for (size_t i = 0; i < code.words.size(); ++i) word_to_payload[code.words[i]] = (std::int64_t)i;

    std::vector<PayloadCell> out;
    // every window that covers a 1-bit is a candidate alignment; unbordered
    // words make at most one alignment match per occurrence
    std::set<Vec3> starts;
    for (const auto& [p, b] : cfg.bits.cells())
        for (std::int64_t off = 0; off < n; ++off) starts.insert(Vec3{p.x - off, p.y, p.z});
    for (const Vec3& s : starts) {
        std::string w;
        for (std::int64_t t = 0; t < n; ++t)
            w += cfg.bits.occupied(Vec3{s.x + t, s.y, s.z}) ? '1' : '0';
        auto it = word_to_payload.find(w);
        if (it != word_to_payload.end())
            out.push_back(PayloadCell{Vec3{s.x, s.y, s.z}, it->second});
    }
    std::sort(out.begin(), out.end(),
              [](const PayloadCell& a, const PayloadCell& b) { return a.pos < b.pos; });
    return out;
}

} // namespace sparsetrace
