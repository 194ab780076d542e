#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparsetrace/config3d.hpp"

namespace sparsetrace {

struct UnborderedCode {
    std::int64_t k = 0;               // words have shape 0^k w 1^k, length 3k
    std::vector<std::string> words;   // sorted, deterministic

    std::int64_t word_length() const { return 3 * k; }
};

struct BorderWitness {
    size_t v, w;        // indices into the word list
    std::int64_t len;   // length of the offending proper prefix of v
};

// Exhaustive prefix/suffix scan over all ordered pairs, including v == w.
// Throws on unequal lengths. Returns nullopt when the set is unbordered.
std::optional<BorderWitness> find_border(const std::vector<std::string>& words);

inline bool is_unbordered(const std::vector<std::string>& words) {
    return !find_border(words).has_value();
}

// Smallest k whose greedy filter over { 0^k w 1^k : w in {0,1}^k }, taking
// candidates in lexicographic w order, collects at least m pairwise
// unbordered words. k is capped to keep the scan finite.
UnborderedCode build_code(std::int64_t m, std::int64_t max_k = 24);

// Cells with abstract payload identifiers, to be laid out as codewords.
// pos.x is the bit coordinate of the occurrence start; occurrences of
// connected neighbors sit exactly n bits apart, but distinct components may
// start anywhere the spacing rule allows.
struct PayloadCell {
    Vec3 pos;
    std::int64_t payload = 0;
};

struct EmbeddedConfig {
    BitConfig bits;      // 1-cells only
    std::int64_t n = 0;  // word length; the x-axis stride of the embedding
};

// Writes each cell's codeword along the x-axis starting at its position.
// With modified set, an extra 1 goes directly below each occurrence start.
// Checks the spacing rule: no two occurrences within the box
// [-n,n] x [-1,1] x [-1,1] except sanctioned axis neighbors.
EmbeddedConfig embed_cells(const std::vector<PayloadCell>& cells, const UnborderedCode& code,
                           bool modified);

// Recovers the cells of an unmodified embedding by scanning for codeword
// occurrences; unbordered words make alignments unique.
std::vector<PayloadCell> decode_cells(const EmbeddedConfig& cfg, const UnborderedCode& code);

} // namespace sparsetrace
