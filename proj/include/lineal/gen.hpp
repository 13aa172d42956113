#pragma once

#include <cstdint>
#include <random>

#include "lineal/rewrite.hpp"
#include "lineal/typecheck.hpp"

namespace lineal {

// Generator configuration; equal configs generate equal sequences.
struct GenConfig {
    uint64_t seed = 0;
    int max_term_size = 30;
    int max_scalar_magnitude = 8;
    Mode mode = Mode::Unrestricted;
    long fuel = 100000;
};

// Deterministic RNG wrapper; all draws go through explicit modular
// reductions so sequences are reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    uint64_t u64() { return eng_(); }
    size_t below(size_t n) { return n ? static_cast<size_t>(u64() % n) : 0; }
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<size_t>(hi - lo + 1))); }
    bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
    std::mt19937_64 eng_;
};

uint64_t mix_seed(uint64_t seed, uint64_t stream);

// A closed, well-typed term of the scalar system (annotated), built
// derivation-first so acceptance by infer_scalar holds by construction.
// Generated alongside its type.
struct GeneratedTerm {
    TermPtr term;
    CanonicalType type;
};
GeneratedTerm gen_typed_term(const GenConfig& cfg, Rng& rng);

// Arbitrary erased terms, including open ones and divergent shapes.
TermPtr gen_untyped_term(const GenConfig& cfg, Rng& rng);

// A term the barycentric system accepts in the empty context.
GeneratedTerm gen_bary_term(const GenConfig& cfg, Rng& rng);

// Random types (units in domain positions by construction).
TypePtr gen_type(const GenConfig& cfg, Rng& rng, int depth = 4);

// Rewrites some annotations into syntactically distinct but equivalent
// types (scalar insertions/splits and forall floating inside codomains);
// the erasure is untouched.
TermPtr annotation_variant(const TermPtr& t, Rng& rng);

}  // namespace lineal
