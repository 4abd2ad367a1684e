#ifndef RSFT_CONTEXT_HPP
#define RSFT_CONTEXT_HPP

#include "rsft/morphism.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rsft {

enum class Ring { Rational, Novikov };

/// A named element of a context file. Potentials also record their ends.
struct NamedElement {
    std::string name;
    Space space = Space::Any;
    std::optional<int> degree; ///< declared degree annotation
    std::optional<std::pair<SideId, SideId>> ends;
    AlgElement value;
};

/// Parsed context file: ring, shift N, generator tables for the ends "0"
/// (unmarked), "+" and "-", t-variables, truncation profile and elements.
///
///     ring = novikov
///     energy_cutoff = 3/2
///     N = 1
///     pmax = 4
///     generator x qdeg=2 kappa=1 action=1/2 ends=+,-
///     tvar s deg=2
///     element h hamiltonian = p:x+*q:y+
///     potential f +->- = q:x-*p:x+
class Context {
public:
    Ring ring = Ring::Rational;
    EnergyCutoff energy;
    int pmax = Truncation::kUnbounded;
    UniversePtr universe;
    std::vector<NamedElement> elements;

    Truncation truncation() const { return {pmax, energy}; }
    bool has(std::string_view name) const;
    const NamedElement& entry(std::string_view name) const;
    const AlgElement& element(std::string_view name) const { return entry(name).value; }
    /// Throws InvalidArgument unless the entry is a potential.
    Potential potential(std::string_view name) const;
};

/// Throws ParseError with the location of the first problem.
Context parse_context(std::string_view text);

/// Canonical text; parse_context(print_context(c)) reproduces c.
std::string print_context(const Context& c);

/// "0", "+" or "-".
std::string end_label(SideId s);

} // namespace rsft

#endif
