#ifndef RSFT_ELEMENT_HPP
#define RSFT_ELEMENT_HPP

#include "rsft/monomial.hpp"
#include "rsft/scalar.hpp"
#include "rsft/universe.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rsft {

/// Which algebra an element is meant to live in. Elements tagged Any
/// (scalars, intermediate results) combine with every space.
enum class Space { Any, Algebra, Hamiltonian, Potential, Augmentation };

const char* space_name(Space s);

/// Truncation profile: maximal total p-degree and Novikov energy cutoff.
struct Truncation {
    static constexpr int kUnbounded = std::numeric_limits<int>::max();

    int pmax = kUnbounded;
    EnergyCutoff energy;

    static Truncation meet(const Truncation& a, const Truncation& b);
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// Sparse element of the graded supercommutative algebra generated by the
/// q-, p- and t-variables of a Universe, with truncated Novikov coefficients.
class AlgElement {
public:
    using TermMap = std::map<Monomial, Scalar>;

    explicit AlgElement(UniversePtr u, Space space = Space::Any, Truncation trunc = {});
    static AlgElement constant(UniversePtr u, const Scalar& c, Space space = Space::Any, Truncation trunc = {});
    static AlgElement variable(UniversePtr u, VarId v, Space space = Space::Any, Truncation trunc = {});
    static AlgElement term(UniversePtr u, const Monomial& m, const Scalar& c, Space space = Space::Any,
                           Truncation trunc = {});

    const UniversePtr& universe_ptr() const { return u_; }
    const Universe& universe() const { return *u_; }
    Space space() const { return space_; }
    const Truncation& truncation() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// True if some nonzero term was dropped by a truncation while building this value.
    bool truncation_active() const { return truncated_; }
    void mark_truncated(bool on = true) { truncated_ = truncated_ || on; }

    AlgElement with_space(Space s) const;
    AlgElement with_truncation(const Truncation& t) const;

    /// Adds c*m, dropping it if it violates the truncation profile.
    void add_term(const Monomial& m, const Scalar& c);

    AlgElement operator-() const;
    AlgElement& operator+=(const AlgElement& other);
    AlgElement& operator-=(const AlgElement& other);
    friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
    friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
    friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
    AlgElement scaled(const Scalar& c) const;
    AlgElement scaled(const Rational& c) const { return scaled(Scalar(c)); }
    AlgElement scaled(long c) const { return scaled(Scalar(c)); }
    AlgElement scaled(int c) const { return scaled(Scalar(static_cast<long>(c))); }

    friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

    /// Common degree of all terms; empty for zero or inhomogeneous elements.
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    /// Parity of a homogeneous element (0 for zero).
    int parity() const;

    /// Every term contains a p-letter (of the given side, if any).
    bool in_overline(std::optional<SideId> side = {}) const;
    /// Every term contains a q-letter (of the given side, if any).
    bool in_underline(std::optional<SideId> side = {}) const;
    bool in_hat(std::optional<SideId> side = {}) const { return in_overline(side) && in_underline(side); }

    int max_p_degree(std::optional<SideId> side = {}) const;
    int max_q_degree(std::optional<SideId> side = {}) const;
    /// Minimal Novikov exponent over all coefficients (filtration level).
    std::optional<Rational> filtration_level() const;
    bool has_novikov() const;

    /// Terms with prescribed p- and q-degree.
    AlgElement extract_bidegree(int r, int s, std::optional<SideId> side = {}) const;
    AlgElement p_part(int r, std::optional<SideId> side = {}) const;
    AlgElement q_part(int s, std::optional<SideId> side = {}) const;
    /// Coefficient of a monomial in the t-variables (t-part removed from the left).
    AlgElement t_coefficient(const Monomial& t_mono) const;
    /// Set all p-letters of one side to zero.
    AlgElement restrict_p_zero(std::optional<SideId> side = {}) const;
    AlgElement restrict_q_zero(std::optional<SideId> side = {}) const;
    AlgElement filter(const std::function<bool(const Monomial&)>& keep) const;

    /// Move variables between sides (q/p of side a become those of side b).
    AlgElement rename_sides(const std::map<SideId, SideId>& mapping) const;

    std::string str() const;

private:
    void require_compatible(const AlgElement& other, const char* op) const;

    UniversePtr u_;
    Space space_;
    Truncation trunc_;
    TermMap terms_;
    bool truncated_ = false;

    friend class ElementBuilder;
};

Space join_spaces(Space a, Space b);

/// Graded left derivative d/dv.
AlgElement left_partial(const AlgElement& x, VarId v);
/// Graded right derivative (x) d/dv.
AlgElement right_partial(const AlgElement& x, VarId v);

/// Poisson bracket of degree -2N with {p_g, q_g} = kappa_g, computed from right
/// derivatives of f and left derivatives of g. Throws InhomogeneousInput.
AlgElement bracket(const AlgElement& f, const AlgElement& g);
/// Bilinear extension of the bracket; accepts inhomogeneous inputs.
AlgElement bracket_bilinear(const AlgElement& f, const AlgElement& g);

/// Algebra homomorphism sending each listed variable to the given element and
/// fixing all others.
AlgElement substitute(const AlgElement& x, const std::map<VarId, AlgElement>& images);

/// h restricted to the Lagrangian graph of f: p of f's target side become
/// kappa * (left d f / d q), q of f's source side become kappa * (f right d / d p).
AlgElement restrict_to_lagrangian(const AlgElement& h, const AlgElement& f, SideId source, SideId target);

/// The q-side counterpart of the identity potential sum_g (1/kappa_g) q_g^target p_g^source.
AlgElement identity_potential(const UniversePtr& u, SideId source, SideId target, Truncation trunc = {});

/// Integer power with truncation.
AlgElement power(const AlgElement& x, unsigned n);

} // namespace rsft

#endif
