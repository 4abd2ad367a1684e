#ifndef RSFT_MORPHISM_HPP
#define RSFT_MORPHISM_HPP

#include "rsft/coalgebra.hpp"

#include <optional>
#include <vector>

namespace rsft {

/// A degree-2N element f in the p-variables of its source end and the
/// q-variables of its target end (plus t-variables), inducing a coalgebra map
/// from words over the source to words over the target.
class Potential {
public:
    Potential(AlgElement f, SideId source, SideId target);

    const AlgElement& element() const { return f_; }
    SideId source() const { return source_; }
    SideId target() const { return target_; }
    const UniversePtr& universe_ptr() const { return f_.universe_ptr(); }
    const Universe& universe() const { return f_.universe(); }

    /// Every term contains a source p-variable.
    bool in_overline() const { return f_.in_overline(source_); }
    /// In addition every term contains a target q-variable.
    bool in_hat() const { return in_overline() && f_.in_underline(target_); }
    /// f restricted to vanishing source p-variables.
    AlgElement zero_part() const { return f_.restrict_p_zero(source_); }

    /// The identity potential sum_g (1/kappa_g) q_g^target p_g^source.
    static Potential identity(const UniversePtr& u, SideId source, SideId target, Truncation trunc = {});

private:
    AlgElement f_;
    SideId source_;
    SideId target_;
};

/// x<-D_g for g a function on the source end (the q-letters of `side` are
/// contracted with p-letters of the word factors).
TensorWord left_action(const AlgElement& g, const TensorWord& x, SideId side);
/// ->D_g(x) for g a function on the target end.
TensorWord right_action(const AlgElement& g, const TensorWord& x, SideId side);
/// x<-D_W for a word W over the source end: the factors of W act one after
/// another in their canonical order; t-parts of W multiply from the left.
TensorWord act_by_word(const TensorWord& x, const TensorWord& word, SideId side);

/// Word length of e^f that suffices to evaluate Phi on words of total q-length
/// tau; throws NotOverline when f|_{p=0} has no positive filtration level.
std::size_t exponential_length(const Potential& f, std::size_t tau);

/// Phi(W) = (e^f <-D_W)|_{p_source = 0}. Output words longer than max_length
/// are dropped and reported through truncation_active().
TensorWord apply_morphism(const Potential& f, const TensorWord& word, std::optional<std::size_t> max_length = {});

/// phi^r(w_1 (.) ... (.) w_r) = 1/n! (f^{(.)n} <-D_{w_1...w_r})|_{p=0}, n = tau - r + 1,
/// read as an element of the target algebra. Requires f in the overline.
AlgElement phi_component(const Potential& f, const std::vector<AlgElement>& ws);

/// Phi(W) assembled from the components phi^r over set partitions of W.
TensorWord apply_via_components(const Potential& f, const TensorWord& word);

/// h^-|_{L_f} == h^+|_{L_f}. Throws MasterEquationFails unless both satisfy {h,h} = 0.
bool check_chain_map(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus);
/// The two restrictions themselves (plus side first).
std::pair<AlgElement, AlgElement> chain_map_sides(const Potential& f, const AlgElement& h_plus, const AlgElement& h_minus);

/// Potential of Phi^- o Phi^+ by the coupled substitution through the middle
/// end. Both potentials must lie in the overline; throws NonTerminating when
/// the iteration does not stabilise within the p-degree truncation.
Potential compose(const Potential& f_minus, const Potential& f_plus, int max_iterations = 64);

/// T-coefficient of e^f up to word length k.
TensorWord constraint_expansion(const Potential& f, const Monomial& t_mono, std::size_t k);

/// Phi(T)(W) = (e^f(T) <-D_W)|_{p=0} for a potential whose target end is empty.
TensorWord siegel_map(const Potential& f, const Monomial& t_mono, const TensorWord& word, std::size_t k);

/// Total q-length (letters of `side`) of the longest term of a word.
std::size_t q_length(const TensorWord& w, SideId side);

} // namespace rsft

#endif
